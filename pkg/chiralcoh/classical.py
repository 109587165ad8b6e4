"""
Classical (weight-zero) oracles computed directly from structure constants, independently of the mode calculus:
the Weil differential on S(g*)⊗Λ(g*), invariant rings S^k(g*)^g and multiplicities of the adjoint
representation in S^k(g*).

A classical monomial is a pair (E, J): E the exponent vector of the γ^a and J the increasing tuple of the
indices of the c^a factors, standing for γ^E c^{J_1} c^{J_2} ...
"""
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Tuple

from chiralcoh import linalg
from chiralcoh.lie import LieAlgebraData

ClassicalMonomial = Tuple[Tuple[int, ...], Tuple[int, ...]]
Element = Dict[ClassicalMonomial, Fraction]


def _sort_sign(indices: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
    if len(set(indices)) < len(indices):
        return 0, ()
    inversions = sum(1 for i in range(len(indices)) for j in range(i + 1, len(indices)) if indices[i] > indices[j])
    return (-1) ** inversions, tuple(sorted(indices))


def multiply(x: Element, y: Element) -> Element:
    result = {}
    for (e1, j1), c1 in x.items():
        for (e2, j2), c2 in y.items():
            sign, j = _sort_sign(j1 + j2)
            if not sign:
                continue
            key = (tuple(a + b for a, b in zip(e1, e2)), j)
            result[key] = result.get(key, Fraction(0)) + sign * c1 * c2
    return {k: v for k, v in result.items() if v}


def add(x: Element, y: Element, scale=1) -> Element:
    result = dict(x)
    for k, v in y.items():
        result[k] = result.get(k, Fraction(0)) + v * scale
    return {k: v for k, v in result.items() if v}


def gamma(dim: int, a: int) -> Element:
    return {(tuple(int(i == a) for i in range(dim)), ()): Fraction(1)}


def c(dim: int, a: int) -> Element:
    return {((0,) * dim, (a,)): Fraction(1)}


def weil_differential_generators(lie: LieAlgebraData) -> Tuple[List[Element], List[Element]]:
    """ d γ^a = Σ f_bc^a c^b γ^c and d c^a = γ^a + ½ Σ f_bc^a c^b c^c. """
    dim = lie.dim
    f = lie.structure_constants
    d_gamma, d_c = [], []
    for a in range(dim):
        dg, dc = {}, gamma(dim, a)
        for b in range(dim):
            for e in range(dim):
                if f[b][e][a]:
                    dg = add(dg, multiply(c(dim, b), gamma(dim, e)), f[b][e][a])
                    dc = add(dc, multiply(c(dim, b), c(dim, e)), f[b][e][a] / 2)
        d_gamma.append(dg)
        d_c.append(dc)
    return d_gamma, d_c


def weil_differential(lie: LieAlgebraData, monomial: ClassicalMonomial, generators=None) -> Element:
    """ The classical Weil differential of γ^E c^J, extended as an odd derivation. """
    dim = lie.dim
    d_gamma, d_c = generators or weil_differential_generators(lie)
    exponents, odd = monomial
    result = {}
    c_part = {((0,) * dim, odd): Fraction(1)}
    for a, power in enumerate(exponents):
        if not power:
            continue
        rest = tuple(e - int(i == a) for i, e in enumerate(exponents))
        term = multiply({(rest, ()): Fraction(power)}, multiply(d_gamma[a], c_part))
        result = add(result, term)

    even_part = {(exponents, ()): Fraction(1)}
    for t, j in enumerate(odd):
        before = {((0,) * dim, odd[:t]): Fraction(1)}
        after = {((0,) * dim, odd[t + 1:]): Fraction(1)}
        term = multiply(multiply(even_part, before), multiply(d_c[j], after))
        result = add(result, term, (-1) ** t)
    return result


def polynomial_exponents(dim: int, k: int) -> List[Tuple[int, ...]]:
    exponents = []
    for choice in combinations_with_replacement(range(dim), k):
        exponents.append(tuple(choice.count(i) for i in range(dim)))
    return sorted(exponents)


def classical_monomials(dim: int, p: int) -> List[ClassicalMonomial]:
    """ Monomials γ^E c^J of degree 2|E| + |J| = p. """
    result = []
    for odd_count in range(min(dim, p) + 1):
        if (p - odd_count) % 2:
            continue
        for exponents in polynomial_exponents(dim, (p - odd_count) // 2):
            for odd in _subsets(dim, odd_count):
                result.append((exponents, odd))
    return result


def _subsets(dim: int, size: int, start: int = 0):
    if size == 0:
        yield ()
        return
    for i in range(start, dim):
        for rest in _subsets(dim, size - 1, i + 1):
            yield (i,) + rest


def coadjoint_on_polynomial(lie: LieAlgebraData, a: int, exponents: Tuple[int, ...]) -> Dict[Tuple[int, ...], Fraction]:
    """ ξ_a acting by derivations on γ^E, with ad*_{ξ_a} γ^j = −Σ_k f[a][k][j] γ^k. """
    f = lie.structure_constants
    image = {}
    for j, power in enumerate(exponents):
        if not power:
            continue
        for k in range(lie.dim):
            value = -f[a][k][j]
            if not value:
                continue
            shifted = list(exponents)
            shifted[j] -= 1
            shifted[k] += 1
            key = tuple(shifted)
            image[key] = image.get(key, Fraction(0)) + power * value
    return {k: v for k, v in image.items() if v}


def invariant_ring_dims(lie: LieAlgebraData, k_max: int) -> List[int]:
    """ dim S^k(g*)^g for k = 0..k_max, by solving the infinitesimal invariance equations. """
    dims = []
    for k in range(k_max + 1):
        basis = polynomial_exponents(lie.dim, k)
        index = {}
        columns = []
        for exponents in basis:
            column = {}
            for a in range(lie.dim):
                for target, value in coadjoint_on_polynomial(lie, a, exponents).items():
                    row = index.setdefault((a, target), len(index))
                    column[row] = value
            columns.append(column)
        dims.append(len(basis) - linalg.rank(columns, len(index)))
    return dims


def adjoint_multiplicity(lie: LieAlgebraData, k: int) -> int:
    """ dim Hom_g(g, S^k(g*)) = dim (g* ⊗ S^k(g*))^g. """
    f = lie.structure_constants
    basis = [(i, exponents) for i in range(lie.dim) for exponents in polynomial_exponents(lie.dim, k)]
    index = {}
    columns = []
    for i, exponents in basis:
        column = {}
        for a in range(lie.dim):
            image = {}
            for m in range(lie.dim):
                if f[a][m][i]:
                    key = (m, exponents)
                    image[key] = image.get(key, Fraction(0)) - f[a][m][i]
            for target, value in coadjoint_on_polynomial(lie, a, exponents).items():
                key = (i, target)
                image[key] = image.get(key, Fraction(0)) + value
            for key, value in image.items():
                if value:
                    row = index.setdefault((a,) + key, len(index))
                    column[row] = column.get(row, Fraction(0)) + value
        columns.append(column)
    return len(basis) - linalg.rank(columns, len(index))
