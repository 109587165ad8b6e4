"""
Vertex-operator calculus on free-field states.

The field of a monomial ``:∂^(k_1)x_1 ... ∂^(k_r)x_r:`` is the mode-normal-ordered product of the divided
derivatives of the generating fields, so its n-th mode is

    a(n) = Σ  Π_i binom(-m_i - 1, k_i) · N(x_1(m_1) ... x_r(m_r)),   Σ_i (m_i + k_i + 1) = n + 1,

where N moves creation modes (m < 0) to the left of annihilation modes (m >= 0) with the Koszul sign. An
annihilation mode x(m) acts as ``pairing`` times the left derivative with respect to the partner symbol
(partner, m); a creation mode x(-c-1) multiplies by the symbol (x, c) from the left.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from chiralcoh.errors import MixedComplex
from chiralcoh.fock import FreeFieldAlgebra, Monomial, State, derivative, insert_symbol, remove_symbol

__all__ = ['ModeOperator', 'circle', 'normal_product', 'derivative', 'commutator', 'borcherds_check',
           'operator_columns', 'parity']


def annihilator_coefficient(m: int, k: int) -> int:
    """ binom(-m - 1, k) for m >= 0. """
    return (-1) ** k * comb(m + k, k)


def compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=1 << 18)
def monomial_action(algebra: FreeFieldAlgebra, factors: Monomial, n: int, target: Monomial) -> Tuple[
        Tuple[Monomial, Fraction], ...]:
    """ The n-th mode of the field of ``factors`` applied to the monomial ``target``. """
    generators = algebra.generators

    available = {}
    for g, k in target:
        available.setdefault(g, set()).add(k)

    options = []
    for g, k in factors:
        choices = [None]
        choices.extend(sorted(available.get(generators[g].partner, ())))
        options.append(choices)

    result = {}
    for choice in product(*options):
        excess = -n - 1
        creators = []
        coefficient = Fraction(1)
        for (g, k), m in zip(factors, choice):
            if m is None:
                creators.append(len(creators))
            else:
                excess += m + k + 1
                coefficient *= annihilator_coefficient(m, k)
        if excess < 0 or (not creators and excess):
            continue

        for spread in compositions(excess, len(creators)):
            ops = []
            term = coefficient
            spread_iter = iter(spread)
            for (g, k), m in zip(factors, choice):
                if m is None:
                    d = next(spread_iter)
                    term *= comb(d + k, k)
                    ops.append((False, g, d + k))
                else:
                    ops.append((True, g, m))

            sign = 1
            odd_annihilators = 0
            for is_annihilator, g, _ in ops:
                if not generators[g].odd:
                    continue
                if is_annihilator:
                    odd_annihilators += 1
                elif odd_annihilators % 2:
                    sign = -sign

            monomial = target
            value = term * sign
            for is_annihilator, g, m in reversed([op for op in ops if op[0]]):
                factor, monomial = remove_symbol(algebra, (generators[g].partner, m), monomial)
                if not factor:
                    break
                value *= factor * generators[g].pairing
            else:
                for _, g, c in reversed([op for op in ops if not op[0]]):
                    s, monomial = insert_symbol(algebra, (g, c), monomial)
                    if not s:
                        break
                    value *= s
                else:
                    if value:
                        result[monomial] = result.get(monomial, Fraction(0)) + value

    return tuple((m, c) for m, c in sorted(result.items()) if c)


class ModeOperator:
    """ The operator x ↦ field(n) x on states of one free-field algebra.

    Parameters
    ----------
    field : State
        The state whose field is taken.
    n : int
        The mode index, in the circle-product convention a(n) b = a∘_n b.

    """

    def __init__(self, field: State, n: int):
        self.field = field
        self.n = n
        self.algebra = field.algebra

    @property
    def parity(self) -> int:
        return parity(self.field)

    def on_monomial(self, monomial: Monomial) -> Dict[Monomial, Fraction]:
        image = {}
        for factors, c in self.field.terms.items():
            for m, value in monomial_action(self.algebra, factors, self.n, monomial):
                image[m] = image.get(m, Fraction(0)) + c * value
        return {m: v for m, v in image.items() if v}

    def __call__(self, state: State) -> State:
        if state.algebra != self.algebra:
            raise MixedComplex(f'a field of {self.algebra.name} cannot act on {state.algebra.name}')
        image = {}
        for monomial, c in state.terms.items():
            for m, value in self.on_monomial(monomial).items():
                image[m] = image.get(m, Fraction(0)) + c * value
        return State(self.algebra, image)


def parity(state: State) -> int:
    return state.parity()


def circle(a: State, n: int, b: State) -> State:
    """ a∘_n b, the n-th mode of the field of a applied to b.

    Raises
    ------
    MixedComplex
        If a and b belong to different algebras.

    """
    return ModeOperator(a, n)(b)


def normal_product(a: State, b: State) -> State:
    """ :ab: = a∘_{-1} b. """
    return circle(a, -1, b)


def commutator(a: State, m: int, b: State, k: int, state: State) -> State:
    """ [a(m), b(k)] applied to a state, with the super sign. """
    first = circle(a, m, circle(b, k, state))
    second = circle(b, k, circle(a, m, state))
    if parity(a) and parity(b):
        return first + second
    return first - second


def borcherds_check(a: State, b: State, m: int, k: int, probes: Sequence[State]) -> bool:
    """ Whether [a(m), b(k)] s = Σ_{i>=0} binom(m, i) (a∘_i b)(m + k - i) s on every probe.

    The sum is finite: a∘_i b vanishes once its weight wt(a) + wt(b) - i - 1 turns negative.
    """
    _, weight_a = a.bidegree()
    _, weight_b = b.bidegree()
    products = []
    for i in range(weight_a + weight_b):
        products.append(circle(a, i, b))

    for probe in probes:
        left = commutator(a, m, b, k, probe)
        right = State(probe.algebra)
        for i, ab in enumerate(products):
            if ab.is_zero():
                continue
            coefficient = generalized_binomial(m, i)
            if coefficient:
                right = right + circle(ab, m + k - i, probe) * coefficient
        if left != right:
            return False
    return True


def generalized_binomial(m: int, i: int) -> int:
    """ binom(m, i) for any integer m and i >= 0. """
    value = Fraction(1)
    for j in range(i):
        value = value * (m - j) / (j + 1)
    return int(value)


def operator_columns(operator, basis: Sequence[Monomial], index: Optional[Dict[Monomial, int]] = None) -> Tuple[
        List[Dict[int, Fraction]], Dict[Monomial, int]]:
    """ Sparse columns of an operator on a basis.

    Parameters
    ----------
    operator : ModeOperator or iterable of ModeOperator
        Operators whose images are added.
    basis : sequence
        Source monomials.
    index : dict, optional
        Row index of target monomials; new monomials are appended to it.

    Returns
    -------
    tuple
        (columns, index)

    """
    operators = [operator] if isinstance(operator, ModeOperator) else list(operator)
    index = {} if index is None else index
    columns = []
    for monomial in basis:
        image = {}
        for op in operators:
            for m, v in op.on_monomial(monomial).items():
                image[m] = image.get(m, Fraction(0)) + v
        column = {}
        for m, v in image.items():
            if v:
                if m not in index:
                    index[m] = len(index)
                column[index[m]] = v
        columns.append(column)
    return columns, index
