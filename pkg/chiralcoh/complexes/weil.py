"""
The semi-infinite Weil complex W(g) and its distinguished elements.

Generators, per basis vector ξ_i of g, in the order β, γ, b, c:

    ========  ======  ======  ======  =======
    symbol    parity  degree  weight  pairing
    ========  ======  ======  ======  =======
    beta{ξ}   even    -2      1       +1
    gamma{ξ'} even    +2      0       -1
    b{ξ}      odd     -1      1       -1
    c{ξ'}     odd     +1      0       -1
    ========  ======  ======  ======  =======
"""
from fractions import Fraction
from typing import Dict, List

from chiralcoh.classical import classical_monomials, weil_differential, weil_differential_generators
from chiralcoh.complexes.base import ComplexDescriptor, PINNING_WINDOW, Window, check_basic_structure, fail, pin_once
from chiralcoh.errors import NotAbelian, PinningSuiteFailure
from chiralcoh.fields import circle, normal_product
from chiralcoh.fock import FreeFieldAlgebra, GeneratorSpec, Monomial, State
from chiralcoh.lie import LieAlgebraData, killing_form, matrix_inverse


def weil_algebra(lie: LieAlgebraData) -> FreeFieldAlgebra:
    dim = lie.dim
    generators = []
    for i, label in enumerate(lie.basis_labels):
        generators.append(GeneratorSpec(f'beta{{{label}}}', False, -2, 1, dim + i, Fraction(1)))
    for i, label in enumerate(lie.basis_labels):
        generators.append(GeneratorSpec(f"gamma{{{label}'}}", False, 2, 0, i, Fraction(-1)))
    for i, label in enumerate(lie.basis_labels):
        generators.append(GeneratorSpec(f'b{{{label}}}', True, -1, 1, 3 * dim + i, Fraction(-1)))
    for i, label in enumerate(lie.basis_labels):
        generators.append(GeneratorSpec(f"c{{{label}'}}", True, 1, 0, 2 * dim + i, Fraction(-1)))
    return FreeFieldAlgebra(name=f'W({lie.name})', generators=tuple(generators))


class FieldLayout:
    """ Generator indices of a bc-βγ table laid out as β, γ, b, c blocks of equal size. """

    def __init__(self, dim: int):
        self.dim = dim

    def beta(self, i: int) -> int:
        return i

    def gamma(self, i: int) -> int:
        return self.dim + i

    def b(self, i: int) -> int:
        return 2 * self.dim + i

    def c(self, i: int) -> int:
        return 3 * self.dim + i


def _theta(algebra: FreeFieldAlgebra, lie: LieAlgebraData, a: int, first, second) -> State:
    f = lie.structure_constants
    result = State(algebra)
    for i in range(lie.dim):
        for k in range(lie.dim):
            if f[a][i][k]:
                result = result + State.monomial(algebra, [(first(k), 0), (second(i), 0)], -f[a][i][k])
    return result


def build_weil(lie: LieAlgebraData, window: Window = PINNING_WINDOW, pin: bool = True) -> ComplexDescriptor:
    """ Construct W(g) and run its pinning suite.

    Parameters
    ----------
    lie : LieAlgebraData
        The Lie algebra g.
    window : tuple
        (p_min, p_max, n_max) of the pieces the pinning identities are checked on.
    pin : bool
        Run the pinning suite; a window already passed for the same algebra in this process is not rerun.

    Returns
    -------
    ComplexDescriptor
        The complex, with ``elements['contracting']`` = Σ :β^i ∂c^i: and the currents θ^S, θ^Λ, J and K.

    Raises
    ------
    PinningSuiteFailure
        If any of the identities fails on a probe.

    """
    algebra = weil_algebra(lie)
    w = FieldLayout(lie.dim)

    theta_s = [_theta(algebra, lie, a, w.beta, w.gamma) for a in range(lie.dim)]
    theta_l = [_theta(algebra, lie, a, w.b, w.c) for a in range(lie.dim)]
    currents = tuple(theta_s[a] + theta_l[a] for a in range(lie.dim))
    contractions = tuple(State.monomial(algebra, [(w.b(a), 0)]) for a in range(lie.dim))

    j_field = State(algebra)
    k_field = State(algebra)
    for i in range(lie.dim):
        c_i = State.monomial(algebra, [(w.c(i), 0)])
        j_field = j_field - normal_product(theta_s[i] + theta_l[i] * Fraction(1, 2), c_i)
        k_field = k_field - State.monomial(algebra, [(w.gamma(i), 0), (w.b(i), 0)])

    conformal = State(algebra)
    contracting = State(algebra)
    for i in range(lie.dim):
        conformal = conformal + State.monomial(algebra, [(w.beta(i), 0), (w.gamma(i), 1)])
        conformal = conformal + State.monomial(algebra, [(w.b(i), 0), (w.c(i), 1)])
        contracting = contracting + State.monomial(algebra, [(w.beta(i), 0), (w.c(i), 1)])

    W = ComplexDescriptor(name=algebra.name, algebra=algebra, differential=j_field + k_field,
                          contractions=contractions, lie_derivatives=currents, conformal=conformal, lie=lie,
                          elements={'contracting': contracting, 'J': j_field, 'K': k_field})
    for a in range(lie.dim):
        W.elements[f'theta_S_{a}'] = theta_s[a]
        W.elements[f'theta_L_{a}'] = theta_l[a]

    if contracting.bidegree() != (-1, 2) or W.d(contracting).bidegree() != (0, 2):
        raise PinningSuiteFailure('contracting element has bidegree (-1, 2) and its differential (0, 2)')

    if pin:
        pin_once(('weil', lie), window, lambda: pin_weil(W, window))
    return W


def pin_weil(W: ComplexDescriptor, window: Window = PINNING_WINDOW):
    check_basic_structure(W, window)
    check_classical_restriction(W, window[1])
    check_circle_one(W)


def classical_part(W: ComplexDescriptor, p: int) -> Dict[Monomial, State]:
    """ d_W on the weight-zero monomials of degree p, i.e. on S(g*)⊗Λ(g*). """
    return {m: W.d(W.state(m)) for m in W.basis(p, 0)}


def classical_to_state(W: ComplexDescriptor, element) -> State:
    w = FieldLayout(W.lie.dim)
    terms = {}
    for (exponents, odd), value in element.items():
        symbols = []
        for i, power in enumerate(exponents):
            symbols.extend([(w.gamma(i), 0)] * power)
        symbols.extend((w.c(j), 0) for j in odd)
        terms[tuple(symbols)] = value
    return State(W.algebra, terms)


def check_classical_restriction(W: ComplexDescriptor, p_max: int, error=PinningSuiteFailure):
    """ The weight-zero part of d_W agrees with the classical Weil differential for degrees 0..p_max. """
    generators = weil_differential_generators(W.lie)
    for p in range(p_max + 1):
        for monomial in classical_monomials(W.lie.dim, p):
            source = classical_to_state(W, {monomial: Fraction(1)})
            expected = classical_to_state(W, weil_differential(W.lie, monomial, generators))
            if W.d(source) != expected:
                fail(error, 'weight-zero differential = classical Weil differential', W.algebra, state=source)


def check_circle_one(W: ComplexDescriptor, error=PinningSuiteFailure):
    """ L_k ∘_1 :β^z b^x c^y: = ⟨[ξ_x, ξ_k], ξ'^y⟩ β^z, and b^x ∘_0 c^y = −δ_xy. """
    lie = W.lie
    w = FieldLayout(lie.dim)
    f = lie.structure_constants
    vacuum = State.vacuum(W.algebra)
    for x in range(lie.dim):
        for y in range(lie.dim):
            c_y = State.monomial(W.algebra, [(w.c(y), 0)])
            if circle(W.contractions[x], 0, c_y) != vacuum * (-int(x == y)):
                fail(error, 'b o_0 c = -delta', W.algebra, state=c_y)

    for z in range(lie.dim):
        beta = State.monomial(W.algebra, [(w.beta(z), 0)])
        for x in range(lie.dim):
            for y in range(lie.dim):
                probe = State.monomial(W.algebra, [(w.beta(z), 0), (w.b(x), 0), (w.c(y), 0)])
                for k in range(lie.dim):
                    if circle(W.lie_derivatives[k], 1, probe) != beta * f[x][k][y]:
                        fail(error, f'L_{k} o_1 (beta b c) = <[x, {k}], y> beta', W.algebra, state=probe)


def contracting_element(W: ComplexDescriptor, modes: int = 3) -> State:
    """ e = Σ_i :β^i ∂c^i:, checked to satisfy d e = L^W and ι_ξ ∘_n e = −δ_{n,1} β^ξ.

    Raises
    ------
    PinningSuiteFailure
        If either identity fails.

    """
    e = W.elements['contracting']
    if W.d(e) != W.conformal:
        fail(PinningSuiteFailure, 'd e = L', W.algebra, state=e)

    w = FieldLayout(W.lie.dim)
    for a, iota in enumerate(W.contractions):
        beta = State.monomial(W.algebra, [(w.beta(a), 0)])
        for n in range(modes + 1):
            expected = -beta if n == 1 else State(W.algebra)
            if circle(iota, n, e) != expected:
                fail(PinningSuiteFailure, f'iota_{a} o_{n} e = -delta_(n,1) beta', W.algebra, state=e)
    return e


def theta_S(W: ComplexDescriptor, i: int) -> State:
    """ θ_S^{ξ_i} = Σ_j (κ^{-1})_ij θ^S_j, normalized by L_k ∘_1 θ_S^{ξ_i} = −δ_ik.

    Zero for abelian algebras.

    Raises
    ------
    DegenerateForm
        If the Killing form of a non-abelian algebra is singular.
    PinningSuiteFailure
        If the normalization fails.

    """
    lie = W.lie
    if lie.is_abelian:
        return State(W.algebra)

    inverse = matrix_inverse(killing_form(lie))
    theta = State(W.algebra)
    for j in range(lie.dim):
        if inverse[i][j]:
            theta = theta + W.elements[f'theta_S_{j}'] * inverse[i][j]

    vacuum = State.vacuum(W.algebra)
    for k in range(lie.dim):
        if circle(W.lie_derivatives[k], 1, theta) != vacuum * (-int(i == k)):
            fail(PinningSuiteFailure, f'L_{k} o_1 theta_S({i}) = -delta', W.algebra, state=theta)
    return theta


def small_weil(lie: LieAlgebraData, window: Window = (0, 6, 3)) -> ComplexDescriptor:
    """ The subcomplex of W(t) spanned by γ and c symbols with differential K(0); experimental.

    Raises
    ------
    NotAbelian
        If t is not abelian.

    """
    if not lie.is_abelian:
        raise NotAbelian(f'the small Weil complex needs an abelian algebra, {lie.name} is not')

    W = build_weil(lie, pin=False)
    w = FieldLayout(lie.dim)
    allowed = frozenset([w.gamma(i) for i in range(lie.dim)] + [w.c(i) for i in range(lie.dim)])
    C = ComplexDescriptor(name=f'small-W({lie.name})', algebra=W.algebra, differential=W.elements['K'],
                          lie=lie, allowed=allowed, experimental=True)
    check_basic_structure(C, window)
    return C


def weil_generators(W: ComplexDescriptor) -> List[str]:
    return [gen.label for gen in W.algebra.generators]
