"""
The polynomial chiral de Rham complex Q_poly(V) of a linear representation, the combined complex W(g)⊗Q_poly(V)
and the vanishing homotopy of its positive-weight basic cohomology.

Generators of Q_poly(V), per coordinate x_k of V:

    ========  ======  ======  ======  ======  =======
    symbol    parity  degree  weight  charge  pairing
    ========  ======  ======  ======  ======  =======
    beta{x}   even    0       1       -1      +1
    gamma{x'} even    0       0       +1      -1
    b{x}      odd     -1      1       -1      +1
    c{x'}     odd     +1      0       +1      +1
    ========  ======  ======  ======  ======  =======
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from chiralcoh.complexes.base import ComplexDescriptor, PINNING_WINDOW, TENSOR_PINNING_WINDOW, Window, \
    check_basic_structure, fail, is_unimodular, pieces, pin_once
from chiralcoh.complexes.weil import FieldLayout
from chiralcoh.errors import HomotopyConditionsFailed, HomotopyIdentityFailed, PinningSuiteFailure
from chiralcoh.fields import ModeOperator, circle
from chiralcoh.fock import FreeFieldAlgebra, GeneratorSpec, State
from chiralcoh.lie import LieAlgebraData, Representation, matrix_inverse, trace, trace_form, validate_representation


def cdr_algebra(rep: Representation) -> FreeFieldAlgebra:
    size = rep.dim
    labels = rep.coordinate_labels()
    generators = []
    for k, label in enumerate(labels):
        generators.append(GeneratorSpec(f'beta{{{label}}}', False, 0, 1, size + k, Fraction(1), charge=-1))
    for k, label in enumerate(labels):
        generators.append(GeneratorSpec(f"gamma{{{label}'}}", False, 0, 0, k, Fraction(-1), charge=1))
    for k, label in enumerate(labels):
        generators.append(GeneratorSpec(f'b{{{label}}}', True, -1, 1, 3 * size + k, Fraction(1), charge=-1))
    for k, label in enumerate(labels):
        generators.append(GeneratorSpec(f"c{{{label}'}}", True, 1, 0, 2 * size + k, Fraction(1), charge=1))
    return FreeFieldAlgebra(name='Q({})'.format(','.join(labels)), generators=tuple(generators))


@dataclass
class LinearCDR:
    """ Q_poly(V) with its O(sg)-structure and topological vertex algebra data.

    Attributes
    ----------
    complex : ComplexDescriptor
        Differential d_Q, contractions ι^V_ξ, Lie derivatives L^V_ξ and conformal field L^M.
    rep : Representation
        The representation V.
    gamma_fields : tuple
        Γ^{ξ_i} = Σ ρ(ξ_i)_lk :β^l γ^k:, one per basis vector.
    g_field : State
        g^M = Σ :b^k ∂γ^k:, with d_Q g^M = L^M.

    """

    complex: ComplexDescriptor
    rep: Representation
    gamma_fields: Tuple[State, ...] = ()
    g_field: State = None


def build_cdr(lie: LieAlgebraData, rep: Representation, window: Window = PINNING_WINDOW,
              pin: bool = True) -> LinearCDR:
    """ Construct Q_poly(V) for a representation V of g.

    Raises
    ------
    ConfigError
        If the matrices do not form a representation.
    PinningSuiteFailure
        If one of the defining identities fails.

    """
    validate_representation(lie, rep)
    algebra = cdr_algebra(rep)
    w = FieldLayout(rep.dim)

    def monomial(*symbols, coefficient=1) -> State:
        return State.monomial(algebra, list(symbols), coefficient)

    differential = State(algebra)
    g_field = State(algebra)
    conformal = State(algebra)
    for k in range(rep.dim):
        differential = differential + monomial((w.beta(k), 0), (w.c(k), 0))
        g_field = g_field + monomial((w.b(k), 0), (w.gamma(k), 1))
        conformal = conformal + monomial((w.beta(k), 0), (w.gamma(k), 1))
        conformal = conformal - monomial((w.b(k), 0), (w.c(k), 1))

    d = ModeOperator(differential, 0)
    contractions, currents, gamma_fields = [], [], []
    for rho in rep.matrices:
        iota = State(algebra)
        gamma = State(algebra)
        for k in range(rep.dim):
            for l in range(rep.dim):
                if rho[k][l]:
                    iota = iota + monomial((w.gamma(l), 0), (w.b(k), 0), coefficient=-rho[k][l])
                    gamma = gamma + monomial((w.beta(k), 0), (w.gamma(l), 0), coefficient=rho[k][l])
        contractions.append(iota)
        currents.append(d(iota))
        gamma_fields.append(gamma)

    Q = ComplexDescriptor(name=algebra.name, algebra=algebra, differential=differential,
                          contractions=tuple(contractions), lie_derivatives=tuple(currents), conformal=conformal,
                          lie=lie, elements={'g': g_field})
    cdr = LinearCDR(complex=Q, rep=rep, gamma_fields=tuple(gamma_fields), g_field=g_field)
    if pin:
        pin_once(('cdr', lie, rep), window, lambda: pin_cdr(cdr, window))
    return cdr


def acts_traceless(lie: LieAlgebraData, rep: Representation) -> bool:
    return is_unimodular(lie) and all(trace(rho) == 0 for rho in rep.matrices)


def pin_cdr(cdr: LinearCDR, window: Window = PINNING_WINDOW):
    Q = cdr.complex
    w = FieldLayout(cdr.rep.dim)
    for k in range(cdr.rep.dim):
        for source, target in ((w.gamma(k), w.c(k)), (w.b(k), w.beta(k))):
            s = State.monomial(Q.algebra, [(source, 0)])
            if Q.d(s) != State.monomial(Q.algebra, [(target, 0)]):
                fail(PinningSuiteFailure, 'd_Q on generators', Q.algebra, state=s)
        for source in (w.beta(k), w.c(k)):
            s = State.monomial(Q.algebra, [(source, 0)])
            if not Q.d(s).is_zero():
                fail(PinningSuiteFailure, 'd_Q on generators', Q.algebra, state=s)

    if Q.d(cdr.g_field) != Q.conformal:
        fail(PinningSuiteFailure, 'd_Q g = L', Q.algebra, state=cdr.g_field)
    check_basic_structure(Q, window, traceless=acts_traceless(Q.lie, cdr.rep))


def tensor_complex(W: ComplexDescriptor, cdr: LinearCDR, window: Window = TENSOR_PINNING_WINDOW,
                   pin: bool = True) -> ComplexDescriptor:
    """ W(g)⊗Q_poly(V) with d = d_W + d_Q, ι^tot = ι^W + ι^V, L^tot = L^W + L^V and conformal field L^W + L^M.

    Q_poly(V) generators follow those of W(g) in the combined generator table.
    """
    Q = cdr.complex
    algebra = W.algebra.tensor(Q.algebra, name=f'{W.name}*{Q.name}')
    shift = len(W.algebra.generators)

    def lift(x: State, offset: int) -> State:
        return x.retag(algebra, offset)

    contractions = tuple(lift(a, 0) + lift(b, shift) for a, b in zip(W.contractions, Q.contractions))
    currents = tuple(lift(a, 0) + lift(b, shift) for a, b in zip(W.lie_derivatives, Q.lie_derivatives))
    T = ComplexDescriptor(name=algebra.name, algebra=algebra,
                          differential=lift(W.differential, 0) + lift(Q.differential, shift),
                          contractions=contractions, lie_derivatives=currents,
                          conformal=lift(W.conformal, 0) + lift(Q.conformal, shift), lie=W.lie,
                          elements={'contracting': lift(W.elements['contracting'], 0),
                                    'g': lift(cdr.g_field, shift)})
    if pin:
        pin_once(('tensor', W.lie, cdr.rep), window,
                 lambda: check_basic_structure(T, window, traceless=acts_traceless(W.lie, cdr.rep)))
    return T


def build_alpha(lie: LieAlgebraData, cdr: LinearCDR, T: ComplexDescriptor, modes: int = 3) -> State:
    """ α = Σ_i β^{ξ_i}⊗Γ^{ξ^i} + Σ_{i,j} :β^{ξ_i} c^{ξ'_j}:⊗(ι^V_{ξ_j}∘_0 Γ^{ξ^i}).

    {ξ^i} is the dual basis for the trace form of V. The element has degree −2 and weight 2.

    Returns
    -------
    State
        α, after checking L^tot_ξ(0) α = 0, ι^tot_ξ∘_k α = 0 for 0 <= k <= modes and L^tot_ξ∘_1 α = β^ξ.

    Raises
    ------
    HomotopyConditionsFailed
        If the algebra is abelian or one of the conditions fails.
    DegenerateForm
        If the trace form of V is singular.

    """
    if lie.is_abelian:
        raise HomotopyConditionsFailed('L o_1 alpha = beta', f'{lie.name} is abelian, its currents vanish')

    Q = cdr.complex
    shift = len(T.algebra.generators) - len(Q.algebra.generators)
    w = FieldLayout(lie.dim)
    dual = matrix_inverse(trace_form(lie, cdr.rep))

    def weil_monomial(*symbols) -> State:
        return State.monomial(T.algebra, list(symbols))

    alpha = State(T.algebra)
    for i in range(lie.dim):
        gamma_dual = State(Q.algebra)
        for j in range(lie.dim):
            if dual[i][j]:
                gamma_dual = gamma_dual + cdr.gamma_fields[j] * dual[i][j]
        beta = weil_monomial((w.beta(i), 0))
        alpha = alpha + beta.product(gamma_dual.retag(T.algebra, shift))
        for j in range(lie.dim):
            contracted = circle(Q.contractions[j], 0, gamma_dual)
            if contracted:
                alpha = alpha + weil_monomial((w.beta(i), 0), (w.c(j), 0)).product(contracted.retag(T.algebra, shift))

    for a in range(lie.dim):
        if not circle(T.lie_derivatives[a], 0, alpha).is_zero():
            fail(HomotopyConditionsFailed, f'L_{a}(0) alpha = 0', T.algebra, state=alpha)
        for k in range(modes + 1):
            if not circle(T.contractions[a], k, alpha).is_zero():
                fail(HomotopyConditionsFailed, f'iota_{a} o_{k} alpha = 0', T.algebra, state=alpha)
        if circle(T.lie_derivatives[a], 1, alpha) != weil_monomial((w.beta(a), 0)):
            fail(HomotopyConditionsFailed, f'L_{a} o_1 alpha = beta', T.algebra, state=alpha)
    return alpha


@dataclass
class VanishingHomotopy:
    """ ω = Σ :β^i ∂c^i: + dα + g^M, whose first mode contracts L^tot∘_1 on the basic subcomplex. """

    omega: State
    complex: ComplexDescriptor
    checked: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def operator(self) -> ModeOperator:
        return ModeOperator(self.omega, 1)

    def __call__(self, state: State) -> State:
        return self.operator(state)

    def primitive(self, cocycle: State) -> State:
        """ x with d x = z for a cocycle z of positive weight n: x = ω∘_1 z / n. """
        _, weight = cocycle.bidegree()
        if weight == 0:
            raise ValueError('weight-zero cocycles are not contracted by the homotopy')
        return self.operator(cocycle) * Fraction(1, weight)


def vanishing_homotopy(T: ComplexDescriptor, alpha: State, window: Window = TENSOR_PINNING_WINDOW,
                       modes: int = 3) -> VanishingHomotopy:
    """ Assemble ω and verify [d, ω∘_1] = L^tot∘_1 on every piece of the window.

    The field identities d ω = L^tot, ι^tot∘_k ω = 0, L^tot∘_0 ω = 0 and L^tot_ξ∘_1 ω = ι^tot_ξ are checked first;
    together they make ω∘_1 preserve the basic subcomplex.

    Raises
    ------
    HomotopyIdentityFailed
        If any identity fails.

    """
    omega = T.elements['contracting'] + T.d(alpha) + T.elements['g']
    if T.d(omega) != T.conformal:
        fail(HomotopyIdentityFailed, 'd omega = L', T.algebra, state=omega)

    for a in range(len(T.contractions)):
        for k in range(modes + 1):
            if not circle(T.contractions[a], k, omega).is_zero():
                fail(HomotopyIdentityFailed, f'iota_{a} o_{k} omega = 0', T.algebra, state=omega)
        if not circle(T.lie_derivatives[a], 0, omega).is_zero():
            fail(HomotopyIdentityFailed, f'L_{a} o_0 omega = 0', T.algebra, state=omega)
        if circle(T.lie_derivatives[a], 1, omega) != T.contractions[a]:
            fail(HomotopyIdentityFailed, f'L_{a} o_1 omega = iota_{a}', T.algebra, state=omega)

    homotopy = VanishingHomotopy(omega=omega, complex=T)
    d, h = T.d, homotopy.operator
    for p, n in pieces(window):
        for monomial in T.basis(p, n):
            s = T.state(monomial)
            if d(h(s)) + h(d(s)) != s * n:
                fail(HomotopyIdentityFailed, f'[d, omega o_1] = L o_1 on piece ({p}, {n})', T.algebra, monomial)
        homotopy.checked.append((p, n))
    return homotopy

