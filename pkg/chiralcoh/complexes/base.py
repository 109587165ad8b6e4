"""
Graded complexes built from free-field algebras, and the exact operator identities every complex must satisfy
before it is handed to the cohomology engine.
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Hashable, Iterator, List, Optional, Sequence, Tuple

from chiralcoh.errors import PinningSuiteFailure, VerificationFailure
from chiralcoh.fields import ModeOperator, circle
from chiralcoh.fock import FreeFieldAlgebra, Monomial, State, derivative, enumerate_basis, format_monomial, \
    format_state
from chiralcoh.lie import LieAlgebraData, trace

Window = Tuple[int, int, int]

# W(g) and Q_poly(V) are pinned on -6 <= p <= 6, n <= 3 before any cohomology is computed.
PINNING_WINDOW: Window = (-6, 6, 3)

# W(g)⊗Q_poly(V) has twice the generators; its default stops at weight one.
TENSOR_PINNING_WINDOW: Window = (-2, 4, 1)

_pinned: Dict[Hashable, List[Window]] = {}


@dataclass
class ComplexDescriptor:
    """ A graded complex with its O(sg)-structure.

    Attributes
    ----------
    name : str
        Identifier used in tables and reports.
    algebra : FreeFieldAlgebra
        Generator table.
    differential : State
        The field whose zero mode is the differential.
    contractions : tuple
        One odd weight-one field ι_ξ per basis vector of the Lie algebra.
    lie_derivatives : tuple
        One even weight-one field L_ξ per basis vector.
    conformal : State
        The quasi-conformal field, or None.
    lie : LieAlgebraData
        The acting Lie algebra, or None.
    allowed : frozenset
        Generator indices the basis may use (None for all).
    experimental : bool
        Set for complexes whose cohomology is not the authoritative route.
    elements : dict
        Named distinguished states.
    charge : int
        The auxiliary charge of the pieces handed out by ``basis``; cohomology lives in charge 0.

    """

    name: str
    algebra: FreeFieldAlgebra
    differential: State
    contractions: Tuple[State, ...] = ()
    lie_derivatives: Tuple[State, ...] = ()
    conformal: Optional[State] = None
    lie: Optional[LieAlgebraData] = None
    allowed: Optional[FrozenSet[int]] = None
    experimental: bool = False
    elements: Dict[str, State] = field(default_factory=dict)
    charge: int = 0

    def basis(self, p: int, n: int) -> Tuple[Monomial, ...]:
        return enumerate_basis(self.algebra, p, n, self.charge, self.allowed)

    def with_charge(self, charge: int) -> 'ComplexDescriptor':
        """ The same complex, restricted to the pieces of another auxiliary charge. """
        return replace(self, charge=charge, name=f'{self.name}[charge {charge}]')

    @property
    def d(self) -> ModeOperator:
        return ModeOperator(self.differential, 0)

    def iota(self, i: int, k: int) -> ModeOperator:
        return ModeOperator(self.contractions[i], k)

    def lie_derivative(self, i: int, k: int) -> ModeOperator:
        return ModeOperator(self.lie_derivatives[i], k)

    def basic_operators(self, n: int) -> Iterator[ModeOperator]:
        """ ι_ξ(k) and L_ξ(k) for k = 0..n, the operators cutting out the basic subspace of a weight-n piece. """
        for k in range(n + 1):
            for i in range(len(self.contractions)):
                yield self.iota(i, k)
            for i in range(len(self.lie_derivatives)):
                yield self.lie_derivative(i, k)

    def state(self, monomial: Monomial, coefficient=1) -> State:
        return State(self.algebra, {monomial: Fraction(coefficient)})

    def embed(self, state: State, shift: int = 0) -> State:
        return state.retag(self.algebra, shift)


def pieces(window: Window) -> Iterator[Tuple[int, int]]:
    p_min, p_max, n_max = window
    for n in range(n_max + 1):
        for p in range(p_min, p_max + 1):
            yield p, n


def covers(outer: Window, inner: Window) -> bool:
    return outer[0] <= inner[0] and inner[1] <= outer[1] and inner[2] <= outer[2]


def pin_once(key: Hashable, window: Window, pin: Callable[[], None]):
    """ Run ``pin`` unless a window covering ``window`` already passed for ``key`` in this process.

    Keys must determine the complex completely (e.g. the frozen Lie algebra and representation data).
    """
    if any(covers(done, window) for done in _pinned.get(key, ())):
        return
    pin()
    _pinned.setdefault(key, []).append(window)


def pinned_windows(key: Hashable) -> Tuple[Window, ...]:
    return tuple(_pinned.get(key, ()))


def fail(error: Callable, identity: str, algebra: FreeFieldAlgebra, monomial: Monomial = None, state: State = None):
    if monomial is not None:
        probe = format_monomial(algebra, monomial)
    elif state is not None:
        probe = format_state(state)
    else:
        probe = ''
    raise error(identity, probe)


def check_square_zero(C: ComplexDescriptor, window: Window, error=PinningSuiteFailure):
    d = C.d
    for p, n in pieces(window):
        for monomial in C.basis(p, n):
            if not d(d(C.state(monomial))).is_zero():
                fail(error, f'd^2 = 0 on piece ({p}, {n})', C.algebra, monomial)


def check_osg_relations(C: ComplexDescriptor, window: Window, modes: int = 3, error=PinningSuiteFailure):
    """ [d, ι_ξ(k)] = L_ξ(k) for 0 <= k <= modes on every basis state of the window.

    Both sides lower the weight by k, so modes above the weight of a piece are skipped.
    """
    d = C.d
    for p, n in pieces(window):
        basis = C.basis(p, n)
        for i in range(len(C.contractions)):
            for k in range(min(modes, n) + 1):
                iota, lie = C.iota(i, k), C.lie_derivative(i, k)
                for monomial in basis:
                    s = C.state(monomial)
                    if d(iota(s)) + iota(d(s)) != lie(s):
                        fail(error, f'[d, iota_{i}({k})] = L_{i}({k})', C.algebra, monomial)


def check_conformal(C: ComplexDescriptor, window: Window, error=PinningSuiteFailure):
    """ L∘_0 = ∂ and L∘_1 = weight on basis states. """
    if C.conformal is None:
        return
    for p, n in pieces(window):
        for monomial in C.basis(p, n):
            s = C.state(monomial)
            if circle(C.conformal, 0, s) != derivative(s):
                fail(error, 'L o_0 = derivative', C.algebra, monomial)
            if circle(C.conformal, 1, s) != s * n:
                fail(error, 'L o_1 = weight', C.algebra, monomial)


def check_primary(C: ComplexDescriptor, currents: Sequence[State], error=PinningSuiteFailure, modes=(2, 3)):
    """ Weight-one primaries: L∘_1 x = x and L∘_k x = 0 for k in ``modes``. """
    if C.conformal is None:
        return
    for x in currents:
        if x.is_zero():
            continue
        if circle(C.conformal, 1, x) != x:
            fail(error, 'current has weight one', C.algebra, state=x)
        for k in modes:
            if not circle(C.conformal, k, x).is_zero():
                fail(error, f'current is primary (L o_{k} = 0)', C.algebra, state=x)


def check_current_algebra(C: ComplexDescriptor, error=PinningSuiteFailure):
    """ The sg[t] relations at level zero: L∘_0 L = L_[,], L∘_0 ι = ι_[,], ι∘_0 ι = 0 and all ∘_1 products vanish. """
    if C.lie is None or not C.lie_derivatives:
        return
    lie = C.lie
    zero = State(C.algebra)
    for a in range(lie.dim):
        for b in range(lie.dim):
            expected_l = zero
            expected_i = zero
            for k, c in lie.bracket(a, b).items():
                expected_l = expected_l + C.lie_derivatives[k] * c
                expected_i = expected_i + C.contractions[k] * c
            if circle(C.lie_derivatives[a], 0, C.lie_derivatives[b]) != expected_l:
                fail(error, f'L_{a} o_0 L_{b} = L_[{a},{b}]', C.algebra, state=C.lie_derivatives[b])
            if circle(C.lie_derivatives[a], 0, C.contractions[b]) != expected_i:
                fail(error, f'L_{a} o_0 iota_{b} = iota_[{a},{b}]', C.algebra, state=C.contractions[b])
            if not circle(C.contractions[a], 0, C.contractions[b]).is_zero():
                fail(error, f'iota_{a} o_0 iota_{b} = 0', C.algebra, state=C.contractions[b])
            for x, y, label in ((C.lie_derivatives[a], C.lie_derivatives[b], 'L o_1 L'),
                                (C.lie_derivatives[a], C.contractions[b], 'L o_1 iota'),
                                (C.contractions[a], C.contractions[b], 'iota o_1 iota')):
                if not circle(x, 1, y).is_zero():
                    fail(error, f'{label} = 0 ({a}, {b})', C.algebra, state=y)


def check_basic_structure(C: ComplexDescriptor, window: Window, error=PinningSuiteFailure,
                          traceless: Optional[bool] = None):
    """ d² = 0, the O(sg) relations, the conformal contract and the current algebra on a window.

    ``traceless`` says whether the currents act by traceless matrices; L∘_2 L_ξ is a multiple of that trace times
    the vacuum, so the ∘_2 primary condition is only asserted for traceless actions (default: g unimodular).
    """
    if traceless is None:
        traceless = is_unimodular(C.lie)
    check_square_zero(C, window, error)
    check_osg_relations(C, window, error=error)
    check_conformal(C, window, error)
    check_primary(C, C.contractions, error)
    check_primary(C, C.lie_derivatives, error, modes=(2, 3) if traceless else (3,))
    check_current_algebra(C, error)


def is_unimodular(lie: Optional[LieAlgebraData]) -> bool:
    if lie is None:
        return True
    return all(trace(lie.ad_matrix(i)) == 0 for i in range(lie.dim))


def verify_complex(C: ComplexDescriptor, window: Window = PINNING_WINDOW) -> bool:
    """ Run the generic identities and report instead of raising. """
    try:
        check_basic_structure(C, window, VerificationFailure)
    except VerificationFailure:
        return False
    return True
