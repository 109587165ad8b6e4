"""
Oracles and verification suites.

Each suite runs a family of exact checks on one Lie algebra (and, where needed, one representation) and collects
the outcome in a SuiteReport instead of stopping at the first failure. Probes that are sampled are drawn from
random.Random(seed), so a report is reproducible from its seed.
"""
import os
import random

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from chiralcoh.classical import adjoint_multiplicity, invariant_ring_dims
from chiralcoh.cohomology import chern_weil, circle_weight_check, cohomology
from chiralcoh.complexes.base import PINNING_WINDOW, TENSOR_PINNING_WINDOW, Window, check_osg_relations, \
    check_square_zero
from chiralcoh.complexes.cdr import build_alpha, build_cdr, tensor_complex, vanishing_homotopy
from chiralcoh.complexes.weil import build_weil, check_circle_one, check_classical_restriction, \
    contracting_element, small_weil, theta_S
from chiralcoh.errors import ConfigError, VerificationFailure
from chiralcoh.fields import borcherds_check, circle, normal_product
from chiralcoh.fock import State, format_state
from chiralcoh.lie import LieAlgebraData, Representation
from chiralcoh.localization.formulas import cross_check
from chiralcoh.series import product_formula

DEFAULT_SEED = 20240101

SUITES = ('pinning', 'borcherds', 'd2', 'homotopy', 'identities', 'oracle', 'exploratory')

__all__ = ['CheckResult', 'SuiteReport', 'WeightOneComparison', 'SUITES', 'adjoint_multiplicity', 'default_seed',
           'derivation_check', 'ideal_weight_check', 'invariant_ring_dims', 'run_suite', 'vacuum_check',
           'weight_one_comparison']


def default_seed() -> int:
    return int(os.getenv('CHIRALCOH_SEED', DEFAULT_SEED))


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ''


@dataclass
class SuiteReport:
    """ This class stores the outcome of a verification suite

    Attributes
    ----------
    suite : str
        The suite name
    algebra : str
        The name of the Lie algebra the suite ran on
    seed : int
        The seed of the probe sampler
    results : list
        One CheckResult per check, in execution order
    notes : dict
        Values recorded by the suite without being asserted

    """

    suite: str
    algebra: str
    seed: int
    results: List[CheckResult] = field(default_factory=list)
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [result for result in self.results if not result.passed]

    def check(self, name: str, function: Callable[[], Optional[bool]]):
        """ Run a check; a raised VerificationFailure or a False return marks it failed. """
        try:
            outcome = function()
        except VerificationFailure as e:
            self.results.append(CheckResult(name, False, str(e)))
            return
        self.results.append(CheckResult(name, outcome is not False))

    def to_text(self) -> str:
        lines = [f'suite {self.suite} on {self.algebra} (seed {self.seed})']
        for result in self.results:
            status = 'ok  ' if result.passed else 'FAIL'
            lines.append(f'  {status} {result.name}' + (f': {result.detail}' if result.detail else ''))
        for key, value in self.notes.items():
            lines.append(f'  note {key}: {value}')
        lines.append('passed' if self.passed else f'{len(self.failures)} check(s) failed')
        return '\n'.join(lines)


def vacuum_check(a: State) -> bool:
    """ a∘_n vacuum = 0 for n = 0..3 and a∘_{−1} vacuum = a. """
    vacuum = State.vacuum(a.algebra)
    if normal_product(a, vacuum) != a:
        return False
    return all(circle(a, n, vacuum).is_zero() for n in range(4))


def derivation_check(current: State, x: State, y: State) -> bool:
    """ current(0) acts on :xy: by the Leibniz rule (current even). """
    left = circle(current, 0, normal_product(x, y))
    right = normal_product(circle(current, 0, x), y) + normal_product(x, circle(current, 0, y))
    return left == right


def ideal_weight_check(representatives: Sequence[State], modes: Sequence[int] = (-1, 0, 1)) -> bool:
    """ Circle products of homogeneous representatives are homogeneous of the expected degree and weight. """
    for a in representatives:
        for b in representatives:
            if a.is_zero() or b.is_zero():
                continue
            for n in modes:
                product = circle(a, n, b)
                if not circle_weight_check(a, b, n, product):
                    return False
                if product.is_zero():
                    continue
                if product.bidegree()[0] != a.bidegree()[0] + b.bidegree()[0]:
                    return False
    return True


@dataclass
class WeightOneComparison:
    """ dim H^p[1] of W(g) for p <= p_max next to dim Hom_g(g, S^k(g*)) for 2k + 2 <= p_max.

    Only the totals are compared; the pairing of degrees is recorded as found.

    Attributes
    ----------
    chiral : dict
        p -> dim H^p[1]
    multiplicities : dict
        k -> dim Hom_g(g, S^k(g*))

    """

    chiral: Dict[int, int]
    multiplicities: Dict[int, int]

    @property
    def total_chiral(self) -> int:
        return sum(self.chiral.values())

    @property
    def total_hom(self) -> int:
        return sum(self.multiplicities.values())

    @property
    def consistent(self) -> bool:
        return self.total_chiral == self.total_hom

    def degree_map(self) -> Dict[int, int]:
        """ The degrees carrying weight-one classes, paired with polynomial degrees in order. """
        degrees = [p for p, dim in sorted(self.chiral.items()) for _ in range(dim)]
        polynomial = [k for k, dim in sorted(self.multiplicities.items()) for _ in range(dim)]
        return dict(zip(degrees, polynomial))


def weight_one_comparison(lie: LieAlgebraData, p_max: int = 6, k_max: int = None,
                          workers: int = None) -> WeightOneComparison:
    W = build_weil(lie)
    table = cohomology(W, (-2, p_max), 1, workers=workers)
    chiral = {e.p: e.dim for e in table.entries if e.n == 1 and e.dim}
    k_max = (p_max - 2) // 2 if k_max is None else k_max
    multiplicities = {k: adjoint_multiplicity(lie, k) for k in range(k_max + 1)}
    return WeightOneComparison(chiral=chiral, multiplicities={k: v for k, v in multiplicities.items() if v})


def _sample(rng: random.Random, items: Sequence, count: int) -> List:
    if len(items) <= count:
        return list(items)
    return rng.sample(list(items), count)


def pinning_suite(report: SuiteReport, lie: LieAlgebraData, rep: Representation, window: Window, **kwargs):
    report.check('weil pinning suite', lambda: build_weil(lie, window))
    if rep is not None:
        report.check('cdr pinning suite', lambda: build_cdr(lie, rep, window))
    if lie.is_abelian:
        report.check('small weil complex', lambda: small_weil(lie))


def d2_suite(report: SuiteReport, lie: LieAlgebraData, rep: Representation, window: Window, tensor_window: Window,
             **kwargs):
    W = build_weil(lie, pin=False)
    report.check(f'd^2 = 0 on {W.name}', lambda: check_square_zero(W, window, VerificationFailure))
    if rep is not None:
        T = tensor_complex(W, build_cdr(lie, rep, pin=False), pin=False)
        report.check(f'd^2 = 0 on {T.name}', lambda: check_square_zero(T, tensor_window, VerificationFailure))
        report.check(f'O(sg) relations on {T.name}',
                     lambda: check_osg_relations(T, tensor_window, error=VerificationFailure))


def identities_suite(report: SuiteReport, lie: LieAlgebraData, window: Window, **kwargs):
    W = build_weil(lie, pin=False)
    report.check('d e = L and iota o_n e = -delta_(n,1) beta', lambda: contracting_element(W))
    report.check('L o_1 (beta b c) and b o_0 c', lambda: check_circle_one(W))
    report.check('weight-zero differential = classical Weil differential',
                 lambda: check_classical_restriction(W, window[1]))
    if not lie.is_abelian:
        for i in range(lie.dim):
            report.check(f'L o_1 theta_S({lie.basis_labels[i]}) = -delta', lambda i=i: theta_S(W, i))
    for gen in W.algebra.generators:
        report.check(f'vacuum axioms for {gen.label}',
                     lambda gen=gen: vacuum_check(State.generator(W.algebra, gen.label)))


def borcherds_suite(report: SuiteReport, lie: LieAlgebraData, seed: int, trials: int = 24, probes: int = 6,
                    **kwargs):
    rng = random.Random(seed)
    W = build_weil(lie, pin=False)
    fields = [State.generator(W.algebra, gen.label) for gen in W.algebra.generators]
    fields += [State.generator(W.algebra, gen.label, 1) for gen in W.algebra.generators if gen.weight == 0]
    fields += [x for x in W.lie_derivatives if not x.is_zero()]

    pool = [m for p in range(-2, 4) for n in range(2) for m in W.basis(p, n)]
    sample = [W.state(m) for m in _sample(rng, pool, probes)]

    for _ in range(trials):
        a, b = rng.choice(fields), rng.choice(fields)
        m, k = rng.randint(-2, 2), rng.randint(-2, 2)
        report.check(f'[{format_state(a)} ({m}), {format_state(b)} ({k})]',
                     lambda a=a, b=b, m=m, k=k: borcherds_check(a, b, m, k, sample))

    generators = fields[:len(W.algebra.generators)]
    for current in W.lie_derivatives:
        if current.is_zero():
            continue
        x, y = rng.choice(generators), rng.choice(generators)
        report.check(f'derivation property of {format_state(current)}',
                     lambda current=current, x=x, y=y: derivation_check(current, x, y))


def homotopy_suite(report: SuiteReport, lie: LieAlgebraData, rep: Representation, tensor_window: Window,
                   workers: int = None, **kwargs):
    if rep is None:
        raise ConfigError('the homotopy suite needs a representation')

    W = build_weil(lie, pin=False)
    cdr = build_cdr(lie, rep, pin=False)
    T = tensor_complex(W, cdr, pin=False)
    state = {}

    def alpha():
        state['alpha'] = build_alpha(lie, cdr, T)

    def homotopy():
        state['homotopy'] = vanishing_homotopy(T, state['alpha'], tensor_window)

    report.check('alpha is invariant, horizontal and L o_1 alpha = beta', alpha)
    if 'alpha' not in state:
        return
    report.check('[d, omega o_1] = L o_1', homotopy)

    p_min, p_max, n_max = tensor_window
    if n_max < 1:
        return

    def rank_route():
        table = cohomology(T, (p_min, p_max), n_max, workers=workers)
        report.notes['positive weight of tensor complex'] = table.character().positive_part().to_text()
        return table.character().positive_part().is_zero()

    report.check('positive-weight cohomology vanishes by ranks', rank_route)

    def chern_weil_kernel():
        table = cohomology(W, (max(p_min, 0), p_max), n_max, want_representatives=True, workers=workers)
        for entry in table.entries:
            for representative in entry.representatives:
                image = chern_weil(T, W, representative)
                if image.exact != (entry.n > 0):
                    return False
        return True

    report.check('positive-weight classes die under the Chern-Weil map', chern_weil_kernel)


def oracle_suite(report: SuiteReport, lie: LieAlgebraData, window: Window, workers: int = None, **kwargs):
    W = build_weil(lie, pin=False)
    p_max = max(window[1], 0)
    weight_zero = cohomology(W, (0, p_max), 0, workers=workers)
    invariants = invariant_ring_dims(lie, p_max // 2)

    def invariant_ring():
        for p in range(p_max + 1):
            expected = invariants[p // 2] if p % 2 == 0 else 0
            if weight_zero.dim(p, 0) != expected:
                return False
        return True

    report.notes['invariant ring dims'] = invariants
    report.check('weight-zero cohomology = invariant ring', invariant_ring)

    if lie.is_abelian:
        n_max = window[2]

        def polynomial_algebra():
            table = cohomology(W, (0, p_max), n_max, workers=workers)
            return cross_check(table, product_formula(lie.dim, p_max, n_max)).matches

        report.check('cohomology = polynomial algebra in gamma and its derivatives', polynomial_algebra)

    def ideal_property():
        table = cohomology(W, (0, min(p_max, 4)), min(window[2], 1), want_representatives=True, workers=workers)
        representatives = [r for e in table.entries for r in e.representatives]
        return ideal_weight_check(representatives)

    report.check('circle products of representatives respect the weight grading', ideal_property)


def exploratory_suite(report: SuiteReport, lie: LieAlgebraData, window: Window, workers: int = None, **kwargs):
    comparison = weight_one_comparison(lie, max(window[1], 0), workers=workers)
    report.notes['dim H^p[1]'] = comparison.chiral
    report.notes['dim Hom(g, S^k g*)'] = comparison.multiplicities
    report.notes['degree map'] = comparison.degree_map()
    report.check('total dim H^p[1] for p <= pmax = total dim Hom(g, S^k g*) for 2k + 2 <= pmax',
                 lambda: comparison.consistent)


SUITE_FUNCTIONS = {
    'pinning': pinning_suite,
    'borcherds': borcherds_suite,
    'd2': d2_suite,
    'homotopy': homotopy_suite,
    'identities': identities_suite,
    'oracle': oracle_suite,
    'exploratory': exploratory_suite,
}


def run_suite(suite: str, lie: LieAlgebraData, rep: Representation = None, seed: int = None,
              window: Window = None, workers: int = None) -> SuiteReport:
    """ Run one verification suite.

    Parameters
    ----------
    suite : str
        One of SUITES.
    lie : LieAlgebraData
        The Lie algebra.
    rep : Representation
        A representation, for the suites that involve Q_poly(V).
    seed : int
        Seed of the probe sampler (default from CHIRALCOH_SEED).
    window : tuple
        (p_min, p_max, n_max) of the checked pieces (default: PINNING_WINDOW for W(g) and Q_poly(V),
        TENSOR_PINNING_WINDOW for W(g)⊗Q_poly(V)); an explicit window applies to every complex.
    workers : int
        Processes for cohomology computations.

    Returns
    -------
    SuiteReport

    Raises
    ------
    ConfigError
        If the suite is unknown or needs a missing representation.
    TruncationOverflow
        If a piece exceeds the monomial budget.

    """
    if suite not in SUITE_FUNCTIONS:
        raise ConfigError(f'unknown suite {suite}, expected one of {", ".join(SUITES)}')

    seed = default_seed() if seed is None else seed
    report = SuiteReport(suite=suite, algebra=lie.name, seed=seed)
    tensor_window = window or TENSOR_PINNING_WINDOW
    window = window or PINNING_WINDOW
    SUITE_FUNCTIONS[suite](report, lie=lie, rep=rep, window=window, tensor_window=tensor_window, seed=seed,
                           workers=workers)
    return report
