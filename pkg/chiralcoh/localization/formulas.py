"""
Localization theorems as exact operations on character series.

χ(G) denotes the character of the chiral equivariant cohomology of a point, χ_+(G) its positive-weight part and
P(X) the Poincaré series of a fixed set X placed in weight zero.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from chiralcoh.errors import C0OutOfRange, ConfigError, MissingBetti
from chiralcoh.files import CohomologyTable
from chiralcoh.lie import LieAlgebraData
from chiralcoh.series import CharacterSeries, product_formula

BRANCHES = {'minus2': 2, 'minus1': 1}


def hgc_character(lie: LieAlgebraData, p_max: int, n_max: int, workers: int = None) -> CharacterSeries:
    """ χ(G) up to z^p_max q^n_max.

    Abelian algebras use the product formula Π_{k>=0}(1 − z²q^k)^(−rank); other algebras run the cohomology
    engine on W(g).

    Raises
    ------
    TruncationOverflow
        If a piece of W(g) exceeds the monomial budget.

    """
    if lie.is_abelian:
        return product_formula(lie.dim, p_max, n_max)

    from chiralcoh.cohomology import cohomology
    from chiralcoh.complexes.weil import build_weil

    table = cohomology(build_weil(lie), (0, p_max), n_max, workers=workers)
    return table.character()


def circle_character(p_max: int, n_max: int) -> CharacterSeries:
    return product_formula(1, p_max, n_max)


def fixed_poincare(betti: Optional[Sequence[int]], p_max: int, n_max: int, name: str = 'fixed set') -> CharacterSeries:
    if betti is None:
        raise MissingBetti(f'Betti numbers of the {name} are required')
    if any(b < 0 for b in betti):
        raise ConfigError(f'Betti numbers of the {name} must be nonnegative')
    return CharacterSeries.poincare(betti, p_max, n_max)


def simple_localization(chi: CharacterSeries, fixed: CharacterSeries, classical: CharacterSeries) -> CharacterSeries:
    """ χ(G, M) = P(H*_G(M)) + χ_+(G)·P(M^G). """
    return classical.weight_zero() + chi.positive_part() * fixed


def circle_localization(fixed: CharacterSeries, classical: CharacterSeries) -> CharacterSeries:
    """ simple_localization with χ(S¹) from the product formula. """
    chi = circle_character(min(fixed.p_max, classical.p_max), min(fixed.n_max, classical.n_max))
    return simple_localization(chi, fixed, classical)


def product_simple_localization(chi1: CharacterSeries, chi2: CharacterSeries, h_g2_fixed1: CharacterSeries,
                                h_g1_fixed2: CharacterSeries, fixed: CharacterSeries,
                                classical: CharacterSeries = None) -> CharacterSeries:
    """ χ_+ = χ_+(G₁)·P(H*_{G₂}(M^{G₁})) + χ_+(G₂)·P(H*_{G₁}(M^{G₂})) + χ_+(G₁)·χ_+(G₂)·P(M^G), plus the q⁰ layer. """
    a, b = chi1.positive_part(), chi2.positive_part()
    positive = a * h_g2_fixed1 + b * h_g1_fixed2 + a * b * fixed
    if classical is None:
        return positive
    return classical.weight_zero() + positive


def default_torus_classical(p_max: int, n_max: int) -> CharacterSeries:
    """ P(H*_T(CP²)) = (1 + z² + z⁴)/(1 − z²)² for the standard rank-2 torus action. """
    numerator = CharacterSeries.polynomial({(0, 0): 1, (2, 0): 1, (4, 0): 1}, p_max, n_max)
    denominator = CharacterSeries.geometric(2, 0, p_max, n_max)
    return numerator * denominator * denominator


def torus_cp2_character(p_max: int, n_max: int, classical: CharacterSeries = None) -> CharacterSeries:
    """ χ(T, CP²) = P(H*_T(CP²)) + 3·χ_+(S¹)·(1 + z²)/(1 − z²) + 3·χ_+(S¹)². """
    if classical is None:
        classical = default_torus_classical(p_max, n_max)
    chi_plus = circle_character(p_max, n_max).positive_part()
    cp1 = CharacterSeries.polynomial({(0, 0): 1, (2, 0): 1}, p_max, n_max) * \
        CharacterSeries.geometric(2, 0, p_max, n_max)
    return classical.weight_zero() + chi_plus * cp1 * 3 + chi_plus * chi_plus * 3


def homogeneous_character(chi_k0: CharacterSeries, poincare: CharacterSeries) -> CharacterSeries:
    """ χ(G, G/H) = χ(K₀)·P(H*_{G'}(G/H)). """
    return chi_k0 * poincare


def q_structure_character(chi_k0: CharacterSeries, poincare: CharacterSeries) -> CharacterSeries:
    """ χ(G, M) = χ(K₀)·P(H*_{G'}(M)); the positive part vanishes when K₀ is trivial. """
    return chi_k0 * poincare


def effective_character(chi_k0: CharacterSeries, chi_effective: CharacterSeries) -> CharacterSeries:
    """ χ_G(M) = χ(K₀)·χ_{G'}(M) for a subgroup K₀ acting trivially. """
    return chi_k0 * chi_effective


def finite_cover_character(chi: CharacterSeries) -> CharacterSeries:
    """ Passing to a quotient by a finite normal subgroup leaves the character unchanged. """
    return chi


def circle_generation_check(series: CharacterSeries, fixed: CharacterSeries) -> bool:
    """ The positive part of a circle-localized series is χ_+(S¹)·P(M^{S¹}), with χ_+(S¹) = χ(S¹) − 1/(1 − z²). """
    chi = circle_character(series.p_max, series.n_max)
    chi_plus = chi - CharacterSeries.geometric(2, 0, series.p_max, series.n_max)
    if chi_plus.mismatches(chi.positive_part()):
        return False
    return not series.positive_part().mismatches(chi_plus * fixed)


@dataclass
class SphereStep:
    """ One member of the sphere family: the component count of its fixed set and both characters. """

    components: int
    chiral: CharacterSeries
    classical: CharacterSeries


@dataclass
class SphereSequence:
    steps: List[SphereStep] = field(default_factory=list)

    @property
    def components(self) -> List[int]:
        return [step.components for step in self.steps]

    @property
    def classical_equal(self) -> bool:
        return all(not step.classical.mismatches(self.steps[0].classical) for step in self.steps)

    @property
    def chiral_distinct(self) -> bool:
        for i, a in enumerate(self.steps):
            for b in self.steps[i + 1:]:
                if not a.chiral.mismatches(b.chiral):
                    return False
        return True


def sphere_components(c0: int, branches: Sequence[str]) -> List[int]:
    """ c_i = 2c_{i−1} − 2 (branch minus2) or 2c_{i−1} − 1 (branch minus1), starting from c0 in [3, 6].

    Raises
    ------
    C0OutOfRange
        If c0 is not in [3, 6].
    ConfigError
        If a branch is unknown.

    """
    if not 3 <= c0 <= 6:
        raise C0OutOfRange(f'c0 = {c0} lies outside [3, 6]')
    components = [c0]
    for branch in branches:
        if branch not in BRANCHES:
            raise ConfigError(f'unknown branch {branch}, expected one of {", ".join(BRANCHES)}')
        components.append(2 * components[-1] - BRANCHES[branch])
    return components


def sphere_sequence(c0: int, branches: Sequence[str], dim: int, chi: CharacterSeries,
                    betti: Sequence[Sequence[int]] = None) -> SphereSequence:
    """ The sphere family: identical classical series P(H*_G(pt))·(1 + z^dim), chiral series
    classical + χ_+(G)·P(S_i^G) with P(S_i^G) = c_i unless Betti numbers are given per step.

    Raises
    ------
    C0OutOfRange, ConfigError

    """
    p_max, n_max = chi.p_max, chi.n_max
    sphere = CharacterSeries.polynomial({(0, 0): 1, (dim, 0): 1}, p_max, n_max)
    classical = chi.weight_zero() * sphere
    sequence = SphereSequence()
    for i, c in enumerate(sphere_components(c0, branches)):
        if betti is not None and i < len(betti) and betti[i]:
            fixed = CharacterSeries.poincare(betti[i], p_max, n_max)
        else:
            fixed = CharacterSeries.poincare([c], p_max, n_max)
        sequence.steps.append(SphereStep(components=c, chiral=classical + chi.positive_part() * fixed,
                                         classical=classical))
    return sequence


@dataclass
class CrossCheckReport:
    """ Coefficientwise comparison of an engine table with a formula series. """

    complex: str
    mismatches: List[Tuple[int, int, object, object]] = field(default_factory=list)

    @property
    def matches(self) -> bool:
        return not self.mismatches


def cross_check(table: CohomologyTable, series: CharacterSeries, positive_only: bool = False) -> CrossCheckReport:
    """ Compare the character of a table with a series on the overlapping truncation. """
    engine = table.character()
    if positive_only:
        engine, series = engine.positive_part(), series.positive_part()
    mismatches = [m for m in engine.mismatches(series) if m[0] >= table.p_min]
    return CrossCheckReport(complex=table.complex, mismatches=mismatches)
