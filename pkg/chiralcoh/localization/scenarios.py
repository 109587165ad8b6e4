from typing import Dict, Type

from chiralcoh.errors import ConfigError
from chiralcoh.files import FixedPointData
from chiralcoh.localization import formulas
from chiralcoh.localization.base import BaseScenario, LocalizationResult
from chiralcoh.series import CharacterSeries, divides, product_formula


class SimpleScenario(BaseScenario):
    """ A simple group G acting with fixed set M^G. """

    scenario = 'simple'

    def run(self) -> LocalizationResult:
        chi = self.group_character(self.group())
        classical = self.poincare('classical', required=False)
        if classical is None:
            classical = chi.weight_zero() * self.fixed()
        series = formulas.simple_localization(chi, self.fixed(), classical)
        return LocalizationResult(self.scenario, {'character': series, 'group': chi})


class CircleScenario(BaseScenario):
    """ A circle action; the classical series P(H*_{S¹}(M)) is required. """

    scenario = 'circle'

    def run(self) -> LocalizationResult:
        fixed = self.fixed()
        series = formulas.circle_localization(fixed, self.poincare('classical'))
        return LocalizationResult(self.scenario, {'character': series},
                                  {'generated_by_circle': formulas.circle_generation_check(series, fixed)})


class ProductSimpleScenario(BaseScenario):
    """ G₁×G₂ with both factors simple. """

    scenario = 'product-simple'

    def run(self) -> LocalizationResult:
        chi1 = self.group_character(self.group(0))
        chi2 = self.group_character(self.group(1))
        series = formulas.product_simple_localization(chi1, chi2, self.poincare('h_g2_fixed1'),
                                                      self.poincare('h_g1_fixed2'), self.fixed(),
                                                      self.poincare('classical', required=False))
        return LocalizationResult(self.scenario, {'character': series, 'group1': chi1, 'group2': chi2})


class TorusCP2Scenario(BaseScenario):
    """ The standard rank-2 torus action on CP². """

    scenario = 'torus-cp2'

    def run(self) -> LocalizationResult:
        series = formulas.torus_cp2_character(self.p_max, self.n_max, self.poincare('classical', required=False))
        return LocalizationResult(self.scenario, {'character': series})


class HomogeneousScenario(BaseScenario):
    """ G/H, with the kernel K of the action given through the rank of its identity component K₀. """

    scenario = 'homogeneous'
    series_key = 'base'

    def kernel_character(self) -> CharacterSeries:
        rank = int(self.data.kernel.get('k0_rank', 0))
        if rank < 0:
            raise ConfigError('k0_rank must be nonnegative')
        if rank == 0:
            return CharacterSeries.one(self.p_max, self.n_max)
        return product_formula(rank, self.p_max, self.n_max)

    def character(self, chi_k0: CharacterSeries, poincare: CharacterSeries) -> CharacterSeries:
        return formulas.homogeneous_character(chi_k0, poincare)

    def run(self) -> LocalizationResult:
        chi_k0 = formulas.finite_cover_character(self.kernel_character())
        poincare = self.poincare(self.series_key)
        series = self.character(chi_k0, poincare)
        notes = {'kernel_divides': divides(chi_k0, series) if poincare.is_nonnegative_integral() else None}
        return LocalizationResult(self.scenario, {'character': series, 'kernel': chi_k0}, notes)


class QStructureScenario(HomogeneousScenario):
    """ A manifold whose Q(M)-structure is governed by the kernel of the action. """

    scenario = 'q-structure'

    def character(self, chi_k0: CharacterSeries, poincare: CharacterSeries) -> CharacterSeries:
        return formulas.q_structure_character(chi_k0, poincare)


class SphereSequenceScenario(BaseScenario):
    """ The sphere family with fixed sets of c_i components. """

    scenario = 'sphere-seq'

    def run(self) -> LocalizationResult:
        sphere = self.data.sphere
        try:
            c0 = int(sphere['c0'])
            branches = list(sphere.get('branches', []))
            dim = int(sphere.get('dim', 6))
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f'malformed sphere data: {e}')

        chi = self.group_character(self.data.groups[0] if self.data.groups else 'sl2')
        sequence = formulas.sphere_sequence(c0, branches, dim, chi, sphere.get('betti'))
        series = {f'chiral_{i}': step.chiral for i, step in enumerate(sequence.steps)}
        series['character'] = sequence.steps[0].chiral
        series['classical'] = sequence.steps[0].classical
        notes = {'components': sequence.components, 'classical_equal': sequence.classical_equal,
                 'chiral_distinct': sequence.chiral_distinct}
        return LocalizationResult(self.scenario, series, notes)


SCENARIO_CLASSES: Dict[str, Type[BaseScenario]] = {
    cls.scenario: cls for cls in (SimpleScenario, CircleScenario, ProductSimpleScenario, TorusCP2Scenario,
                                  HomogeneousScenario, QStructureScenario, SphereSequenceScenario)
}


def get_scenario(data: FixedPointData, workers: int = None) -> BaseScenario:
    if data.scenario not in SCENARIO_CLASSES:
        raise ConfigError(f'unknown scenario {data.scenario}')
    return SCENARIO_CLASSES[data.scenario](data, workers)
