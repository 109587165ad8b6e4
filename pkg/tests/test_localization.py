import unittest

from fractions import Fraction

from chiralcoh.errors import C0OutOfRange, ConfigError, MissingBetti
from chiralcoh.files import CohomologyEntry, CohomologyTable, FixedPointData
from chiralcoh.lie import abelian
from chiralcoh.localization import formulas
from chiralcoh.localization.base import group_algebra
from chiralcoh.localization.scenarios import CircleScenario, HomogeneousScenario, SimpleScenario, get_scenario
from chiralcoh.series import CharacterSeries, product_formula


class FormulasTestSuite(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.chi = product_formula(1, 6, 2)

    def test_simple_localization(self):
        cp1 = formulas.simple_localization(self.chi, CharacterSeries.poincare([2], 6, 2),
                                           CharacterSeries.poincare([1, 0, 2, 0, 2, 0, 2], 6, 2))
        assert cp1.coefficient(2, 1) == 2
        assert cp1.coefficient(0, 0) == 1

        cp2 = formulas.simple_localization(self.chi, CharacterSeries.poincare([3], 6, 2),
                                           CharacterSeries.poincare([1], 6, 2))
        assert cp2.coefficient(2, 1) == 3
        assert cp2.coefficient(4, 2) == 6

    @staticmethod
    def test_torus_cp2():
        series = formulas.torus_cp2_character(6, 2)
        assert series.coefficient(2, 1) == 3
        assert series.coefficient(4, 1) == 9
        assert series.coefficient(0, 0) == 1
        assert series.coefficient(2, 0) == 3

    @staticmethod
    def test_product_simple_localization():
        chi = product_formula(1, 4, 2)
        one = CharacterSeries.one(4, 2)
        series = formulas.product_simple_localization(chi, chi, one, one, one)
        assert series.coefficient(2, 1) == 2
        assert series.coefficient(4, 2) == 2 * 2 + 1
        assert series.weight_zero().is_zero()

        with_classical = formulas.product_simple_localization(chi, chi, one, one, one, one)
        assert with_classical.coefficient(0, 0) == 1

    def test_kernel_formulas(self):
        poincare = CharacterSeries.poincare([1, 0, 1], 6, 2)
        assert formulas.homogeneous_character(self.chi, poincare) == self.chi * poincare
        assert formulas.effective_character(self.chi, poincare) == self.chi * poincare
        assert formulas.q_structure_character(CharacterSeries.one(6, 2), poincare).positive_part().is_zero()
        assert formulas.finite_cover_character(self.chi) is self.chi

    def test_circle_generation(self):
        fixed = CharacterSeries.poincare([2], 6, 2)
        series = formulas.circle_localization(fixed, CharacterSeries.poincare([1, 0, 2], 6, 2))
        assert formulas.circle_generation_check(series, fixed)

        perturbed = series + CharacterSeries({(2, 2): 1}, 6, 2)
        assert not formulas.circle_generation_check(perturbed, fixed)

    def test_fixed_poincare(self):
        assert formulas.fixed_poincare([1, 0, 1], 4, 1) == CharacterSeries.poincare([1, 0, 1], 4, 1)
        with self.assertRaises(MissingBetti):
            formulas.fixed_poincare(None, 4, 1)
        with self.assertRaises(ConfigError):
            formulas.fixed_poincare([1, -1], 4, 1)

    @staticmethod
    def test_abelian_group_character():
        assert formulas.hgc_character(abelian(2), 4, 1) == product_formula(2, 4, 1)
        assert formulas.circle_character(4, 1) == product_formula(1, 4, 1)

    @staticmethod
    def test_sphere_components():
        assert formulas.sphere_components(3, ['minus2', 'minus1']) == [3, 4, 7]
        assert formulas.sphere_components(3, ['minus1']) == [3, 5]
        assert formulas.sphere_components(6, []) == [6]

    def test_sphere_components_out_of_range(self):
        with self.assertRaises(C0OutOfRange):
            formulas.sphere_components(2, ['minus2'])
        with self.assertRaises(C0OutOfRange):
            formulas.sphere_components(7, [])
        with self.assertRaises(ConfigError):
            formulas.sphere_components(3, ['minus3'])

    def test_sphere_sequence(self):
        sequence = formulas.sphere_sequence(3, ['minus2', 'minus1'], 6, self.chi)
        assert sequence.components == [3, 4, 7]
        assert sequence.classical_equal
        assert sequence.chiral_distinct
        assert [step.chiral.coefficient(2, 1) for step in sequence.steps] == [3, 4, 7]
        assert sequence.steps[0].classical.coefficient(6, 0) == 2

    def test_sphere_sequence_with_betti(self):
        sequence = formulas.sphere_sequence(3, ['minus2'], 6, self.chi, betti=[[3], [2, 0, 1]])
        assert sequence.steps[1].chiral.coefficient(4, 1) == 3

    def test_cross_check(self):
        entries = [CohomologyEntry(p=p, n=n, dim=int(self.chi.coefficient(p, n))) for n in range(2) for p in range(5)]
        table = CohomologyTable(complex='W(abelian1)', p_min=0, p_max=4, n_max=1, entries=entries)
        assert formulas.cross_check(table, self.chi).matches

        entries[7] = CohomologyEntry(p=2, n=1, dim=5)
        report = formulas.cross_check(table, self.chi)
        assert not report.matches
        assert report.mismatches == [(2, 1, Fraction(5), Fraction(1))]
        assert not formulas.cross_check(table, self.chi, positive_only=True).matches


class ScenariosTestSuite(unittest.TestCase):

    def test_group_algebra(self):
        assert group_algebra('circle').dim == 1
        assert group_algebra('torus3').dim == 3
        assert group_algebra('sl2').dim == 3
        with self.assertRaises(ConfigError):
            group_algebra('torus')

    @staticmethod
    def test_simple():
        data = FixedPointData(scenario='simple', p_max=4, n_max=1, groups=['circle'], betti={'fixed': [3]})
        result = get_scenario(data).run()
        assert result.character.coefficient(2, 1) == 3
        assert result.series['group'] == product_formula(1, 4, 1)

    def test_simple_needs_group_and_betti(self):
        with self.assertRaises(ConfigError):
            SimpleScenario(FixedPointData(scenario='simple', betti={'fixed': [1]})).run()
        with self.assertRaises(MissingBetti):
            SimpleScenario(FixedPointData(scenario='simple', p_max=4, n_max=1, groups=['circle'])).run()

    def test_circle(self):
        data = FixedPointData(scenario='circle', p_max=6, n_max=2, betti={'fixed': [2]},
                              poincare={'classical': {'numerator': [1, 0, 1], 'denominator': [1, 0, -1]}})
        result = CircleScenario(data).run()
        assert result.notes['generated_by_circle']
        assert result.character.coefficient(2, 0) == 2
        assert result.character.coefficient(2, 1) == 2

        with self.assertRaises(MissingBetti):
            CircleScenario(FixedPointData(scenario='circle', betti={'fixed': [2]})).run()

    @staticmethod
    def test_product_simple():
        data = FixedPointData(scenario='product-simple', p_max=4, n_max=2, groups=['circle', 'circle'],
                              betti={'fixed': [1]}, poincare={'h_g2_fixed1': [1], 'h_g1_fixed2': [1]})
        assert get_scenario(data).run().character.coefficient(2, 1) == 2

    @staticmethod
    def test_torus_cp2():
        result = get_scenario(FixedPointData(scenario='torus-cp2', p_max=4, n_max=1)).run()
        assert result.character.coefficient(2, 1) == 3
        assert result.character.coefficient(4, 1) == 9

    @staticmethod
    def test_homogeneous():
        data = FixedPointData(scenario='homogeneous', p_max=4, n_max=2, poincare={'base': [1]},
                              kernel={'k0_rank': 1})
        result = get_scenario(data).run()
        assert result.character == product_formula(1, 4, 2)
        assert result.notes['kernel_divides']

    @staticmethod
    def test_q_structure_with_finite_kernel():
        data = FixedPointData(scenario='q-structure', p_max=4, n_max=2, poincare={'base': [1, 0, 1]})
        result = get_scenario(data).run()
        assert result.character.positive_part().is_zero()
        assert result.character.coefficient(2, 0) == 1

    @staticmethod
    def test_sphere_sequence():
        data = FixedPointData(scenario='sphere-seq', p_max=6, n_max=1, groups=['circle'],
                              sphere={'c0': 3, 'branches': ['minus2', 'minus1']})
        result = get_scenario(data).run()
        assert result.notes['components'] == [3, 4, 7]
        assert result.notes['classical_equal']
        assert result.notes['chiral_distinct']
        assert set(result.series) == {'chiral_0', 'chiral_1', 'chiral_2', 'character', 'classical'}

    def test_sphere_sequence_errors(self):
        with self.assertRaises(C0OutOfRange):
            get_scenario(FixedPointData(scenario='sphere-seq', groups=['circle'], sphere={'c0': 8})).run()
        with self.assertRaises(ConfigError):
            get_scenario(FixedPointData(scenario='sphere-seq', groups=['circle'])).run()

    def test_scenario_mismatch(self):
        with self.assertRaises(ConfigError):
            HomogeneousScenario(FixedPointData(scenario='simple'))
        with self.assertRaises(ConfigError):
            get_scenario(FixedPointData(scenario='unknown'))


if __name__ == '__main__':
    unittest.main()
