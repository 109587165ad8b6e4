import unittest

from fractions import Fraction

from chiralcoh import lie
from chiralcoh.errors import AntisymmetryViolation, ConfigError, DegenerateForm, JacobiViolation, \
    SingularFormWhenNondegenerateRequired

SL2_DESCRIPTOR = {
    'name': 'sl2',
    'dim': 3,
    'basis': ['e', 'h', 'f'],
    'brackets': [[1, 0, 0, 2], [0, 1, 0, -2], [1, 2, 2, -2], [2, 1, 2, 2], [0, 2, 1, 1], [2, 0, 1, -1]],
    'form': 'killing',
    'flags': ['simple', 'semisimple']
}


def span(algebra, *vectors):
    return lie.SubalgebraEmbedding(algebra, tuple(tuple(Fraction(x) for x in v) for v in vectors))


class LieTestSuite(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.sl2 = lie.sl2()

    def test_sl2_brackets(self):
        assert self.sl2.basis_labels == ('e', 'h', 'f')
        assert self.sl2.bracket(1, 0) == {0: 2}
        assert self.sl2.bracket(1, 2) == {2: -2}
        assert self.sl2.bracket(0, 2) == {1: 1}
        assert not self.sl2.is_abelian
        assert self.sl2.requires_nondegenerate

    def test_ad_matrix(self):
        ad_h = self.sl2.ad_matrix(1)
        assert ad_h[0][0] == 2
        assert ad_h[2][2] == -2
        assert ad_h[1][1] == 0

    def test_killing_form(self):
        form = lie.killing_form(self.sl2)
        assert form[1][1] == 8
        assert form[0][2] == form[2][0] == 4
        assert form[0][0] == form[0][1] == 0

    def test_trace_form(self):
        form = lie.trace_form(self.sl2, lie.fundamental(self.sl2))
        assert form[1][1] == 2
        assert form[0][2] == 1

    def test_dual_basis(self):
        dual = lie.dual_basis(self.sl2.form)
        assert dual[0][2] == dual[2][0] == Fraction(1, 4)
        assert dual[1][1] == Fraction(1, 8)
        assert dual[0][0] == 0

    def test_dual_basis_of_singular_form(self):
        with self.assertRaises(DegenerateForm):
            lie.dual_basis(lie.as_matrix([[1, 1], [1, 1]]))

    def test_load_algebra(self):
        algebra = lie.load_algebra(SL2_DESCRIPTOR)
        assert algebra.structure_constants == self.sl2.structure_constants
        assert algebra.form == self.sl2.form

    def test_load_algebra_jacobi_violation(self):
        descriptor = {'dim': 3, 'brackets': [[0, 1, 0, 1], [1, 0, 0, -1], [1, 2, 1, 1], [2, 1, 1, -1]]}
        with self.assertRaises(JacobiViolation):
            lie.load_algebra(descriptor)

    def test_load_algebra_antisymmetry_violation(self):
        with self.assertRaises(AntisymmetryViolation):
            lie.load_algebra({'dim': 2, 'brackets': [[0, 1, 0, 1]]})

    def test_load_algebra_singular_form(self):
        with self.assertRaises(SingularFormWhenNondegenerateRequired):
            lie.load_algebra({'dim': 2, 'flags': ['simple']})

        with self.assertRaises(SingularFormWhenNondegenerateRequired):
            lie.load_algebra({'dim': 2, 'form': 'killing', 'flags': ['nondegenerate']})

    def test_load_algebra_malformed(self):
        with self.assertRaises(ConfigError):
            lie.load_algebra({'name': 'nodim'})

        with self.assertRaises(ConfigError):
            lie.load_algebra({'dim': 2, 'basis': ['x']})

    def test_load_algebra_form_from_representation(self):
        descriptor = dict(SL2_DESCRIPTOR)
        descriptor['form'] = {'from_representation': {'dim': 2, 'matrices': [[[0, 1], [0, 0]],
                                                                            [[1, 0], [0, -1]],
                                                                            [[0, 0], [1, 0]]]}}
        algebra = lie.load_algebra(descriptor)
        assert algebra.form[1][1] == 2
        assert algebra.form[0][2] == 1

    def test_representations(self):
        assert lie.validate_representation(self.sl2, lie.fundamental(self.sl2)).dim == 2
        assert lie.validate_representation(self.sl2, lie.adjoint(self.sl2)).dim == 3
        assert lie.adjoint(self.sl2).coordinate_labels() == ('v1', 'v2', 'v3')

    def test_bad_representation(self):
        e, h, f = lie.sl2_matrices()
        with self.assertRaises(ConfigError):
            lie.validate_representation(self.sl2, lie.Representation(dim=2, matrices=(e, f, h)))

        with self.assertRaises(ConfigError):
            lie.validate_representation(self.sl2, lie.Representation(dim=2, matrices=(e, h)))

    def test_coadjoint_span_sl2(self):
        assert lie.coadjoint_span(self.sl2, span(self.sl2, (0, 1, 0)))
        assert not lie.coadjoint_span(self.sl2, span(self.sl2, (1, 0, 0), (0, 1, 0)))

    def test_coadjoint_span_not_a_subalgebra(self):
        with self.assertRaises(ConfigError):
            lie.coadjoint_span(self.sl2, span(self.sl2, (1, 0, 0), (0, 0, 1)))

    @staticmethod
    def test_coadjoint_span_abelian():
        algebra = lie.abelian(2)
        assert not lie.coadjoint_span(algebra, span(algebra, (1, 0)))

    @staticmethod
    def test_coadjoint_span_semisimple():
        algebra = lie.sl2xsl2()
        factor = span(algebra, (1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0))
        diagonal = span(algebra, (1, 0, 0, 1, 0, 0), (0, 1, 0, 0, 1, 0), (0, 0, 1, 0, 0, 1))
        assert not lie.coadjoint_span(algebra, factor)
        assert lie.coadjoint_span(algebra, diagonal)

    def test_coadjoint_span_without_form(self):
        algebra = lie.load_algebra({'dim': 3, 'brackets': SL2_DESCRIPTOR['brackets']})
        with self.assertRaises(DegenerateForm):
            lie.coadjoint_span(algebra, span(algebra, (0, 1, 0)))

    @staticmethod
    def test_builtin_algebras():
        assert lie.builtin_algebra('abelian3').dim == 3
        assert lie.builtin_algebra('abelian1').basis_labels == ('t',)
        assert lie.builtin_algebra('sl3').dim == 8
        assert lie.builtin_algebra('sl2xsl2').basis_labels == ('e1', 'h1', 'f1', 'e2', 'h2', 'f2')

        for name in lie.BUILTIN_ALGEBRAS:
            lie.validate_algebra(lie.builtin_algebra(name))

    def test_unknown_builtins(self):
        with self.assertRaises(ConfigError):
            lie.builtin_algebra('so5')

        with self.assertRaises(ConfigError):
            lie.builtin_representation('spin', self.sl2)

        with self.assertRaises(ConfigError):
            lie.fundamental(lie.abelian(1))


if __name__ == '__main__':
    unittest.main()
