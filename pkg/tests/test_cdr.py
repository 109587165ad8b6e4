import os
import unittest

from chiralcoh.cohomology import chern_weil, cohomology
from chiralcoh.complexes import cdr
from chiralcoh.complexes.base import check_square_zero
from chiralcoh.complexes.weil import build_weil
from chiralcoh.errors import ConfigError, HomotopyConditionsFailed, NotACocycle
from chiralcoh.fock import State
from chiralcoh.lie import Representation, abelian, as_matrix, fundamental, sl2, sl2_matrices

SLOW = bool(os.getenv('CHIRALCOH_SLOW_TESTS'))


class LinearCDRTestSuite(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.lie = sl2()
        cls.rep = fundamental(cls.lie)
        cls.cdr = cdr.build_cdr(cls.lie, cls.rep)
        cls.Q = cls.cdr.complex

    def generator(self, label):
        return State.generator(self.Q.algebra, label)

    def test_generators(self):
        labels = [gen.label for gen in self.Q.algebra.generators]
        assert labels == ['beta{x1}', 'beta{x2}', "gamma{x1'}", "gamma{x2'}", 'b{x1}', 'b{x2}', "c{x1'}", "c{x2'}"]

    def test_differential(self):
        assert self.Q.d(self.generator("gamma{x1'}")) == self.generator("c{x1'}")
        assert self.Q.d(self.generator('b{x2}')) == self.generator('beta{x2}')
        assert self.Q.d(self.generator("c{x1'}")).is_zero()
        assert self.Q.d(self.cdr.g_field) == self.Q.conformal

    def test_charge_zero_pieces(self):
        assert self.Q.basis(0, 0) == ((),)
        assert self.Q.basis(1, 0) == ()

    def test_gamma_fields(self):
        assert len(self.cdr.gamma_fields) == 3
        for gamma in self.cdr.gamma_fields:
            assert gamma.bidegree() == (0, 1)

    def test_traceless(self):
        assert cdr.acts_traceless(self.lie, self.rep)
        one = Representation(dim=1, matrices=(as_matrix([[1]]),))
        assert not cdr.acts_traceless(abelian(1), one)

    def test_not_a_representation(self):
        e, h, f = sl2_matrices()
        with self.assertRaises(ConfigError):
            cdr.build_cdr(self.lie, Representation(dim=2, matrices=(e, f, h)))


class TensorComplexTestSuite(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.lie = sl2()
        cls.W = build_weil(cls.lie)
        cls.cdr = cdr.build_cdr(cls.lie, fundamental(cls.lie))
        cls.T = cdr.tensor_complex(cls.W, cls.cdr, window=(0, 2, 1))
        cls.alpha = cdr.build_alpha(cls.lie, cls.cdr, cls.T)

    def test_generator_table(self):
        assert len(self.T.algebra.generators) == 20
        assert self.T.algebra.generators[12].label == 'beta{x1}'

    def test_alpha(self):
        assert self.alpha.bidegree() == (-2, 2)

    def test_vanishing_homotopy(self):
        homotopy = cdr.vanishing_homotopy(self.T, self.alpha, window=(-1, 2, 1))
        assert (2, 1) in homotopy.checked
        assert self.T.d(homotopy.omega) == self.T.conformal

    def test_homotopy_contracts_positive_weight(self):
        homotopy = cdr.vanishing_homotopy(self.T, self.alpha, window=(0, 0, 0))
        d_beta = self.T.d(State.generator(self.T.algebra, 'beta{e}'))
        primitive = homotopy.primitive(d_beta)
        assert self.T.d(primitive) == d_beta

        with self.assertRaises(ValueError):
            homotopy.primitive(State.vacuum(self.T.algebra))

    def test_positive_weight_cohomology_vanishes(self):
        table = cohomology(self.T, (0, 2), 1)
        assert table.dim(0, 0) == 1
        assert table.dim(2, 0) == 0
        assert all(table.dim(p, 1) == 0 for p in range(3))

    def test_chern_weil(self):
        table = cohomology(self.W, (4, 4), 0, want_representatives=True)
        casimir = table.entries[0].representatives[0]
        assert not chern_weil(self.T, self.W, casimir).exact
        assert chern_weil(self.T, self.W, State(self.W.algebra)).exact

        with self.assertRaises(NotACocycle):
            chern_weil(self.T, self.W, State.generator(self.W.algebra, "c{e'}"))

    def test_chern_weil_kills_weight_one_class(self):
        table = cohomology(self.W, (4, 4), 1, want_representatives=True)
        entry = [e for e in table.entries if e.n == 1][0]
        assert entry.dim == 1

        image = chern_weil(self.T, self.W, entry.representatives[0])
        assert image.exact
        assert image.primitive.bidegree() == (3, 1)
        assert self.T.d(image.primitive) == image.image
        for op in self.T.basic_operators(1):
            assert op(image.primitive).is_zero()

        homotopy = cdr.vanishing_homotopy(self.T, self.alpha, window=(0, 0, 0))
        assert self.T.d(homotopy.primitive(image.image)) == image.image

    def test_charged_pieces_have_no_basic_cohomology(self):
        for charge in (1, -1):
            charged = self.T.with_charge(charge)
            assert charged.basis(0, 1)
            table = cohomology(charged, (-1, 2), 1)
            assert all(entry.dim == 0 for entry in table.entries), table.entries

    def test_charge_zero_is_the_default(self):
        assert self.T.charge == 0
        assert self.T.with_charge(0).basis(1, 1) == self.T.basis(1, 1)
        assert not set(self.T.with_charge(1).basis(0, 1)) & set(self.T.basis(0, 1))

    @unittest.skipUnless(SLOW, 'set CHIRALCOH_SLOW_TESTS to run weight-two pieces of the tensor complex')
    def test_weight_two_vanishes(self):
        cdr.vanishing_homotopy(self.T, self.alpha, window=(-1, 1, 2))
        table = cohomology(self.T, (0, 2), 2)
        assert all(table.dim(p, 2) == 0 for p in range(3))

    @unittest.skipUnless(SLOW, 'set CHIRALCOH_SLOW_TESTS to run the tensor complex on -6 <= p <= 8, n <= 2')
    def test_square_zero_on_wide_window(self):
        check_square_zero(self.T, (-6, 8, 2))

    @unittest.skipUnless(SLOW, 'set CHIRALCOH_SLOW_TESTS to run the homotopy on -4 <= p <= 6, n <= 2')
    def test_homotopy_and_ranks_on_wide_window(self):
        homotopy = cdr.vanishing_homotopy(self.T, self.alpha, window=(-4, 6, 2))
        assert (6, 2) in homotopy.checked

        table = cohomology(self.T, (-4, 6), 2)
        assert table.character().positive_part().is_zero()
        assert [p for p in range(-4, 7) if table.dim(p, 0)] == [0, 4]


class AbelianAlphaTestSuite(unittest.TestCase):

    def test_abelian_has_no_alpha(self):
        lie = abelian(1)
        rep = Representation(dim=1, matrices=(as_matrix([[1]]),))
        linear = cdr.build_cdr(lie, rep)
        T = cdr.tensor_complex(build_weil(lie), linear, pin=False)
        with self.assertRaises(HomotopyConditionsFailed):
            cdr.build_alpha(lie, linear, T)


if __name__ == '__main__':
    unittest.main()
