import unittest

from chiralcoh import fields
from chiralcoh.complexes.weil import weil_algebra
from chiralcoh.errors import MixedComplex
from chiralcoh.fock import State, derivative, enumerate_basis
from chiralcoh.lie import abelian


class FieldsTestSuite(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.algebra = weil_algebra(abelian(1))
        cls.vacuum = State.vacuum(cls.algebra)
        cls.beta = State.generator(cls.algebra, 'beta{t}')
        cls.gamma = State.generator(cls.algebra, "gamma{t'}")
        cls.b = State.generator(cls.algebra, 'b{t}')
        cls.c = State.generator(cls.algebra, "c{t'}")
        cls.probes = [State(cls.algebra, {m: 1}) for n in range(2) for p in range(-2, 4)
                      for m in enumerate_basis(cls.algebra, p, n)]

    def test_pairings(self):
        assert fields.circle(self.beta, 0, self.gamma) == self.vacuum
        assert fields.circle(self.gamma, 0, self.beta) == -self.vacuum
        assert fields.circle(self.b, 0, self.c) == -self.vacuum
        assert fields.circle(self.c, 0, self.b) == -self.vacuum
        assert fields.circle(self.beta, 1, self.gamma).is_zero()
        assert fields.circle(self.beta, 0, self.beta).is_zero()

    def test_higher_modes(self):
        d_gamma = State.generator(self.algebra, "gamma{t'}", 1)
        assert fields.circle(self.beta, 1, d_gamma) == self.vacuum
        assert fields.circle(self.beta, 0, d_gamma).is_zero()

    def test_vacuum_is_identity(self):
        for probe in self.probes:
            assert fields.circle(self.vacuum, -1, probe) == probe
            assert fields.circle(self.vacuum, 0, probe).is_zero()

    def test_creation(self):
        assert fields.normal_product(self.gamma, self.vacuum) == self.gamma
        assert fields.circle(self.gamma, -2, self.vacuum) == derivative(self.gamma)
        assert fields.normal_product(self.c, self.b) == State.monomial(self.algebra, [(3, 0), (2, 0)])

    def test_parity(self):
        assert fields.parity(self.b) == 1
        assert fields.parity(self.gamma) == 0
        assert fields.parity(self.b.product(self.c)) == 0

    def test_commutator(self):
        assert fields.commutator(self.beta, 0, self.gamma, -1, self.vacuum) == self.vacuum
        assert fields.commutator(self.b, 0, self.c, -1, self.vacuum) == -self.vacuum

    def test_borcherds_free_fields(self):
        for a, x in ((self.beta, self.gamma), (self.b, self.c), (self.c, self.b), (self.gamma, self.gamma)):
            for m in range(-2, 3):
                for k in range(-2, 3):
                    assert fields.borcherds_check(a, x, m, k, self.probes)

    def test_borcherds_composite(self):
        current = self.beta.product(self.gamma)
        for m in range(-1, 2):
            for k in range(-1, 2):
                assert fields.borcherds_check(current, self.gamma, m, k, self.probes)

    def test_mixed_algebras(self):
        other = State.vacuum(weil_algebra(abelian(2)))
        with self.assertRaises(MixedComplex):
            fields.circle(self.beta, 0, other)

    @staticmethod
    def test_generalized_binomial():
        assert fields.generalized_binomial(5, 2) == 10
        assert fields.generalized_binomial(-1, 2) == 1
        assert fields.generalized_binomial(-2, 3) == -4
        assert fields.generalized_binomial(3, 0) == 1
        assert fields.generalized_binomial(2, 3) == 0

    def test_operator_columns(self):
        basis = enumerate_basis(self.algebra, 1, 0)
        columns, index = fields.operator_columns(fields.ModeOperator(self.b, 0), basis)
        assert len(columns) == 1
        assert index == {(): 0}
        assert columns[0] == {0: -1}


if __name__ == '__main__':
    unittest.main()
