import unittest

from fractions import Fraction

from chiralcoh import fock
from chiralcoh.complexes.weil import weil_algebra
from chiralcoh.errors import MixedComplex, TruncationOverflow
from chiralcoh.lie import abelian

BETA, GAMMA, B, C = 0, 1, 2, 3


class FockTestSuite(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.algebra = weil_algebra(abelian(1))

    def test_generator_table(self):
        labels = [gen.label for gen in self.algebra.generators]
        assert labels == ['beta{t}', "gamma{t'}", 'b{t}', "c{t'}"]
        assert self.algebra.index("c{t'}") == C
        with self.assertRaises(KeyError):
            self.algebra.index('x')

    def test_odd_symbols_anticommute(self):
        cb = fock.State.monomial(self.algebra, [(C, 0), (B, 0)])
        bc = fock.State.monomial(self.algebra, [(B, 0), (C, 0)])
        assert cb == -bc
        assert fock.State.monomial(self.algebra, [(C, 0), (C, 0)]).is_zero()

    def test_even_symbols_commute(self):
        x = fock.State.monomial(self.algebra, [(GAMMA, 1), (BETA, 0)])
        y = fock.State.monomial(self.algebra, [(BETA, 0), (GAMMA, 1)])
        assert x == y

    def test_bidegree(self):
        assert fock.State.generator(self.algebra, "gamma{t'}").bidegree() == (2, 0)
        assert fock.State.generator(self.algebra, "c{t'}", 1).bidegree() == (1, 1)
        assert fock.State.generator(self.algebra, 'beta{t}').bidegree() == (-2, 1)
        assert fock.State.vacuum(self.algebra).bidegree() == (0, 0)

        mixed = fock.State.generator(self.algebra, "gamma{t'}") + fock.State.generator(self.algebra, "c{t'}")
        with self.assertRaises(ValueError):
            mixed.bidegree()

    def test_arithmetic(self):
        gamma = fock.State.generator(self.algebra, "gamma{t'}")
        assert (gamma + gamma) == gamma * 2
        assert (gamma - gamma).is_zero()
        assert not (gamma - gamma)
        assert (Fraction(1, 2) * gamma).terms == {((GAMMA, 0),): Fraction(1, 2)}

    def test_mixed_algebras(self):
        other = weil_algebra(abelian(2))
        with self.assertRaises(MixedComplex):
            fock.State.vacuum(self.algebra) + fock.State.vacuum(other)

    def test_format_and_parse(self):
        state = fock.parse_monomial(self.algebra, "c{t'} b{t}")
        assert fock.format_state(state) == "-1 * b{t} c{t'}"
        assert fock.format_monomial(self.algebra, ()) == '1'
        assert fock.format_state(fock.State(self.algebra)) == '0'
        assert fock.parse_monomial(self.algebra, '1') == fock.State.vacuum(self.algebra)
        assert fock.parse_symbol(self.algebra, "d2gamma{t'}") == (GAMMA, 2)

        with self.assertRaises(ValueError):
            fock.parse_symbol(self.algebra, 'd1x')

    def test_derivative(self):
        gamma = fock.State.generator(self.algebra, "gamma{t'}")
        assert fock.derivative(gamma) == fock.State.generator(self.algebra, "gamma{t'}", 1)
        assert fock.derivative(fock.derivative(gamma)) == fock.State.generator(self.algebra, "gamma{t'}", 2) * 2
        assert fock.derivative(fock.State.vacuum(self.algebra)).is_zero()

        c = fock.State.generator(self.algebra, "c{t'}")
        dc = fock.State.generator(self.algebra, "c{t'}", 1)
        assert fock.derivative(c.product(dc)).is_zero() is False
        assert fock.derivative(c.product(c)).is_zero()

    def test_enumerate_weight_zero(self):
        assert fock.enumerate_basis(self.algebra, 0, 0) == ((),)
        assert fock.enumerate_basis(self.algebra, 2, 0) == (((GAMMA, 0),),)
        assert fock.enumerate_basis(self.algebra, 3, 0) == (((GAMMA, 0), (C, 0)),)
        assert fock.enumerate_basis(self.algebra, 1, 0) == (((C, 0),),)
        assert fock.enumerate_basis(self.algebra, -1, 0) == ()

    def test_enumerate_weight_one(self):
        basis = fock.enumerate_basis(self.algebra, 1, 1)
        assert set(basis) == {((C, 1),), ((GAMMA, 0), (B, 0)), ((BETA, 0), (GAMMA, 0), (C, 0))}
        assert list(basis) == sorted(basis)
        assert fock.basis_index(basis)[basis[0]] == 0

    def test_enumerate_negative_weight(self):
        assert fock.enumerate_basis(self.algebra, 0, -1) == ()

    def test_enumerate_budget(self):
        with self.assertRaises(TruncationOverflow) as context:
            fock.enumerate_basis(self.algebra, 2, 2, budget=1)
        assert context.exception.piece == (2, 2, 0)
        assert context.exception.budget == 1

    def test_tensor(self):
        other = fock.FreeFieldAlgebra('x', (fock.GeneratorSpec('x', False, 0, 1, 1, Fraction(1)),
                                            fock.GeneratorSpec('y', False, 0, 0, 0, Fraction(-1), charge=1)))
        product = self.algebra.tensor(other)
        assert len(product.generators) == 6
        assert product.generators[4].partner == 5
        assert product.generators[5].charge == 1

        with self.assertRaises(ValueError):
            self.algebra.tensor(self.algebra)

    def test_retag(self):
        other = weil_algebra(abelian(1))
        renamed = fock.FreeFieldAlgebra('y', tuple(fock.GeneratorSpec(g.label + '_', g.odd, g.degree, g.weight,
                                                                      g.partner, g.pairing)
                                                   for g in other.generators))
        product = self.algebra.tensor(renamed)
        state = fock.State.generator(renamed, "gamma{t'}_")
        assert state.retag(product, 4) == fock.State.generator(product, "gamma{t'}_")


if __name__ == '__main__':
    unittest.main()
