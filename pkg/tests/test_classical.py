import unittest

from fractions import Fraction

from chiralcoh import classical
from chiralcoh.lie import abelian, sl2


def d(lie, element):
    generators = classical.weil_differential_generators(lie)
    result = {}
    for monomial, value in element.items():
        result = classical.add(result, classical.weil_differential(lie, monomial, generators), value)
    return result


class ClassicalTestSuite(unittest.TestCase):

    @staticmethod
    def test_abelian_differential():
        lie = abelian(1)
        assert classical.weil_differential(lie, ((0,), (0,))) == {((1,), ()): Fraction(1)}
        assert classical.weil_differential(lie, ((1,), ())) == {}

    @staticmethod
    def test_sl2_differential_of_c():
        lie = sl2()
        # dc^h = gamma^h + c^e c^f, since [e, f] = h
        expected = classical.add(classical.gamma(3, 1), classical.multiply(classical.c(3, 0), classical.c(3, 2)))
        assert classical.weil_differential(lie, ((0, 0, 0), (1,))) == expected

    @staticmethod
    def test_square_zero():
        lie = sl2()
        for p in range(4):
            for monomial in classical.classical_monomials(lie.dim, p):
                assert d(lie, d(lie, {monomial: Fraction(1)})) == {}

    @staticmethod
    def test_classical_monomials():
        assert len(classical.classical_monomials(2, 2)) == 3
        assert classical.classical_monomials(1, 3) == [((1,), (0,))]
        assert classical.classical_monomials(2, 0) == [((0, 0), ())]

    @staticmethod
    def test_multiply_signs():
        ce = classical.c(2, 0)
        cf = classical.c(2, 1)
        assert classical.multiply(cf, ce) == {((0, 0), (0, 1)): Fraction(-1)}
        assert classical.multiply(ce, ce) == {}

    @staticmethod
    def test_invariant_ring_dims():
        assert classical.invariant_ring_dims(sl2(), 4) == [1, 0, 1, 0, 1]
        assert classical.invariant_ring_dims(abelian(2), 2) == [1, 2, 3]

    @staticmethod
    def test_adjoint_multiplicity():
        lie = sl2()
        assert classical.adjoint_multiplicity(lie, 0) == 0
        assert classical.adjoint_multiplicity(lie, 1) == 1
        assert classical.adjoint_multiplicity(lie, 2) == 0


if __name__ == '__main__':
    unittest.main()
