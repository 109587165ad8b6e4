import unittest

from fractions import Fraction

from chiralcoh import linalg


def columns_of(rows):
    return [{i: Fraction(row[j]) for i, row in enumerate(rows) if row[j]} for j in range(len(rows[0]))]


class LinalgTestSuite(unittest.TestCase):

    @staticmethod
    def test_rank():
        assert linalg.rank(columns_of([[1, 2, 3], [2, 4, 6], [0, 1, 1]]), 3) == 2
        assert linalg.rank(columns_of([[Fraction(1, 3), 0], [0, Fraction(5, 7)]]), 2) == 2

    @staticmethod
    def test_rank_of_empty_and_zero_maps():
        assert linalg.rank([], 4) == 0
        assert linalg.rank([{}, {}], 3) == 0
        assert linalg.rank([{0: Fraction(1)}], 0) == 0

    @staticmethod
    def test_rank_modular_agrees_with_exact_rank():
        columns = columns_of([[1, 2, 3, 4], [Fraction(1, 2), 1, Fraction(3, 2), 2], [0, 1, 0, 1], [1, 0, 1, 0]])
        assert linalg.rank_modular(columns, 4) == linalg.rank(columns, 4) == 2

    @staticmethod
    def test_nullspace():
        columns = columns_of([[1, 1, 0], [0, 0, 1]])
        kernel = linalg.nullspace(columns, 2)
        assert len(kernel) == 1
        vector = kernel[0]
        assert vector.get(0, 0) + vector.get(1, 0) == 0
        assert vector.get(2, 0) == 0
        assert vector.get(0, 0) != 0

    @staticmethod
    def test_nullspace_of_zero_map():
        assert linalg.nullspace([{}, {}], 2) == [{0: Fraction(1)}, {1: Fraction(1)}]
        assert linalg.nullspace([], 2) == []

    @staticmethod
    def test_solve():
        columns = columns_of([[2, 0], [0, 3]])
        assert linalg.solve(columns, 2, {0: Fraction(1), 1: Fraction(1)}) == {0: Fraction(1, 2), 1: Fraction(1, 3)}

    @staticmethod
    def test_solve_outside_image():
        columns = columns_of([[1], [1]])
        assert linalg.solve(columns, 2, {0: Fraction(1)}) is None
        assert linalg.solve(columns, 2, {}) == {}

    @staticmethod
    def test_independent_modulo():
        base = [{0: Fraction(1)}]
        candidates = [{0: Fraction(2)}, {1: Fraction(1)}, {0: Fraction(1), 1: Fraction(1)}, {2: Fraction(1)}]
        assert linalg.independent_modulo(base, candidates, 3) == [1, 3]


if __name__ == '__main__':
    unittest.main()
