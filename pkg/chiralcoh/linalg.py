"""
Exact sparse linear algebra on column-stored maps.

A linear map from a space with ``ncols`` basis vectors to a space with ``nrows`` coordinates is stored as a list
of sparse columns: ``columns[j]`` maps row indices to the nonzero ``Fraction`` entries of the image of basis
vector ``j``. All heavy lifting is delegated to ``sympy.polys.matrices.DomainMatrix``.
"""
import math

from fractions import Fraction
from typing import Dict, Iterable, List, Optional

from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix

SparseColumn = Dict[int, Fraction]

DEFAULT_PRIMES = (2147483647, 2147483629, 2147483587)


def to_qq(x: Fraction):
    return QQ(int(x.numerator), int(x.denominator))


def from_qq(x) -> Fraction:
    return Fraction(int(QQ.numer(x)), int(QQ.denom(x)))


def _rows_dict(columns: List[SparseColumn], convert) -> Dict[int, Dict[int, object]]:
    rows = {}
    for j, column in enumerate(columns):
        for i, value in column.items():
            if value:
                rows.setdefault(i, {})[j] = convert(value)
    return rows


def _integer_columns(columns: List[SparseColumn]) -> List[Dict[int, int]]:
    """ Scale every column by the lcm of its denominators. Column scaling keeps the rank. """
    scaled = []
    for column in columns:
        lcm = 1
        for value in column.values():
            lcm = lcm * value.denominator // math.gcd(lcm, value.denominator)
        scaled.append({i: int(value * lcm) for i, value in column.items() if value})
    return scaled


def is_zero_map(columns: List[SparseColumn]) -> bool:
    return all(not any(column.values()) for column in columns)


def rank(columns: List[SparseColumn], nrows: int) -> int:
    """ Exact rank, computed by fraction-free row reduction over the integers.

    Parameters
    ----------
    columns : list
        Sparse columns of the map.
    nrows : int
        Number of target coordinates.

    Returns
    -------
    int
        The rank of the map.

    """
    if not columns or nrows == 0 or is_zero_map(columns):
        return 0

    rows = _rows_dict(_integer_columns(columns), ZZ)
    matrix = DomainMatrix(rows, (nrows, len(columns)), ZZ)
    _, _, pivots = matrix.rref_den()
    return len(pivots)


def rank_modular(columns: List[SparseColumn], nrows: int, primes: Iterable[int] = DEFAULT_PRIMES) -> int:
    """ Rank over GF(p) for several primes; the maximum is the rational rank unless every prime is unlucky. """
    if not columns or nrows == 0 or is_zero_map(columns):
        return 0

    integer_columns = _integer_columns(columns)
    best = 0
    for prime in primes:
        field = GF(prime)
        rows = {}
        for j, column in enumerate(integer_columns):
            for i, value in column.items():
                if value % prime:
                    rows.setdefault(i, {})[j] = field(value)
        if not rows:
            continue
        best = max(best, DomainMatrix(rows, (nrows, len(columns)), field).rank())
    return best


def nullspace(columns: List[SparseColumn], nrows: int) -> List[SparseColumn]:
    """ A basis of the kernel, one sparse vector over the source basis per kernel element.

    The basis is the reduced one read off the row echelon form, so it only depends on the column order.
    """
    ncols = len(columns)
    if ncols == 0:
        return []

    if nrows == 0 or is_zero_map(columns):
        return [{j: Fraction(1)} for j in range(ncols)]

    matrix = DomainMatrix(_rows_dict(columns, to_qq), (nrows, ncols), QQ)
    kernel = matrix.nullspace().to_sdm()

    basis = []
    for i in sorted(kernel):
        vector = {j: from_qq(value) for j, value in kernel[i].items() if value}
        if vector:
            basis.append(dict(sorted(vector.items())))
    return basis


def solve(columns: List[SparseColumn], nrows: int, rhs: SparseColumn) -> Optional[SparseColumn]:
    """ Find x with Σ_j x_j columns[j] = rhs, or None when rhs is not in the image. """
    if not any(rhs.values()):
        return {}

    ncols = len(columns)
    if ncols == 0:
        return None

    height = max([nrows] + [i + 1 for i in rhs])
    augmented = columns + [rhs]
    matrix = DomainMatrix(_rows_dict(augmented, to_qq), (height, ncols + 1), QQ)
    reduced, pivots = matrix.rref()

    if ncols in pivots:
        return None

    rows = reduced.to_sdm()
    solution = {}
    for row_index, pivot in enumerate(pivots):
        value = rows.get(row_index, {}).get(ncols)
        if value:
            solution[pivot] = from_qq(value)
    return solution


def independent_modulo(base: List[SparseColumn], candidates: List[SparseColumn], nrows: int) -> List[int]:
    """ Indices of the candidates that extend span(base), chosen greedily in order. """
    chosen = []
    current = list(base)
    current_rank = rank(current, nrows)
    for index, candidate in enumerate(candidates):
        trial = current + [candidate]
        trial_rank = rank(trial, nrows)
        if trial_rank > current_rank:
            chosen.append(index)
            current = trial
            current_rank = trial_rank
    return chosen
