"""
Basic cohomology of graded complexes, piece by piece.

Every (p, n) piece is a finite-dimensional space of monomials. The basic subspace is the joint kernel of
ι_ξ(k) and L_ξ(k) for k = 0..n; the differential maps basic (p, n) into basic (p + 1, n) and all ranks are
computed exactly.
"""
import os

from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool
from typing import Dict, List, Optional, Tuple

from chiralcoh import linalg
from chiralcoh.complexes.base import ComplexDescriptor
from chiralcoh.errors import BasicNotClosed, NotACocycle, PinningSuiteFailure, VerificationFailure
from chiralcoh.fields import ModeOperator
from chiralcoh.files import CohomologyEntry, CohomologyTable
from chiralcoh.fock import Monomial, State, format_monomial
from chiralcoh.series import CharacterSeries

Vector = Dict[Monomial, Fraction]


def default_workers() -> int:
    return int(os.getenv('CHIRALCOH_WORKERS', 1))


@dataclass
class BasicPiece:
    """ The basic subspace of one (p, n) piece and the differential on it.

    Attributes
    ----------
    p, n : int
        Degree and weight.
    size : int
        Number of monomials in the ambient piece.
    vectors : list
        A basis of the basic subspace, as vectors over ambient monomials.
    images : list
        d applied to each basis vector, as vectors over monomials of the (p + 1, n) piece.

    """

    p: int
    n: int
    size: int
    vectors: List[Vector]
    images: List[Vector]

    @property
    def dim(self) -> int:
        return len(self.vectors)


def _apply(operator: ModeOperator, vector: Vector) -> Vector:
    image = {}
    for monomial, c in vector.items():
        for m, v in operator.on_monomial(monomial).items():
            image[m] = image.get(m, Fraction(0)) + c * v
    return {m: v for m, v in image.items() if v}


def _stacked_columns(operators: List[ModeOperator], basis) -> Tuple[List[Dict[int, Fraction]], int]:
    index = {}
    columns = []
    for monomial in basis:
        column = {}
        for position, op in enumerate(operators):
            for m, v in op.on_monomial(monomial).items():
                row = index.setdefault((position, m), len(index))
                column[row] = v
        columns.append(column)
    return columns, len(index)


def basic_vectors(C: ComplexDescriptor, p: int, n: int) -> Tuple[Tuple[Monomial, ...], List[Vector]]:
    """ The ambient basis of a piece and a basis of its basic subspace.

    Raises
    ------
    TruncationOverflow
        If the piece exceeds the monomial budget.
    PinningSuiteFailure
        If a mode above the weight acts nontrivially.

    """
    basis = C.basis(p, n)
    if not basis:
        return basis, []

    for op in [C.iota(i, n + 1) for i in range(len(C.contractions))] + \
              [C.lie_derivative(i, n + 1) for i in range(len(C.lie_derivatives))]:
        for monomial in basis:
            if op.on_monomial(monomial):
                raise PinningSuiteFailure(f'modes above the weight act by zero on piece ({p}, {n})',
                                          format_monomial(C.algebra, monomial))

    operators = list(C.basic_operators(n))
    if not operators:
        return basis, [{m: Fraction(1)} for m in basis]

    columns, nrows = _stacked_columns(operators, basis)
    kernel = linalg.nullspace(columns, nrows)
    return basis, [{basis[j]: c for j, c in vector.items()} for vector in kernel]


def basic_basis(C: ComplexDescriptor, p: int, n: int) -> List[State]:
    """ A basis of the basic subspace of the (p, n) piece, as states. """
    _, vectors = basic_vectors(C, p, n)
    return [State(C.algebra, v) for v in vectors]


def basic_piece(C: ComplexDescriptor, p: int, n: int, check_closed: bool = True) -> BasicPiece:
    """ Basic subspace of (p, n) with the differential applied to it.

    Raises
    ------
    BasicNotClosed
        If d of a basic vector is not basic.

    """
    basis, vectors = basic_vectors(C, p, n)
    d = C.d
    images = [_apply(d, v) for v in vectors]
    if check_closed:
        operators = list(C.basic_operators(n))
        for image in images:
            for op in operators:
                if image and _apply(op, image):
                    raise BasicNotClosed(f'd maps basic ({p}, {n}) into basic ({p + 1}, {n})',
                                         format_monomial(C.algebra, min(image)))
    return BasicPiece(p=p, n=n, size=len(basis), vectors=vectors, images=images)


def _basic_piece_task(args) -> BasicPiece:
    C, p, n, check_closed = args
    return basic_piece(C, p, n, check_closed)


def _columns(vectors: List[Vector], index: Dict[Monomial, int]) -> List[Dict[int, Fraction]]:
    return [{index.setdefault(m, len(index)): c for m, c in v.items()} for v in vectors]


def image_rank(piece: BasicPiece, modular: bool = False) -> int:
    index = {}
    columns = _columns(piece.images, index)
    if modular:
        return linalg.rank_modular(columns, len(index))
    return linalg.rank(columns, len(index))


def rank_modular(piece: BasicPiece, primes=linalg.DEFAULT_PRIMES) -> int:
    """ Rank of d on a basic piece over several prime fields. """
    index = {}
    return linalg.rank_modular(_columns(piece.images, index), len(index), primes)


def representatives(piece: BasicPiece, previous: Optional[BasicPiece]) -> List[Vector]:
    """ Basic cocycles of a piece, independent modulo the boundaries d(previous), chosen greedily. """
    if not piece.vectors:
        return []

    index = {}
    columns = _columns(piece.images, index)
    kernel = linalg.nullspace(columns, len(index)) if index else [{j: Fraction(1)} for j in range(piece.dim)]
    cocycles = []
    for combination in kernel:
        vector = {}
        for j, c in combination.items():
            for m, v in piece.vectors[j].items():
                vector[m] = vector.get(m, Fraction(0)) + c * v
        cocycles.append({m: v for m, v in vector.items() if v})

    rows = {}
    boundaries = _columns(previous.images, rows) if previous is not None else []
    candidates = _columns(cocycles, rows)
    chosen = linalg.independent_modulo(boundaries, candidates, len(rows))
    return [cocycles[i] for i in chosen]


def compute_pieces(C: ComplexDescriptor, degrees: range, n_max: int, workers: int = None,
                   check_closed: bool = True) -> Dict[Tuple[int, int], BasicPiece]:
    """ Basic pieces for every degree in ``degrees`` and weight 0..n_max, in parallel when workers > 1. """
    workers = workers or default_workers()
    tasks = [(C, p, n, check_closed) for n in range(n_max + 1) for p in degrees]
    if workers > 1:
        with Pool(processes=workers) as pool:
            results = pool.map(_basic_piece_task, tasks)
    else:
        results = [_basic_piece_task(task) for task in tasks]
    return {(piece.p, piece.n): piece for piece in results}


def cohomology(C: ComplexDescriptor, p_range: Tuple[int, int], n_max: int, want_representatives: bool = False,
               workers: int = None, modular: bool = False) -> CohomologyTable:
    """ dim H^p[n] of the basic subcomplex for p in p_range and n <= n_max.

    Parameters
    ----------
    C : ComplexDescriptor
        A complex that passed its pinning suite.
    p_range : tuple
        (p_min, p_max), inclusive.
    n_max : int
        Highest weight.
    want_representatives : bool
        Also return representative cocycles.
    workers : int
        Number of processes (default from CHIRALCOH_WORKERS, else 1).
    modular : bool
        Cross-check every exact rank against the multi-prime rank.

    Returns
    -------
    CohomologyTable

    Raises
    ------
    TruncationOverflow, BasicNotClosed, VerificationFailure

    """
    p_min, p_max = p_range
    if p_min > p_max or n_max < 0:
        raise ValueError('empty truncation')

    pieces = compute_pieces(C, range(p_min - 1, p_max + 1), n_max, workers)
    ranks = {}
    for key, piece in pieces.items():
        ranks[key] = image_rank(piece)
        if modular and image_rank(piece, modular=True) != ranks[key]:
            raise VerificationFailure(f'modular rank = exact rank on piece {key}')

    entries = []
    for n in range(n_max + 1):
        for p in range(p_min, p_max + 1):
            piece = pieces[(p, n)]
            dim = piece.dim - ranks[(p, n)] - ranks[(p - 1, n)]
            reps = None
            if want_representatives:
                vectors = representatives(piece, pieces[(p - 1, n)])
                if len(vectors) != dim:
                    raise VerificationFailure(f'{len(vectors)} representatives for dim {dim} on piece ({p}, {n})')
                reps = [State(C.algebra, v) for v in vectors]
            entries.append(CohomologyEntry(p=p, n=n, dim=dim, basic=piece.dim, representatives=reps))

    return CohomologyTable(complex=C.name, p_min=p_min, p_max=p_max, n_max=n_max, entries=entries)


def character(table: CohomologyTable) -> CharacterSeries:
    """ Σ dim H^p[n] z^p q^n over the table. """
    return table.character()


@dataclass
class ChernWeilClass:
    """ The image a⊗1 of a W(g)-class in the combined complex.

    Attributes
    ----------
    image : State
        The lifted cocycle.
    exact : bool
        Whether the image is a coboundary of a basic element.
    primitive : State
        A basic x with d x = image when exact, else None.

    """

    image: State
    exact: bool
    primitive: Optional[State] = None


def chern_weil(T: ComplexDescriptor, W: ComplexDescriptor, cocycle: State) -> ChernWeilClass:
    """ Lift a basic W(g)-cocycle to W(g)⊗A and decide whether its class vanishes.

    W(g) generators occupy the first positions of the combined generator table.

    Raises
    ------
    NotACocycle
        If the input is not a homogeneous, basic, d_W-closed state of W(g).

    """
    if cocycle.algebra != W.algebra:
        raise NotACocycle('the class must be a state of the Weil complex')
    if cocycle.is_zero():
        return ChernWeilClass(image=State(T.algebra), exact=True, primitive=State(T.algebra))
    try:
        p, n = cocycle.bidegree()
    except ValueError as e:
        raise NotACocycle(str(e))
    if not W.d(cocycle).is_zero():
        raise NotACocycle('d_W of the class is not zero')
    for op in W.basic_operators(n):
        if not op(cocycle).is_zero():
            raise NotACocycle('the class is not basic')

    image = cocycle.retag(T.algebra)
    previous = basic_piece(T, p - 1, n, check_closed=False)
    index = {}
    columns = _columns(previous.images, index)
    rhs = {index.setdefault(m, len(index)): c for m, c in image.terms.items()}
    solution = linalg.solve(columns, len(index), rhs) if columns else None
    if solution is None:
        return ChernWeilClass(image=image, exact=False)

    primitive = {}
    for j, c in solution.items():
        for m, v in previous.vectors[j].items():
            primitive[m] = primitive.get(m, Fraction(0)) + c * v
    return ChernWeilClass(image=image, exact=True, primitive=State(T.algebra, primitive))


def circle_weight_check(a: State, b: State, n: int, product: State) -> bool:
    """ wt(a∘_n b) = wt a + wt b − n − 1 for a nonzero product. """
    if product.is_zero():
        return True
    _, wa = a.bidegree()
    _, wb = b.bidegree()
    try:
        _, w = product.bidegree()
    except ValueError:
        return False
    return w == wa + wb - n - 1


__all__ = ['BasicPiece', 'ChernWeilClass', 'basic_basis', 'basic_piece', 'basic_vectors',
           'character', 'chern_weil', 'circle_weight_check', 'cohomology', 'compute_pieces', 'image_rank',
           'rank_modular', 'representatives']
