"""
Finite-dimensional Lie algebras over the rationals: structure constants, invariant forms, subalgebras and
linear representations.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from chiralcoh import linalg
from chiralcoh.errors import AntisymmetryViolation, ConfigError, DegenerateForm, JacobiViolation, \
    SingularFormWhenNondegenerateRequired

Matrix = Tuple[Tuple[Fraction, ...], ...]

NONDEGENERATE_FLAGS = ('nondegenerate', 'simple', 'semisimple')


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(str(value))


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(as_fraction(x) for x in row) for row in rows)


def zero_matrix(n: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    size, inner, width = len(a), len(b), len(b[0]) if b else 0
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(width))
                 for i in range(size))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(row_a, row_b)) for row_a, row_b in zip(a, b))


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def matrix_rank(a: Matrix) -> int:
    """ Rank of a dense rational matrix. """
    columns = [{i: a[i][j] for i in range(len(a)) if a[i][j]} for j in range(len(a[0]) if a else 0)]
    return linalg.rank(columns, len(a))


def matrix_inverse(a: Matrix) -> Matrix:
    """ Inverse of a dense nonsingular rational matrix; raises DegenerateForm when singular. """
    n = len(a)
    columns = [{i: a[i][j] for i in range(n) if a[i][j]} for j in range(n)]
    inverse_columns = []
    for k in range(n):
        solution = linalg.solve(columns, n, {k: Fraction(1)})
        if solution is None:
            raise DegenerateForm('the form is singular')
        inverse_columns.append(solution)
    return tuple(tuple(inverse_columns[j].get(i, Fraction(0)) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class LieAlgebraData:
    """ A Lie algebra given by structure constants in a fixed basis.

    Attributes
    ----------
    name : str
        A text label.
    dim : int
        The dimension.
    basis_labels : tuple
        One label per basis vector, used to name generators.
    structure_constants : tuple
        Dense tensor f with [ξ_i, ξ_j] = Σ_k f[i][j][k] ξ_k.
    form : tuple
        Symmetric invariant bilinear form, or None.
    flags : frozenset
        Subset of {'abelian', 'simple', 'semisimple', 'nondegenerate'}.

    """

    name: str
    dim: int
    basis_labels: Tuple[str, ...]
    structure_constants: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]
    form: Optional[Matrix] = None
    flags: FrozenSet[str] = field(default_factory=frozenset)

    def bracket(self, i: int, j: int) -> Dict[int, Fraction]:
        return {k: c for k, c in enumerate(self.structure_constants[i][j]) if c}

    def bracket_vectors(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> List[Fraction]:
        result = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for k, c in enumerate(self.structure_constants[i][j]):
                    if c:
                        result[k] += xi * yj * c
        return result

    def ad_matrix(self, i: int) -> Matrix:
        """ Matrix of ad_{ξ_i}: entry (k, j) is f[i][j][k]. """
        f = self.structure_constants
        return tuple(tuple(f[i][j][k] for j in range(self.dim)) for k in range(self.dim))

    @property
    def is_abelian(self) -> bool:
        return all(not c for plane in self.structure_constants for row in plane for c in row)

    @property
    def requires_nondegenerate(self) -> bool:
        return any(flag in self.flags for flag in NONDEGENERATE_FLAGS)


@dataclass(frozen=True)
class Representation:
    """ A linear representation ρ: g → End(V), one matrix per basis vector of g. """

    dim: int
    matrices: Tuple[Matrix, ...]
    labels: Tuple[str, ...] = ()
    faithful: bool = False

    def coordinate_labels(self) -> Tuple[str, ...]:
        return self.labels if self.labels else tuple(f'x{k + 1}' for k in range(self.dim))


@dataclass(frozen=True)
class SubalgebraEmbedding:
    """ A subalgebra h of g, spanned by the columns of ``inclusion`` (each a coordinate vector in g). """

    ambient: LieAlgebraData
    inclusion: Tuple[Tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.inclusion)


def check_antisymmetry(f, dim: int):
    for i, j, k in product(range(dim), repeat=3):
        if f[i][j][k] != -f[j][i][k]:
            raise AntisymmetryViolation(f'f[{i}][{j}][{k}] = {f[i][j][k]} but f[{j}][{i}][{k}] = {f[j][i][k]}')


def check_jacobi(algebra: LieAlgebraData):
    dim = algebra.dim
    basis = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    for a, b, c in product(range(dim), repeat=3):
        x, y, z = basis[a], basis[b], basis[c]
        total = [p + q + r for p, q, r in zip(algebra.bracket_vectors(algebra.bracket_vectors(x, y), z),
                                              algebra.bracket_vectors(algebra.bracket_vectors(y, z), x),
                                              algebra.bracket_vectors(algebra.bracket_vectors(z, x), y))]
        if any(total):
            raise JacobiViolation(f'Jacobi identity fails on basis triple ({a}, {b}, {c})')


def check_form(algebra: LieAlgebraData):
    form, dim = algebra.form, algebra.dim
    if form is None:
        if algebra.requires_nondegenerate:
            raise SingularFormWhenNondegenerateRequired(f'{algebra.name} needs a nondegenerate form')
        return

    for i, j in product(range(dim), repeat=2):
        if form[i][j] != form[j][i]:
            raise ConfigError(f'the form of {algebra.name} is not symmetric at ({i}, {j})')

    f = algebra.structure_constants
    for a, i, j in product(range(dim), repeat=3):
        value = sum((f[a][i][k] * form[k][j] + form[i][k] * f[a][j][k] for k in range(dim)), Fraction(0))
        if value:
            raise ConfigError(f'the form of {algebra.name} is not ad-invariant on ({a}, {i}, {j})')

    if algebra.requires_nondegenerate and matrix_rank(form) < dim:
        raise SingularFormWhenNondegenerateRequired(f'the form of {algebra.name} is singular')


def validate_algebra(algebra: LieAlgebraData) -> LieAlgebraData:
    """ Verify antisymmetry, Jacobi, form invariance and the declared flags.

    Raises
    ------
    AntisymmetryViolation, JacobiViolation, SingularFormWhenNondegenerateRequired, ConfigError

    """
    check_antisymmetry(algebra.structure_constants, algebra.dim)
    check_jacobi(algebra)
    check_form(algebra)
    if 'abelian' in algebra.flags and not algebra.is_abelian:
        raise ConfigError(f'{algebra.name} is flagged abelian but has nonzero brackets')
    return algebra


def validate_representation(algebra: LieAlgebraData, rep: Representation) -> Representation:
    if len(rep.matrices) != algebra.dim:
        raise ConfigError(f'expected {algebra.dim} matrices, got {len(rep.matrices)}')

    for m in rep.matrices:
        if len(m) != rep.dim or any(len(row) != rep.dim for row in m):
            raise ConfigError(f'representation matrices must be {rep.dim}x{rep.dim}')

    for i, j in product(range(algebra.dim), repeat=2):
        commutator = mat_sub(mat_mul(rep.matrices[i], rep.matrices[j]), mat_mul(rep.matrices[j], rep.matrices[i]))
        image = zero_matrix(rep.dim)
        for k, c in algebra.bracket(i, j).items():
            image = tuple(tuple(x + c * y for x, y in zip(row, row_k)) for row, row_k in zip(image, rep.matrices[k]))
        if commutator != image:
            raise ConfigError(f'rho([{i}, {j}]) differs from the commutator of rho({i}) and rho({j})')

    if rep.faithful:
        columns = [{r * rep.dim + s: m[r][s] for r in range(rep.dim) for s in range(rep.dim) if m[r][s]}
                   for m in rep.matrices]
        if linalg.rank(columns, rep.dim * rep.dim) < algebra.dim:
            raise ConfigError('representation is flagged faithful but has a kernel')
    return rep


def killing_form(algebra: LieAlgebraData) -> Matrix:
    """ κ(ξ_i, ξ_j) = tr(ad_{ξ_i} ad_{ξ_j}). """
    ads = [algebra.ad_matrix(i) for i in range(algebra.dim)]
    return tuple(tuple(trace(mat_mul(ads[i], ads[j])) for j in range(algebra.dim)) for i in range(algebra.dim))


def trace_form(algebra: LieAlgebraData, rep: Representation) -> Matrix:
    """ B(ξ_i, ξ_j) = tr(ρ(ξ_i) ρ(ξ_j)). """
    m = rep.matrices
    return tuple(tuple(trace(mat_mul(m[i], m[j])) for j in range(algebra.dim)) for i in range(algebra.dim))


def dual_basis(form: Matrix) -> Matrix:
    """ Coefficients D with ⟨Σ_j D[i][j] ξ_j, ξ_k⟩ = δ_ik, i.e. the inverse of the (symmetric) form.

    Raises
    ------
    DegenerateForm
        If the form is singular.

    """
    return matrix_inverse(form)


def coadjoint_matrix(algebra: LieAlgebraData, i: int) -> Matrix:
    """ Matrix of ad*_{ξ_i} on g* in the dual basis {ξ'_k}: (ad*_{ξ_i} ξ'_j) = −Σ_k f[i][k][j] ξ'_k. """
    f = algebra.structure_constants
    return tuple(tuple(-f[i][k][j] for j in range(algebra.dim)) for k in range(algebra.dim))


def annihilator(embedding: SubalgebraEmbedding) -> List[Dict[int, Fraction]]:
    """ Basis of (g/h)* = {η' in g* : η'(h) = 0}, as coordinate vectors in the dual basis. """
    dim = embedding.ambient.dim
    columns = [{r: vector[k] for r, vector in enumerate(embedding.inclusion) if vector[k]} for k in range(dim)]
    return linalg.nullspace(columns, len(embedding.inclusion))


def check_subalgebra(embedding: SubalgebraEmbedding):
    algebra = embedding.ambient
    dim = algebra.dim
    span = [{k: v for k, v in enumerate(vector) if v} for vector in embedding.inclusion]
    base_rank = linalg.rank(span, dim)
    for x, y in product(embedding.inclusion, repeat=2):
        bracket = {k: v for k, v in enumerate(algebra.bracket_vectors(x, y)) if v}
        if bracket and linalg.rank(span + [bracket], dim) > base_rank:
            raise ConfigError('the given span is not closed under the bracket')


def coadjoint_span(algebra: LieAlgebraData, embedding: SubalgebraEmbedding) -> bool:
    """ Whether {ad*_ξ(η') : ξ in g, η' in (g/h)*} spans g*.

    Parameters
    ----------
    algebra : LieAlgebraData
        The ambient algebra; its form must be nondegenerate.
    embedding : SubalgebraEmbedding
        The subalgebra h.

    Returns
    -------
    bool
        True iff the generating set has rank dim g.

    Raises
    ------
    DegenerateForm
        If the algebra has no form or a singular one.

    """
    if algebra.form is None or matrix_rank(algebra.form) < algebra.dim:
        raise DegenerateForm(f'{algebra.name} has no nondegenerate form to identify (g/h)* with h-perp')

    check_subalgebra(embedding)
    generators = []
    for i in range(algebra.dim):
        coadjoint = coadjoint_matrix(algebra, i)
        for eta in annihilator(embedding):
            image = {k: sum((coadjoint[k][j] * c for j, c in eta.items()), Fraction(0)) for k in range(algebra.dim)}
            image = {k: v for k, v in image.items() if v}
            if image:
                generators.append(image)
    return linalg.rank(generators, algebra.dim) == algebra.dim


def structure_constants_from_matrices(matrices: Sequence[Matrix]) -> tuple:
    """ Structure constants of a matrix Lie algebra spanned by linearly independent matrices. """
    dim = len(matrices)
    size = len(matrices[0])
    columns = [{r * size + s: m[r][s] for r in range(size) for s in range(size) if m[r][s]} for m in matrices]
    f = []
    for i in range(dim):
        plane = []
        for j in range(dim):
            commutator = mat_sub(mat_mul(matrices[i], matrices[j]), mat_mul(matrices[j], matrices[i]))
            rhs = {r * size + s: commutator[r][s] for r in range(size) for s in range(size) if commutator[r][s]}
            solution = linalg.solve(columns, size * size, rhs)
            if solution is None:
                raise ConfigError('the matrices do not span a Lie algebra')
            plane.append(tuple(solution.get(k, Fraction(0)) for k in range(dim)))
        f.append(tuple(plane))
    return tuple(f)


def abelian(n: int) -> LieAlgebraData:
    if n < 1:
        raise ValueError('an abelian algebra needs a positive dimension')
    f = tuple(tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n)) for _ in range(n))
    labels = ('t',) if n == 1 else tuple(f't{i + 1}' for i in range(n))
    return LieAlgebraData(name=f'abelian{n}', dim=n, basis_labels=labels, structure_constants=f,
                          form=identity_matrix(n), flags=frozenset({'abelian', 'nondegenerate'}))


def sl2_matrices() -> Tuple[Matrix, ...]:
    e = as_matrix([[0, 1], [0, 0]])
    h = as_matrix([[1, 0], [0, -1]])
    f = as_matrix([[0, 0], [1, 0]])
    return e, h, f


def sl2() -> LieAlgebraData:
    """ sl2 in the basis (e, h, f) with [h,e] = 2e, [h,f] = -2f, [e,f] = h and its Killing form. """
    algebra = LieAlgebraData(name='sl2', dim=3, basis_labels=('e', 'h', 'f'),
                             structure_constants=structure_constants_from_matrices(sl2_matrices()),
                             flags=frozenset({'simple', 'semisimple'}))
    return _with_form(algebra, killing_form(algebra))


def sl3_matrices() -> Tuple[Matrix, ...]:
    def unit(r, s):
        return tuple(tuple(Fraction(int(i == r and j == s)) for j in range(3)) for i in range(3))

    h1 = mat_sub(unit(0, 0), unit(1, 1))
    h2 = mat_sub(unit(1, 1), unit(2, 2))
    return unit(0, 1), unit(0, 2), unit(1, 2), h1, h2, unit(1, 0), unit(2, 0), unit(2, 1)


def sl3() -> LieAlgebraData:
    algebra = LieAlgebraData(name='sl3', dim=8, basis_labels=('e12', 'e13', 'e23', 'h1', 'h2', 'e21', 'e31', 'e32'),
                             structure_constants=structure_constants_from_matrices(sl3_matrices()),
                             flags=frozenset({'simple', 'semisimple'}))
    return _with_form(algebra, killing_form(algebra))


def direct_sum(first: LieAlgebraData, second: LieAlgebraData, name: str = None) -> LieAlgebraData:
    """ g1 ⊕ g2 with block-diagonal structure constants and form. Basis labels get a factor suffix. """
    n1, n2 = first.dim, second.dim
    dim = n1 + n2
    f = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for i, j, k in product(range(n1), repeat=3):
        f[i][j][k] = first.structure_constants[i][j][k]
    for i, j, k in product(range(n2), repeat=3):
        f[n1 + i][n1 + j][n1 + k] = second.structure_constants[i][j][k]

    form = None
    if first.form is not None and second.form is not None:
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        for i, j in product(range(n1), repeat=2):
            rows[i][j] = first.form[i][j]
        for i, j in product(range(n2), repeat=2):
            rows[n1 + i][n1 + j] = second.form[i][j]
        form = as_matrix(rows)

    flags = {'semisimple'} if {'semisimple'} <= first.flags and {'semisimple'} <= second.flags else set()
    if first.is_abelian and second.is_abelian:
        flags.add('abelian')
    labels = tuple(f'{label}1' for label in first.basis_labels) + tuple(f'{label}2' for label in second.basis_labels)
    return LieAlgebraData(name=name or f'{first.name}x{second.name}', dim=dim, basis_labels=labels,
                          structure_constants=tuple(tuple(tuple(row) for row in plane) for plane in f),
                          form=form, flags=frozenset(flags))


def sl2xsl2() -> LieAlgebraData:
    return direct_sum(sl2(), sl2(), name='sl2xsl2')


def _with_form(algebra: LieAlgebraData, form: Matrix) -> LieAlgebraData:
    return LieAlgebraData(name=algebra.name, dim=algebra.dim, basis_labels=algebra.basis_labels,
                          structure_constants=algebra.structure_constants, form=form, flags=algebra.flags)


def fundamental(algebra: LieAlgebraData) -> Representation:
    """ The defining representation of the built-in matrix algebras sl2 and sl3. """
    if algebra.name == 'sl2':
        return Representation(dim=2, matrices=sl2_matrices(), labels=('x1', 'x2'), faithful=True)
    if algebra.name == 'sl3':
        return Representation(dim=3, matrices=sl3_matrices(), labels=('x1', 'x2', 'x3'), faithful=True)
    raise ConfigError(f'no built-in fundamental representation for {algebra.name}')


def adjoint(algebra: LieAlgebraData) -> Representation:
    return Representation(dim=algebra.dim, matrices=tuple(algebra.ad_matrix(i) for i in range(algebra.dim)),
                          labels=tuple(f'v{i + 1}' for i in range(algebra.dim)), faithful=False)


BUILTIN_ALGEBRAS = {
    'abelian1': lambda: abelian(1),
    'abelian2': lambda: abelian(2),
    'sl2': sl2,
    'sl2xsl2': sl2xsl2,
    'sl3': sl3,
}


def builtin_algebra(name: str) -> LieAlgebraData:
    if name.startswith('abelian') and name[len('abelian'):].isdigit():
        return abelian(int(name[len('abelian'):]))
    if name not in BUILTIN_ALGEBRAS:
        raise ConfigError(f'unknown built-in algebra {name}')
    return BUILTIN_ALGEBRAS[name]()


def builtin_representation(name: str, algebra: LieAlgebraData) -> Representation:
    if name == 'fundamental':
        return fundamental(algebra)
    if name == 'adjoint':
        return adjoint(algebra)
    raise ConfigError(f'unknown built-in representation {name}')


def load_representation(descriptor: dict, algebra: LieAlgebraData = None) -> Representation:
    """ Build a Representation from its JSON/YAML descriptor {"dim", "matrices", "labels"}. """
    try:
        matrices = tuple(as_matrix(m) for m in descriptor['matrices'])
        rep = Representation(dim=int(descriptor['dim']), matrices=matrices,
                             labels=tuple(descriptor.get('labels', ())),
                             faithful=bool(descriptor.get('faithful', False)))
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f'malformed representation descriptor: {e}')

    if algebra is not None:
        validate_representation(algebra, rep)
    return rep


def load_algebra(descriptor: dict) -> LieAlgebraData:
    """ Build and verify a LieAlgebraData from its JSON/YAML descriptor.

    Parameters
    ----------
    descriptor : dict
        {"name", "dim", "basis", "brackets": [[i, j, k, value], ...], "form": [[...]] or
        {"from_representation": descriptor}, "flags": [...]}. Indices are 0-based; brackets not listed are zero.

    Returns
    -------
    LieAlgebraData

    Raises
    ------
    JacobiViolation, AntisymmetryViolation, SingularFormWhenNondegenerateRequired, ConfigError

    """
    try:
        dim = int(descriptor['dim'])
        name = str(descriptor.get('name', 'algebra'))
        labels = tuple(str(x) for x in descriptor.get('basis', [f'xi{i + 1}' for i in range(dim)]))
        f = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for i, j, k, value in descriptor.get('brackets', []):
            f[int(i)][int(j)][int(k)] = as_fraction(value)
        flags = frozenset(descriptor.get('flags', []))
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise ConfigError(f'malformed algebra descriptor: {e}')

    if len(labels) != dim:
        raise ConfigError(f'{len(labels)} basis labels given for dimension {dim}')

    algebra = LieAlgebraData(name=name, dim=dim, basis_labels=labels,
                             structure_constants=tuple(tuple(tuple(row) for row in plane) for plane in f),
                             flags=flags)

    form_descriptor = descriptor.get('form')
    if isinstance(form_descriptor, dict) and 'from_representation' in form_descriptor:
        rep_descriptor = form_descriptor['from_representation']
        check_antisymmetry(algebra.structure_constants, dim)
        check_jacobi(algebra)
        rep = load_representation(rep_descriptor, algebra)
        algebra = _with_form(algebra, trace_form(algebra, rep))
    elif form_descriptor == 'killing':
        check_antisymmetry(algebra.structure_constants, dim)
        algebra = _with_form(algebra, killing_form(algebra))
    elif form_descriptor is not None:
        algebra = _with_form(algebra, as_matrix(form_descriptor))

    return validate_algebra(algebra)
