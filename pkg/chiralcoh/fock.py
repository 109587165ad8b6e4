"""
Fock bases of free-field vertex superalgebras (bc-βγ systems) and sparse exact states.

A creation symbol is a pair ``(g, k)`` standing for the mode x_g(-k-1) applied to the vacuum, i.e. the divided
derivative ∂^k x_g / k!. A monomial is a tuple of symbols sorted by (generator index, k); the product it denotes
is taken in that order. Odd symbols appear at most once. The text form of a symbol is ``[dK]label``.
"""
import os
import re

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from chiralcoh.errors import MixedComplex, TruncationOverflow

Symbol = Tuple[int, int]
Monomial = Tuple[Symbol, ...]

DEFAULT_BUDGET = 2000000

symbol_pattern = re.compile(r'^(?:d(\d+))?(.+)$')


def default_budget() -> int:
    return int(os.getenv('CHIRALCOH_BUDGET', DEFAULT_BUDGET))


@dataclass(frozen=True)
class GeneratorSpec:
    """ A free-field generator.

    Attributes
    ----------
    label : str
        Text label, unique inside an algebra.
    odd : bool
        Parity.
    degree : int
        Cohomological degree.
    weight : int
        Conformal weight of the underived generator.
    partner : int
        Index of the generator it pairs with.
    pairing : Fraction
        x(m) with m >= 0 acts as ``pairing`` times the derivative with respect to the partner symbol (partner, m).
    charge : int
        Auxiliary grading preserved by every operator built in this package.

    """

    label: str
    odd: bool
    degree: int
    weight: int
    partner: int
    pairing: Fraction
    charge: int = 0


@dataclass(frozen=True)
class FreeFieldAlgebra:
    name: str
    generators: Tuple[GeneratorSpec, ...]

    def index(self, label: str) -> int:
        for i, gen in enumerate(self.generators):
            if gen.label == label:
                return i
        raise KeyError(label)

    def symbol_degree(self, symbol: Symbol) -> int:
        return self.generators[symbol[0]].degree

    def symbol_weight(self, symbol: Symbol) -> int:
        return self.generators[symbol[0]].weight + symbol[1]

    def symbol_charge(self, symbol: Symbol) -> int:
        return self.generators[symbol[0]].charge

    def is_odd(self, symbol: Symbol) -> bool:
        return self.generators[symbol[0]].odd

    def degree(self, monomial: Monomial) -> int:
        return sum(self.generators[g].degree for g, _ in monomial)

    def weight(self, monomial: Monomial) -> int:
        return sum(self.generators[g].weight + k for g, k in monomial)

    def charge(self, monomial: Monomial) -> int:
        return sum(self.generators[g].charge for g, _ in monomial)

    def parity(self, monomial: Monomial) -> int:
        return sum(1 for g, _ in monomial if self.generators[g].odd) % 2

    def tensor(self, other: 'FreeFieldAlgebra', name: str = None) -> 'FreeFieldAlgebra':
        """ The free-field algebra on the union of both generator tables; ``other`` is shifted behind ``self``. """
        labels = {gen.label for gen in self.generators}
        shift = len(self.generators)
        shifted = []
        for gen in other.generators:
            if gen.label in labels:
                raise ValueError(f'generator label {gen.label} occurs in both factors')
            shifted.append(GeneratorSpec(label=gen.label, odd=gen.odd, degree=gen.degree, weight=gen.weight,
                                         partner=gen.partner + shift, pairing=gen.pairing, charge=gen.charge))
        return FreeFieldAlgebra(name=name or f'{self.name}*{other.name}', generators=self.generators + tuple(shifted))


def insert_symbol(algebra: FreeFieldAlgebra, symbol: Symbol, monomial: Monomial) -> Tuple[int, Optional[Monomial]]:
    """ Left multiplication of a monomial by a symbol.

    Returns
    -------
    tuple
        (sign, monomial), or (0, None) if an odd symbol is repeated.

    """
    position = 0
    odd_before = 0
    for other in monomial:
        if other >= symbol:
            break
        position += 1
        if algebra.is_odd(other):
            odd_before += 1

    if algebra.is_odd(symbol):
        if position < len(monomial) and monomial[position] == symbol:
            return 0, None
        sign = -1 if odd_before % 2 else 1
    else:
        sign = 1
    return sign, monomial[:position] + (symbol,) + monomial[position:]


def canonicalize(algebra: FreeFieldAlgebra, raw: Sequence[Symbol]) -> Tuple[int, Optional[Monomial]]:
    """ Sort a product of symbols into canonical order with the Koszul sign.

    Returns
    -------
    tuple
        (sign, monomial); (0, None) when an odd symbol repeats.

    """
    sign = 1
    monomial: Monomial = ()
    for symbol in reversed(raw):
        s, monomial = insert_symbol(algebra, symbol, monomial)
        if not s:
            return 0, None
        sign *= s
    return sign, monomial


def remove_symbol(algebra: FreeFieldAlgebra, symbol: Symbol, monomial: Monomial) -> Tuple[int, Optional[Monomial]]:
    """ Left super-derivative ∂/∂symbol of a monomial.

    Returns
    -------
    tuple
        (factor, monomial) where the factor carries the multiplicity of an even symbol or the Koszul sign of an
        odd one; (0, None) if the symbol is absent.

    """
    if algebra.is_odd(symbol):
        odd_before = 0
        for position, other in enumerate(monomial):
            if other == symbol:
                sign = -1 if odd_before % 2 else 1
                return sign, monomial[:position] + monomial[position + 1:]
            if algebra.is_odd(other):
                odd_before += 1
        return 0, None

    count = monomial.count(symbol)
    if not count:
        return 0, None
    position = monomial.index(symbol)
    return count, monomial[:position] + monomial[position + 1:]


class State:
    """ A finite linear combination of canonical monomials with exact rational coefficients. """

    __slots__ = ('algebra', 'terms')

    def __init__(self, algebra: FreeFieldAlgebra, terms: Dict[Monomial, Fraction] = None):
        self.algebra = algebra
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def vacuum(cls, algebra: FreeFieldAlgebra) -> 'State':
        return cls(algebra, {(): Fraction(1)})

    @classmethod
    def generator(cls, algebra: FreeFieldAlgebra, label: str, k: int = 0) -> 'State':
        return cls(algebra, {((algebra.index(label), k),): Fraction(1)})

    @classmethod
    def monomial(cls, algebra: FreeFieldAlgebra, raw: Sequence[Symbol], coefficient=1) -> 'State':
        sign, monomial = canonicalize(algebra, raw)
        if not sign:
            return cls(algebra)
        return cls(algebra, {monomial: Fraction(coefficient) * sign})

    def _check(self, other: 'State'):
        if other.algebra != self.algebra:
            raise MixedComplex(f'cannot combine states of {self.algebra.name} and {other.algebra.name}')

    def __add__(self, other: 'State') -> 'State':
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return State(self.algebra, terms)

    def __sub__(self, other: 'State') -> 'State':
        return self + (-other)

    def __neg__(self) -> 'State':
        return State(self.algebra, {m: -c for m, c in self.terms.items()})

    def __mul__(self, scalar) -> 'State':
        scalar = Fraction(scalar)
        return State(self.algebra, {m: c * scalar for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items()))

    def __repr__(self) -> str:
        return f'State({format_state(self)})'

    def is_zero(self) -> bool:
        return not self.terms

    def bidegree(self) -> Tuple[int, int]:
        """ (degree, weight) of a homogeneous nonzero state; ValueError when inhomogeneous or zero. """
        grades = {(self.algebra.degree(m), self.algebra.weight(m)) for m in self.terms}
        if len(grades) != 1:
            raise ValueError(f'state is not homogeneous: {sorted(grades)}')
        return grades.pop()

    def parity(self) -> int:
        parities = {self.algebra.parity(m) for m in self.terms}
        if len(parities) > 1:
            raise ValueError('state has mixed parity')
        return parities.pop() if parities else 0

    def restrict(self, generators: Iterable[int]) -> 'State':
        allowed = set(generators)
        return State(self.algebra, {m: c for m, c in self.terms.items() if all(g in allowed for g, _ in m)})

    def retag(self, algebra: FreeFieldAlgebra, shift: int = 0) -> 'State':
        """ The same state read in a larger algebra whose generator table contains this one at offset ``shift``. """
        return State(algebra, {tuple((g + shift, k) for g, k in m): c for m, c in self.terms.items()})

    def product(self, other: 'State') -> 'State':
        """ Juxtaposition of monomials; the normal product for states whose symbols never contract. """
        self._check(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, m = canonicalize(self.algebra, m1 + m2)
                if sign:
                    terms[m] = terms.get(m, Fraction(0)) + sign * c1 * c2
        return State(self.algebra, terms)


def format_symbol(algebra: FreeFieldAlgebra, symbol: Symbol) -> str:
    g, k = symbol
    label = algebra.generators[g].label
    return f'd{k}{label}' if k else label


def format_monomial(algebra: FreeFieldAlgebra, monomial: Monomial) -> str:
    if not monomial:
        return '1'
    return ' '.join(format_symbol(algebra, s) for s in monomial)


def format_state(state: State) -> str:
    if state.is_zero():
        return '0'
    return ' + '.join(f'{c} * {format_monomial(state.algebra, m)}' for m, c in state)


def parse_symbol(algebra: FreeFieldAlgebra, text: str) -> Symbol:
    try:
        return algebra.index(text), 0
    except KeyError:
        pass

    match = symbol_pattern.match(text)
    if not match or match.group(1) is None:
        raise ValueError(f'unknown symbol {text}')
    try:
        return algebra.index(match.group(2)), int(match.group(1))
    except KeyError:
        raise ValueError(f'unknown generator in symbol {text}')


def parse_monomial(algebra: FreeFieldAlgebra, text: str) -> State:
    """ Parse ``"b{e} d1c{e'} gamma{f'}"`` (any symbol order) into a State with the Koszul sign applied. """
    text = text.strip()
    if text in ('', '1'):
        return State.vacuum(algebra)
    raw = [parse_symbol(algebra, token) for token in text.split()]
    return State.monomial(algebra, raw)


def derivative(state: State) -> State:
    """ ∂ acting by the Leibniz rule; on divided powers ∂(x, k) = (k + 1)(x, k + 1). """
    algebra = state.algebra
    terms = {}
    for monomial, c in state.terms.items():
        for position, (g, k) in enumerate(monomial):
            raw = monomial[:position] + ((g, k + 1),) + monomial[position + 1:]
            sign, m = canonicalize(algebra, raw)
            if sign:
                terms[m] = terms.get(m, Fraction(0)) + c * sign * (k + 1)
    return State(algebra, terms)


def _weight_partitions(algebra: FreeFieldAlgebra, positive: List[Symbol], n: int, start: int = 0):
    """ Multisets of positive-weight symbols of total weight n, as sorted tuples. """
    if n == 0:
        yield ()
        return
    for i in range(start, len(positive)):
        symbol = positive[i]
        w = algebra.symbol_weight(symbol)
        if w > n:
            continue
        next_start = i + 1 if algebra.is_odd(symbol) else i
        for rest in _weight_partitions(algebra, positive, n - w, next_start):
            yield (symbol,) + rest


def _zero_weight_fills(algebra: FreeFieldAlgebra, zero: List[Symbol], target: int, start: int = 0):
    """ Multisets of weight-0 symbols whose degree + charge adds up to target. """
    if target == 0:
        yield ()
        return
    for i in range(start, len(zero)):
        symbol = zero[i]
        size = algebra.symbol_degree(symbol) + algebra.symbol_charge(symbol)
        if size > target:
            continue
        next_start = i + 1 if algebra.is_odd(symbol) else i
        for rest in _zero_weight_fills(algebra, zero, target - size, next_start):
            yield (symbol,) + rest


def _check_finiteness(algebra: FreeFieldAlgebra, zero: List[Symbol]):
    for symbol in zero:
        if algebra.symbol_degree(symbol) + algebra.symbol_charge(symbol) <= 0:
            raise ValueError(f'weight-zero generator {algebra.generators[symbol[0]].label} makes pieces infinite')


@lru_cache(maxsize=4096)
def enumerate_basis(algebra: FreeFieldAlgebra, p: int, n: int, charge: int = 0,
                    allowed: Optional[FrozenSet] = None, budget: int = None) -> Tuple[Monomial, ...]:
    """ Canonical monomials of degree p, weight n and the given charge, in sorted order.

    Parameters
    ----------
    algebra : FreeFieldAlgebra
        The generator table.
    p : int
        Cohomological degree.
    n : int
        Conformal weight; negative weights give an empty piece.
    charge : int
        Auxiliary charge.
    allowed : frozenset, optional
        Restrict to these generator indices.
    budget : int, optional
        Maximum number of monomials (default from CHIRALCOH_BUDGET, else 2·10^6).

    Returns
    -------
    tuple
        The monomials.

    Raises
    ------
    TruncationOverflow
        If the piece exceeds the budget.

    """
    if n < 0:
        return ()

    budget = budget or default_budget()
    indices = [g for g in range(len(algebra.generators)) if allowed is None or g in allowed]
    positive = sorted((g, k) for g in indices for k in range(n + 1)
                      if 0 < algebra.generators[g].weight + k <= n)
    zero = sorted((g, 0) for g in indices if algebra.generators[g].weight == 0)
    _check_finiteness(algebra, zero)

    result = set()
    for head in _weight_partitions(algebra, positive, n):
        remaining_degree = p - algebra.degree(head)
        remaining_charge = charge - algebra.charge(head)
        target = remaining_degree + remaining_charge
        if target < 0:
            continue
        for tail in _zero_weight_fills(algebra, zero, target):
            if algebra.degree(tail) != remaining_degree or algebra.charge(tail) != remaining_charge:
                continue
            result.add(tuple(sorted(head + tail)))
            if len(result) > budget:
                raise TruncationOverflow((p, n, charge), budget)
    return tuple(sorted(result))


def basis_index(basis: Sequence[Monomial]) -> Dict[Monomial, int]:
    return {m: i for i, m in enumerate(basis)}

