"""
Truncated bivariate series Σ a_{p,n} z^p q^n with exact rational coefficients.

A series knows its coefficients for p_min <= p <= p_max and 0 <= n <= n_max; coefficients below p_min are zero
and coefficients above the truncation are unknown. Arithmetic keeps the truncation honest: a sum is known where
both operands are, a product wherever no unknown coefficient of an operand can contribute.
"""
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Tuple

Key = Tuple[int, int]


class CharacterSeries:
    """ A truncated series in z (cohomological degree) and q (conformal weight).

    Parameters
    ----------
    coefficients : dict
        Map (p, n) -> coefficient; entries outside the truncation are dropped.
    p_max : int
        Highest known z-degree.
    n_max : int
        Highest known q-degree.
    p_min : int
        Lower bound of the z-support (coefficients with p < p_min are zero).

    """

    __slots__ = ('coefficients', 'p_max', 'n_max', 'p_min')

    def __init__(self, coefficients: Dict[Key, Fraction] = None, p_max: int = 0, n_max: int = 0, p_min: int = 0):
        if n_max < 0:
            raise ValueError('n_max must be nonnegative')
        self.p_max = p_max
        self.n_max = n_max
        self.p_min = p_min
        self.coefficients = {}
        for (p, n), c in (coefficients or {}).items():
            if p < p_min and c:
                raise ValueError(f'coefficient at z^{p} below the declared support bound {p_min}')
            if c and p <= p_max and 0 <= n <= n_max:
                self.coefficients[(p, n)] = Fraction(c)

    @classmethod
    def zero(cls, p_max: int, n_max: int) -> 'CharacterSeries':
        return cls({}, p_max, n_max)

    @classmethod
    def one(cls, p_max: int, n_max: int) -> 'CharacterSeries':
        return cls({(0, 0): Fraction(1)}, p_max, n_max)

    @classmethod
    def polynomial(cls, coefficients: Dict[Key, Fraction], p_max: int, n_max: int) -> 'CharacterSeries':
        p_min = min([p for p, _ in coefficients] + [0])
        return cls(coefficients, p_max, n_max, p_min)

    @classmethod
    def poincare(cls, betti: Iterable[int], p_max: int, n_max: int) -> 'CharacterSeries':
        """ Σ_j b_j z^j in weight 0. """
        return cls({(j, 0): Fraction(b) for j, b in enumerate(betti) if b}, p_max, n_max)

    @classmethod
    def geometric(cls, p_step: int, n_step: int, p_max: int, n_max: int) -> 'CharacterSeries':
        """ 1 / (1 − z^p_step q^n_step) for p_step > 0. """
        if p_step <= 0:
            raise ValueError('the z-step of a geometric series must be positive')
        coefficients = {}
        j = 0
        while j * p_step <= p_max and j * n_step <= n_max:
            coefficients[(j * p_step, j * n_step)] = Fraction(1)
            j += 1
        return cls(coefficients, p_max, n_max)

    def coefficient(self, p: int, n: int) -> Fraction:
        if n > self.n_max or p > self.p_max:
            raise KeyError(f'z^{p} q^{n} lies outside the truncation')
        return self.coefficients.get((p, n), Fraction(0))

    def __iter__(self) -> Iterator[Tuple[Key, Fraction]]:
        return iter(sorted(self.coefficients.items(), key=lambda item: (item[0][1], item[0][0])))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CharacterSeries):
            return NotImplemented
        return (self.coefficients, self.p_max, self.n_max) == (other.coefficients, other.p_max, other.n_max)

    def __repr__(self) -> str:
        return f'CharacterSeries({self.to_text()})'

    def __neg__(self) -> 'CharacterSeries':
        return CharacterSeries({k: -c for k, c in self.coefficients.items()}, self.p_max, self.n_max, self.p_min)

    def __add__(self, other: 'CharacterSeries') -> 'CharacterSeries':
        coefficients = dict(self.coefficients)
        for k, c in other.coefficients.items():
            coefficients[k] = coefficients.get(k, Fraction(0)) + c
        return CharacterSeries(coefficients, min(self.p_max, other.p_max), min(self.n_max, other.n_max),
                               min(self.p_min, other.p_min))

    def __sub__(self, other: 'CharacterSeries') -> 'CharacterSeries':
        return self + (-other)

    def __mul__(self, other) -> 'CharacterSeries':
        if not isinstance(other, CharacterSeries):
            scalar = Fraction(other)
            return CharacterSeries({k: c * scalar for k, c in self.coefficients.items()}, self.p_max, self.n_max,
                                   self.p_min)

        p_max = min(self.p_max + other.p_min, other.p_max + self.p_min)
        n_max = min(self.n_max, other.n_max)
        coefficients = {}
        for (p1, n1), c1 in self.coefficients.items():
            for (p2, n2), c2 in other.coefficients.items():
                p, n = p1 + p2, n1 + n2
                if p <= p_max and n <= n_max:
                    coefficients[(p, n)] = coefficients.get((p, n), Fraction(0)) + c1 * c2
        return CharacterSeries(coefficients, p_max, n_max, self.p_min + other.p_min)

    __rmul__ = __mul__

    def truncate(self, p_max: int, n_max: int) -> 'CharacterSeries':
        if p_max > self.p_max or n_max > self.n_max:
            raise ValueError('cannot extend the truncation of a series')
        return CharacterSeries(self.coefficients, p_max, n_max, self.p_min)

    def weight_zero(self) -> 'CharacterSeries':
        """ The q^0 layer. """
        return CharacterSeries({k: c for k, c in self.coefficients.items() if k[1] == 0}, self.p_max, self.n_max,
                               self.p_min)

    def positive_part(self) -> 'CharacterSeries':
        """ The part of positive weight, χ_+. """
        return CharacterSeries({k: c for k, c in self.coefficients.items() if k[1] > 0}, self.p_max, self.n_max,
                               self.p_min)

    def layer(self, n: int) -> Dict[int, Fraction]:
        return {p: c for (p, m), c in self.coefficients.items() if m == n}

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_nonnegative_integral(self) -> bool:
        return all(c >= 0 and c.denominator == 1 for c in self.coefficients.values())

    def lowest_positive_term(self) -> Tuple[Key, Fraction]:
        """ The positive-weight coefficient with the smallest (n, p), or ((0, 0), 0) if there is none. """
        terms = sorted((k[1], k[0], c) for k, c in self.coefficients.items() if k[1] > 0)
        if not terms:
            return (0, 0), Fraction(0)
        n, p, c = terms[0]
        return (p, n), c

    def mismatches(self, other: 'CharacterSeries') -> List[Tuple[int, int, Fraction, Fraction]]:
        """ (p, n, self, other) for every differing coefficient on the common truncation. """
        p_max = min(self.p_max, other.p_max)
        n_max = min(self.n_max, other.n_max)
        keys = set(self.coefficients) | set(other.coefficients)
        result = []
        for p, n in sorted(keys, key=lambda k: (k[1], k[0])):
            if p > p_max or n > n_max:
                continue
            a, b = self.coefficients.get((p, n), Fraction(0)), other.coefficients.get((p, n), Fraction(0))
            if a != b:
                result.append((p, n, a, b))
        return result

    def to_text(self) -> str:
        terms = []
        for (p, n), c in self:
            factors = [] if c == 1 and (p or n) else [str(c)]
            if p:
                factors.append('z' if p == 1 else f'z^{p}')
            if n:
                factors.append('q' if n == 1 else f'q^{n}')
            terms.append('*'.join(factors))
        body = ' + '.join(terms) if terms else '0'
        return f'{body} + O(z^{self.p_max + 1}, q^{self.n_max + 1})'


def product_formula(rank: int, p_max: int, n_max: int) -> CharacterSeries:
    """ Π_{k>=0} (1 − z² q^k)^(−rank), the character of C[γ, ∂γ, ∂²γ, ...] for a torus of the given rank. """
    result = CharacterSeries.one(p_max, n_max)
    for _ in range(rank):
        for k in range(n_max + 1):
            result = result * CharacterSeries.geometric(2, k, p_max, n_max)
    return result


def quotient(a: CharacterSeries, b: CharacterSeries) -> CharacterSeries:
    """ The series c with a = b·c, for b with constant term 1 and support in p >= 0.

    Raises
    ------
    ValueError
        If b does not have constant term 1 or has support in negative degree.

    """
    if b.coefficients.get((0, 0)) != 1 or b.p_min < 0 or a.p_min < 0:
        raise ValueError('division needs a divisor with constant term 1 and nonnegative degrees')

    p_max = min(a.p_max, b.p_max)
    n_max = min(a.n_max, b.n_max)
    c = {}
    for n in range(n_max + 1):
        for p in range(p_max + 1):
            value = a.coefficients.get((p, n), Fraction(0))
            for (p2, n2), coefficient in b.coefficients.items():
                if (p2, n2) == (0, 0) or p2 > p or n2 > n:
                    continue
                value -= coefficient * c.get((p - p2, n - n2), Fraction(0))
            if value:
                c[(p, n)] = value
    return CharacterSeries(c, p_max, n_max)


def divides(divisor: CharacterSeries, series: CharacterSeries) -> bool:
    """ Whether series = divisor·x for some x with nonnegative integral coefficients, within the truncation. """
    x = quotient(series, divisor)
    return x.is_nonnegative_integral() and not (divisor * x).mismatches(series)
