from fractions import Fraction
from math import gcd


class Accumulator:
    """Exact running sum held as an unreduced numerator over a denominator.

    ``Fraction`` reduces on every addition; a sum of readouts on a fixed grid
    only needs the common denominator, so reduction is deferred to ``value``.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self) -> None:
        self.numerator = 0
        self.denominator = 1

    def add(self, a: int, b: int, times: int = 1) -> None:
        """Add ``times * a / b`` with ``b > 0``."""
        a *= times
        d = self.denominator
        if d % b == 0:
            self.numerator += a * (d // b)
        elif b % d == 0:
            self.numerator = self.numerator * (b // d) + a
            self.denominator = b
        else:
            g = gcd(d, b)
            self.numerator = self.numerator * (b // g) + a * (d // g)
            self.denominator = d // g * b

    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


class RunningStats:
    """Exact sample count, mean and uncorrected variance of a readout prefix."""

    __slots__ = ("n", "_sum", "_sum_sq", "_last", "_last_square")

    def __init__(self) -> None:
        self.n = 0
        self._sum = Accumulator()
        self._sum_sq = Accumulator()
        # Readouts repeat as objects; their squares are reused.
        self._last: list[Fraction] = []
        self._last_square: list[tuple[int, int]] = []

    def _square(self, x: Fraction) -> tuple[int, int]:
        for cached, square in zip(self._last, self._last_square, strict=True):
            if cached is x:
                return square
        square = (x.numerator * x.numerator, x.denominator * x.denominator)
        self._last = [x, *self._last[:1]]
        self._last_square = [square, *self._last_square[:1]]
        return square

    def push(self, x: Fraction) -> None:
        self.push_many(x, 1)

    def push_many(self, x: Fraction, count: int) -> None:
        if count < 0:
            raise ValueError("count must be nonnegative")
        if count == 0:
            return
        self.n += count
        self._sum.add(x.numerator, x.denominator, count)
        self._sum_sq.add(*self._square(x), count)

    @property
    def sum(self) -> Fraction:
        return self._sum.value()

    @property
    def sum_sq(self) -> Fraction:
        return self._sum_sq.value()

    def mean(self) -> Fraction:
        if self.n == 0:
            raise ValueError("mean of an empty prefix")
        return Fraction(self._sum.numerator, self._sum.denominator * self.n)

    def variance(self) -> Fraction:
        """``sum_sq / n - mean**2`` as one reduced fraction."""
        if self.n == 0:
            raise ValueError("variance of an empty prefix")
        n = self.n
        s_num, s_den = self._sum.numerator, self._sum.denominator
        q_num, q_den = self._sum_sq.numerator, self._sum_sq.denominator
        numerator = q_num * n * s_den * s_den - s_num * s_num * q_den
        return Fraction(numerator, n * n * q_den * s_den * s_den)
