"""Exact rationals, their wire format, and lazily expanded thresholds.

Radii in this package reach magnitudes like ``2**-n`` for ``n`` in the tens of
billions. ``Threshold`` keeps such a quantity as ``base + tail * 2**-exponent``
and answers comparisons from bit lengths, so the power of two is only
materialized when two values genuinely agree to that many bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction
RationalLike = Fraction | int

# Thresholds with larger exponents serialize symbolically.
MATERIALIZE_LIMIT = 4096


def as_rational(value: RationalLike | str) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string into a Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` or ``"num"`` exactly."""
    numerator, sep, denominator = text.strip().partition("/")
    try:
        num = int(numerator)
        den = int(denominator) if sep else 1
    except ValueError as exc:
        raise ValueError(f"not a rational: {text!r}") from exc
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(value: RationalLike) -> str:
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


def _signum(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _sign(base: Fraction, tail: Fraction, exponent: int) -> int:
    """Sign of ``base + tail * 2**-exponent`` without expanding the power."""
    b = _signum(base)
    t = _signum(tail)
    if t == 0:
        return b
    if b == 0:
        return t
    if b == t:
        return b
    # Opposite signs: compare |base| * 2**exponent against |tail|.
    lhs = abs(base.numerator) * tail.denominator
    rhs = abs(tail.numerator) * base.denominator
    if lhs.bit_length() - 1 + exponent >= rhs.bit_length():
        return b
    if lhs.bit_length() + exponent <= rhs.bit_length() - 1:
        return t
    diff = (lhs << exponent) - rhs
    if diff > 0:
        return b
    if diff < 0:
        return t
    return 0


def _combine_tails(
    t1: Fraction, e1: int, t2: Fraction, e2: int
) -> tuple[Fraction, int]:
    if t1 == 0:
        return t2, e2
    if t2 == 0:
        return t1, e1
    if e1 == e2:
        return t1 + t2, e1
    if e1 > e2:
        return t1 + t2 * (1 << (e1 - e2)), e1
    return t1 * (1 << (e2 - e1)) + t2, e2


@dataclass(frozen=True, eq=False)
class Threshold:
    """The exact value ``base + tail * 2**-exponent``."""

    base: Fraction
    tail: Fraction = Fraction(0)
    exponent: int = 0

    def __post_init__(self) -> None:
        if self.exponent < 0:
            raise ValueError("exponent must be a natural number")
        object.__setattr__(self, "base", as_rational(self.base))
        object.__setattr__(self, "tail", as_rational(self.tail))
        if self.tail == 0:
            object.__setattr__(self, "exponent", 0)

    @classmethod
    def of(cls, value: Threshold | RationalLike) -> Threshold:
        if isinstance(value, Threshold):
            return value
        return cls(as_rational(value))

    @classmethod
    def dyadic(cls, exponent: int) -> Threshold:
        """The threshold ``2**-exponent``."""
        return cls(Fraction(0), Fraction(1), exponent)

    # Arithmetic

    def __add__(self, other: Threshold | RationalLike) -> Threshold:
        if isinstance(other, Threshold):
            tail, exponent = _combine_tails(
                self.tail, self.exponent, other.tail, other.exponent
            )
            return Threshold(self.base + other.base, tail, exponent)
        if isinstance(other, int | Fraction):
            return Threshold(self.base + other, self.tail, self.exponent)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: Threshold | RationalLike) -> Threshold:
        if isinstance(other, Threshold):
            return self + Threshold(-other.base, -other.tail, other.exponent)
        if isinstance(other, int | Fraction):
            return Threshold(self.base - other, self.tail, self.exponent)
        return NotImplemented

    # Comparison

    def _compare(self, other: Threshold | RationalLike) -> int:
        if isinstance(other, Threshold):
            tail, exponent = _combine_tails(
                self.tail, self.exponent, -other.tail, other.exponent
            )
            return _sign(self.base - other.base, tail, exponent)
        return _sign(self.base - as_rational(other), self.tail, self.exponent)

    def __lt__(self, other: Threshold | RationalLike) -> bool:
        if not isinstance(other, Threshold | int | Fraction):
            return NotImplemented
        return self._compare(other) < 0

    def __le__(self, other: Threshold | RationalLike) -> bool:
        if not isinstance(other, Threshold | int | Fraction):
            return NotImplemented
        return self._compare(other) <= 0

    def __gt__(self, other: Threshold | RationalLike) -> bool:
        if not isinstance(other, Threshold | int | Fraction):
            return NotImplemented
        return self._compare(other) > 0

    def __ge__(self, other: Threshold | RationalLike) -> bool:
        if not isinstance(other, Threshold | int | Fraction):
            return NotImplemented
        return self._compare(other) >= 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Threshold | int | Fraction):
            return NotImplemented
        return self._compare(other) == 0

    __hash__ = None  # type: ignore[assignment]

    def is_positive(self) -> bool:
        return _sign(self.base, self.tail, self.exponent) > 0

    # Conversion

    def to_fraction(self) -> Fraction:
        if self.tail == 0:
            return self.base
        return self.base + self.tail / (1 << self.exponent)

    def __float__(self) -> float:
        return float(self.base) + math.ldexp(float(self.tail), -self.exponent)

    def __str__(self) -> str:
        return format_threshold(self)

    def __repr__(self) -> str:
        return f"Threshold({format_threshold(self)})"


def format_threshold(value: Threshold | RationalLike) -> str:
    """Canonical text form; symbolic once the exponent is too large to expand."""
    if not isinstance(value, Threshold):
        return format_rational(value)
    if value.exponent <= MATERIALIZE_LIMIT:
        return format_rational(value.to_fraction())
    return (
        f"{format_rational(value.base)}+{format_rational(value.tail)}"
        f"*2^-{value.exponent}"
    )
