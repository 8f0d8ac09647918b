"""Fixed computable bijection between the positive integers and the rationals.

Index 1 is zero. For ``m >= 1`` index ``2m`` is the ``m``-th Calkin–Wilf
rational and ``2m + 1`` its negative. The Calkin–Wilf tree starts at ``1/1``;
node ``m`` has children ``2m -> a/(a+b)`` and ``2m+1 -> (a+b)/b``.
"""

from collections.abc import Iterator
from fractions import Fraction

from src.core.rational import RationalLike, as_rational


def calkin_wilf(m: int) -> Fraction:
    """The ``m``-th positive rational in breadth-first Calkin–Wilf order."""
    if m < 1:
        raise ValueError(f"Calkin–Wilf positions start at 1, got {m}")
    a, b = 1, 1
    for bit in bin(m)[3:]:
        if bit == "0":
            b = a + b
        else:
            a = a + b
    return Fraction(a, b)


def calkin_wilf_position(q: RationalLike) -> int:
    """Inverse of ``calkin_wilf`` for a positive rational."""
    q = as_rational(q)
    if q <= 0:
        raise ValueError(f"Calkin–Wilf positions cover positive rationals, got {q}")
    a, b = q.numerator, q.denominator
    # (bit, repeat) runs from the leaf up to the root
    runs: list[tuple[int, int]] = []
    while a != b:
        if a < b:
            count, rest = divmod(b, a)
            if rest == 0:
                count, rest = count - 1, a
            runs.append((0, count))
            b = rest
        else:
            count, rest = divmod(a, b)
            if rest == 0:
                count, rest = count - 1, b
            runs.append((1, count))
            a = rest
    m = 1
    for bit, count in reversed(runs):
        m = (m << count) | (((1 << count) - 1) if bit else 0)
    return m


def enumerate_rational(i: int) -> Fraction:
    """The rational ``q_i``."""
    if i < 1:
        raise ValueError(f"rational indices start at 1, got {i}")
    if i == 1:
        return Fraction(0)
    m, negative = divmod(i, 2)
    value = calkin_wilf(m)
    return -value if negative else value


def index_of(q: RationalLike) -> int:
    """The unique ``i`` with ``q_i == q``."""
    q = as_rational(q)
    if q == 0:
        return 1
    m = calkin_wilf_position(abs(q))
    return 2 * m + (1 if q < 0 else 0)


def iter_rationals() -> Iterator[tuple[int, Fraction]]:
    """Yield ``(i, q_i)`` for ``i = 1, 2, ...``.

    Successive Calkin–Wilf terms follow Newman's formula
    ``x -> 1 / (2 * floor(x) - x + 1)``, so each step costs O(1) integer work.
    """
    yield 1, Fraction(0)
    a, b = 1, 1
    m = 1
    while True:
        value = Fraction(a, b)
        yield 2 * m, value
        yield 2 * m + 1, -value
        a, b = b, (2 * (a // b) + 1) * b - a
        m += 1
