"""Sequential identification of a rational mean from readouts."""

import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Self

from mpmath import mp

from src.core.enumeration import iter_rationals
from src.core.errors import SearchBudgetExceeded
from src.core.rational import (
    RationalLike,
    Threshold,
    as_rational,
    format_rational,
    format_threshold,
)
from src.models.stats import RunningStats
from src.schemas.identifier import IdentifierConfig
from src.schemas.trial import DecisionRecord
from src.services.streams import eta

logger = logging.getLogger(__name__)

# ln ln n is taken as 0 up to here.
LOGLOG_CLAMP = 3

DEFAULT_SEARCH_BUDGET = 10_000_000

Segment = tuple[int, int]


@lru_cache(maxsize=4096)
def _loglog_bracket(n: int, bits: int) -> tuple[int, int]:
    """Integers ``lo, hi`` with ``lo * 2**-bits <= ln ln n <= hi * 2**-bits``."""
    with mp.workprec(bits + 32):
        k = int(mp.floor(mp.ldexp(mp.log(mp.log(n)), bits)))
    return k - 1, k + 2


def _scaled_sqrt(numerator: int, denominator: int, bits: int, upward: bool) -> int:
    """``floor`` (or ``ceil``) of ``sqrt(numerator/denominator) * 2**bits``."""
    scaled = numerator << (2 * bits)
    if not upward:
        return isqrt(scaled // denominator)
    ceiling = -(-scaled // denominator)
    root = isqrt(ceiling)
    return root if root * root == ceiling else root + 1


def lil_bounds(
    n: int, s_sq: RationalLike, alpha: RationalLike, precision: int
) -> tuple[Fraction, Fraction]:
    """Rationals bracketing ``(1+alpha) * sqrt(2 s^2 lnln(n) / n)``.

    Both ends are within ``2**-precision`` of the true value. The working
    precision of ``ln ln n`` depends on ``n`` alone unless the coefficient is
    huge, which keeps the upper end monotone in ``s_sq``.
    """
    s_sq = as_rational(s_sq)
    if n <= LOGLOG_CLAMP or s_sq == 0:
        return Fraction(0), Fraction(0)
    scale = 1 + as_rational(alpha)
    y_num = 2 * scale.numerator**2 * s_sq.numerator
    y_den = scale.denominator**2 * s_sq.denominator * n
    headroom = max(0, (y_num.bit_length() - y_den.bit_length() + 2) // 2)
    bits = precision + 8 + max(headroom, precision)
    lo_k, hi_k = _loglog_bracket(n, bits)
    out_bits = precision + 2
    den = y_den << bits
    upper = _scaled_sqrt(y_num * hi_k, den, out_bits, upward=True)
    lower = _scaled_sqrt(y_num * max(lo_k, 0), den, out_bits, upward=False)
    return Fraction(lower, 1 << out_bits), Fraction(upper, 1 << out_bits)


def radius(n: int, s_sq: RationalLike, cfg: IdentifierConfig) -> Threshold:
    """Upper end of a dyadic enclosure of the interval radius.

    ``delta_n = max((1+alpha) sqrt(2 s^2 lnln(n) / n), 2**-n)``; the result
    satisfies ``delta_n <= result <= delta_n + 2**-n``.
    """
    if n < 1:
        raise ValueError(f"radius is defined for n >= 1, got {n}")
    s_sq = as_rational(s_sq)
    if s_sq < 0:
        raise ValueError(f"sample variance must be nonnegative, got {s_sq}")
    floor = Threshold.dyadic(n)
    if n <= LOGLOG_CLAMP or s_sq == 0:
        return floor
    _, upper = lil_bounds(n, s_sq, cfg.alpha, precision=n)
    if floor >= upper:
        return floor
    return Threshold(upper)


def least_index(
    t: RationalLike,
    delta: Threshold | RationalLike,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> int:
    """Least ``i`` with ``|q_i - t| < delta``."""
    t = as_rational(t)
    delta = Threshold.of(delta)
    if not delta.is_positive():
        raise ValueError("delta must be positive")
    for i, q in iter_rationals():
        if i > budget:
            raise SearchBudgetExceeded(budget)
        if delta > abs(q - t):
            return i
    raise AssertionError("unreachable")


def bounded_index(t: RationalLike, delta: Threshold | RationalLike, k: int) -> int:
    """Least ``i <= k`` with ``|q_i - t| < delta``, or 0 if none qualifies."""
    t = as_rational(t)
    delta = Threshold.of(delta)
    if not delta.is_positive():
        raise ValueError("delta must be positive")
    for i, q in iter_rationals():
        if i > k:
            return 0
        if delta > abs(q - t):
            return i
    raise AssertionError("unreachable")


class SequentialIdentifier(ABC):
    """Shared state machine: running statistics plus decisions at ``n(j)``.

    The output ``C`` is 0 ("no member") or a positive index, and only changes
    when ``n`` hits a decision time.
    """

    def __init__(self, config: IdentifierConfig) -> None:
        self.config = config
        self.stats = RunningStats()
        self.j = 1
        self.next_time = config.decision_time(1)
        self.output = 0
        self.last_change = 0
        self.trace: list[DecisionRecord] = []

    @property
    def n(self) -> int:
        return self.stats.n

    @abstractmethod
    def _select(self, mean: Fraction, inflated: Threshold, j: int) -> tuple[int, int]:
        """Return ``(candidate, output)`` for decision ``j``."""

    @abstractmethod
    def clone(self) -> Self:
        """A fresh identifier with the same configuration."""

    def _decide(self) -> None:
        cfg = self.config
        n = self.stats.n
        mean = self.stats.mean()
        s_sq = self.stats.variance()
        radius_hat = radius(n, s_sq, cfg)
        inflated = radius_hat + eta(n, cfg.epsilon)
        candidate, output = self._select(mean, inflated, self.j)
        if output != self.output:
            self.output = output
            self.last_change = n
        if cfg.trace:
            self.trace.append(
                DecisionRecord(
                    j=self.j,
                    n=n,
                    mean=format_rational(mean),
                    s2=format_rational(s_sq),
                    radius=format_threshold(radius_hat),
                    inflated=format_threshold(inflated),
                    candidate=candidate,
                    output=output,
                )
            )
        logger.debug(f"Decision j={self.j} at n={n}: candidate={candidate} C={output}")
        self.j += 1
        self.next_time = cfg.decision_time(self.j)

    def step(self, readout: Fraction) -> int:
        """Consume one readout and return the current output."""
        self.stats.push(readout)
        if self.stats.n == self.next_time:
            self._decide()
        return self.output

    def advance(self, readout: Fraction, count: int) -> list[Segment]:
        """Consume ``count`` copies of ``readout``.

        Returns ``(first_n, output)`` segments covering the new positions, each
        holding until the next segment starts. Equivalent to ``count`` calls
        of ``step`` but costs one update per decision time crossed.
        """
        segments: list[Segment] = []

        def emit(start: int, value: int) -> None:
            if not segments or segments[-1][1] != value:
                segments.append((start, value))

        end = self.stats.n + count
        while self.stats.n < end:
            start = self.stats.n + 1
            if self.next_time > end:
                self.stats.push_many(readout, end - self.stats.n)
                emit(start, self.output)
                continue
            before = self.next_time - start
            if before:
                self.stats.push_many(readout, before)
                emit(start, self.output)
            self.stats.push(readout)
            self._decide()
            emit(self.stats.n, self.output)
        return segments


class RationalIdentifier(SequentialIdentifier):
    """Identifier for membership of the mean in the rationals."""

    def _select(self, mean: Fraction, inflated: Threshold, j: int) -> tuple[int, int]:
        candidate = bounded_index(mean, inflated, self.config.complexity(j))
        return candidate, candidate

    def clone(self) -> "RationalIdentifier":
        return RationalIdentifier(self.config)


def step(state: SequentialIdentifier, readout: Fraction) -> SequentialIdentifier:
    state.step(readout)
    return state


def observe_run(
    state: SequentialIdentifier, readout: Fraction, count: int
) -> list[Segment]:
    return state.advance(readout, count)
