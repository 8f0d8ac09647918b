"""Seeded i.i.d. samples delivered as exact rational readouts.

Randomness comes from numpy's Philox4x64-10 counter-based generator keyed
directly with the 64-bit seed (``Philox(key=seed)``). Draws are taken in
blocks of ``BLOCK_SIZE`` bounded integers through ``Generator.integers``; a
Bernoulli(p) event with ``p = num/den`` is a draw ``u`` in ``[0, den)`` with
``u < num``. The readout sequence therefore depends only on (spec, seed).
"""

import logging
from collections.abc import Callable, Iterator
from fractions import Fraction

import numpy as np

from src.core.errors import ConfigError
from src.core.rational import RationalLike, Threshold, as_rational
from src.models.stats import Accumulator
from src.schemas.distribution import (
    ConstantSpec,
    DistributionSpec,
    IrrationalTwoPointSpec,
    ShiftedBernoulliSpec,
    TwoPointSpec,
)
from src.schemas.identifier import EpsilonSchedule
from src.services.presentations import CauchyPresentation

logger = logging.getLogger(__name__)

BLOCK_SIZE = 4096
MAX_DRAW_DENOMINATOR = 1 << 62

# Beyond this n the inverse-square eta is taken from its enclosure.
EXACT_INVERSE_SQUARE_LIMIT = 100_000
_CHECKPOINT_EVERY = 1024
_inverse_square_checkpoints: dict[int, tuple[int, int]] = {0: (0, 1)}


def precision_bits(i: int, schedule: EpsilonSchedule = "dyadic") -> int:
    """Least ``m >= 1`` with ``2**-m <= eps_i``."""
    if i < 1:
        raise ValueError(f"readout positions start at 1, got {i}")
    if schedule == "dyadic":
        return i
    return max(1, (i * i - 1).bit_length())


def inverse_square_sum(n: int) -> Fraction:
    start = max(k for k in _inverse_square_checkpoints if k <= n)
    total = Accumulator()
    total.numerator, total.denominator = _inverse_square_checkpoints[start]
    for i in range(start + 1, n + 1):
        total.add(1, i * i)
        if i % _CHECKPOINT_EVERY == 0:
            _inverse_square_checkpoints[i] = (total.numerator, total.denominator)
    return total.value()


def eta(n: int, schedule: EpsilonSchedule = "dyadic") -> Threshold:
    """eta_n = (1/n) * sum_{i<=n} eps_i, exactly.

    The dyadic case is ``(1 - 2**-n) / n`` kept as a threshold. The
    inverse-square case is exact up to ``EXACT_INVERSE_SQUARE_LIMIT`` and the
    upper end of ``eta_enclosure`` beyond it.
    """
    if n < 1:
        raise ValueError(f"eta is defined for n >= 1, got {n}")
    if schedule == "dyadic":
        return Threshold(Fraction(1, n), Fraction(-1, n), n)
    if n <= EXACT_INVERSE_SQUARE_LIMIT:
        return Threshold(inverse_square_sum(n) / n)
    return eta_enclosure(n, schedule)[1]


def eta_enclosure(
    n: int, schedule: EpsilonSchedule = "dyadic"
) -> tuple[Threshold, Threshold]:
    """Exact lower and upper bounds of eta_n that never need a huge sum."""
    if n < 1:
        raise ValueError(f"eta is defined for n >= 1, got {n}")
    if schedule == "dyadic" or n <= EXACT_INVERSE_SQUARE_LIMIT:
        value = eta(n, schedule)
        return value, value
    # Integral comparison for the terms past the exact prefix.
    cut = EXACT_INVERSE_SQUARE_LIMIT
    head = inverse_square_sum(cut)
    low = head + Fraction(1, cut + 1) - Fraction(1, n + 1)
    high = head + Fraction(1, cut) - Fraction(1, n)
    return Threshold(low / n), Threshold(high / n)


class ReadoutStream:
    """Single-owner stream of readouts ``X~_1, X~_2, ...`` for one seed."""

    def __init__(
        self,
        spec: DistributionSpec,
        seed: int = 0,
        schedule: EpsilonSchedule = "dyadic",
        presentation: CauchyPresentation | None = None,
    ) -> None:
        self.spec = spec
        self.seed = seed
        self.schedule = schedule
        self.position = 0
        self._generator = np.random.Generator(np.random.Philox(key=seed))
        self._block: list[int] = []
        self._cursor = 0
        self._bound = 0
        self._draw: Callable[[], Fraction]
        self._level = -1
        self._shifted: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))

        match spec:
            case ConstantSpec():
                value = spec.value
                self._draw = lambda: value
            case TwoPointSpec():
                self._setup_two_point(spec.a, spec.b, spec.p)
            case ShiftedBernoulliSpec():
                half = spec.delta / 2
                self._setup_two_point(spec.q + half, spec.q - half, Fraction(1, 2))
            case IrrationalTwoPointSpec():
                if presentation is None:
                    raise ConfigError(
                        f"no presentation supplied for mean {spec.mean_name!r}"
                    )
                self.presentation = presentation
                self._draw = self._draw_irrational
            case _:
                raise ConfigError(f"unsupported distribution {spec!r}")

    @property
    def is_degenerate(self) -> bool:
        return self.spec.is_degenerate

    def _uniform(self, bound: int) -> int:
        if self._cursor == len(self._block) or bound != self._bound:
            self._block = self._generator.integers(
                0, bound, size=BLOCK_SIZE, dtype=np.int64
            ).tolist()
            self._cursor = 0
            self._bound = bound
        value = self._block[self._cursor]
        self._cursor += 1
        return value

    def _setup_two_point(self, a: Fraction, b: Fraction, p: Fraction) -> None:
        if p.denominator > MAX_DRAW_DENOMINATOR:
            raise ConfigError(f"probability denominator too large: {p}")
        bound, threshold = p.denominator, p.numerator
        self._draw = lambda: a if self._uniform(bound) < threshold else b

    def _draw_irrational(self) -> Fraction:
        # Precision climbs a power-of-two ladder; the midpoint at depth
        # ``level`` is within 2**-(level+1) <= eps_i of the mean.
        needed = precision_bits(self.position, self.schedule)
        level = 1 << (needed - 1).bit_length()
        if level != self._level:
            center = self.presentation.midpoint(level)
            offset = self.spec.offset
            self._shifted = (center + offset, center - offset)
            self._level = level
            logger.debug(f"Readout precision raised to {level} bits at i={self.position}")
        return self._shifted[self._uniform(2)]

    def next_readout(self) -> Fraction:
        self.position += 1
        return self._draw()

    def runs(self, limit: int) -> Iterator[tuple[Fraction, int]]:
        """The next ``limit`` readouts as ``(readout, repeat)`` pairs."""
        if self.is_degenerate:
            if limit > 0:
                value = self.next_readout()
                self.position += limit - 1
                yield value, limit
            return
        for _ in range(limit):
            yield self.next_readout(), 1


def next_readout(stream: ReadoutStream) -> Fraction:
    return stream.next_readout()


def constant_stream(q: RationalLike) -> ReadoutStream:
    """The degenerate stream ``X~_i = q`` for every ``i``."""
    return ReadoutStream(ConstantSpec(value=as_rational(q)))
