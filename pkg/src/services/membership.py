"""Sequential membership tests ``F = a o C``, trials, and the induced approximator."""

import logging
from abc import ABC, abstractmethod
from bisect import bisect_right
from collections.abc import Callable
from fractions import Fraction
from typing import Self, override

from src.core.enumeration import enumerate_rational
from src.schemas.trial import TrialRecord
from src.services.approximators import LimitApproximator
from src.services.identifier import Segment, SequentialIdentifier
from src.services.presentations import RealFamily
from src.services.streams import ReadoutStream

logger = logging.getLogger(__name__)


class SequentialTest(ABC):
    """Maps a readout prefix to a bit, one readout at a time."""

    def __init__(self) -> None:
        self.n = 0

    @abstractmethod
    def update(self, readout: Fraction) -> int:
        """Consume one readout and return ``F_n``."""

    def update_run(self, readout: Fraction, count: int) -> list[Segment]:
        """Consume ``count`` copies of ``readout``; ``(first_n, F)`` segments."""
        segments: list[Segment] = []
        for _ in range(count):
            value = self.update(readout)
            if not segments or segments[-1][1] != value:
                segments.append((self.n, value))
        return segments

    @abstractmethod
    def clone(self) -> Self:
        """A fresh test in its initial state."""

    @property
    def index(self) -> int | None:
        return None

    @property
    def index_last_change(self) -> int:
        return 0


class ConstantTest(SequentialTest):
    def __init__(self, value: int) -> None:
        super().__init__()
        self.value = value

    @override
    def update(self, readout: Fraction) -> int:
        self.n += 1
        return self.value

    @override
    def update_run(self, readout: Fraction, count: int) -> list[Segment]:
        start = self.n + 1
        self.n += count
        return [(start, self.value)] if count else []

    def clone(self) -> "ConstantTest":
        return ConstantTest(self.value)


class ComposedTest(SequentialTest):
    """``F_n = 0`` when ``C_n = 0``, otherwise ``F_n = a(C_n, n)``."""

    def __init__(
        self, identifier: SequentialIdentifier, approximator: LimitApproximator
    ) -> None:
        super().__init__()
        self.identifier = identifier
        self.approximator = approximator

    def update(self, readout: Fraction) -> int:
        c = self.identifier.step(readout)
        self.n = self.identifier.n
        return 0 if c == 0 else self.approximator.approximate(c, self.n)

    def update_run(self, readout: Fraction, count: int) -> list[Segment]:
        index_segments = self.identifier.advance(readout, count)
        end = self.identifier.n
        self.n = end
        segments: list[Segment] = []

        def emit(start: int, value: int) -> None:
            if not segments or segments[-1][1] != value:
                segments.append((start, value))

        for position, (start, c) in enumerate(index_segments):
            if position + 1 < len(index_segments):
                stop = index_segments[position + 1][0] - 1
            else:
                stop = end
            if c == 0:
                emit(start, 0)
                continue
            value = self.approximator.approximate(c, start)
            emit(start, value)
            for stage in self.approximator.row_flips(c, start + 1, stop):
                value = 1 - value
                emit(stage, value)
        return segments

    def clone(self) -> "ComposedTest":
        return ComposedTest(self.identifier.clone(), self.approximator)

    @property
    def index(self) -> int | None:
        return self.identifier.output

    @property
    def index_last_change(self) -> int:
        return self.identifier.last_change


def compose(
    identifier: SequentialIdentifier, approximator: LimitApproximator
) -> ComposedTest:
    return ComposedTest(identifier, approximator)


def observe_run(test: SequentialTest, readout: Fraction, count: int) -> list[Segment]:
    """Bulk form of ``update``: ``(first_n, F)`` segments for ``count`` copies."""
    return test.update_run(readout, count)


def run_trial(
    test: SequentialTest, stream: ReadoutStream, horizon: int, truth: int
) -> TrialRecord:
    """Feed ``horizon`` readouts into ``test`` and account for its mistakes."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    mistakes = 0
    last_change = 0
    previous: int | None = None
    for readout, count in stream.runs(horizon):
        if count == 1:
            value = test.update(readout)
            if value != truth:
                mistakes += 1
            if previous is not None and value != previous:
                last_change = test.n
            previous = value
            continue
        end = test.n + count
        segments = test.update_run(readout, count)
        for position, (start, value) in enumerate(segments):
            if position + 1 < len(segments):
                stop = segments[position + 1][0] - 1
            else:
                stop = end
            if value != truth:
                mistakes += stop - start + 1
            if previous is not None and value != previous:
                last_change = start
            previous = value
    assert previous is not None
    return TrialRecord(
        truth=truth,
        horizon=horizon,
        mistakes=mistakes,
        last_change=last_change,
        final=previous,
        stabilized_correct=previous == truth,
        final_index=test.index,
        index_last_change=test.index_last_change,
    )


class InducedApproximator(LimitApproximator):
    """``a(i, n)`` = the test's output after ``n`` copies of the ``i``-th value.

    Each row keeps its own advanced copy of the test, so extending a row only
    feeds the missing readouts.
    """

    def __init__(
        self,
        test: SequentialTest,
        enumeration: Callable[[int], Fraction] = enumerate_rational,
        name: str = "induced",
    ) -> None:
        self.test = test
        self.enumeration = enumeration
        self.name = name
        self._rows: dict[int, tuple[SequentialTest, list[Segment]]] = {}

    def _segments(self, i: int, s: int) -> list[Segment]:
        if i not in self._rows:
            self._rows[i] = (self.test.clone(), [])
        runner, segments = self._rows[i]
        if runner.n < s:
            for start, value in runner.update_run(self.enumeration(i), s - runner.n):
                if not segments or segments[-1][1] != value:
                    segments.append((start, value))
        return segments

    def approximate(self, i: int, s: int) -> int:
        if s == 0:
            return 0
        segments = self._segments(i, s)
        position = bisect_right(segments, (s, 2)) - 1
        return segments[position][1]

    def row_flips(self, i: int, start: int, stop: int) -> list[int]:
        segments = self._segments(i, stop)
        flips = [first for first, _ in segments[1:] if start <= first <= stop]
        if start <= 1 and segments and segments[0][1] == 1:
            flips.insert(0, 1)
        return flips


def induced_approximator(
    test: SequentialTest,
    enumeration: Callable[[int], Fraction] = enumerate_rational,
) -> InducedApproximator:
    return InducedApproximator(test, enumeration)


def family_enumeration(family: RealFamily) -> Callable[[int], Fraction]:
    """Index -> value for a family whose members are all rational."""

    def value(j: int) -> Fraction:
        exact = family.member(j).exact_value()
        if exact is None:
            raise ValueError(f"family member {j} is not a known rational")
        return exact

    return value
