"""Limit approximations ``a(i, s)`` of index sets."""

from abc import ABC, abstractmethod
from collections.abc import Callable
from typing import override

from src.models.machine import MachineRun
from src.services.catalog import ProgramCatalog


class LimitApproximator(ABC):
    """A total 0/1 function ``a(i, s)`` whose rows change finitely often."""

    name: str = "approximator"

    @abstractmethod
    def approximate(self, i: int, s: int) -> int: ...

    def row_flips(self, i: int, start: int, stop: int) -> list[int]:
        """Stages ``s`` in ``[start, stop]`` with ``a(i, s) != a(i, s - 1)``."""
        flips: list[int] = []
        start = max(start, 1)
        previous = self.approximate(i, start - 1)
        for s in range(start, stop + 1):
            value = self.approximate(i, s)
            if value != previous:
                flips.append(s)
                previous = value
        return flips

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


class ConstantApproximator(LimitApproximator):
    def __init__(self, value: int) -> None:
        if value not in (0, 1):
            raise ValueError("constant approximators output 0 or 1")
        self.value = value
        self.name = f"constant-{value}"

    @override
    def approximate(self, i: int, s: int) -> int:
        return self.value

    @override
    def row_flips(self, i: int, start: int, stop: int) -> list[int]:
        return []


class DecidableApproximator(LimitApproximator):
    """Rows constant in ``s``: the index set is decidable."""

    def __init__(self, name: str, predicate: Callable[[int], bool]) -> None:
        self.name = name
        self.predicate = predicate

    @override
    def approximate(self, i: int, s: int) -> int:
        return int(self.predicate(i))

    @override
    def row_flips(self, i: int, start: int, stop: int) -> list[int]:
        return []


class FlipOnceApproximator(LimitApproximator):
    """Every row is 0 before ``stage`` and 1 from ``stage`` on."""

    def __init__(self, stage: int) -> None:
        if stage < 1:
            raise ValueError("flip stage must be positive")
        self.stage = stage
        self.name = f"flip-once:{stage}"

    @override
    def approximate(self, i: int, s: int) -> int:
        return int(s >= self.stage)

    @override
    def row_flips(self, i: int, start: int, stop: int) -> list[int]:
        return [self.stage] if start <= self.stage <= stop else []


class HaltingApproximator(LimitApproximator):
    """``a(i, s) = 1`` iff the program attached to ``i`` halts within ``s`` steps.

    Indices outside the catalog behave as the constant 0. Runs are memoized
    and resumed, so each program is simulated at most once per process.
    """

    name = "halting-catalog"

    def __init__(self, catalog: ProgramCatalog) -> None:
        self.catalog = catalog
        self._runs: dict[int, MachineRun] = {}

    def _run(self, i: int) -> MachineRun | None:
        run = self._runs.get(i)
        if run is None:
            program = self.catalog.program(i)
            if program is None:
                return None
            run = self._runs[i] = MachineRun(program)
        return run

    def approximate(self, i: int, s: int) -> int:
        run = self._run(i)
        return int(run is not None and run.halts_within(s))

    def row_flips(self, i: int, start: int, stop: int) -> list[int]:
        run = self._run(i)
        if run is None:
            return []
        step = run.halting_step(stop)
        return [step] if step is not None and start <= step else []


def approximate(approximator: LimitApproximator, i: int, s: int) -> int:
    if i < 1:
        raise ValueError(f"indices start at 1, got {i}")
    if s < 0:
        raise ValueError(f"stages are natural numbers, got {s}")
    return approximator.approximate(i, s)


def stabilization_stage(
    approximator: LimitApproximator, i: int, s_max: int
) -> int | None:
    """Last observed flip of row ``i`` up to ``s_max``; purely diagnostic."""
    if s_max < 1:
        raise ValueError("s_max must be at least 1")
    flips = approximator.row_flips(i, 1, s_max)
    return flips[-1] if flips else None
