"""Two-counter register machines.

Programs are written one instruction per line::

    inc a        # a += 1, continue with the next line
    inc b 4      # b += 1, continue at line 4
    dec a 7      # if a > 0: a -= 1 and continue, else jump to line 7
    halt

Instructions are numbered from 0; blank and comment-only lines do not count.
Executing any instruction, ``halt`` included, costs one step.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Literal

COUNTERS = ("a", "b")

Opcode = Literal["inc", "dec", "halt"]


@dataclass(frozen=True)
class Instruction:
    op: Opcode
    counter: int = 0
    target: int | None = None

    def successors(self, line: int) -> tuple[int, ...]:
        if self.op == "halt":
            return ()
        if self.op == "inc":
            return (line + 1,) if self.target is None else (self.target,)
        assert self.target is not None
        return (line + 1, self.target)

    def __str__(self) -> str:
        if self.op == "halt":
            return "halt"
        text = f"{self.op} {COUNTERS[self.counter]}"
        return text if self.target is None else f"{text} {self.target}"


@dataclass(frozen=True)
class Program:
    instructions: tuple[Instruction, ...]

    def __len__(self) -> int:
        return len(self.instructions)

    @property
    def source(self) -> str:
        return "\n".join(str(instruction) for instruction in self.instructions)

    def halt_reachable(self) -> bool:
        """Whether some control-flow path from line 0 reaches a ``halt``."""
        seen = {0}
        frontier = [0]
        while frontier:
            line = frontier.pop()
            instruction = self.instructions[line]
            if instruction.op == "halt":
                return True
            for successor in instruction.successors(line):
                if successor not in seen:
                    seen.add(successor)
                    frontier.append(successor)
        return False


def _parse_line(text: str, number: int) -> Instruction | None:
    code = text.split("#", 1)[0].split()
    if not code:
        return None
    op, *args = code
    if op == "halt" and not args:
        return Instruction("halt")
    if op in ("inc", "dec") and args and args[0] in COUNTERS:
        counter = COUNTERS.index(args[0])
        rest = args[1:]
        if op == "inc" and not rest:
            return Instruction("inc", counter)
        if len(rest) == 1 and rest[0].isdigit():
            return Instruction(op, counter, int(rest[0]))
    raise ValueError(f"line {number}: cannot parse instruction {text.strip()!r}")


def parse_program(source: str | Iterable[str]) -> Program:
    """Parse assembly text (or a list of lines) into a validated program."""
    lines = source.splitlines() if isinstance(source, str) else list(source)
    instructions: list[Instruction] = []
    for number, text in enumerate(lines):
        instruction = _parse_line(text, number)
        if instruction is not None:
            instructions.append(instruction)
    if not instructions:
        raise ValueError("empty program")
    size = len(instructions)
    for line, instruction in enumerate(instructions):
        for successor in instruction.successors(line):
            if not 0 <= successor < size:
                raise ValueError(
                    f"line {line}: control leaves the program (to {successor})"
                )
    return Program(tuple(instructions))


@dataclass
class MachineRun:
    """Resumable execution state of one program started on zero counters."""

    program: Program
    pc: int = 0
    counters: list[int] = field(default_factory=lambda: [0, 0])
    steps: int = 0
    halted: bool = False

    def __post_init__(self) -> None:
        self.never_halts = not self.program.halt_reachable()

    def advance(self, budget: int) -> None:
        """Execute until ``steps == budget`` or the machine halts."""
        if self.never_halts:
            return
        instructions = self.program.instructions
        counters = self.counters
        pc = self.pc
        steps = self.steps
        while not self.halted and steps < budget:
            instruction = instructions[pc]
            steps += 1
            if instruction.op == "halt":
                self.halted = True
                break
            if instruction.op == "inc":
                counters[instruction.counter] += 1
                pc = pc + 1 if instruction.target is None else instruction.target
            elif counters[instruction.counter] > 0:
                counters[instruction.counter] -= 1
                pc += 1
            else:
                pc = instruction.target
        self.pc = pc
        self.steps = steps

    def halts_within(self, budget: int) -> bool:
        """Whether the machine halts within ``budget`` steps."""
        if self.never_halts or budget <= 0:
            return False
        if not self.halted and self.steps < budget:
            self.advance(budget)
        return self.halted and self.steps <= budget

    def halting_step(self, budget: int) -> int | None:
        """The halting step if it is at most ``budget``."""
        return self.steps if self.halts_within(budget) else None
