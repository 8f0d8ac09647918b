from .machine import Instruction, MachineRun, Program, parse_program
from .stats import Accumulator, RunningStats

__all__ = [
    "Accumulator",
    "Instruction",
    "MachineRun",
    "Program",
    "RunningStats",
    "parse_program",
]
