class CoverlabError(Exception):
    """Base class for errors raised by coverlab."""


class ConfigError(CoverlabError, ValueError):
    """An experiment document or a registry name could not be resolved."""


class SearchBudgetExceeded(CoverlabError, RuntimeError):
    """The least-index search ran past its depth budget."""

    def __init__(self, budget: int) -> None:
        super().__init__(f"least-index search exceeded depth budget {budget}")
        self.budget = budget


class MalformedResultError(CoverlabError, ValueError):
    """A result file handed to the report command is not a trials table."""


class InvariantViolation(CoverlabError, AssertionError):
    """An exact invariant failed during verification."""

    def __init__(self, invariant: str, case: str) -> None:
        super().__init__(f"{invariant}: {case}")
        self.invariant = invariant
        self.case = case
