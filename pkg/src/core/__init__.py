from .config import settings
from .errors import (
    ConfigError,
    CoverlabError,
    InvariantViolation,
    MalformedResultError,
    SearchBudgetExceeded,
)

__all__ = [
    "settings",
    "ConfigError",
    "CoverlabError",
    "InvariantViolation",
    "MalformedResultError",
    "SearchBudgetExceeded",
]
