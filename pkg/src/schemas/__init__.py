from .catalog import CatalogDocument, CatalogEntry
from .diagnostics import CheckResult, CoverageRow, VerifyReport
from .distribution import (
    ConstantSpec,
    DistributionSpec,
    IrrationalTwoPointSpec,
    ShiftedBernoulliSpec,
    TwoPointSpec,
)
from .experiment import ExperimentConfig, VerifyConfig
from .identifier import EpsilonSchedule, IdentifierConfig
from .trial import DecisionRecord, ReportRow, RunSummary, TrialRecord, TrialRow

__all__ = [
    "CatalogDocument",
    "CatalogEntry",
    "CheckResult",
    "ConstantSpec",
    "CoverageRow",
    "DecisionRecord",
    "DistributionSpec",
    "EpsilonSchedule",
    "ExperimentConfig",
    "IdentifierConfig",
    "IrrationalTwoPointSpec",
    "ReportRow",
    "RunSummary",
    "ShiftedBernoulliSpec",
    "TrialRecord",
    "TrialRow",
    "TwoPointSpec",
    "VerifyConfig",
    "VerifyReport",
]
