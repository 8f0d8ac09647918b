from .approximators import (
    ConstantApproximator,
    DecidableApproximator,
    FlipOnceApproximator,
    HaltingApproximator,
    LimitApproximator,
)
from .catalog import ProgramCatalog, default_catalog, load_catalog
from .identifier import RationalIdentifier, SequentialIdentifier
from .membership import ComposedTest, ConstantTest, SequentialTest, run_trial
from .presentations import CauchyPresentation, RealFamily
from .reals import FamilyIdentifier
from .registry import Experiment, resolve_experiment
from .reporting import ResultStore
from .runner import run_experiment
from .streams import ReadoutStream

__all__ = [
    "CauchyPresentation",
    "ComposedTest",
    "ConstantApproximator",
    "ConstantTest",
    "DecidableApproximator",
    "Experiment",
    "FamilyIdentifier",
    "FlipOnceApproximator",
    "HaltingApproximator",
    "LimitApproximator",
    "ProgramCatalog",
    "RationalIdentifier",
    "ReadoutStream",
    "RealFamily",
    "ResultStore",
    "SequentialIdentifier",
    "SequentialTest",
    "default_catalog",
    "load_catalog",
    "resolve_experiment",
    "run_experiment",
    "run_trial",
]
