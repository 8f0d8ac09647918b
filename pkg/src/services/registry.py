"""Name resolution for target sets, approximators, presentations and experiments.

Names that do not resolve raise ``ConfigError`` so that a run stops before
anything is written.
"""

import json
import logging
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

from src.core.enumeration import enumerate_rational, index_of
from src.core.errors import ConfigError
from src.core.rational import format_rational, parse_rational
from src.schemas.distribution import IrrationalTwoPointSpec
from src.schemas.experiment import ExperimentConfig
from src.services.approximators import (
    ConstantApproximator,
    DecidableApproximator,
    FlipOnceApproximator,
    HaltingApproximator,
    LimitApproximator,
)
from src.services.catalog import ProgramCatalog, default_catalog
from src.services.identifier import RationalIdentifier, SequentialIdentifier
from src.services.membership import ComposedTest, compose
from src.services.presentations import (
    CauchyPresentation,
    EPresentation,
    RationalPresentation,
    RealFamily,
    SqrtPresentation,
)
from src.services.reals import FamilyIdentifier
from src.services.streams import ReadoutStream

logger = logging.getLogger(__name__)

Enumeration = Callable[[int], Fraction | None]

PREDICATES: dict[str, Callable[[Fraction], bool]] = {
    "even": lambda q: q.denominator == 1 and q.numerator % 2 == 0,
    "odd": lambda q: q.denominator == 1 and q.numerator % 2 == 1,
    "integer": lambda q: q.denominator == 1,
    "nonnegative": lambda q: q >= 0,
    "unit-interval": lambda q: 0 <= q <= 1,
}

SQRT_SHORTHANDS = {"sqrt2": 2, "sqrt3": 3, "sqrt5": 5}


@dataclass(frozen=True)
class TargetSet:
    """An index set ``I_A`` with its ground truth and default approximator."""

    name: str
    contains: Callable[[int], bool]
    approximator: LimitApproximator


def _parse_indices(text: str) -> frozenset[int]:
    try:
        indices = frozenset(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise ConfigError(f"invalid index list {text!r}") from exc
    if not indices or min(indices) < 1:
        raise ConfigError(f"index lists need positive indices, got {text!r}")
    return indices


def _decidable(
    name: str, predicate: Callable[[Fraction], bool], enumeration: Enumeration
) -> TargetSet:
    def contains(i: int) -> bool:
        value = enumeration(i)
        return value is not None and predicate(value)

    return TargetSet(name, contains, DecidableApproximator(name, contains))


def resolve_target_set(
    target: str | list[int],
    enumeration: Enumeration = enumerate_rational,
    catalog: ProgramCatalog | None = None,
) -> TargetSet:
    """Resolve a set name (or an explicit index list) against ``enumeration``."""
    if isinstance(target, list):
        target = "indices:" + ",".join(str(i) for i in target)
    name = target.strip()
    if name.startswith("["):
        try:
            indices = json.loads(name)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid index list {name!r}") from exc
        return resolve_target_set(list(indices), enumeration, catalog)

    match name.split(":", 1):
        case ["even-indices"]:
            return TargetSet(
                name,
                lambda i: i % 2 == 0,
                DecidableApproximator(name, lambda i: i % 2 == 0),
            )
        case ["odd-indices"]:
            return TargetSet(
                name,
                lambda i: i % 2 == 1,
                DecidableApproximator(name, lambda i: i % 2 == 1),
            )
        case ["halting-catalog"]:
            catalog = catalog or default_catalog()
            return TargetSet(name, catalog.halts, HaltingApproximator(catalog))
        case ["decidable", predicate] if predicate in PREDICATES:
            return _decidable(name, PREDICATES[predicate], enumeration)
        case ["indices", listing]:
            indices = _parse_indices(listing)
            return TargetSet(
                name,
                indices.__contains__,
                DecidableApproximator(name, indices.__contains__),
            )
    raise ConfigError(f"unknown target set {name!r}")


def resolve_approximator(
    name: str,
    enumeration: Enumeration = enumerate_rational,
    catalog: ProgramCatalog | None = None,
) -> LimitApproximator:
    match name.split(":", 1):
        case ["constant-0"]:
            return ConstantApproximator(0)
        case ["constant-1"]:
            return ConstantApproximator(1)
        case ["flip-once", stage]:
            try:
                return FlipOnceApproximator(int(stage))
            except ValueError as exc:
                raise ConfigError(f"invalid approximator {name!r}: {exc}") from exc
    return resolve_target_set(name, enumeration, catalog).approximator


def resolve_presentation(name: str) -> CauchyPresentation:
    """``sqrt2``, ``sqrt3``, ``sqrt5``, ``sqrt:<q>``, ``e`` or ``rational:<q>``."""
    try:
        if name in SQRT_SHORTHANDS:
            return SqrtPresentation(SQRT_SHORTHANDS[name], name=name)
        if name == "e":
            return EPresentation()
        kind, sep, argument = name.partition(":")
        if sep and kind == "sqrt":
            return SqrtPresentation(parse_rational(argument))
        if sep and kind == "rational":
            return RationalPresentation(parse_rational(argument))
    except ValueError as exc:
        raise ConfigError(f"invalid presentation {name!r}: {exc}") from exc
    raise ConfigError(f"unknown presentation {name!r}")


def resolve_family(names: list[str]) -> RealFamily:
    if not names:
        raise ConfigError("a family needs at least one member")
    return RealFamily([resolve_presentation(name) for name in names])


def family_values(family: RealFamily) -> Enumeration:
    def value(j: int) -> Fraction | None:
        if not 1 <= j <= len(family):
            return None
        return family.member(j).exact_value()

    return value


@dataclass
class Experiment:
    """A validated config with every name resolved."""

    config: ExperimentConfig
    target: TargetSet
    approximator: LimitApproximator
    family: RealFamily | None
    presentation: CauchyPresentation | None

    @property
    def mu_label(self) -> str:
        spec = self.config.distribution
        if isinstance(spec, IrrationalTwoPointSpec):
            return spec.mean_name
        return format_rational(spec.mean())

    def true_index(self) -> int | None:
        """Index of the mean in the enumeration, None when it is not a member."""
        spec = self.config.distribution
        if self.family is not None:
            if isinstance(spec, IrrationalTwoPointSpec):
                return self.family.index_of_name(spec.mean_name)
            return self.family.index_of_value(spec.mean())
        if isinstance(spec, IrrationalTwoPointSpec):
            exact = self.presentation.exact_value() if self.presentation else None
            return None if exact is None else index_of(exact)
        return index_of(spec.mean())

    @property
    def truth(self) -> int:
        index = self.true_index()
        return int(index is not None and self.target.contains(index))

    def identifier(self) -> SequentialIdentifier:
        if self.family is not None:
            return FamilyIdentifier(self.config.identifier, self.family)
        return RationalIdentifier(self.config.identifier)

    def test(self) -> ComposedTest:
        return compose(self.identifier(), self.approximator)

    def stream(self, seed: int) -> ReadoutStream:
        return ReadoutStream(
            self.config.distribution,
            seed=seed,
            schedule=self.config.identifier.epsilon,
            presentation=self.presentation,
        )


def resolve_experiment(
    config: ExperimentConfig, catalog: ProgramCatalog | None = None
) -> Experiment:
    family = resolve_family(config.family) if config.family is not None else None
    enumeration = family_values(family) if family is not None else enumerate_rational
    target = resolve_target_set(config.target_set, enumeration, catalog)
    if config.approximator is None:
        approximator = target.approximator
    else:
        approximator = resolve_approximator(config.approximator, enumeration, catalog)
    presentation = None
    spec = config.distribution
    if isinstance(spec, IrrationalTwoPointSpec):
        presentation = resolve_presentation(spec.mean_name)
    logger.debug(f"Resolved set {target.name} with approximator {approximator.name}")
    return Experiment(config, target, approximator, family, presentation)
