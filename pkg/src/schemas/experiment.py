import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.core.errors import ConfigError
from src.schemas.distribution import DistributionSpec, TwoPointSpec
from src.schemas.identifier import IdentifierConfig
from src.schemas.rational import RationalField

SEED_LIMIT = 1 << 64


class VerifyConfig(BaseModel):
    """Sizes of the exact sweeps and the statistical coverage run."""

    model_config = ConfigDict(extra="forbid")

    radius_n: list[int] = [1, 2, 3, 4, 5, 10, 64, 100, 729, 4096]
    radius_s2: list[RationalField] = [
        Fraction(0),
        Fraction(1, 100),
        Fraction(1, 4),
        Fraction(1),
        Fraction(9, 4),
        Fraction(100),
    ]
    union_k_max: int = Field(default=1000, ge=1)
    union_deltas: int = Field(default=20, ge=1)
    summability_j: int = Field(default=10_000, ge=1)
    stability_cases: int = Field(default=10_000, ge=0)
    stability_seed: int = 0
    inclusion_cases: int = Field(default=1000, ge=0)
    composition_horizon: int = Field(default=5000, ge=1)
    roundtrip_sets: list[str] = ["even-indices", "halting-catalog"]
    roundtrip_max_index: int = Field(default=50, ge=1)
    roundtrip_settle: int = Field(default=2, ge=1)
    coverage_distribution: DistributionSpec = TwoPointSpec(
        a=Fraction(0), b=Fraction(1), p=Fraction(1, 2)
    )
    coverage_seeds: list[int] = list(range(1, 11))
    coverage_horizon: int = Field(default=20_000, ge=1)
    fault: Literal["radius-underestimate"] | None = None


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = "experiment"
    distribution: DistributionSpec
    target_set: str | list[int] = "even-indices"
    approximator: str | None = None
    family: list[str] | None = None
    identifier: IdentifierConfig = IdentifierConfig()
    horizon: int = Field(ge=1)
    seeds: list[int] = [1]
    output_dir: Path = Path("results")
    verify: VerifyConfig = VerifyConfig()

    @field_validator("seeds")
    @classmethod
    def _seeds_in_range(cls, value: list[int]) -> list[int]:
        if not value:
            raise ValueError("at least one seed is required")
        for seed in value:
            if not 0 <= seed < SEED_LIMIT:
                raise ValueError(f"seed {seed} is not a 64-bit unsigned integer")
        return sorted(set(value))

    @property
    def set_name(self) -> str:
        if isinstance(self.target_set, str):
            return self.target_set
        return "indices:" + ",".join(str(i) for i in self.target_set)

    @classmethod
    def load(cls, path: Path) -> "ExperimentConfig":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.parse(text)

    @classmethod
    def parse(cls, text: str) -> "ExperimentConfig":
        try:
            return cls.model_validate_json(text)
        except ValidationError as exc:
            raise ConfigError(f"invalid experiment config: {exc}") from exc

    def with_overrides(
        self,
        seeds: list[int] | None = None,
        horizon: int | None = None,
        output_dir: Path | None = None,
        trace: bool | None = None,
        fault: str | None = None,
    ) -> "ExperimentConfig":
        data: dict[str, Any] = self.to_document()
        if trace is not None:
            data["identifier"]["trace"] = trace
        if fault is not None:
            data["verify"]["fault"] = fault
        if seeds is not None:
            data["seeds"] = seeds
        if horizon is not None:
            data["horizon"] = horizon
        if output_dir is not None:
            data["output_dir"] = str(output_dir)
        try:
            return type(self).model_validate(data)
        except ValidationError as exc:
            raise ConfigError(f"invalid override: {exc}") from exc

    def to_document(self) -> dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True)

    def canonical_json(self) -> str:
        return json.dumps(self.to_document(), sort_keys=True, separators=(",", ":"))
