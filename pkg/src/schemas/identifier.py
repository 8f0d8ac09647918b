from fractions import Fraction
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.schemas.rational import RationalField

EpsilonSchedule = Literal["dyadic", "inverse_square"]


class IdentifierConfig(BaseModel):
    """Parameters shared by the rational and the family identifiers."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    alpha: RationalField = Fraction(1, 2)
    p: int = Field(default=6, gt=4)
    epsilon: EpsilonSchedule = "dyadic"
    trace: bool = False

    @field_validator("alpha")
    @classmethod
    def _alpha_positive(cls, value: Fraction) -> Fraction:
        if value <= 0:
            raise ValueError("alpha must be positive")
        return value

    def decision_time(self, j: int) -> int:
        """n(j) = j**p."""
        return j**self.p

    def complexity(self, j: int) -> int:
        """k_j = j."""
        return j
