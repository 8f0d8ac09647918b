from fractions import Fraction
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.core.rational import format_rational
from src.schemas.rational import RationalField


class _Spec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    @property
    def is_degenerate(self) -> bool:
        return False

    @property
    def has_rational_support(self) -> bool:
        return True


class ConstantSpec(_Spec):
    kind: Literal["constant"] = "constant"
    value: RationalField

    @property
    def is_degenerate(self) -> bool:
        return True

    def mean(self) -> Fraction:
        return self.value

    def variance(self) -> Fraction:
        return Fraction(0)

    def label(self) -> str:
        return f"constant({format_rational(self.value)})"


class TwoPointSpec(_Spec):
    """X = a with probability p, else b."""

    kind: Literal["two_point"] = "two_point"
    a: RationalField
    b: RationalField
    p: RationalField

    @model_validator(mode="after")
    def _nondegenerate(self) -> "TwoPointSpec":
        if not 0 < self.p < 1:
            raise ValueError("p must lie strictly between 0 and 1")
        if self.a == self.b:
            raise ValueError("a two-point law needs two distinct values")
        return self

    def mean(self) -> Fraction:
        return self.p * self.a + (1 - self.p) * self.b

    def variance(self) -> Fraction:
        return self.p * (1 - self.p) * (self.a - self.b) ** 2

    def label(self) -> str:
        args = ",".join(format_rational(v) for v in (self.a, self.b, self.p))
        return f"two_point({args})"


class ShiftedBernoulliSpec(_Spec):
    """X = q + delta * (B - 1/2) with B a fair coin."""

    kind: Literal["shifted_bernoulli"] = "shifted_bernoulli"
    q: RationalField
    delta: RationalField

    @field_validator("delta")
    @classmethod
    def _positive(cls, value: Fraction) -> Fraction:
        if value <= 0:
            raise ValueError("delta must be positive")
        return value

    def mean(self) -> Fraction:
        return self.q

    def variance(self) -> Fraction:
        return self.delta**2 / 4

    def label(self) -> str:
        return (
            f"shifted_bernoulli({format_rational(self.q)},"
            f"{format_rational(self.delta)})"
        )


class IrrationalTwoPointSpec(_Spec):
    """X = mu +/- offset with a fair coin; mu names a Cauchy presentation."""

    kind: Literal["irrational_two_point"] = "irrational_two_point"
    mean_name: str = Field(alias="mean")
    offset: RationalField

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    @field_validator("offset")
    @classmethod
    def _positive(cls, value: Fraction) -> Fraction:
        if value <= 0:
            raise ValueError("offset must be positive")
        return value

    @property
    def has_rational_support(self) -> bool:
        return False

    def variance(self) -> Fraction:
        return self.offset**2

    def label(self) -> str:
        return f"irrational_two_point({self.mean_name},{format_rational(self.offset)})"


DistributionSpec = Annotated[
    ConstantSpec | TwoPointSpec | ShiftedBernoulliSpec | IrrationalTwoPointSpec,
    Field(discriminator="kind"),
]
