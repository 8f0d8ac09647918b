from pydantic import BaseModel, ConfigDict, Field, field_validator


class TrialRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    truth: int = Field(ge=0, le=1)
    horizon: int = Field(ge=1)
    mistakes: int = Field(ge=0)
    last_change: int = Field(ge=0)
    final: int = Field(ge=0, le=1)
    stabilized_correct: bool
    final_index: int | None = None
    index_last_change: int = 0


class TrialRow(BaseModel):
    """One line of ``trials.csv``."""

    trial_id: int
    seed: int
    distribution: str
    mu: str
    set_name: str
    truth: int = Field(ge=0, le=1)
    horizon: int = Field(ge=1)
    mistakes: int = Field(ge=0)
    last_change: int = Field(ge=0)
    final: int = Field(ge=0, le=1)
    stabilized_correct: bool
    final_index: int | None = None
    index_last_change: int = 0

    @field_validator("final_index", mode="before")
    @classmethod
    def _blank_is_none(cls, value: object) -> object:
        return None if value == "" else value


TRIAL_COLUMNS = list(TrialRow.model_fields)


class DecisionRecord(BaseModel):
    """Trace entry written at every decision time."""

    j: int
    n: int
    mean: str
    s2: str
    radius: str
    inflated: str
    candidate: int
    output: int


class RunSummary(BaseModel):
    trials: int
    stabilized_correct: int
    fraction_stabilized_correct: float
    median_last_change: float
    max_last_change: int
    max_mistakes: int
    median_index_last_change: float


class ReportRow(BaseModel):
    """Stabilization counts for one (distribution, set, horizon) group."""

    distribution: str
    set_name: str
    horizon: int
    trials: int
    stabilized_correct: int
    fraction_stabilized_correct: float
    median_last_change: float
    max_mistakes: int
