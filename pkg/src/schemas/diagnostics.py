from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    """Outcome of one verification sweep."""

    name: str
    exact: bool = True
    passed: bool
    cases: int = Field(ge=0)
    failures: list[str] = []
    details: dict[str, str | int | float] = {}


class CoverageRow(BaseModel):
    """Last time the sample mean fell outside its radius, for one seed."""

    seed: int
    horizon: int
    violations: int
    last_violation: int


class VerifyReport(BaseModel):
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks if check.exact)

    def failed(self) -> list[CheckResult]:
        return [check for check in self.checks if check.exact and not check.passed]
