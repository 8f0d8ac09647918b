from pydantic import BaseModel, Field, field_validator


class CatalogEntry(BaseModel):
    index: int = Field(ge=1)
    name: str
    program: list[str]
    halts_at: int | None = Field(default=None, ge=1)

    @field_validator("program", mode="before")
    @classmethod
    def _split_text(cls, value: object) -> object:
        if isinstance(value, str):
            return value.splitlines()
        return value

    @property
    def halts(self) -> bool:
        return self.halts_at is not None


class CatalogDocument(BaseModel):
    programs: list[CatalogEntry]

    @field_validator("programs")
    @classmethod
    def _unique_indices(cls, value: list[CatalogEntry]) -> list[CatalogEntry]:
        indices = [entry.index for entry in value]
        if len(indices) != len(set(indices)):
            raise ValueError("catalog indices must be unique")
        return value
