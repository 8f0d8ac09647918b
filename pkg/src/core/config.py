from functools import lru_cache
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Runner
    coverlab_threads: int | None = None

    # Logging
    coverlab_log_level: str = "INFO"

    # Halting catalog override
    coverlab_catalog_path: Path | None = None

    @property
    def worker_count(self) -> int:
        if self.coverlab_threads is None or self.coverlab_threads < 1:
            return 1
        return self.coverlab_threads


@lru_cache
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
