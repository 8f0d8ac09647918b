import logging
from dataclasses import dataclass
from functools import lru_cache
from importlib.resources import files
from pathlib import Path

from pydantic import ValidationError

from src.core.config import settings
from src.core.errors import ConfigError
from src.models.machine import MachineRun, Program, parse_program
from src.schemas.catalog import CatalogDocument, CatalogEntry

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProgramCatalog:
    """Two-counter programs attached to enumeration indices."""

    entries: dict[int, CatalogEntry]
    programs: dict[int, Program]

    def program(self, index: int) -> Program | None:
        return self.programs.get(index)

    def halts(self, index: int) -> bool:
        entry = self.entries.get(index)
        return entry is not None and entry.halts

    @property
    def indices(self) -> list[int]:
        return sorted(self.entries)


def _check_ground_truth(entry: CatalogEntry, program: Program) -> None:
    if entry.halts_at is None:
        if program.halt_reachable():
            raise ConfigError(
                f"catalog entry {entry.index} ({entry.name}) is labeled as looping "
                "but a halt instruction is reachable"
            )
        return
    step = MachineRun(program).halting_step(entry.halts_at)
    if step != entry.halts_at:
        raise ConfigError(
            f"catalog entry {entry.index} ({entry.name}) is labeled to halt at "
            f"step {entry.halts_at} but halts at {step}"
        )


def parse_catalog(text: str) -> ProgramCatalog:
    """Parse a catalog document and re-derive every ground-truth label."""
    try:
        document = CatalogDocument.model_validate_json(text)
    except ValidationError as exc:
        raise ConfigError(f"invalid program catalog: {exc}") from exc
    entries: dict[int, CatalogEntry] = {}
    programs: dict[int, Program] = {}
    for entry in document.programs:
        try:
            program = parse_program(entry.program)
        except ValueError as exc:
            raise ConfigError(f"catalog entry {entry.index}: {exc}") from exc
        _check_ground_truth(entry, program)
        entries[entry.index] = entry
        programs[entry.index] = program
    return ProgramCatalog(entries, programs)


def load_catalog(path: Path | None = None) -> ProgramCatalog:
    if path is None:
        text = files("src").joinpath("data/halting_catalog.json").read_text("utf-8")
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read catalog {path}: {exc}") from exc
    catalog = parse_catalog(text)
    logger.info(f"Loaded halting catalog with {len(catalog.entries)} programs")
    return catalog


@lru_cache
def default_catalog() -> ProgramCatalog:
    return load_catalog(settings.coverlab_catalog_path)
