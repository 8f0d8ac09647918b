import json
from fractions import Fraction
from pathlib import Path

import pytest

from src.schemas.identifier import IdentifierConfig
from src.services.catalog import ProgramCatalog, load_catalog
from src.services.presentations import RationalPresentation, RealFamily
from src.services.registry import resolve_presentation


@pytest.fixture
def identifier_config() -> IdentifierConfig:
    """Default identifier: alpha = 1/2, p = 6, dyadic readout errors."""
    return IdentifierConfig()


@pytest.fixture
def traced_config() -> IdentifierConfig:
    return IdentifierConfig(trace=True)


@pytest.fixture(scope="session")
def catalog() -> ProgramCatalog:
    """The bundled halting catalog."""
    return load_catalog()


@pytest.fixture
def family() -> RealFamily:
    """S = (sqrt2, sqrt3, 3/2, sqrt5)."""
    return RealFamily(
        [
            resolve_presentation("sqrt2"),
            resolve_presentation("sqrt3"),
            RationalPresentation(Fraction(3, 2)),
            resolve_presentation("sqrt5"),
        ]
    )


@pytest.fixture
def write_config(tmp_path: Path):
    """Write an experiment document and return its path."""

    def write(document: dict, name: str = "experiment.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return write


@pytest.fixture
def small_verify() -> dict:
    """Verification sizes small enough for the default test run."""
    return {
        "radius_n": [1, 2, 3, 4, 5, 10, 64, 100],
        "radius_s2": ["0", "1/4", "1", "100"],
        "union_k_max": 100,
        "union_deltas": 8,
        "summability_j": 100,
        "stability_cases": 200,
        "inclusion_cases": 100,
        "roundtrip_max_index": 12,
        "composition_horizon": 1000,
        "coverage_seeds": [1, 2],
        "coverage_horizon": 500,
    }
