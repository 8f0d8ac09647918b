import json

import pytest

from src.core.errors import ConfigError
from src.services.approximators import (
    ConstantApproximator,
    DecidableApproximator,
    FlipOnceApproximator,
    HaltingApproximator,
    LimitApproximator,
    approximate,
    stabilization_stage,
)
from src.services.catalog import parse_catalog


class LateRiser(LimitApproximator):
    name = "late-riser"

    def approximate(self, i: int, s: int) -> int:
        return int(s >= 4 + i)


def test_bundled_catalog_ground_truth(catalog):
    assert catalog.indices == [2, 3, 5, 6, 8, 11, 13, 16]
    assert [i for i in catalog.indices if catalog.halts(i)] == [2, 5, 8, 13]
    assert not catalog.halts(4)


@pytest.mark.parametrize(("index", "step"), [(2, 1), (5, 57), (8, 27), (13, 797)])
def test_halting_rows_flip_once_at_the_halting_step(catalog, index, step):
    approximator = HaltingApproximator(catalog)
    assert approximator.approximate(index, step - 1) == 0
    assert approximator.approximate(index, step) == 1
    assert approximator.row_flips(index, 1, 10**12) == [step]
    assert approximator.row_flips(index, step + 1, 10**12) == []
    assert stabilization_stage(approximator, index, 10**6) == step


@pytest.mark.parametrize("index", [3, 6, 11, 16, 4, 1000])
def test_looping_and_missing_rows_stay_zero(catalog, index):
    approximator = HaltingApproximator(catalog)
    assert approximator.approximate(index, 10**12) == 0
    assert approximator.row_flips(index, 1, 10**12) == []
    assert stabilization_stage(approximator, index, 10**12) is None


def test_builtin_rows():
    assert ConstantApproximator(1).approximate(7, 0) == 1
    assert ConstantApproximator(0).row_flips(7, 1, 100) == []
    even = DecidableApproximator("even-indices", lambda i: i % 2 == 0)
    assert [even.approximate(i, 3) for i in range(1, 5)] == [0, 1, 0, 1]
    flip = FlipOnceApproximator(10)
    assert flip.row_flips(3, 1, 100) == [10]
    assert flip.row_flips(3, 11, 100) == []
    assert flip.name == "flip-once:10"


def test_generic_row_flips_scan():
    approximator = LateRiser()
    assert approximator.row_flips(2, 1, 20) == [6]
    assert stabilization_stage(approximator, 2, 20) == 6
    assert stabilization_stage(approximator, 2, 5) is None


def test_approximate_validates_arguments():
    with pytest.raises(ValueError):
        approximate(ConstantApproximator(1), 0, 1)
    with pytest.raises(ValueError):
        approximate(ConstantApproximator(1), 1, -1)
    with pytest.raises(ValueError):
        stabilization_stage(ConstantApproximator(1), 1, 0)
    with pytest.raises(ValueError):
        ConstantApproximator(2)


def _catalog_text(program, halts_at):
    entry = {"index": 2, "name": "probe", "program": program, "halts_at": halts_at}
    return json.dumps({"programs": [entry]})


def test_catalog_rejects_wrong_labels():
    with pytest.raises(ConfigError):
        parse_catalog(_catalog_text(["halt"], 2))
    with pytest.raises(ConfigError):
        parse_catalog(_catalog_text(["inc a", "halt"], None))
    with pytest.raises(ConfigError):
        parse_catalog(_catalog_text(["inc a"], None))


def test_catalog_accepts_program_text():
    catalog = parse_catalog(_catalog_text("inc a\nhalt", 2))
    assert catalog.halts(2)
    assert len(catalog.program(2)) == 2
