import pytest

from src.core.errors import ConfigError
from src.schemas.experiment import ExperimentConfig
from src.services.runner import run_experiment, run_seed

COIN = {"kind": "two_point", "a": "0", "b": "1", "p": "1/2"}


def _config(**fields) -> ExperimentConfig:
    document = {"distribution": COIN, "horizon": 800, "seeds": [3, 1, 2], **fields}
    return ExperimentConfig.model_validate(document)


async def test_outcomes_are_sorted_by_seed():
    outcomes = await run_experiment(_config(), workers=1)
    assert [o.row.seed for o in outcomes] == [1, 2, 3]
    assert [o.row.trial_id for o in outcomes] == [1, 2, 3]
    for outcome in outcomes:
        assert outcome.row.truth == 1
        assert outcome.row.mu == "1/2"
        assert outcome.row.distribution == "two_point(0/1,1/1,1/2)"
        assert outcome.trace == []


async def test_worker_pool_matches_sequential_run():
    config = _config()
    sequential = await run_experiment(config, workers=1)
    pooled = await run_experiment(config, workers=2)
    assert [o.row for o in pooled] == [o.row for o in sequential]


async def test_constant_stream_rows():
    config = _config(
        distribution={"kind": "constant", "value": "3/7"},
        horizon=1000,
        seeds=[1],
    )
    [outcome] = await run_experiment(config, workers=1)
    row = outcome.row
    assert row.final == 0
    assert row.mistakes == 1000
    assert row.last_change == 0
    assert not row.stabilized_correct
    assert row.final_index == 0
    assert row.index_last_change == 64


async def test_traces_are_collected():
    config = _config(identifier={"trace": True}, seeds=[1])
    [outcome] = await run_experiment(config, workers=1)
    assert [record.n for record in outcome.trace] == [1, 64, 729]


async def test_unknown_set_fails_before_running():
    with pytest.raises(ConfigError):
        await run_experiment(_config(target_set="primes"), workers=1)


def test_run_seed_is_deterministic():
    document = _config().canonical_json()
    assert run_seed(document, 5, 1) == run_seed(document, 5, 1)
