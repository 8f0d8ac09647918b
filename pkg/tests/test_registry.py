from fractions import Fraction

import pytest

from src.core.enumeration import index_of
from src.core.errors import ConfigError
from src.schemas.experiment import ExperimentConfig
from src.services.identifier import RationalIdentifier
from src.services.reals import FamilyIdentifier
from src.services.registry import (
    resolve_approximator,
    resolve_experiment,
    resolve_presentation,
    resolve_target_set,
)


def _config(distribution: dict, **fields) -> ExperimentConfig:
    return ExperimentConfig.model_validate(
        {"distribution": distribution, "horizon": 100, **fields}
    )


def test_index_parity_sets():
    even = resolve_target_set("even-indices")
    odd = resolve_target_set("odd-indices")
    assert even.contains(56) and not even.contains(5)
    assert odd.contains(5) and not odd.contains(56)
    assert even.approximator.approximate(4, 10**9) == 1


def test_decidable_predicates():
    integers = resolve_target_set("decidable:integer")
    assert integers.contains(index_of(2))
    assert not integers.contains(index_of(Fraction(1, 2)))
    assert integers.approximator.approximate(6, 0) == 1
    unit = resolve_target_set("decidable:unit-interval")
    assert unit.contains(index_of(Fraction(3, 7)))
    assert not unit.contains(index_of(-1))


@pytest.mark.parametrize("target", ["indices:2,5", "[2, 5]", [2, 5]])
def test_explicit_index_lists(target):
    selected = resolve_target_set(target)
    assert selected.name == "indices:2,5"
    assert selected.contains(5)
    assert not selected.contains(3)


def test_halting_catalog_set(catalog):
    halting = resolve_target_set("halting-catalog", catalog=catalog)
    assert [i for i in range(1, 20) if halting.contains(i)] == [2, 5, 8, 13]
    assert halting.approximator.approximate(5, 57) == 1


@pytest.mark.parametrize(
    "target", ["primes", "indices:0", "indices:a", "decidable:prime", "[1,"]
)
def test_unknown_sets_are_config_errors(target):
    with pytest.raises(ConfigError):
        resolve_target_set(target)


def test_approximator_names():
    assert resolve_approximator("constant-1").approximate(9, 0) == 1
    assert resolve_approximator("flip-once:10").stage == 10
    assert resolve_approximator("odd-indices").approximate(3, 1) == 1
    for name in ("flip-once:x", "flip-once:0", "nothing"):
        with pytest.raises(ConfigError):
            resolve_approximator(name)


def test_presentation_names():
    assert resolve_presentation("sqrt:9/4").exact_value() == Fraction(3, 2)
    assert resolve_presentation("rational:1/3").exact_value() == Fraction(1, 3)
    assert resolve_presentation("sqrt2").name == "sqrt2"
    assert resolve_presentation("e").exact_value() is None
    for name in ("pi", "sqrt:-1", "sqrt:x", "rational:1/0"):
        with pytest.raises(ConfigError):
            resolve_presentation(name)


def test_rational_experiment_truth():
    constant = resolve_experiment(
        _config({"kind": "constant", "value": "3/7"}, target_set="even-indices")
    )
    assert constant.mu_label == "3/7"
    assert constant.true_index() == 56
    assert constant.truth == 1
    assert isinstance(constant.identifier(), RationalIdentifier)

    coin = {"kind": "two_point", "a": "0", "b": "1", "p": "1/2"}
    assert resolve_experiment(_config(coin, target_set="odd-indices")).truth == 0


def test_irrational_experiment_truth():
    e = {"kind": "irrational_two_point", "mean": "e", "offset": "1/2"}
    assert resolve_experiment(_config(e)).truth == 0
    root = {"kind": "irrational_two_point", "mean": "sqrt:4", "offset": "1/2"}
    experiment = resolve_experiment(_config(root))
    assert experiment.true_index() == 6
    assert experiment.truth == 1
    x = experiment.stream(1).next_readout()
    assert min(abs(x - Fraction(5, 2)), abs(x - Fraction(3, 2))) <= Fraction(1, 2)


def test_family_experiment():
    spec = {"kind": "irrational_two_point", "mean": "sqrt2", "offset": "1/4"}
    experiment = resolve_experiment(
        _config(spec, family=["sqrt2", "rational:3/2"], target_set="indices:1")
    )
    assert experiment.true_index() == 1
    assert experiment.truth == 1
    assert isinstance(experiment.identifier(), FamilyIdentifier)

    integers = resolve_experiment(
        _config(spec, family=["sqrt2", "rational:3/2"], target_set="decidable:integer")
    )
    assert integers.truth == 0
    assert not integers.target.contains(2)
    assert not integers.target.contains(7)


def test_config_errors():
    with pytest.raises(ConfigError):
        ExperimentConfig.parse('{"distribution": {"kind": "constant", "value": "1"}}')
    with pytest.raises(ConfigError):
        ExperimentConfig.parse(
            '{"distribution": {"kind": "constant", "value": "1"}, "horizon": 5, '
            '"seeds": []}'
        )
    with pytest.raises(ConfigError):
        ExperimentConfig.parse(
            '{"distribution": {"kind": "two_point", "a": "0", "b": "1", "p": "1"}, '
            '"horizon": 5}'
        )
    with pytest.raises(ConfigError):
        ExperimentConfig.parse(
            '{"distribution": {"kind": "constant", "value": "1"}, "horizon": 5, '
            '"colour": "red"}'
        )


def test_overrides_keep_the_rest():
    config = _config({"kind": "constant", "value": "1/2"}, seeds=[3, 1, 3])
    assert config.seeds == [1, 3]
    changed = config.with_overrides(seeds=[9], horizon=7, trace=True)
    assert changed.seeds == [9]
    assert changed.horizon == 7
    assert changed.identifier.trace
    assert changed.distribution == config.distribution
    with pytest.raises(ConfigError):
        config.with_overrides(horizon=0)
