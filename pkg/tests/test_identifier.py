from fractions import Fraction

import pytest
from mpmath import mp, mpf

from src.core.errors import SearchBudgetExceeded
from src.core.rational import Threshold
from src.schemas.distribution import TwoPointSpec
from src.schemas.identifier import IdentifierConfig
from src.services.identifier import (
    RationalIdentifier,
    bounded_index,
    least_index,
    lil_bounds,
    observe_run,
    radius,
    step,
)
from src.services.streams import ReadoutStream


def test_least_index_examples():
    assert least_index(Fraction(149, 200), Fraction(1, 100)) == 28
    assert least_index(0, 1) == 1
    assert least_index(Fraction(1, 2), Fraction(1, 100)) == 4
    assert least_index(Fraction(3, 7), Threshold.dyadic(10_000)) == 56


def test_least_index_is_strict():
    # |q_1 - 1| == 1 is not inside the open interval
    assert least_index(1, 1) == 2


def test_least_index_budget():
    with pytest.raises(SearchBudgetExceeded):
        least_index(Fraction(1, 10**6), Fraction(1, 10**7), budget=1000)
    with pytest.raises(ValueError):
        least_index(0, 0)


def test_radius_floor_before_loglog_kicks_in(identifier_config):
    assert radius(1, 1, identifier_config) == Fraction(1, 2)
    assert radius(3, 100, identifier_config) == Fraction(1, 8)
    assert radius(50, 0, identifier_config) == Threshold.dyadic(50)


@pytest.mark.parametrize(("n", "s2"), [(100, Fraction(1)), (729, Fraction(1, 4))])
def test_radius_encloses_the_lil_term(n, s2):
    cfg = IdentifierConfig(alpha=Fraction(1, 10))
    value = radius(n, s2, cfg).to_fraction()
    with mp.workprec(n + 400):
        exact = (1 + mpf(1) / 10) * mp.sqrt(
            2 * mpf(s2.numerator) / s2.denominator * mp.log(mp.log(n)) / n
        )
        approx = mpf(value.numerator) / value.denominator
        assert exact - mpf(2) ** -(n + 200) <= approx <= exact + mpf(2) ** -n
    if n == 100:
        assert float(value) == pytest.approx(0.192244, abs=1e-6)


def test_lil_bounds_bracket():
    lower, upper = lil_bounds(10**6, Fraction(1, 4), Fraction(1, 2), precision=40)
    assert lower <= upper
    assert upper - lower <= Fraction(2, 2**40)


def test_radius_rejects_bad_arguments(identifier_config):
    with pytest.raises(ValueError):
        radius(0, 1, identifier_config)
    with pytest.raises(ValueError):
        radius(5, -1, identifier_config)


def test_constant_three_sevenths_is_found_at_its_own_index(identifier_config):
    identifier = RationalIdentifier(identifier_config)
    segments = identifier.advance(Fraction(3, 7), 56**6)
    assert segments == [(1, 1), (64, 0), (56**6, 56)]
    assert identifier.output == 56
    assert identifier.last_change == 56**6
    assert identifier.j == 57


def test_step_and_advance_agree(identifier_config):
    stepped = RationalIdentifier(identifier_config)
    outputs = [stepped.step(Fraction(1, 3)) for _ in range(1000)]

    bulk = RationalIdentifier(identifier_config)
    segments = bulk.advance(Fraction(1, 3), 400)
    segments += observe_run(bulk, Fraction(1, 3), 600)
    expanded = []
    for position, (start, value) in enumerate(segments):
        stop = segments[position + 1][0] if position + 1 < len(segments) else 1001
        expanded.extend([value] * (stop - start))
    assert expanded == outputs
    assert bulk.output == stepped.output
    assert bulk.last_change == stepped.last_change


def test_outputs_change_only_at_decision_times(identifier_config):
    identifier = RationalIdentifier(identifier_config)
    stream = ReadoutStream(TwoPointSpec(a=0, b=1, p=Fraction(1, 2)), seed=5)
    previous = 0
    for _ in range(3000):
        output = step(identifier, stream.next_readout()).output
        if output != previous:
            assert identifier.n in (1, 64, 729)
        previous = output


def test_trace_records_each_decision(traced_config):
    identifier = RationalIdentifier(traced_config)
    identifier.advance(Fraction(1, 2), 729)
    assert [(r.j, r.n) for r in identifier.trace] == [(1, 1), (2, 64), (3, 729)]
    first = identifier.trace[0]
    assert first.mean == "1/2"
    assert first.s2 == "0/1"
    assert first.inflated == "1/1"
    assert first.candidate == 1
    assert first.output == 1
    assert identifier.trace[2].output == 0


def test_bounded_index_stops_at_k():
    assert bounded_index(Fraction(1, 2), Fraction(1, 100), 4) == 4
    assert bounded_index(Fraction(1, 2), Fraction(1, 100), 3) == 0
    assert bounded_index(30, Fraction(1, 10**9), 12) == 0
    with pytest.raises(ValueError):
        bounded_index(0, 0, 5)


@pytest.mark.parametrize("mean", [Fraction(30), Fraction(-50, 3)])
def test_far_constants_never_output_an_index(identifier_config, mean):
    identifier = RationalIdentifier(identifier_config)
    segments = identifier.advance(mean, 12**6)
    assert segments == [(1, 0)]
    assert identifier.output == 0
    assert identifier.last_change == 0


def test_tiny_constant_drops_to_zero_once_resolved(identifier_config):
    # 1/n of the error schedule stays above 10**-6 through j = 10
    identifier = RationalIdentifier(identifier_config)
    identifier.advance(Fraction(1, 10**6), 12**6)
    assert identifier.output == 0
    assert identifier.last_change == 11**6


def test_wide_two_point_mean_settles_on_zero(identifier_config):
    identifier = RationalIdentifier(identifier_config)
    stream = ReadoutStream(TwoPointSpec(a=0, b=60, p=Fraction(1, 2)), seed=7)
    for _ in range(5000):
        step(identifier, stream.next_readout())
    assert identifier.output == 0
