from fractions import Fraction

import pytest

from src.schemas.identifier import IdentifierConfig
from src.services.presentations import (
    EPresentation,
    RationalPresentation,
    RealFamily,
    SqrtPresentation,
)
from src.services.reals import (
    FamilyIdentifier,
    bounded_least_index,
    certified_in,
    general_step,
)


@pytest.mark.parametrize("m", [0, 1, 5, 30, 200])
def test_presentations_give_nested_narrow_intervals(m):
    for presentation in (SqrtPresentation(2), EPresentation(), SqrtPresentation(9)):
        lo, hi = presentation.bounds(m)
        assert lo <= hi
        assert hi - lo <= Fraction(1, 2**m)
        next_lo, next_hi = presentation.bounds(m + 1)
        assert lo <= next_lo <= next_hi <= hi


def test_presentation_values():
    lo, hi = SqrtPresentation(2).bounds(20)
    assert lo * lo <= 2 <= hi * hi
    lo, hi = EPresentation().bounds(40)
    assert Fraction(2718281828, 10**9) < hi
    assert lo < Fraction(2718281829, 10**9)
    assert SqrtPresentation(Fraction(9, 4)).exact_value() == Fraction(3, 2)
    assert SqrtPresentation(2).exact_value() is None


def test_family_lookup(family):
    assert len(family) == 4
    assert family.names[:2] == ["sqrt2", "sqrt3"]
    assert family.index_of_value(Fraction(3, 2)) == 3
    assert family.index_of_value(Fraction(2)) is None
    assert family.index_of_name("sqrt5") == 4
    with pytest.raises(IndexError):
        family.member(5)
    with pytest.raises(ValueError):
        RealFamily([])


def test_certified_in(family):
    x = Fraction(141421, 100000)
    assert certified_in(family, 1, x, Fraction(1, 1000), 20)
    assert not certified_in(family, 1, x, Fraction(1, 10**7), 20)
    assert not certified_in(family, 1, x, Fraction(1, 1000), 0)
    assert certified_in(family, 3, Fraction(3, 2), Fraction(1, 10**30), 1)
    with pytest.raises(ValueError):
        certified_in(family, 1, x, 0, 5)


def test_bounded_least_index(family):
    assert bounded_least_index(family, 4, 30, Fraction(3, 2), Fraction(1, 100)) == 3
    assert bounded_least_index(family, 2, 30, Fraction(3, 2), Fraction(1, 100)) == 0
    nine_quarters = Fraction(9, 4)
    assert bounded_least_index(family, 10, 30, nine_quarters, Fraction(1, 50)) == 4


@pytest.fixture
def roots() -> RealFamily:
    return RealFamily([SqrtPresentation(2), SqrtPresentation(3), SqrtPresentation(5)])


def test_bounded_least_index_over_square_roots(roots):
    assert bounded_least_index(roots, 3, 20, Fraction(17, 12), Fraction(1, 10)) == 1
    for n in (0, 1, 7, 20, 64):
        assert bounded_least_index(roots, 3, n, Fraction(7, 4), Fraction(1, 100)) == 0
    assert bounded_least_index(roots, 3, 0, Fraction(17, 12), Fraction(1, 10)) == 0


def test_certified_in_at_modest_depth(roots):
    assert certified_in(roots, 1, Fraction(3, 2), Fraction(1, 10), 7)
    for n in (1, 10, 40):
        assert not certified_in(roots, 1, Fraction(2), Fraction(1, 10), n)


def test_family_identifier_finds_three_halves(family, identifier_config):
    identifier = FamilyIdentifier(identifier_config, family)
    segments = identifier.advance(Fraction(3, 2), 3**6)
    assert segments == [(1, 1), (64, 0), (729, 3)]
    assert identifier.last_change == 729


def test_family_identifier_rejects_a_non_member(family, identifier_config):
    identifier = FamilyIdentifier(identifier_config, family)
    segments = identifier.advance(Fraction(7, 4), 4**6)
    assert segments == [(1, 1), (64, 0)]
    assert identifier.output == 0


def test_general_step_matches_rational_member(identifier_config):
    family = RealFamily([RationalPresentation(0), RationalPresentation(1)])
    identifier = FamilyIdentifier(identifier_config, family)
    for _ in range(64):
        general_step(identifier, Fraction(1))
    assert identifier.output == 2
    assert identifier.clone().output == 0
    assert isinstance(identifier.clone(), FamilyIdentifier)
    assert identifier.config == IdentifierConfig()
