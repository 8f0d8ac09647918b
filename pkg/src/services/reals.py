"""Identification over a countable family of computable reals."""

from fractions import Fraction

from src.core.rational import RationalLike, Threshold, as_rational
from src.schemas.identifier import IdentifierConfig
from src.services.identifier import SequentialIdentifier
from src.services.presentations import RealFamily


def certified_in(
    family: RealFamily,
    j: int,
    x: RationalLike,
    delta: Threshold | RationalLike,
    n: int,
) -> bool:
    """Whether some depth ``1 <= m <= n`` puts ``[L(j,m), U(j,m)]`` inside
    ``(x - delta, x + delta)``.

    Intervals are nested, so depth ``n`` is the strongest witness and is the
    only one checked.
    """
    if n < 0:
        raise ValueError("depth must be a natural number")
    if n == 0:
        return False
    x = as_rational(x)
    delta = Threshold.of(delta)
    if not delta.is_positive():
        raise ValueError("delta must be positive")
    lo, hi = family.bounds(j, n)
    return delta > x - lo and delta > hi - x


def bounded_least_index(
    family: RealFamily,
    k: int,
    n: int,
    x: RationalLike,
    delta: Threshold | RationalLike,
) -> int:
    """Least ``j <= k`` certified inside the interval at depth ``n``, else 0."""
    for j in range(1, min(k, len(family)) + 1):
        if certified_in(family, j, x, delta, n):
            return j
    return 0


class FamilyIdentifier(SequentialIdentifier):
    """Identifier for membership of the mean in a presented family ``S``.

    Decision ``j`` certifies at depth ``m(j) = j`` among the first ``k_j``
    members.
    """

    def __init__(self, config: IdentifierConfig, family: RealFamily) -> None:
        super().__init__(config)
        self.family = family

    def depth(self, j: int) -> int:
        return j

    def _select(self, mean: Fraction, inflated: Threshold, j: int) -> tuple[int, int]:
        k = self.config.complexity(j)
        chosen = bounded_least_index(self.family, k, self.depth(j), mean, inflated)
        return chosen, chosen

    def clone(self) -> "FamilyIdentifier":
        return FamilyIdentifier(self.config, self.family)


def general_step(state: FamilyIdentifier, readout: Fraction) -> FamilyIdentifier:
    state.step(readout)
    return state
