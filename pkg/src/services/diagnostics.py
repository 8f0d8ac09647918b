"""Exact and statistical checks of the quantities the identifiers rely on."""

import logging
from bisect import bisect_left, bisect_right
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from mpmath import mp, mpf

from src.core.enumeration import iter_rationals
from src.core.rational import (
    MATERIALIZE_LIMIT,
    RationalLike,
    Threshold,
    as_rational,
    format_rational,
)
from src.models.stats import Accumulator, RunningStats
from src.schemas.diagnostics import CoverageRow
from src.schemas.distribution import DistributionSpec
from src.schemas.identifier import IdentifierConfig
from src.services.identifier import LOGLOG_CLAMP, lil_bounds, radius
from src.services.presentations import (
    CauchyPresentation,
    EPresentation,
    RealFamily,
    SqrtPresentation,
)
from src.services.reals import certified_in
from src.services.streams import (
    EXACT_INVERSE_SQUARE_LIMIT,
    ReadoutStream,
    eta,
    inverse_square_sum,
)

logger = logging.getLogger(__name__)

RadiusFunction = Callable[[int, Fraction, IdentifierConfig], Threshold]

# Fixed-precision screening used where the exact radius would be too costly.
SCREEN_BITS = 64
SCREEN_SLACK = Fraction(1, 1 << SCREEN_BITS)

REFERENCE_BITS = 512


class IntervalUnion:
    """Sorted, pairwise disjoint intervals merged on insertion."""

    def __init__(self) -> None:
        self._lows: list[Fraction] = []
        self._highs: list[Fraction] = []
        self.measure = Fraction(0)

    def __len__(self) -> int:
        return len(self._lows)

    def __iter__(self) -> Iterator[tuple[Fraction, Fraction]]:
        return iter(zip(self._lows, self._highs, strict=True))

    def add(self, low: Fraction, high: Fraction) -> None:
        if high <= low:
            return
        first = bisect_left(self._highs, low)
        last = bisect_right(self._lows, high)
        if first == last:
            self._lows.insert(first, low)
            self._highs.insert(first, high)
            self.measure += high - low
            return
        merged_low = min(low, self._lows[first])
        merged_high = max(high, self._highs[last - 1])
        for k in range(first, last):
            self.measure -= self._highs[k] - self._lows[k]
        self._lows[first:last] = [merged_low]
        self._highs[first:last] = [merged_high]
        self.measure += merged_high - merged_low


def union_measure_profile(k_max: int, delta: RationalLike) -> list[Fraction]:
    """Measure of ``U_{i<=k} (q_i - delta, q_i + delta)`` for ``k = 1..k_max``."""
    if k_max < 1:
        raise ValueError("k must be at least 1")
    delta = as_rational(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    union = IntervalUnion()
    profile: list[Fraction] = []
    for i, q in iter_rationals():
        if i > k_max:
            break
        union.add(q - delta, q + delta)
        profile.append(union.measure)
    return profile


def union_measure(k: int, delta: RationalLike) -> Fraction:
    return union_measure_profile(k, delta)[-1]


@dataclass(frozen=True)
class SummabilityReport:
    """Partial sums over decisions ``j <= terms``.

    The eta sum is enclosed exactly; the delta' sum is an upper bound on
    ``sum k_j * (delta_n(j) + eta_n(j))`` at a constant ``s2`` or along an
    ``s2`` profile, in which case ``s2`` is None.
    """

    terms: int
    p: int
    c: int
    epsilon: str
    eta_constant: int
    s2: Fraction | None
    eta_sum_lower: Fraction
    eta_sum_upper: Fraction
    delta_prime_sum_upper: Fraction
    comparison_sum: Fraction

    @property
    def comparison_bound(self) -> Fraction:
        return self.eta_constant * self.comparison_sum

    @property
    def within_bound(self) -> bool:
        return self.eta_sum_upper <= self.comparison_bound

    def summary(self) -> dict[str, str | int | float]:
        return {
            "terms": self.terms,
            "p": self.p,
            "c": self.c,
            "epsilon": self.epsilon,
            "eta_constant": self.eta_constant,
            "s2": "profile" if self.s2 is None else format_rational(self.s2),
            "eta_sum_lower": float(self.eta_sum_lower),
            "eta_sum_upper": float(self.eta_sum_upper),
            "delta_prime_sum_upper": float(self.delta_prime_sum_upper),
            "comparison_sum": float(self.comparison_sum),
            "within_bound": int(self.within_bound),
        }


def _eta_sum_bounds(cfg: IdentifierConfig, terms: int) -> tuple[Fraction, Fraction]:
    exact = Accumulator()
    beyond = Accumulator()  # sum of k_j / n over the non-materialized terms
    beyond_sq = Accumulator()  # sum of k_j / n**2
    beyond_next = Accumulator()  # sum of k_j / (n * (n + 1))
    dyadic = cfg.epsilon == "dyadic"
    exact_limit = MATERIALIZE_LIMIT if dyadic else EXACT_INVERSE_SQUARE_LIMIT
    for j in range(1, terms + 1):
        n, k = cfg.decision_time(j), cfg.complexity(j)
        if n <= exact_limit:
            value = eta(n, cfg.epsilon).to_fraction()
            exact.add(k * value.numerator, value.denominator)
            continue
        beyond.add(k, n)
        if not dyadic:
            beyond_sq.add(k, n * n)
            beyond_next.add(k, n * (n + 1))
    head, tail = exact.value(), beyond.value()
    if dyadic:
        # eta_n = (1 - 2**-n) / n with 0 < 2**-n < 2**-MATERIALIZE_LIMIT there
        lower = head + tail * (1 - Fraction(1, 1 << MATERIALIZE_LIMIT))
        return lower, head + tail
    cut = EXACT_INVERSE_SQUARE_LIMIT
    prefix = inverse_square_sum(cut)
    upper = head + (prefix + Fraction(1, cut)) * tail - beyond_sq.value()
    lower = head + (prefix + Fraction(1, cut + 1)) * tail - beyond_next.value()
    return lower, upper


def _radius_upper(n: int, s2: Fraction, cfg: IdentifierConfig) -> Fraction:
    if n <= MATERIALIZE_LIMIT:
        return radius(n, s2, cfg).to_fraction()
    _, upper = lil_bounds(n, s2, cfg.alpha, SCREEN_BITS)
    return upper + SCREEN_SLACK


def summability_report(
    cfg: IdentifierConfig,
    terms: int,
    s2: RationalLike | Callable[[int], RationalLike] = Fraction(1, 4),
) -> SummabilityReport:
    """Sums up to ``terms`` decisions; ``s2`` may map ``n`` to a variance."""
    if terms < 1:
        raise ValueError("at least one term is required")
    constant = None if callable(s2) else as_rational(s2)
    comparison = Accumulator()
    radius_sum = Accumulator()
    for j in range(1, terms + 1):
        n = cfg.decision_time(j)
        k = cfg.complexity(j)
        comparison.add(k, n)
        s2_n = constant if constant is not None else as_rational(s2(n))
        bound = _radius_upper(n, s2_n, cfg)
        radius_sum.add(k * bound.numerator, bound.denominator)
    eta_lower, eta_upper = _eta_sum_bounds(cfg, terms)
    report = SummabilityReport(
        terms=terms,
        p=cfg.p,
        c=cfg.complexity(1),
        epsilon=cfg.epsilon,
        eta_constant=1 if cfg.epsilon == "dyadic" else 2,
        s2=constant,
        eta_sum_lower=eta_lower,
        eta_sum_upper=eta_upper,
        delta_prime_sum_upper=radius_sum.value() + eta_upper,
        comparison_sum=comparison.value(),
    )
    logger.info(
        f"Summability over {terms} decisions: eta sum <= {float(eta_upper):.9g}, "
        f"comparison {float(report.comparison_sum):.9g}"
    )
    return report


def _violates(n: int, deviation: Fraction, s2: Fraction, cfg: IdentifierConfig) -> bool:
    if n <= SCREEN_BITS or s2 == 0:
        return deviation >= radius(n, s2, cfg)
    lower, upper = lil_bounds(n, s2, cfg.alpha, SCREEN_BITS)
    if deviation >= upper + SCREEN_SLACK:
        return True
    if deviation < lower:
        return False
    return deviation >= radius(n, s2, cfg)


def coverage_for_seed(
    spec: DistributionSpec, seed: int, horizon: int, cfg: IdentifierConfig
) -> CoverageRow:
    mu = spec.mean()
    stream = ReadoutStream(spec, seed=seed)
    stats = RunningStats()
    violations = 0
    last = 0
    for n in range(1, horizon + 1):
        stats.push(stream.next_readout())
        if _violates(n, abs(stats.mean() - mu), stats.variance(), cfg):
            violations += 1
            last = n
    return CoverageRow(seed=seed, horizon=horizon, violations=violations, last_violation=last)


def lil_coverage(
    spec: DistributionSpec,
    seeds: Iterable[int],
    horizon: int,
    cfg: IdentifierConfig | None = None,
) -> list[CoverageRow]:
    """Last time ``|mean_n - mu| >= radius_n`` for each seed."""
    if spec.is_degenerate:
        raise ValueError("coverage needs a distribution with positive variance")
    if not spec.has_rational_support:
        raise ValueError("coverage needs a distribution with a known rational mean")
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    cfg = cfg or IdentifierConfig()
    return [coverage_for_seed(spec, seed, horizon, cfg) for seed in seeds]


def _inside(x: Fraction, low: Fraction, high: Fraction) -> bool:
    return low < x < high


def readout_stability_suite(cases: int, seed: int = 0) -> list[str]:
    """Randomized open-interval cases where the exact mean keeps a margin
    above ``eta_n`` from both ends; the readout mean must fall on the same side.
    """
    rng = np.random.Generator(np.random.Philox(key=seed))
    failures: list[str] = []
    for case in range(cases):
        n = int(rng.integers(1, 33))
        nums = rng.integers(-1000, 1001, size=n).tolist()
        dens = rng.integers(1, 101, size=n).tolist()
        errors = rng.integers(-1000, 1001, size=n).tolist()
        exact = [Fraction(a, b) for a, b in zip(nums, dens, strict=True)]
        readouts = [
            x + Fraction(e, 1000 << i)
            for i, (x, e) in enumerate(zip(exact, errors, strict=True), start=1)
        ]
        mean = sum(exact, Fraction(0)) / n
        readout_mean = sum(readouts, Fraction(0)) / n
        bound = eta(n).to_fraction()
        if abs(readout_mean - mean) > bound:
            failures.append(f"case {case}: readout mean off by more than eta_{n}")
            continue
        gap, width = (Fraction(int(v), 1000) for v in rng.integers(1, 1001, size=2))
        match int(rng.integers(0, 3)):
            case 0:
                low, high = mean - bound - gap, mean + bound + width
            case 1:
                low = mean + bound + gap
                high = low + width
            case _:
                high = mean - bound - gap
                low = high - width
        if _inside(mean, low, high) != _inside(readout_mean, low, high):
            failures.append(
                f"case {case}: n={n} interval ({low}, {high}) "
                f"mean={mean} readout_mean={readout_mean}"
            )
    return failures


def _reference_value(presentation: CauchyPresentation) -> mpf:
    match presentation:
        case SqrtPresentation():
            q = presentation.radicand
            return mp.sqrt(mpf(q.numerator) / q.denominator)
        case EPresentation():
            return +mp.e
    exact = presentation.exact_value()
    if exact is None:
        raise ValueError(f"no reference value for {presentation!r}")
    return mpf(exact.numerator) / exact.denominator


def builtin_family() -> RealFamily:
    return RealFamily(
        [
            SqrtPresentation(2, name="sqrt2"),
            SqrtPresentation(3, name="sqrt3"),
            SqrtPresentation(5, name="sqrt5"),
            EPresentation(),
        ]
    )


def certified_inclusion_suite(cases: int, seed: int = 0) -> tuple[list[str], int]:
    """Soundness and eventual certification of ``certified_in``.

    Returns the failures and the number of strict-inclusion cases checked for
    certification at depth ``ceil(log2(1/margin)) + 1``.
    """
    rng = np.random.Generator(np.random.Philox(key=seed))
    family = builtin_family()
    failures: list[str] = []
    strict = 0
    with mp.workprec(REFERENCE_BITS):
        references = [_reference_value(member) for member in family.members]
        for case in range(cases):
            j = int(rng.integers(1, len(family) + 1))
            value = references[j - 1]
            scale = 1 << int(rng.integers(1, 41))
            shift, spread = (int(v) for v in rng.integers(-3, 4, size=2))
            x = Fraction(int(mp.nint(value * scale)) + shift, scale)
            delta = Fraction(abs(spread) + 1, 2 * scale)
            distance = abs(value - mpf(x.numerator) / x.denominator)
            margin = mpf(delta.numerator) / delta.denominator - distance
            depth = int(rng.integers(1, 61))
            if certified_in(family, j, x, delta, depth) and margin <= 0:
                failures.append(
                    f"case {case}: {family.member(j).name} certified in "
                    f"({x} - {delta}, {x} + {delta}) at depth {depth}"
                )
            if margin > 0:
                strict += 1
                needed = max(1, int(mp.ceil(-mp.log(margin, 2))) + 1)
                if not certified_in(family, j, x, delta, needed):
                    failures.append(
                        f"case {case}: {family.member(j).name} not certified in "
                        f"({x} - {delta}, {x} + {delta}) at depth {needed}"
                    )
    return failures, strict


def reference_radius(n: int, s2: Fraction, alpha: Fraction) -> tuple[Fraction, Fraction]:
    """Bracket of ``delta_n`` of width at most ``2**-(n + 38)``, from mpmath."""
    floor = Fraction(1, 1 << n)
    if n <= LOGLOG_CLAMP or s2 == 0:
        return floor, floor
    bits = n + 40
    with mp.workprec(bits + 128):
        value = (1 + mpf(alpha.numerator) / alpha.denominator) * mp.sqrt(
            2 * (mpf(s2.numerator) / s2.denominator) * mp.log(mp.log(n)) / n
        )
        k = int(mp.floor(mp.ldexp(value, bits)))
    lower = Fraction(k - 1, 1 << bits)
    upper = Fraction(k + 2, 1 << bits)
    return max(lower, floor), max(upper, floor)


def radius_invariant_check(
    n_values: Iterable[int],
    s2_values: Iterable[RationalLike],
    alpha: RationalLike = Fraction(1, 2),
    radius_fn: RadiusFunction = radius,
) -> tuple[list[str], int]:
    """Cases where the radius leaves ``[delta_n, delta_n + 2**-n]`` or
    decreases as ``s2`` grows. Returns the failures and the case count."""
    alpha = as_rational(alpha)
    cfg = IdentifierConfig(alpha=alpha)
    s2_sorted = sorted(as_rational(s) for s in s2_values)
    failures: list[str] = []
    checked = 0
    for n in n_values:
        previous: Threshold | None = None
        for s2 in s2_sorted:
            checked += 1
            value = radius_fn(n, s2, cfg)
            lower, upper = reference_radius(n, s2, alpha)
            case = f"n={n} s2={format_rational(s2)}"
            if value < lower:
                failures.append(f"{case}: radius {float(value):.6g} below delta_n")
            if value > upper + Fraction(1, 1 << n):
                failures.append(f"{case}: radius {float(value):.6g} above delta_n + 2^-n")
            if previous is not None and value < previous:
                failures.append(f"{case}: radius decreased as s2 grew")
            previous = value
    return failures, checked
