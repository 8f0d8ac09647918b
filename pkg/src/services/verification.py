"""The ``verify`` sweeps: exact invariants plus the statistical coverage table."""

import logging
import statistics
from fractions import Fraction

from src.core.rational import Threshold
from src.schemas.diagnostics import CheckResult, CoverageRow, VerifyReport
from src.schemas.experiment import ExperimentConfig, VerifyConfig
from src.schemas.identifier import IdentifierConfig
from src.services.catalog import ProgramCatalog
from src.services.diagnostics import (
    RadiusFunction,
    certified_inclusion_suite,
    lil_coverage,
    radius_invariant_check,
    readout_stability_suite,
    summability_report,
    union_measure_profile,
)
from src.services.identifier import RationalIdentifier, radius
from src.services.membership import compose, induced_approximator
from src.services.registry import resolve_target_set
from src.services.streams import ReadoutStream

logger = logging.getLogger(__name__)

# Failures listed per check; the count is always reported in full.
MAX_LISTED_FAILURES = 20


def underestimated_radius(n: int, s_sq: Fraction, cfg: IdentifierConfig) -> Threshold:
    """Half the true radius, for exercising the failure path."""
    return Threshold(radius(n, s_sq, cfg).to_fraction() / 2)


FAULTS: dict[str, RadiusFunction] = {"radius-underestimate": underestimated_radius}


def _result(
    name: str, failures: list[str], cases: int, **details: str | int | float
) -> CheckResult:
    if failures:
        logger.error(f"{name}: {len(failures)} of {cases} cases failed")
    else:
        logger.info(f"{name}: {cases} cases passed")
    return CheckResult(
        name=name,
        passed=not failures,
        cases=cases,
        failures=failures[:MAX_LISTED_FAILURES],
        details={"failure_count": len(failures), **details},
    )


def check_union_measure(verify: VerifyConfig) -> CheckResult:
    failures: list[str] = []
    cases = 0
    for exponent in range(1, verify.union_deltas + 1):
        delta = Fraction(1, 1 << exponent)
        for k, measure in enumerate(union_measure_profile(verify.union_k_max, delta), 1):
            cases += 1
            if measure > 2 * k * delta:
                failures.append(f"k={k} delta=2^-{exponent}: measure {measure}")
    return _result("union-measure-bound", failures, cases)


def check_summability(cfg: IdentifierConfig, terms: int, s2: Fraction) -> CheckResult:
    report = summability_report(cfg, terms, s2)
    failures: list[str] = []
    if not report.within_bound:
        failures.append(
            f"eta sum {float(report.eta_sum_upper):.12g} exceeds "
            f"{report.eta_constant} * {float(report.comparison_sum):.12g}"
        )
    if report.eta_sum_lower > report.eta_sum_upper:
        failures.append("eta enclosure is empty")
    return _result("summability", failures, terms, **report.summary())


def check_radius(verify: VerifyConfig, cfg: IdentifierConfig) -> CheckResult:
    radius_fn = FAULTS[verify.fault] if verify.fault else radius
    failures, cases = radius_invariant_check(
        verify.radius_n, verify.radius_s2, cfg.alpha, radius_fn
    )
    return _result("radius-invariant", failures, cases)


def check_readout_stability(verify: VerifyConfig) -> CheckResult:
    failures = readout_stability_suite(verify.stability_cases, verify.stability_seed)
    return _result("readout-stability", failures, verify.stability_cases)


def check_certified_inclusion(verify: VerifyConfig) -> CheckResult:
    failures, strict = certified_inclusion_suite(
        verify.inclusion_cases, verify.stability_seed
    )
    return _result(
        "certified-inclusion", failures, verify.inclusion_cases, strict_cases=strict
    )


def check_roundtrip(
    verify: VerifyConfig, cfg: IdentifierConfig, catalog: ProgramCatalog | None
) -> CheckResult:
    """Rows of the induced approximator settle on the index set's indicator.

    Row ``i`` is read at the decision times ``i + settle`` and
    ``i + settle + 1``; both must equal ``1[i in A]``.
    """
    failures: list[str] = []
    cases = 0
    for set_name in verify.roundtrip_sets:
        target = resolve_target_set(set_name, catalog=catalog)
        induced = induced_approximator(
            compose(RationalIdentifier(cfg), target.approximator)
        )
        for i in range(1, verify.roundtrip_max_index + 1):
            cases += 1
            expected = int(target.contains(i))
            early = cfg.decision_time(i + verify.roundtrip_settle)
            late = cfg.decision_time(i + verify.roundtrip_settle + 1)
            observed = (induced.approximate(i, early), induced.approximate(i, late))
            if observed != (expected, expected):
                failures.append(
                    f"{set_name} row {i}: a(i,{early}), a(i,{late}) = {observed}, "
                    f"expected {expected}"
                )
    return _result("necessity-roundtrip", failures, cases)


def check_composition(
    verify: VerifyConfig, cfg: IdentifierConfig, catalog: ProgramCatalog | None
) -> CheckResult:
    """``F_n = 0`` when ``C_n = 0`` and ``F_n = a(C_n, n)`` otherwise, step by step."""
    failures: list[str] = []
    cases = 0
    for set_name in verify.roundtrip_sets:
        approximator = resolve_target_set(set_name, catalog=catalog).approximator
        test = compose(RationalIdentifier(cfg), approximator)
        stream = ReadoutStream(
            verify.coverage_distribution, seed=verify.coverage_seeds[0]
        )
        for _ in range(verify.composition_horizon):
            value = test.update(stream.next_readout())
            c = test.identifier.output
            expected = 0 if c == 0 else approximator.approximate(c, test.n)
            cases += 1
            if value != expected:
                failures.append(f"{set_name} n={test.n}: F={value} C={c}")
    return _result("composition-law", failures, cases)


def coverage_check(
    verify: VerifyConfig, cfg: IdentifierConfig
) -> tuple[CheckResult, list[CoverageRow]]:
    rows = lil_coverage(
        verify.coverage_distribution,
        verify.coverage_seeds,
        verify.coverage_horizon,
        cfg,
    )
    last = [row.last_violation for row in rows]
    result = CheckResult(
        name="lil-coverage",
        exact=False,
        passed=True,
        cases=len(rows),
        details={
            "horizon": verify.coverage_horizon,
            "median_last_violation": float(statistics.median(last)),
            "max_last_violation": max(last),
            "seeds_without_violation": sum(1 for value in last if value == 0),
        },
    )
    return result, rows


def run_verification(
    config: ExperimentConfig, catalog: ProgramCatalog | None = None
) -> tuple[VerifyReport, list[CoverageRow]]:
    verify = config.verify
    cfg = config.identifier
    spec = config.distribution
    if verify.fault:
        logger.warning(f"Fault injection enabled: {verify.fault}")
    checks = [
        check_union_measure(verify),
        check_summability(cfg, verify.summability_j, spec.variance()),
        check_radius(verify, cfg),
        check_readout_stability(verify),
        check_certified_inclusion(verify),
        check_composition(verify, cfg, catalog),
        check_roundtrip(verify, cfg, catalog),
    ]
    coverage, rows = coverage_check(verify, cfg)
    checks.append(coverage)
    return VerifyReport(checks=checks), rows
