import argparse
import asyncio
import logging
from fractions import Fraction

from src.core.errors import InvariantViolation
from src.schemas.distribution import TwoPointSpec
from src.schemas.experiment import ExperimentConfig
from src.services.reporting import ResultStore
from src.services.verification import run_verification

logger = logging.getLogger(__name__)


def default_config() -> ExperimentConfig:
    return ExperimentConfig(
        name="verify",
        distribution=TwoPointSpec(a=Fraction(0), b=Fraction(1), p=Fraction(1, 2)),
        horizon=1,
    )


async def cmd_verify(args: argparse.Namespace) -> int:
    """驗證所有精確不變量，並輸出 LIL 覆蓋率表"""
    config = ExperimentConfig.load(args.config) if args.config else default_config()
    config = config.with_overrides(output_dir=args.out, fault=args.fault)
    logger.info(f"Resolved config: {config.canonical_json()}")

    report, coverage = await asyncio.to_thread(run_verification, config)
    ResultStore(config.output_dir).write_verification(report, coverage)

    for check in report.checks:
        # 統計性檢查只回報，不影響結束碼
        status = "PASS" if check.passed else "FAIL"
        if not check.exact:
            status = "INFO"
        print(f"{status}  {check.name}（{check.cases} 個案例）")

    failed = report.failed()
    if failed:
        first = failed[0]
        case = first.failures[0] if first.failures else "no case recorded"
        raise InvariantViolation(first.name, case)
    return 0
