import argparse
import asyncio
import logging
from collections.abc import Sequence
from pathlib import Path

from src.cli.commands import cmd_report, cmd_run, cmd_verify
from src.core.config import settings
from src.core.errors import (
    ConfigError,
    CoverlabError,
    InvariantViolation,
    MalformedResultError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_CONFIG = 2
EXIT_MALFORMED = 3


def parse_seeds(text: str) -> list[int]:
    """``1,2,3`` or ranges such as ``1-50``, mixed freely."""
    seeds: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            first, sep, last = part.partition("-")
            if sep:
                low, high = int(first), int(last)
                if high < low:
                    raise ValueError(f"empty range {part}")
                seeds.extend(range(low, high + 1))
            else:
                seeds.append(int(part))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid seed list {text!r}: {exc}") from exc
    if not seeds:
        raise argparse.ArgumentTypeError("seed list is empty")
    return seeds


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coverlab",
        description="序列檢定實驗工具 - 有限錯誤的均值集合判定",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    run = subparsers.add_parser("run", help="依設定檔執行試驗")
    run.add_argument("--config", type=Path, required=True, help="實驗設定 JSON")
    run.add_argument("--out", type=Path, help="輸出目錄（覆寫設定檔）")
    run.add_argument("--seeds", type=parse_seeds, help="例如 1,2,3 或 1-50")
    run.add_argument("--horizon", type=positive_int, help="每次試驗的讀數數量")
    run.add_argument("--trace", action="store_true", help="輸出每次判定的軌跡")
    run.set_defaults(handler=cmd_run)

    verify = subparsers.add_parser("verify", help="驗證精確不變量")
    verify.add_argument("--config", type=Path, help="實驗設定 JSON（可省略）")
    verify.add_argument("--out", type=Path, help="輸出目錄")
    verify.add_argument(
        "--fault",
        choices=["radius-underestimate"],
        help="注入錯誤以測試失敗路徑",
    )
    verify.set_defaults(handler=cmd_verify)

    report = subparsers.add_parser("report", help="彙整 trials.csv")
    report.add_argument("paths", type=Path, nargs="*", help="結果檔或輸出目錄")
    report.add_argument("--out", type=Path, help="另存 report.csv 的目錄")
    report.set_defaults(handler=cmd_report)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point for the command line."""
    logging.basicConfig(
        level=settings.coverlab_log_level.upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "report" and not args.paths:
        parser.error("report needs at least one result file")

    try:
        return asyncio.run(args.handler(args))
    except ConfigError as exc:
        logger.error(f"Config error: {exc}")
        return EXIT_CONFIG
    except MalformedResultError as exc:
        logger.error(f"Malformed result file: {exc}")
        return EXIT_MALFORMED
    except InvariantViolation as exc:
        logger.error(f"Invariant violated: {exc.invariant} ({exc.case})")
        return EXIT_INVARIANT
    except CoverlabError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        return EXIT_INVARIANT


if __name__ == "__main__":
    raise SystemExit(main())
