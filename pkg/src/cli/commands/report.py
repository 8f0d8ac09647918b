import argparse
import logging

from src.services.reporting import ResultStore, aggregate, format_table, read_trials

logger = logging.getLogger(__name__)


async def cmd_report(args: argparse.Namespace) -> int:
    """彙整多個 trials.csv，依 (分布, 集合, horizon) 輸出穩定比例"""
    rows = []
    for path in args.paths:
        rows.extend(read_trials(path))
    logger.info(f"Read {len(rows)} trials from {len(args.paths)} files")

    report = aggregate(rows)
    print(format_table(report))

    if args.out:
        path = ResultStore(args.out).write_report(report)
        logger.info(f"Wrote report to {path}")
    return 0
