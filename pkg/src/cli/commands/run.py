import argparse
import logging

from src.schemas.experiment import ExperimentConfig
from src.services.reporting import ResultStore
from src.services.runner import run_experiment

logger = logging.getLogger(__name__)


async def cmd_run(args: argparse.Namespace) -> int:
    """執行實驗：每個 seed 一次試驗，輸出 trials.csv 與 summary.json"""
    config = ExperimentConfig.load(args.config).with_overrides(
        seeds=args.seeds,
        horizon=args.horizon,
        output_dir=args.out,
        trace=True if args.trace else None,
    )
    logger.info(f"Resolved config: {config.canonical_json()}")

    # 設定錯誤會在這裡拋出，此時尚未寫入任何檔案
    outcomes = await run_experiment(config)

    rows = [outcome.row for outcome in outcomes]
    traces = None
    if config.identifier.trace:
        traces = {outcome.row.trial_id: outcome.trace for outcome in outcomes}

    store = ResultStore(config.output_dir)
    summary = store.write_run(config, rows, traces)

    print(
        f"完成 {summary.trials} 次試驗："
        f"穩定且正確 {summary.stabilized_correct} 次"
        f"（{summary.fraction_stabilized_correct:.1%}），"
        f"最大錯誤數 {summary.max_mistakes}"
    )
    return 0
