"""Concurrent per-seed trials with a deterministic merge."""

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from src.core.config import settings
from src.schemas.experiment import ExperimentConfig
from src.schemas.trial import DecisionRecord, TrialRow
from src.services.membership import run_trial
from src.services.registry import resolve_experiment

logger = logging.getLogger(__name__)


@dataclass
class TrialOutcome:
    row: TrialRow
    trace: list[DecisionRecord] = field(default_factory=list)


def run_seed(document: str, seed: int, trial_id: int) -> TrialOutcome:
    """One trial, rebuilt from the canonical config so it can run in a worker."""
    config = ExperimentConfig.parse(document)
    experiment = resolve_experiment(config)
    test = experiment.test()
    record = run_trial(test, experiment.stream(seed), config.horizon, experiment.truth)
    row = TrialRow(
        trial_id=trial_id,
        seed=seed,
        distribution=config.distribution.label(),
        mu=experiment.mu_label,
        set_name=config.set_name,
        **record.model_dump(),
    )
    return TrialOutcome(row=row, trace=test.identifier.trace)


async def run_experiment(
    config: ExperimentConfig, workers: int | None = None
) -> list[TrialOutcome]:
    """Run one trial per seed; outcomes come back sorted by seed."""
    # Names are resolved up front so a bad config fails before any work starts.
    experiment = resolve_experiment(config)
    workers = workers or settings.worker_count
    document = config.canonical_json()
    seeds = config.seeds
    logger.info(
        f"Running {len(seeds)} trials of {config.name} at horizon {config.horizon} "
        f"(truth={experiment.truth}, workers={workers})"
    )

    if workers <= 1:
        outcomes = [
            await asyncio.to_thread(run_seed, document, seed, trial_id)
            for trial_id, seed in enumerate(seeds, start=1)
        ]
    else:
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=min(workers, len(seeds))) as pool:
            outcomes = await asyncio.gather(
                *(
                    loop.run_in_executor(pool, run_seed, document, seed, trial_id)
                    for trial_id, seed in enumerate(seeds, start=1)
                )
            )
    return sorted(outcomes, key=lambda outcome: outcome.row.seed)
