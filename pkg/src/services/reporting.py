import csv
import io
import json
import logging
import statistics
from collections.abc import Iterable, Sequence
from datetime import UTC, datetime
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ValidationError

from src.core.errors import MalformedResultError
from src.schemas.diagnostics import CoverageRow, VerifyReport
from src.schemas.experiment import ExperimentConfig
from src.schemas.trial import (
    TRIAL_COLUMNS,
    DecisionRecord,
    ReportRow,
    RunSummary,
    TrialRow,
)

logger = logging.getLogger(__name__)

TRIALS_FILE = "trials.csv"
SUMMARY_FILE = "summary.json"
VERIFY_FILE = "verify.json"
COVERAGE_FILE = "coverage.csv"
TRACES_DIR = "traces"


def timestamp() -> str:
    return datetime.now(UTC).isoformat(timespec="seconds")


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _csv_text(columns: Sequence[str], rows: Iterable[BaseModel]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        data = row.model_dump()
        writer.writerow([_cell(data[column]) for column in columns])
    return buffer.getvalue()


def _json_with_timestamp(generated_at: str, body: dict[str, Any]) -> str:
    """Indented JSON whose only nondeterministic line is ``generated_at``."""
    return json.dumps({"generated_at": generated_at, **body}, indent=2) + "\n"


def summarize(rows: Sequence[TrialRow]) -> RunSummary:
    if not rows:
        raise ValueError("no trials to summarize")
    correct = sum(1 for row in rows if row.stabilized_correct)
    return RunSummary(
        trials=len(rows),
        stabilized_correct=correct,
        fraction_stabilized_correct=correct / len(rows),
        median_last_change=float(statistics.median(row.last_change for row in rows)),
        max_last_change=max(row.last_change for row in rows),
        max_mistakes=max(row.mistakes for row in rows),
        median_index_last_change=float(
            statistics.median(row.index_last_change for row in rows)
        ),
    )


def aggregate(rows: Iterable[TrialRow]) -> list[ReportRow]:
    """Stabilization tables keyed by (distribution, set, horizon)."""
    groups: dict[tuple[str, str, int], list[TrialRow]] = {}
    for row in rows:
        groups.setdefault((row.distribution, row.set_name, row.horizon), []).append(row)
    report: list[ReportRow] = []
    for (distribution, set_name, horizon), members in sorted(groups.items()):
        summary = summarize(members)
        report.append(
            ReportRow(
                distribution=distribution,
                set_name=set_name,
                horizon=horizon,
                trials=summary.trials,
                stabilized_correct=summary.stabilized_correct,
                fraction_stabilized_correct=summary.fraction_stabilized_correct,
                median_last_change=summary.median_last_change,
                max_mistakes=summary.max_mistakes,
            )
        )
    return report


def format_table(report: Sequence[ReportRow]) -> str:
    header = ("distribution", "set", "horizon", "trials", "correct", "fraction")
    lines = [
        (
            row.distribution,
            row.set_name,
            str(row.horizon),
            str(row.trials),
            str(row.stabilized_correct),
            f"{row.fraction_stabilized_correct:.4f}",
        )
        for row in report
    ]
    table = [header, *lines]
    widths = [max(len(cells[k]) for cells in table) for k in range(len(header))]
    rendered = []
    for cells in table:
        padded = (cell.ljust(width) for cell, width in zip(cells, widths, strict=True))
        rendered.append("  ".join(padded).rstrip())
    return "\n".join(rendered)


class ResultStore:
    """Service for writing and reading the files under one output directory."""

    def __init__(self, out_dir: Path) -> None:
        self.out_dir = Path(out_dir)

    def write_run(
        self,
        config: ExperimentConfig,
        rows: Sequence[TrialRow],
        traces: dict[int, list[DecisionRecord]] | None = None,
        generated_at: str | None = None,
    ) -> RunSummary:
        """Write ``trials.csv``, ``summary.json`` and any traces."""
        generated_at = generated_at or timestamp()
        summary = summarize(rows)
        self.out_dir.mkdir(parents=True, exist_ok=True)

        header = f"# generated_at: {generated_at}\n# config: {config.canonical_json()}\n"
        body = _csv_text(TRIAL_COLUMNS, rows)
        (self.out_dir / TRIALS_FILE).write_text(header + body, encoding="utf-8")

        document = {"name": config.name, "summary": summary.model_dump()}
        (self.out_dir / SUMMARY_FILE).write_text(
            _json_with_timestamp(generated_at, document), encoding="utf-8"
        )

        if traces:
            trace_dir = self.out_dir / TRACES_DIR
            trace_dir.mkdir(exist_ok=True)
            for trial_id, records in sorted(traces.items()):
                lines = "".join(record.model_dump_json() + "\n" for record in records)
                (trace_dir / f"trial-{trial_id}.jsonl").write_text(
                    lines, encoding="utf-8"
                )

        logger.info(f"Wrote {len(rows)} trials to {self.out_dir / TRIALS_FILE}")
        return summary

    def write_verification(
        self,
        report: VerifyReport,
        coverage: Sequence[CoverageRow],
        generated_at: str | None = None,
    ) -> None:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        document = {"passed": report.passed, **report.model_dump()}
        (self.out_dir / VERIFY_FILE).write_text(
            _json_with_timestamp(generated_at or timestamp(), document),
            encoding="utf-8",
        )
        (self.out_dir / COVERAGE_FILE).write_text(
            _csv_text(list(CoverageRow.model_fields), coverage), encoding="utf-8"
        )
        logger.info(f"Wrote verification report to {self.out_dir / VERIFY_FILE}")

    def write_report(self, report: Sequence[ReportRow]) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / "report.csv"
        path.write_text(
            _csv_text(list(ReportRow.model_fields), report), encoding="utf-8"
        )
        return path


def read_trials(path: Path) -> list[TrialRow]:
    """Parse a ``trials.csv``; header comment lines are skipped."""
    path = Path(path)
    if path.is_dir():
        path = path / TRIALS_FILE
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise MalformedResultError(f"cannot read {path}: {exc}") from exc
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    reader = csv.DictReader(lines)
    if reader.fieldnames != TRIAL_COLUMNS:
        raise MalformedResultError(
            f"{path}: expected columns {','.join(TRIAL_COLUMNS)}, "
            f"got {','.join(reader.fieldnames or [])}"
        )
    rows: list[TrialRow] = []
    for line_number, record in enumerate(reader, start=1):
        try:
            rows.append(TrialRow.model_validate(record))
        except ValidationError as exc:
            raise MalformedResultError(f"{path}: row {line_number}: {exc}") from exc
    if not rows:
        raise MalformedResultError(f"{path}: no trial rows")
    return rows
