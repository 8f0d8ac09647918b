import argparse

import pytest

from src.cli.main import (
    EXIT_CONFIG,
    EXIT_INVARIANT,
    EXIT_MALFORMED,
    EXIT_OK,
    build_parser,
    main,
    parse_seeds,
    positive_int,
)
from src.services.reporting import TRIALS_FILE, VERIFY_FILE

COIN = {"kind": "two_point", "a": "0", "b": "1", "p": "1/2"}


def test_parse_seeds():
    assert parse_seeds("1,2,3") == [1, 2, 3]
    assert parse_seeds("1-3,7") == [1, 2, 3, 7]
    for text in ("", "a", "5-1", ","):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_seeds(text)


def test_positive_int():
    assert positive_int("12") == 12
    with pytest.raises(argparse.ArgumentTypeError):
        positive_int("0")
    with pytest.raises(argparse.ArgumentTypeError):
        positive_int("ten")


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_run_writes_results(tmp_path, write_config, capsys):
    path = write_config({"name": "coin", "distribution": COIN, "horizon": 400})
    out = tmp_path / "out"
    code = main(["run", "--config", str(path), "--out", str(out), "--seeds", "1-3"])
    assert code == EXIT_OK
    assert (out / TRIALS_FILE).exists()
    assert (out / "summary.json").exists()
    assert not (out / "traces").exists()
    assert "3" in capsys.readouterr().out


def test_run_is_reproducible(tmp_path, write_config):
    path = write_config({"distribution": COIN, "horizon": 500, "seeds": [4, 5]})
    bodies = []
    for name in ("first", "second"):
        out = tmp_path / name
        assert main(["run", "--config", str(path), "--out", str(out)]) == EXIT_OK
        lines = (out / TRIALS_FILE).read_text(encoding="utf-8").splitlines()
        bodies.append(lines[1:])
    assert bodies[0] == bodies[1]


def test_run_with_trace(tmp_path, write_config):
    path = write_config({"distribution": COIN, "horizon": 100})
    out = tmp_path / "out"
    code = main(["run", "--config", str(path), "--out", str(out), "--trace"])
    assert code == EXIT_OK
    assert (out / "traces" / "trial-1.jsonl").read_text().count("\n") == 2


def test_config_errors_write_nothing(tmp_path, write_config):
    out = tmp_path / "out"
    bad_set = write_config({"distribution": COIN, "horizon": 10, "target_set": "x"})
    assert main(["run", "--config", str(bad_set), "--out", str(out)]) == EXIT_CONFIG
    missing = tmp_path / "missing.json"
    assert main(["run", "--config", str(missing), "--out", str(out)]) == EXIT_CONFIG
    invalid = write_config({"distribution": COIN}, name="invalid.json")
    assert main(["run", "--config", str(invalid), "--out", str(out)]) == EXIT_CONFIG
    assert not out.exists()


def test_report_reads_runs(tmp_path, write_config, capsys):
    path = write_config({"distribution": COIN, "horizon": 300, "seeds": [1, 2]})
    out = tmp_path / "run"
    assert main(["run", "--config", str(path), "--out", str(out)]) == EXIT_OK
    capsys.readouterr()
    report_dir = tmp_path / "report"
    assert main(["report", str(out), "--out", str(report_dir)]) == EXIT_OK
    printed = capsys.readouterr().out
    assert "two_point(0/1,1/1,1/2)" in printed
    assert (report_dir / "report.csv").exists()


def test_report_rejects_malformed_input(tmp_path):
    bad = tmp_path / "trials.csv"
    bad.write_text("not,a,trials,file\n1,2,3,4\n", encoding="utf-8")
    assert main(["report", str(bad)]) == EXIT_MALFORMED


def test_report_needs_paths():
    with pytest.raises(SystemExit) as excinfo:
        main(["report"])
    assert excinfo.value.code == 2


def test_verify_exit_codes(tmp_path, write_config, small_verify):
    document = {"distribution": COIN, "horizon": 1, "verify": small_verify}
    path = write_config(document)
    out = tmp_path / "verify"
    assert main(["verify", "--config", str(path), "--out", str(out)]) == EXIT_OK
    assert (out / VERIFY_FILE).exists()
    faulty = tmp_path / "faulty"
    code = main(
        [
            "verify",
            "--config",
            str(path),
            "--out",
            str(faulty),
            "--fault",
            "radius-underestimate",
        ]
    )
    assert code == EXIT_INVARIANT
    assert (faulty / VERIFY_FILE).exists()


@pytest.mark.slow
def test_verify_with_defaults(tmp_path):
    assert main(["verify", "--out", str(tmp_path)]) == EXIT_OK
