import json

import numpy as np
import pytest
from click.testing import CliRunner

from hubbardq import __version__
from hubbardq.cli import main
from hubbardq.fitkit import evaluate_fit
from hubbardq.model import read_fcidump


@pytest.fixture
def runner(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("HOME", str(tmp_path))
    for name in ("HUBBARDQ_SEED", "HUBBARDQ_SHOTS", "HUBBARDQ_REPEATS",
                 "HUBBARDQ_LOGS_DIR", "HUBBARDQ_VERBOSE"):
        monkeypatch.delenv(name, raising=False)
    return CliRunner()


def run_json(runner, args):
    result = runner.invoke(main, args)
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


def test_version(runner):
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_spectrum_both_variants(runner):
    report = run_json(runner, ["spectrum", "ethylene", "--variant", "both"])
    assert report["command"] == "spectrum"
    assert len(report["inputs"][0]["sha256"]) == 64
    by_variant = {r["variant"]: r for r in report["results"]}
    singles = {
        v: {e["label"]: e["delta_e_ev"] for e in r["excitations"]}["1^1B_u"]
        for v, r in by_variant.items()
    }
    assert singles["with-exchange"] == pytest.approx(7.81, abs=0.05)
    assert singles["coulomb-only"] == pytest.approx(8.13, abs=0.05)
    ground = by_variant["with-exchange"]["states"][0]
    assert ground["label"] == "1^1A_g"
    assert ground["leading"][0]["occupation"] == "1100"


def test_spectrum_is_deterministic(runner):
    first = runner.invoke(main, ["spectrum", "butadiene"])
    second = runner.invoke(main, ["spectrum", "butadiene"])
    assert first.exit_code == second.exit_code == 0
    assert first.stdout == second.stdout


def test_spectrum_writes_report_and_fcidump(runner, tmp_path):
    out = tmp_path / "spectrum.json"
    result = runner.invoke(main, ["spectrum", "ethylene", "--out", str(out),
                                  "--fcidump", str(tmp_path / "eth.fcidump")])
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text())
    assert report["options"]["fcidump"].endswith("eth.fcidump")
    assert read_fcidump(tmp_path / "eth.fcidump").K == 2


def test_norm(runner):
    report = run_json(runner, ["norm", "butadiene", "--variant", "coulomb-only"])
    (entry,) = report["results"]
    assert entry["n_term"] == 61
    assert entry["lambda_hartree"] == pytest.approx(3.2, abs=0.1)
    assert entry["n_qubits"] == 8


def test_fit(runner, tmp_path):
    bands = np.arange(50, 601, 50)
    path = tmp_path / "bands.csv"
    values = evaluate_fit((7.76, 2.0, 150.0), bands)
    path.write_text("\n".join(f"{n},{v:.12f}" for n, v in zip(bands, values)) + "\n")
    report = run_json(runner, ["fit", str(path)])
    assert report["series"]["label"] == "bands"
    assert report["fit"]["delta_e_inf"] == pytest.approx(7.76, abs=1e-6)
    assert report["fit"]["last_gap_ev"] == pytest.approx(2.0 * np.exp(-4.0), abs=1e-6)


def test_fit_needs_four_points(runner, tmp_path):
    path = tmp_path / "short.csv"
    path.write_text("10,1.0\n20,2.0\n30,2.5\n")
    result = runner.invoke(main, ["fit", str(path)])
    assert result.exit_code == 2


def test_export_fcidump_both_variants(runner, tmp_path):
    out = tmp_path / "export.json"
    result = runner.invoke(main, ["export-fcidump", "hexatriene_6e6o", str(tmp_path / "hex.fcidump"),
                                  "--variant", "both", "--out", str(out)])
    assert result.exit_code == 0, result.output
    files = {f["variant"]: f for f in json.loads(out.read_text())["files"]}
    assert (tmp_path / "hex.with-exchange.fcidump").exists()
    assert (tmp_path / "hex.coulomb-only.fcidump").exists()
    assert set(files) == {"with-exchange", "coulomb-only"}


def test_export_canonical_basis(runner, tmp_path):
    target = tmp_path / "eth.fcidump"
    result = runner.invoke(main, ["export-fcidump", "ethylene", str(target), "--basis", "canonical"])
    assert result.exit_code == 0, result.output
    assert read_fcidump(target).K == 2


def test_unknown_model_is_an_input_error(runner):
    result = runner.invoke(main, ["norm", "no_such_model.yaml"])
    assert result.exit_code == 2


def test_malformed_model_is_an_input_error(runner, tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("model:\n  name: bad\n")
    result = runner.invoke(main, ["spectrum", str(path)])
    assert result.exit_code == 2


def test_single_repeat_is_rejected(runner):
    result = runner.invoke(main, ["vqd-sample", "ethylene", "--repeats", "1"])
    assert result.exit_code == 2


def test_vqd_sample_is_reproducible(runner, tmp_path):
    args = ["vqd-sample", "ethylene", "--n-states", "2", "--restarts", "1", "--shots", "400",
            "--repeats", "3", "--seed", "11", "--trace", str(tmp_path / "trace.jsonl")]
    first = runner.invoke(main, args)
    assert first.exit_code == 0, first.output
    trace = (tmp_path / "trace.jsonl").read_text()
    second = runner.invoke(main, args)
    assert first.stdout == second.stdout
    report = json.loads(first.stdout)
    (entry,) = report["results"]
    assert [s["seed"] for s in entry["sampling"]] == [11, 14]
    assert len(entry["vqd"]["states"]) == 2
    assert trace.strip()
    assert (tmp_path / "trace.jsonl").read_text() == trace
    assert {s["basis"] for s in entry["sampling"]} == {"wannier"}


def test_logs_directory(runner, tmp_path):
    logs = tmp_path / "logs"
    result = runner.invoke(main, ["norm", "ethylene", "--logs-dir", str(logs)])
    assert result.exit_code == 0
    (log_file,) = logs.glob("*/*/main.log")
    messages = [json.loads(line)["message"] for line in log_file.read_text().splitlines()]
    assert "Resource summary" in messages
    assert "Run metrics" in messages
