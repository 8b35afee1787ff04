"""Tests for the fvc command line.

Uses Click's CliRunner for in-process runs against files in tmp_path.
"""
from __future__ import annotations

import json
from typing import TYPE_CHECKING

import click.testing
import numpy as np
import pytest

from fvclust.fvc_cli import main
from fvclust.fvc_modules.formats import decode_gram, encode_fibers
from fvclust.tests.conftest import make_fiber

if TYPE_CHECKING:
    from pathlib import Path

_GRAM_HEADER_SIZE = 37


def _run(*args: str) -> click.testing.Result:
    runner = click.testing.CliRunner(mix_stderr=False)
    return runner.invoke(main, list(args))


def _synth(tmp_path: Path, name: str = "fibers.jsonl", *extra: str) -> Path:
    out = tmp_path / name
    result = _run(
        "synth", "--bundles", "2", "--per-bundle", "5", "--points", "10",
        "--seed", "7", "-o", str(out), "--labels-out", str(tmp_path / "planted.json"),
        *extra,
    )
    assert result.exit_code == 0, result.stderr
    return out


class TestSynth:
    def test_record_count(self, tmp_path: Path) -> None:
        out = tmp_path / "f.jsonl"
        result = _run(
            "synth", "--bundles", "4", "--per-bundle", "50", "--seed", "7",
            "-o", str(out),
        )
        assert result.exit_code == 0
        assert len(out.read_text().splitlines()) == 200
        assert json.loads(result.stdout)["n_fibers"] == 200

    def test_zero_per_bundle_is_usage_error(self, tmp_path: Path) -> None:
        result = _run(
            "synth", "--bundles", "2", "--per-bundle", "0", "-o", str(tmp_path / "f"),
        )
        assert result.exit_code == 2

    def test_geometry_ids_length_checked(self, tmp_path: Path) -> None:
        result = _run(
            "synth", "--bundles", "2", "--per-bundle", "3", "--geometry-ids", "0",
            "-o", str(tmp_path / "f"),
        )
        assert result.exit_code == 2


class TestPipeline:
    def test_full_run_is_byte_deterministic(self, tmp_path: Path) -> None:
        """Same seeds give byte-identical fibers, Gram and result files."""
        outputs = []
        for run in ("a", "b"):
            folder = tmp_path / run
            fibers = _synth(folder)
            gram = folder / "q.grm"
            result = folder / "result.json"
            assert _run("gram", "--in", str(fibers), "-o", str(gram)).exit_code == 0
            assert _run(
                "cluster", "--gram", str(gram), "--m", "2", "--seed", "3",
                "-o", str(result),
            ).exit_code == 0
            outputs.append(
                (fibers.read_bytes(), gram.read_bytes(), result.read_bytes()),
            )
        assert outputs[0] == outputs[1]

    def test_eval_prints_json(self, tmp_path: Path) -> None:
        fibers = _synth(tmp_path)
        gram = tmp_path / "q.grm"
        result = tmp_path / "result.json"
        _run("gram", "--in", str(fibers), "-o", str(gram))
        _run("cluster", "--gram", str(gram), "--m", "2", "-o", str(result))
        evaluated = _run(
            "eval", "--gram", str(gram), "--result", str(result),
            "--planted", str(tmp_path / "planted.json"),
        )
        assert evaluated.exit_code == 0, evaluated.stderr
        report = json.loads(evaluated.stdout)
        assert set(report) == {"ari", "mean_silhouette", "n_unassigned", "per_cluster"}
        assert -1.0 <= report["mean_silhouette"] <= 1.0

    def test_cluster_m_zero_is_usage_error(self, tmp_path: Path) -> None:
        fibers = _synth(tmp_path)
        gram = tmp_path / "q.grm"
        _run("gram", "--in", str(fibers), "-o", str(gram))
        result = _run(
            "cluster", "--gram", str(gram), "--m", "0", "-o", str(tmp_path / "r"),
        )
        assert result.exit_code == 2

    def test_s_max_above_m_is_usage_error(self, tmp_path: Path) -> None:
        result = _run(
            "cluster", "--gram", str(tmp_path / "q.grm"), "--m", "2", "--s-max", "3",
            "-o", str(tmp_path / "r"),
        )
        assert result.exit_code == 2

    def test_restarts_flow_into_result_config(self, tmp_path: Path) -> None:
        fibers = _synth(tmp_path)
        gram = tmp_path / "q.grm"
        out = tmp_path / "result.json"
        _run("gram", "--in", str(fibers), "-o", str(gram))
        result = _run(
            "cluster", "--gram", str(gram), "--m", "2", "--n-init", "3", "--seed", "5",
            "-o", str(out),
        )
        assert result.exit_code == 0, result.stderr
        doc = json.loads(out.read_text())
        assert doc["config"]["n_init"] == 3
        assert doc["seed"] == 5
        assert "memberships" in doc

    def test_negative_seed_rejected(self, tmp_path: Path) -> None:
        result = _run(
            "cluster", "--gram", str(tmp_path / "q.grm"), "--m", "2", "--seed", "-1",
            "-o", str(tmp_path / "r"),
        )
        assert result.exit_code == 2

    def test_too_many_atoms_is_runtime_error(self, tmp_path: Path) -> None:
        fibers = _synth(tmp_path)
        gram = tmp_path / "q.grm"
        _run("gram", "--in", str(fibers), "-o", str(gram))
        result = _run(
            "cluster", "--gram", str(gram), "--m", "11", "-o", str(tmp_path / "r"),
        )
        assert result.exit_code == 1
        assert "MoreAtomsThanFibers" in result.stderr


class TestGram:
    def test_missing_input_exits_1(self, tmp_path: Path) -> None:
        result = _run(
            "gram", "--in", str(tmp_path / "none.jsonl"), "-o", str(tmp_path / "q"),
        )
        assert result.exit_code == 1
        assert result.stderr.startswith("Error: ")
        assert "FileNotFoundError" in result.stderr

    def test_single_fiber(self, tmp_path: Path) -> None:
        fibers = tmp_path / "one.jsonl"
        fiber = make_fiber([[0, 0, 0], [1, 0, 0], [2, 1, 0]])
        fibers.write_text(encode_fibers([fiber]))
        out = tmp_path / "q.grm"
        assert _run("gram", "--in", str(fibers), "-o", str(out)).exit_code == 0
        q = decode_gram(out.read_bytes()).unwrap()
        assert q.values.shape == (1, 1)
        assert q.values[0, 0] > 0

    def test_equal_constant_signals_make_fvar_equal_var(self, tmp_path: Path) -> None:
        rng = np.random.default_rng(0)
        fibers = [
            make_fiber(np.cumsum(rng.normal(size=(6, 3)), axis=0), fiber_id=i)
            for i in range(4)
        ]
        path = tmp_path / "f.jsonl"
        path.write_text(encode_fibers(fibers))
        payloads = []
        for model in ("fvar", "var"):
            out = tmp_path / f"{model}.grm"
            assert _run(
                "gram", "--model", model, "--in", str(path), "-o", str(out),
            ).exit_code == 0
            payloads.append(out.read_bytes()[_GRAM_HEADER_SIZE:])
        assert payloads[0] == payloads[1]

    def test_nystrom_with_every_fiber_as_landmark(self, tmp_path: Path) -> None:
        fibers = _synth(tmp_path)
        exact, approx = tmp_path / "exact.grm", tmp_path / "approx.grm"
        _run("gram", "--in", str(fibers), "-o", str(exact))
        result = _run("gram", "--in", str(fibers), "-o", str(approx), "--nystrom", "10")
        assert result.exit_code == 0
        assert json.loads(result.stdout)["approximate"] is True
        q_exact = decode_gram(exact.read_bytes()).unwrap().values
        q_approx = decode_gram(approx.read_bytes()).unwrap().values
        np.testing.assert_allclose(q_approx, q_exact, rtol=1e-6, atol=1e-6)

    def test_non_positive_bandwidth_is_usage_error(self, tmp_path: Path) -> None:
        fibers = _synth(tmp_path)
        result = _run(
            "gram", "--in", str(fibers), "-o", str(tmp_path / "q"), "--lambda-w", "0",
        )
        assert result.exit_code == 2


class TestSweep:
    def test_default_grid_has_25_rows_per_pair(self, tmp_path: Path) -> None:
        fibers = _synth(tmp_path)
        result = _run("sweep", "--fibers", str(fibers), "--pairs", "0-1,0-5")
        assert result.exit_code == 0, result.stderr
        lines = result.stdout.splitlines()
        assert lines[0] == "lambda_w,lambda_m,pair_id,angle_deg"
        assert len(lines) == 1 + 2 * 25

    @pytest.mark.parametrize("pairs", ["0_1", "a-b", "0-"])
    def test_bad_pairs(self, tmp_path: Path, pairs: str) -> None:
        fibers = _synth(tmp_path)
        assert _run("sweep", "--fibers", str(fibers), "--pairs", pairs).exit_code == 2

    def test_pair_out_of_range_exits_1(self, tmp_path: Path) -> None:
        fibers = _synth(tmp_path)
        result = _run("sweep", "--fibers", str(fibers), "--pairs", "0-99")
        assert result.exit_code == 1
        assert "IndexOutOfRange" in result.stderr


class TestCompare:
    def test_compare_table_and_json(self, tmp_path: Path) -> None:
        fibers = _synth(tmp_path)
        out = tmp_path / "compare.json"
        result = _run(
            "compare", "--fibers", str(fibers), "--models", "fvar,mcp", "--m", "2",
            "--seeds", "0", "--json-out", str(out),
        )
        assert result.exit_code == 0, result.stderr
        assert "Mean silhouette per model" in result.stdout
        rows = json.loads(out.read_text())
        assert [row["model"] for row in rows] == ["fvar", "mcp"]

    def test_unknown_model(self, tmp_path: Path) -> None:
        fibers = _synth(tmp_path)
        result = _run(
            "compare", "--fibers", str(fibers), "--models", "nope", "--m", "2",
        )
        assert result.exit_code == 2

    def test_lambda_sweep_json(self, tmp_path: Path) -> None:
        fibers = _synth(tmp_path)
        result = _run(
            "lambda-sweep", "--fibers", str(fibers), "--m", "2", "--m", "3",
            "--seeds", "0", "--lambda-m", "0.01,0.1",
        )
        assert result.exit_code == 0, result.stderr
        rows = json.loads(result.stdout)
        assert [(row["lambda_m"], row["m"]) for row in rows] == [
            (0.01, 2), (0.01, 3), (0.1, 2), (0.1, 3),
        ]
        expected = {"fvar_silhouette", "var_silhouette", "signal_silhouette"}
        assert expected <= set(rows[0])

    def test_compare_on_sample(self, tmp_path: Path) -> None:
        fibers = _synth(tmp_path)
        out = tmp_path / "compare.json"
        result = _run(
            "compare", "--fibers", str(fibers), "--models", "fvar", "--m", "2",
            "--seeds", "0", "--sample", "6", "--sample-seed", "2",
            "--json-out", str(out),
        )
        assert result.exit_code == 0, result.stderr
        assert json.loads(out.read_text())[0]["runs"] == 1

    def test_negative_seed_is_usage_error(self, tmp_path: Path) -> None:
        fibers = _synth(tmp_path)
        result = _run("compare", "--fibers", str(fibers), "--m", "2", "--seeds", "0,-1")
        assert result.exit_code == 2


class TestRunLog:
    def test_started_and_finished_events(self, tmp_path: Path) -> None:
        log = tmp_path / "run.jsonl"
        out = tmp_path / "f.jsonl"
        result = _run(
            "--run-log", str(log), "synth", "--bundles", "1", "--per-bundle", "2",
            "-o", str(out),
        )
        assert result.exit_code == 0
        events = [json.loads(line) for line in log.read_text().splitlines()]
        assert [(e["command"], e["event_type"]) for e in events] == [
            ("synth", "started"),
            ("synth", "finished"),
        ]

    def test_failed_event_carries_error(self, tmp_path: Path) -> None:
        log = tmp_path / "run.jsonl"
        result = _run(
            "--run-log", str(log), "gram", "--in", str(tmp_path / "none"),
            "-o", str(tmp_path / "q"),
        )
        assert result.exit_code == 1
        last = json.loads(log.read_text().splitlines()[-1])
        assert last["event_type"] == "failed"
        assert last["payload"]["error_type"] == "FileNotFoundError"
