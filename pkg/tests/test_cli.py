"""
rscount CLI 테스트
"""
import json

import pytest

from app.application.services import SelftestCheck, SelftestOutcome, SelftestService
from app.presentation.cli import run


@pytest.fixture
def tiny(tasks_dir):
    return str(tasks_dir / "tiny_sumparity.json")


def _json(capsys):
    return json.loads(capsys.readouterr().out)


class TestCount:
    """count 명령 테스트"""

    def test_rs_json(self, tiny, capsys):
        assert run(["count", "--task", tiny, "--mode", "rs", "--json", "--no-timing"]) == 0
        data = _json(capsys)
        assert data["rs_count"] == "1"
        assert data["count"] == "1"
        assert data["elapsed_seconds"] is None

    def test_no_timing_is_reproducible(self, tiny, capsys):
        argv = ["count", "--task", tiny, "--json", "--no-timing"]
        run(argv)
        first = capsys.readouterr().out
        run(argv)
        assert capsys.readouterr().out == first

    def test_text_output(self, tiny, capsys):
        assert run(["count", "--task", tiny, "--mode", "jrs-nonredundant"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("count report\n")
        assert "admissible_alpha_count" in out

    def test_budget_exit_code(self, tasks_dir, capsys):
        path = str(tasks_dir / "sum_parity" / "sum_parity_N3_untied.json")
        assert run(["count", "--task", path, "--method", "pruned", "--budget", "1", "--json"]) == 2
        data = _json(capsys)
        assert data["exact"] is False
        assert any("budget" in w for w in data["warnings"])

    def test_missing_task(self, tmp_path, capsys):
        code = run(["count", "--task", str(tmp_path / "missing.json"), "--json"])
        captured = capsys.readouterr()
        assert code == 3
        assert "rscount: error: task file not found [TASK_VALIDATION_ERROR]" in captured.err
        assert json.loads(captured.out)["error_code"] == "TASK_VALIDATION_ERROR"

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["count"],
            ["count", "--task", "t.json", "--mode", "all"],
            ["count", "--task", "t.json", "--workers", "0"],
            ["frobnicate"],
        ],
    )
    def test_usage_errors(self, argv, capsys):
        assert run(argv) == 1
        assert "rscount: error:" in capsys.readouterr().err

    def test_checked_with_factored(self, tiny, capsys):
        assert run(["count", "--task", tiny, "--method", "factored", "--checked"]) == 1


class TestOtherCommands:
    """나머지 명령 테스트"""

    def test_enumerate_limit(self, tiny, capsys):
        assert run(["enumerate", "--task", tiny, "--limit", "1", "--json"]) == 0
        data = _json(capsys)
        assert data["returned"] == 1
        assert data["truncated"] is True
        assert data["entries"][0]["alpha"] == {"tables": [[0, 1]]}

    def test_enumerate_text(self, tiny, capsys):
        assert run(["enumerate", "--task", tiny, "--target", "rs"]) == 0
        assert "#1  alpha=" in capsys.readouterr().out

    def test_intended_count(self, tiny, capsys):
        assert run(["intended-count", "--task", tiny, "--family-aware", "--json"]) == 0
        data = _json(capsys)
        assert data["subtrahend"] == "2"
        assert data["formula"] == "family_aware"
        assert data["closed_form"] == "8"

    def test_export_stdout(self, tiny, capsys):
        assert run(["export-cnf", "--task", tiny]) == 0
        out = capsys.readouterr().out
        assert out.startswith("c ind ")
        assert "\np cnf 12 " in out

    def test_export_file(self, tiny, tmp_path, capsys):
        out = tmp_path / "tiny.cnf"
        argv = ["export-cnf", "--task", tiny, "--out", str(out), "--count", "--json"]
        assert run(argv) == 0
        data = _json(capsys)
        assert data["num_vars"] == 12
        assert data["model_count"] == "2"
        assert out.read_text(encoding="utf-8").startswith("c ind ")

    def test_check_extremality(self, tasks_dir, capsys):
        path = str(tasks_dir / "layers" / "softmax_violating.json")
        assert run(["check-extremality", "--layer", path, "--grid", "49", "--json"]) == 0
        data = _json(capsys)
        assert data["satisfied"] is False
        assert data["worst_violation"] > 0

    def test_check_extremality_bad_grid(self, tasks_dir):
        path = str(tasks_dir / "layers" / "softmax_violating.json")
        assert run(["check-extremality", "--layer", path, "--grid", "2"]) == 1

    def test_metrics(self, tasks_dir, tiny, capsys):
        argv = [
            "metrics",
            "--dump",
            str(tasks_dir / "dumps" / "tiny_sumparity_flipped.csv"),
            "--task",
            tiny,
            "--beta",
            str(tasks_dir / "dumps" / "tiny_sumparity_beta_knowledge.json"),
            "--json",
        ]
        assert run(argv) == 0
        data = _json(capsys)
        assert data["beta_f1"] == 1.0
        assert data["alignment"]["psi"] == [[1, 0], [1, 0]]

    def test_metrics_missing_dump(self, tiny, tmp_path, capsys):
        assert run(["metrics", "--dump", str(tmp_path / "d.csv"), "--task", tiny]) == 3
        assert "dump file not found" in capsys.readouterr().err


class TestSelftest:
    """selftest 명령 테스트"""

    @pytest.mark.slow
    def test_passes(self, capsys):
        assert run(["selftest"]) == 0
        out = capsys.readouterr().out
        assert out.rstrip().endswith("0 failed")

    def test_mismatch_exit_code(self, monkeypatch, capsys):
        failing = SelftestOutcome(checks=[SelftestCheck("planted", False, "1", "2", "abc123")])
        monkeypatch.setattr(SelftestService, "run", lambda self: failing)
        assert run(["selftest", "--json"]) == 2
        captured = capsys.readouterr()
        assert "abc123" in captured.err
