import json
import subprocess
import sys

import pytest

from grext.cli import main
from grext.config import Config, Limits, load_config


def run(capsys, *argv):
    """main() return code, with argparse exits folded in."""
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


class TestExtCommand:
    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "ext", "--source", "a", "--target", "a^2", "--max-degree", "2",
                           "--out", "json")
        data = json.loads(out)
        assert code == 0
        assert set(data) == {"query", "params", "groups", "timing_ms"}
        assert [g["rank"] for g in data["groups"]] == [0, 1, 0]
        assert all(set(g) == {"degree", "rank", "torsion"} for g in data["groups"])
        assert isinstance(data["timing_ms"], int)

    def test_text_and_modes(self, capsys):
        code, out, _ = run(capsys, "ext", "--source", "a^2", "--target", "a^3", "--max-degree", "2",
                           "--mode", "both")
        assert code == 0
        assert "Ext^1(a^2, a^3) = Z^6" in out
        assert "agree: True" in out

    def test_passi_source(self, capsys):
        code, out, _ = run(capsys, "ext", "--source", "passi(2)", "--target", "a^3", "--max-degree", "1",
                           "--out", "json")
        assert code == 0 and json.loads(out)["groups"][1]["rank"] == 5

    def test_rational(self, capsys):
        code, out, _ = run(capsys, "ext", "--source", "a", "--target", "a^3", "--max-degree", "3",
                           "--rational", "--out", "json")
        assert code == 0
        assert [g["rank"] for g in json.loads(out)["groups"]] == [0, 0, 1, 0]

    def test_reruns_are_byte_identical(self, capsys):
        argv = ["ext", "--source", "a", "--target", "a*(a+const(1))", "--max-degree", "2",
                "--out", "json", "--no-timing"]
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second and json.loads(first)["timing_ms"] == 0

    @pytest.mark.parametrize("argv", [
        ["ext", "--source", "a+a", "--target", "a", "--max-degree", "1"],
        ["ext", "--source", "a", "--target", "b", "--max-degree", "1"],
        ["ext", "--source", "a", "--target", "a", "--max-degree", "-1"],
        ["ext", "--source", "a", "--target", "a^9", "--max-degree", "1"],
        ["ext", "--source", "a", "--target", "a"],
        ["frobnicate"],
        [],
        ["verify", "nosuchsuite"],
        ["passi", "rank", "--factors", "x", "--cutoff", "1"],
        ["magnus", "expand", "--word", "y1", "--cutoff", "2"],
    ])
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2 and err

    def test_resource_limit_exit_code(self, capsys):
        code, _, err = run(capsys, "ext", "--source", "a", "--target", "a^3", "--max-degree", "3",
                           "--max-module-dim", "10")
        assert code == 3 and "resource limit" in err


class TestOtherCommands:
    def test_magnus_expand(self, capsys):
        code, out, _ = run(capsys, "magnus", "expand", "--word", "x1*x2*x1^-1*x2^-1", "--cutoff", "2",
                           "--out", "json")
        data = json.loads(out)
        assert code == 0
        assert {t["monomial"]: t["coeff"] for t in data["terms"]} == {"1": 1, "X1.X2": 1, "X2.X1": -1}

    def test_magnus_text(self, capsys):
        _, out, _ = run(capsys, "magnus", "expand", "--word", "x1^-1", "--cutoff", "2")
        assert out.strip() == "1 - X1 + X1.X1"

    def test_passi_rank_with_ball(self, capsys):
        code, out, _ = run(capsys, "passi", "rank", "--factors", "1,1", "--cutoff", "2", "--ball", "4",
                           "--out", "json")
        data = json.loads(out)
        assert code == 0
        assert data["rank"] == 6 and data["agrees"] and data["stable"]

    def test_verify_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "symmetric", "--out", "json", "--no-timing")
        data = json.loads(out)
        assert code == 0 and data["status"] == "pass"
        records = data["suites"][0]["checks"]
        assert len(records) == 4 and all(r["anchor"] and r["wall_ms"] == 0 for r in records)

    def test_verify_limit_is_a_failure(self, capsys):
        code, out, _ = run(capsys, "verify", "rational", "--max-module-dim", "3")
        assert code == 1 and "FAIL" in out

    def test_verify_text(self, capsys):
        code, out, _ = run(capsys, "verify", "rational")
        assert code == 0 and out.strip().endswith("rational: pass (4/4)")

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "grext", "magnus", "expand", "--word", "x1",
                               "--cutoff", "1"], capture_output=True, text=True)
        assert proc.returncode == 0 and proc.stdout.strip() == "1 + X1"


class TestConfig:
    def test_defaults(self):
        cfg = load_config(None)
        assert cfg == Config() and cfg.limits == Limits(20000, 5_000_000)

    def test_file_and_overrides(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"jobs": 2, "limits": {"max_module_dim": 50}}))
        cfg = load_config(path, max_matrix_entries=7, timing=False)
        assert cfg.jobs == 2 and not cfg.timing
        assert cfg.limits == Limits(50, 7)

    @pytest.mark.parametrize("body", ['{"jbos": 2}', '{"limits": {"dim": 1}}', "[1]", '{"jobs": 0}'])
    def test_rejects_bad_files(self, tmp_path, body):
        path = tmp_path / "c.json"
        path.write_text(body)
        with pytest.raises(ValueError):
            load_config(path)

    def test_config_limit_reaches_cli(self, tmp_path, capsys):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"limits": {"max_module_dim": 5}}))
        code, _, _ = run(capsys, "ext", "--source", "a", "--target", "a^2", "--max-degree", "2",
                         "--config", str(path))
        assert code == 3

    def test_bad_config_is_usage_error(self, tmp_path, capsys):
        path = tmp_path / "c.json"
        path.write_text('{"nope": 1}')
        code, _, err = run(capsys, "verify", "symmetric", "--config", str(path))
        assert code == 2 and "unknown configuration keys" in err

    def test_missing_config_file(self, capsys):
        code, _, _ = run(capsys, "verify", "symmetric", "--config", "/nonexistent/c.json")
        assert code == 2
