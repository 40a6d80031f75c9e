import json
import re
import subprocess
import sys

import pytest

from pqcbound.cli import EXIT_GUARD, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestOrderCommand:
    def test_ec_f6_json(self, capsys):
        code, out, _ = run_cli(capsys, "order", "--method", "ec", "--f", "6", "--q", "2", "--n", "2")
        assert code == EXIT_OK
        rec = json.loads(out)
        assert rec["bound"] == "0.5198943946817"
        assert rec["order"][:3] == [[1, 5], [2, 4], [3, 6]]
        assert rec["f"] == 6 and rec["q"] == 2 and rec["n"] == 2
        assert rec["method"] == "ec"
        assert len(rec["cond_entropies"]) == 15

    def test_ldf_f6(self, capsys):
        code, out, _ = run_cli(capsys, "order", "--method", "ldf", "--f", "6")
        assert code == EXIT_OK
        assert json.loads(out)["bound"] == "0.5197824997350"

    def test_eec_f5(self, capsys):
        code, out, _ = run_cli(capsys, "order", "--method", "e-ec", "--f", "5", "--threads", "1")
        assert code == EXIT_OK
        assert json.loads(out)["bound"] == "0.5321513151313"

    def test_ebg_f2_trivial(self, capsys):
        code, out, _ = run_cli(capsys, "order", "--method", "ebg", "--f", "2")
        assert code == EXIT_OK
        rec = json.loads(out)
        assert rec["order"] == [[1, 2]]
        assert rec["bound"] == "1.0000000000000"

    def test_composite_q_is_guard_violation(self, capsys):
        code, _, err = run_cli(capsys, "order", "--method", "ec", "--f", "6", "--q", "4")
        assert code == EXIT_GUARD
        assert "prime" in err

    def test_ldf_f2_rejected(self, capsys):
        code, _, err = run_cli(capsys, "order", "--method", "ldf", "--f", "2")
        assert code == EXIT_USAGE
        assert "f >= 3" in err

    def test_unknown_method_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["order", "--method", "bogus", "--f", "6"])
        assert exc.value.code == EXIT_USAGE
        capsys.readouterr()

    def test_text_format_has_wire_order(self, capsys):
        code, out, _ = run_cli(
            capsys, "order", "--method", "ec", "--f", "6", "--format", "text"
        )
        assert code == EXIT_OK
        assert "1,5;2,4;3,6;1,6" in out
        assert "bound:        0.5198943946817" in out

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(capsys, "order", "--method", "ec", "--f", "5", "--format", "csv")
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert lines[0] == "f,method,bound,evaluations,wall_time_ms"
        cells = lines[1].split(",")
        assert cells[0] == "5" and cells[1] == "ec" and cells[2] == "0.5382035621102"
        assert cells[3] == "1"

    def test_raw_flag_adds_hex(self, capsys):
        code, out, _ = run_cli(capsys, "order", "--method", "ec", "--f", "5", "--raw")
        rec = json.loads(out)
        assert float.fromhex(rec["bound_hex"]) == pytest.approx(0.5382035621102, abs=1e-12)

    def test_json_round_trips_byte_identically(self, capsys):
        _, out, _ = run_cli(capsys, "order", "--method", "ec", "--f", "6")
        line = out.strip()
        assert json.dumps(json.loads(line)) == line

    def test_deterministic_apart_from_timing(self, capsys):
        _, out1, _ = run_cli(capsys, "order", "--method", "ebg", "--f", "5", "--seed", "3")
        _, out2, _ = run_cli(capsys, "order", "--method", "ebg", "--f", "5", "--seed", "3")
        strip = lambda s: re.sub(r'"wall_time_ms": \d+', '"wall_time_ms": 0', s)
        assert strip(out1) == strip(out2)


class TestSearchCommand:
    def test_exhaustive_f5(self, capsys):
        code, out, _ = run_cli(
            capsys, "search", "--method", "exhaustive", "--f", "5", "--threads", "1"
        )
        assert code == EXIT_OK
        assert json.loads(out)["bound"] == "0.5321513151313"

    def test_exhaustive_guard_without_force(self, capsys):
        code, _, err = run_cli(capsys, "search", "--method", "exhaustive", "--f", "8")
        assert code == EXIT_GUARD
        assert "force" in err

    def test_random_beats_eec_reference(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "search", "--method", "random", "--f", "6", "--fixed-colors", "2",
            "--budget", "2000", "--seed", "7",
        )
        assert code == EXIT_OK
        rec = json.loads(out)
        assert float(rec["bound"]) <= 0.5198121367672
        assert rec["seed"] == 7 and rec["budget"] == 2000 and rec["fixed_colors"] == 2

    def test_random_reproducible(self, capsys):
        args = ["search", "--method", "random", "--f", "6", "--budget", "50", "--seed", "41"]
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        strip = lambda s: re.sub(r'"wall_time_ms": \d+', '"wall_time_ms": 0', s)
        assert strip(out1) == strip(out2)


class TestTableCommand:
    def test_single_cell(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--f-range", "5..5", "--methods", "ec")
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert lines[0] == "f,ec"
        assert lines[1] == "5,0.5382035621102"

    def test_two_rows_two_methods(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--f-range", "5..6", "--methods", "ec,ldf", "--threads", "1"
        )
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert lines[0] == "f,ec,ldf"
        assert lines[1] == "5,0.5382035621102,0.5321513151313"
        assert lines[2] == "6,0.5198943946817,0.5197824997350"

    def test_empty_methods_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "table", "--f-range", "5..5", "--methods", "")
        assert code == EXIT_USAGE
        assert "at least one" in err

    def test_unknown_table_method(self, capsys):
        code, _, err = run_cli(capsys, "table", "--f-range", "5..5", "--methods", "ec,magic")
        assert code == EXIT_USAGE
        assert "magic" in err

    def test_bad_range(self, capsys):
        code, _, err = run_cli(capsys, "table", "--f-range", "7", "--methods", "ec")
        assert code == EXIT_USAGE

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "table.csv"
        code, out, _ = run_cli(
            capsys, "table", "--f-range", "5..5", "--methods", "ec", "--out", str(path)
        )
        assert code == EXIT_OK
        assert out == ""
        text = path.read_text(encoding="utf-8")
        assert text == "f,ec\n5,0.5382035621102\n"
        assert "\r" not in text


class TestVerifyCommand:
    @pytest.mark.parametrize(
        "suite,f",
        [("entropy", "5"), ("graph", "6"), ("coloring", "8"), ("remarks", "4"), ("paths", "4")],
    )
    def test_suites_pass(self, capsys, suite, f):
        code, out, _ = run_cli(capsys, "verify", "--suite", suite, "--f", f)
        assert code == EXIT_OK
        assert "FAIL" not in out
        assert "PASS" in out

    def test_default_f(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "paths")
        assert code == EXIT_OK
        assert "34 states" in out

    def test_paths_reports_count(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "paths", "--f", "5")
        assert code == EXIT_OK
        assert "657 paths" in out


class TestConsoleScript:
    def test_entry_point_runs(self):
        proc = subprocess.run(
            [sys.executable, "-m", "pqcbound.cli", "order", "--method", "ec", "--f", "5"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == EXIT_OK
        assert json.loads(proc.stdout)["bound"] == "0.5382035621102"
