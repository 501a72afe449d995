"""CLI behaviour tests (run in-process through main())."""

import json

import pytest

from slicedeg.cli import main
from slicedeg.knots import bundled_database_path

KNOTS = str(bundled_database_path("knots"))
FAMILIES = str(bundled_database_path("families"))


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBound:
    def test_7_4(self, capsys):
        code, out, _ = run(capsys, "bound", "7_4", "--db", KNOTS, "--quiet")
        assert code == 0
        assert "lower: 5" in out and "upper: 8" in out and "interval: [5,8]" in out

    def test_json_payload(self, capsys):
        code, out, _ = run(capsys, "bound", "9_10", "--db", KNOTS, "--quiet", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["lower"] == 9 and payload["upper"] == 12
        assert payload["interval"] == "[9,12]"
        levels = {c["level"] for c in payload["certificates"]}
        assert levels == set(range(9))

    def test_unknown_knot_lists_near_matches(self, capsys):
        code, _, err = run(capsys, "bound", "9_420", "--db", KNOTS, "--quiet")
        assert code == 1
        assert "unknown knot" in err and "9_42" in err

    def test_obstruction_subsets_monotone(self, capsys):
        lowers = []
        for subset in ("s", "s,gamma", "s,gamma,vs,friend"):
            code, out, _ = run(
                capsys, "bound", "7_4", "--db", KNOTS, "--quiet",
                "--obstructions", subset, "--json",
            )
            assert code == 0
            lowers.append(json.loads(out)["lower"])
        assert lowers == sorted(lowers)

    def test_bad_obstruction_name(self, capsys):
        code, _, err = run(capsys, "bound", "7_4", "--db", KNOTS, "--quiet", "--obstructions", "zeta")
        assert code == 1 and "unknown obstructions" in err

    def test_negative_max_k_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, "bound", "7_4", "--db", KNOTS, "--quiet", "--max-k", "-3")
        assert exc.value.code == 2

    def test_max_k_cap(self, capsys):
        code, out, _ = run(capsys, "bound", "3_1", "--db", KNOTS, "--quiet", "--max-k", "2", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["lower"] == 3 and payload["lower_exhausted"] is True


class TestVs:
    def test_formula(self, capsys):
        code, out, _ = run(capsys, "vs", "7_1", "--db", KNOTS, "--quiet")
        assert code == 0 and "[2, 1, 1]" in out

    def test_all_oracles_agree(self, capsys):
        code, out, _ = run(capsys, "vs", "8_19", "--db", KNOTS, "--quiet", "--oracle", "all")
        assert code == 0
        assert out.count("[1, 1, 1]") == 3 and "agreement: ok" in out

    def test_max_s(self, capsys):
        code, out, _ = run(capsys, "vs", "9_1", "--db", KNOTS, "--quiet", "--max-s", "5")
        assert code == 0 and "[2, 2, 1, 1, 0, 0]" in out

    def test_staircase_needs_alexander(self, capsys):
        code, _, err = run(capsys, "vs", "7_4", "--db", KNOTS, "--quiet", "--oracle", "staircase")
        assert code == 1 and "Alexander" in err

    def test_unknown_vs_spec_is_data_error(self, capsys):
        code, _, err = run(capsys, "vs", "9_49", "--db", KNOTS, "--quiet")
        assert code == 1 and "unknown" in err


class TestClasses:
    def test_k4(self, capsys):
        code, out, _ = run(capsys, "classes", "4", "--db", KNOTS, "--quiet")
        assert code == 0 and out == "(2)\n(1,1,1,1)\n"

    def test_k0(self, capsys):
        code, out, _ = run(capsys, "classes", "0", "--db", KNOTS, "--quiet")
        assert code == 0 and out == "()\n"

    def test_negative_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, "classes", "-2", "--db", KNOTS, "--quiet")
        assert exc.value.code == 2


class TestCheckClass:
    def test_gamma_witness_shown(self, capsys):
        code, out, _ = run(capsys, "check-class", "7_4", "2", "--db", KNOTS, "--quiet")
        assert code == 0
        assert "gamma: OBSTRUCTED" in out and "3/5" in out
        assert "overall: OBSTRUCTED" in out

    def test_pass_through_class(self, capsys):
        code, out, _ = run(capsys, "check-class", "7_4", "2,1", "--db", KNOTS, "--quiet")
        assert code == 0 and "overall: pass" in out

    def test_normalization_note(self, capsys):
        code, out, err = run(capsys, "check-class", "7_4", "1,-2,0", "--db", KNOTS, "--quiet")
        assert code == 0
        assert "normalized to (2,1)" in err

    def test_malformed_class_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, "check-class", "7_4", "2,x", "--db", KNOTS, "--quiet")
        assert exc.value.code == 2


class TestBetaTable:
    def test_rows(self, capsys):
        code, out, _ = run(capsys, "beta-table", "--max", "16", "--db", KNOTS, "--quiet")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "beta | sd+ >= | class"
        assert len(lines) == 9
        assert lines[1] == "2 | 4 | (2)"
        assert lines[4] == "8 | 13 | (3,2)"


class TestTable:
    def test_md(self, capsys):
        code, out, _ = run(capsys, "table", "--db", KNOTS, "--quiet")
        assert code == 0
        assert "| 7_4 | [5,8] |" in out
        assert "| 9_42 | 1 |" in out
        assert "| 8_13 | 0 |" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "table", "--db", KNOTS, "--quiet", "--format", "json")
        assert code == 0
        rows = {r["name"]: r for r in json.loads(out)}
        assert rows["9_5"]["display"] == "[6,8]"
        assert rows["9_5"]["lower"] == 6 and rows["9_5"]["upper"] == 8

    def test_families(self, capsys):
        code, out, _ = run(capsys, "table", "--db", FAMILIES, "--quiet")
        assert code == 0
        assert "| K_B(2) | 3 |" in out
        assert "| T(4,5) | 16 |" in out


class TestGlobals:
    def test_db_required(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, "classes", "4")
        assert exc.value.code == 2

    def test_missing_db_file(self, capsys):
        code, _, err = run(capsys, "table", "--db", "/nonexistent.json", "--quiet")
        assert code == 1 and "cannot read database" in err

    def test_warnings_printed_without_quiet(self, capsys):
        code, _, err = run(capsys, "classes", "0", "--db", KNOTS)
        assert code == 0 and "ignored unknown field 'sources'" in err

    def test_quiet_suppresses_warnings(self, capsys):
        code, _, err = run(capsys, "classes", "0", "--db", KNOTS, "--quiet")
        assert code == 0 and err == ""
