import json
import math

import pytest

from modwind.cli import main
from modwind.geodesics import EnumerationConfig, enumerate_geodesics


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    lines = text.strip().split("\n")
    assert lines[0] == "word,trace,length,psi"
    rows = []
    for line in lines[1:]:
        word, trace, length, psi = line.split(",")
        rows.append(
            (
                tuple(int(a) for a in word.split("-")),
                int(trace),
                float(length),
                int(psi),
            )
        )
    return rows


class TestEnumerate:
    def test_small_cap_csv(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--max-length", "3.2")
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == 5
        assert rows[-1][:2] == ((3, 1), 5)
        assert rows[-1][2] == pytest.approx(2 * math.acosh(2.5), abs=1e-9)
        assert rows[-1][3] == 2

    def test_header_only_below_first_class(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--max-length", "1")
        assert code == 0
        assert out == "word,trace,length,psi\n"

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--max-length", "6.3", "--format", "json")
        assert code == 0
        rows = json.loads(out)
        assert {"word": [3, 7], "trace": 23, "length": 6.26719694789, "psi": -4} in rows

    def test_out_file(self, tmp_path, capsys):
        path = tmp_path / "rows.csv"
        code, out, _ = run(capsys, "enumerate", "--max-length", "3.2", "--out", str(path))
        assert code == 0
        assert out == ""
        assert parse_csv(path.read_text())[0][0] == (1, 1)

    def test_csv_roundtrip(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--max-length", "12")
        assert code == 0
        rows = parse_csv(out)
        records = enumerate_geodesics(EnumerationConfig(max_length=12.0))
        assert len(rows) > 10**4
        assert [
            (r.word.entries, r.trace, float("%.12g" % r.length), r.psi) for r in records
        ] == rows

    def test_thread_independence(self, capsys):
        _, single, _ = run(capsys, "enumerate", "--max-length", "9", "--threads", "1")
        _, multi, _ = run(capsys, "enumerate", "--max-length", "9", "--threads", "4")
        assert single == multi

    def test_bad_length(self, capsys):
        code, _, err = run(capsys, "enumerate", "--max-length", "25")
        assert code == 1
        assert err

    def test_unknown_flag_fatal(self, capsys):
        code, _, _ = run(capsys, "enumerate", "--max-length", "3", "--bogus")
        assert code == 1


class TestPsi:
    def test_all_methods_agree(self, capsys):
        code, out, _ = run(capsys, "psi", "--matrix", "22,3,7,1", "--method", "all")
        assert code == 0
        values = dict(line.split(": ") for line in out.strip().split("\n"))
        assert set(values) == {"cf", "dedekind", "cocycle", "index", "period"}
        assert {v.rstrip("0").rstrip(".") if "." in v else v for v in values.values()} == {"-4"}

    def test_identity(self, capsys):
        code, out, _ = run(capsys, "psi", "--matrix", "1,0,0,1")
        assert code == 0
        assert out.strip() == "dedekind: 0"

    def test_word_input(self, capsys):
        code, out, _ = run(capsys, "psi", "--word", "3-7", "--method", "cf")
        assert code == 0
        assert out.strip() == "cf: -4"

    def test_negative_trace_matrix(self, capsys):
        code, out, _ = run(capsys, "psi", "--matrix", "-22,-3,-7,-1", "--method", "all")
        assert code == 0

    def test_determinant_error(self, capsys):
        code, _, err = run(capsys, "psi", "--matrix", "1,1,1,1")
        assert code == 1
        assert "determinant" in err

    def test_requires_one_input(self, capsys):
        assert run(capsys, "psi")[0] == 1
        assert run(capsys, "psi", "--matrix", "1,0,0,1", "--word", "1-1")[0] == 1


class TestIndex:
    def test_word(self, capsys):
        code, out, _ = run(capsys, "index", "--word", "3-7")
        assert code == 0
        payload = json.loads(out)
        assert payload["index"] == -4
        assert payload["residual"] < 1e-3

    def test_matrix(self, capsys):
        code, out, _ = run(capsys, "index", "--matrix", "22,3,7,1")
        assert code == 0
        assert json.loads(out)["index"] == -4


class TestStatsCommands:
    def test_density_shape(self, capsys):
        code, out, _ = run(
            capsys, "stats-density", "--max-length", "10", "--n-range", "-5..5"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "n,empirical,predicted"
        assert len(lines) == 12

    def test_cauchy_json(self, capsys):
        code, out, _ = run(capsys, "stats-cauchy", "--max-length", "10")
        assert code == 0
        payload = json.loads(out)
        assert 0.0 <= payload["ks_statistic"] <= 1.0

    def test_cauchy_insufficient(self, capsys):
        code, _, err = run(capsys, "stats-cauchy", "--max-length", "8")
        assert code == 3
        assert err

    def test_equidist(self, capsys):
        code, out, _ = run(
            capsys, "stats-equidist", "--max-length", "10", "--modulus", "3"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "residue,empirical,predicted"
        assert len(lines) == 4

    def test_twisted_grid(self, capsys):
        code, out, _ = run(
            capsys,
            "stats-twisted",
            "--max-length",
            "10",
            "--r-grid",
            "-0.45:0.45:0.05",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "r,abs_sum,main_term,relative_error"
        assert len(lines) == 20

    def test_twisted_single_above_half_has_no_main_term(self, capsys):
        code, out, _ = run(capsys, "stats-twisted", "--max-length", "10", "--r", "0.6")
        assert code == 0
        assert out.strip().split("\n")[1].endswith(",,")


class TestVerifyCommand:
    def test_cap_guard(self, capsys):
        code, _, err = run(capsys, "verify", "--max-length", "25")
        assert code == 1
        assert err
