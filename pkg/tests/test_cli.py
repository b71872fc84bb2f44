import csv
import io
import json
from fractions import Fraction

import pytest

from enriques_gw import cli
from enriques_gw.gw_engine import n_invariant
from enriques_gw.lattice import parse_vector

FIBER = "1,0,0,0,0,0,0,0,0,0"
SECTION_SUM = "1,1,0,0,0,0,0,0,0,0"


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_invariant_json(capsys):
    code, out, _ = run(capsys, "invariant", "--genus", "1", "--beta", SECTION_SUM)
    assert code == 0
    record = json.loads(out)
    assert record == {
        "genus": 1,
        "beta": [1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        "d": 0,
        "value": "128",
        "rule": "recursion",
    }


def test_invariant_csv(capsys):
    code, out, _ = run(capsys, "invariant", "--genus", "2", "--beta", SECTION_SUM,
                       "--degree", "1", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == cli.CSV_HEADER
    assert rows[1] == ["2", "1", "1"] + ["0"] * 8 + ["1", "384", "degree series"]


def test_invariant_fractional_value_round_trips(capsys):
    beta = "3,0,0,0,0,0,0,0,0,0"
    code, out, _ = run(capsys, "invariant", "--genus", "1", "--beta", beta)
    assert code == 0
    record = json.loads(out)
    assert Fraction(record["value"]) == n_invariant(1, (parse_vector(beta), 0))
    assert record["value"] == "32/3"


def test_invariant_compute_error_exit(capsys):
    code, _, err = run(capsys, "invariant", "--genus", "1", "--beta",
                       "0,0,0,0,0,0,0,0,0,0")
    assert code == 2
    assert "unstable" in err
    code, _, err = run(capsys, "invariant", "--genus", "1", "--beta", "1,2,3")
    assert code == 2


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["invariant", "--genus", "1"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 1


def test_table_small_box_values_and_order(capsys):
    code, out, _ = run(capsys, "table", "--genus", "1", "--max-b1", "2",
                       "--max-b2", "1", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == cli.CSV_HEADER
    body = rows[1:]
    coords = [tuple(int(x) for x in row[1:11]) for row in body]
    assert coords == sorted(coords)
    values = {tuple(int(x) for x in row[1:3]): (row[12], row[13]) for row in body}
    assert values[(1, 0)] == ("8", "isotropic base")
    assert values[(2, 0)] == ("8", "isotropic base")
    assert values[(0, 1)] == ("8", "isotropic base")
    assert values[(1, 1)] == ("128", "recursion")
    assert values[(2, 1)] == ("1152", "recursion")


def test_table_matches_single_invariant_records(capsys):
    code, out, _ = run(capsys, "table", "--genus", "2", "--max-b1", "2",
                       "--max-b2", "2", "--max-e8-norm", "2", "--max-degree", "2")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows
    for row in rows[::7]:
        beta = parse_vector(",".join(str(x) for x in row["beta"]))
        want = n_invariant(row["genus"], (beta, row["d"]))
        assert Fraction(row["value"]) == want


def test_table_genus0_all_vanishing(capsys):
    code, out, _ = run(capsys, "table", "--genus", "0", "--max-b1", "1",
                       "--max-b2", "1", "--max-degree", "1")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows and all(r["value"] == "0" and r["rule"] == "vanishing" for r in rows)


def test_table_output_is_deterministic(capsys):
    argv = ["table", "--genus", "2", "--max-b1", "2", "--max-b2", "2",
            "--max-e8-norm", "2", "--max-degree", "1", "--format", "csv"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_table_json_and_csv_agree(capsys):
    base = ["table", "--genus", "1", "--max-b1", "1", "--max-b2", "1",
            "--max-e8-norm", "2"]
    _, jout, _ = run(capsys, *base)
    _, cout, _ = run(capsys, *base, "--format", "csv")
    jrows = [json.loads(line) for line in jout.splitlines()]
    crows = list(csv.reader(io.StringIO(cout)))[1:]
    assert len(jrows) == len(crows)
    for jrow, crow in zip(jrows, crows):
        assert [str(jrow["genus"])] + [str(x) for x in jrow["beta"]] + \
            [str(jrow["d"]), jrow["value"], jrow["rule"]] == crow


def test_table_refusals(capsys):
    code, _, err = run(capsys, "table", "--genus", "1", "--max-b1", "7")
    assert code == 2 and "cap" in err
    code, _, err = run(capsys, "table", "--genus", "1", "--max-b1", "-1")
    assert code == 2
    code, _, err = run(capsys, "table", "--genus", "1", "--max-b1", "2",
                       "--max-b2", "2", "--max-e8-norm", "4", "--limit", "10")
    assert code == 2 and "limit" in err


def test_series_text(capsys):
    code, out, _ = run(capsys, "series", "--what", "E2", "--order", "3")
    assert code == 0
    assert out.splitlines() == ["0\t1", "1\t-24", "2\t-72", "3\t-96"]
    code, out, _ = run(capsys, "series", "--what", "P1", "--order", "2")
    assert code == 0
    assert out.splitlines() == ["0\t1/12", "1\t-2", "2\t-6"]


def test_series_laurent_offset(capsys):
    code, out, _ = run(capsys, "series", "--what", "c2", "--order", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("-1\t")
    assert lines[1] == "0\t0"


def test_series_json(capsys):
    code, out, _ = run(capsys, "series", "--what", "E4", "--order", "2",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["what"] == "E4"
    assert payload["coefficients"][:2] == [[0, "1"], [1, "240"]]


def test_km_check_comparison(capsys):
    code, out, _ = run(capsys, "km-check", "--genus", "2", "--beta", SECTION_SUM)
    assert code == 0
    report = json.loads(out)
    assert report["engine_value"] == report["prediction_full"] == "-16"
    assert report["verdicts"] == {"full": "match", "half": "mismatch"}


def test_km_check_f56(capsys):
    code, out, _ = run(capsys, "km-check", "--beta", SECTION_SUM, "--f56")
    assert code == 0
    assert json.loads(out)["holds"] is True
    code, out, _ = run(capsys, "km-check", "--beta", SECTION_SUM, "--f56",
                       "--convention", "half")
    assert code == 0
    assert json.loads(out)["holds"] is False
    code, _, err = run(capsys, "km-check", "--beta", FIBER, "--f56")
    assert code == 2 and "square" in err


def test_local_command(capsys):
    code, out, _ = run(capsys, "local", "--local-degree", "1", "--alphas", "1")
    assert code == 0
    assert json.loads(out)["value"] == "-1/12"
    code, out, _ = run(capsys, "local", "--local-degree", "2", "--alphas", "1",
                       "--gc", "1")
    assert code == 0
    assert json.loads(out)["value"] == "-2/3"
    code, out, _ = run(capsys, "local", "--s2n", "5")
    assert code == 0
    assert json.loads(out) == {"n": 5, "K2": 8, "chi": 7, "g_K": 9, "sign": -1}
    code, _, err = run(capsys, "local", "--s2n", "3")
    assert code == 2 and "general type" in err


def test_local_dimension_flag(capsys):
    code, out, _ = run(capsys, "local", "--dimension", "--alphas", "",
                       "--genus", "1", "--ddeg", "1", "--gc", "1")
    assert code == 0
    assert json.loads(out) == {"satisfied": True}
    code, out, _ = run(capsys, "local", "--dimension", "--alphas", "1",
                       "--genus", "1", "--ddeg", "1", "--gc", "1")
    assert code == 0
    assert json.loads(out) == {"satisfied": False}


def test_selfcheck_fast_subset(capsys):
    code, out, _ = run(capsys, "selfcheck", "--only", "1,3,4,7,8")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 6
    assert all("PASS" in line for line in lines[:-1])
    assert lines[0].startswith("criterion 1 ")
    assert lines[-1] == "5/5 criteria passed"
