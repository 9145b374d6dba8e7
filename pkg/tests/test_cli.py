import csv
import io
import json
import subprocess
import sys

import pytest

from bunkbed import cli, counting


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_theorem_square(capsys):
    code, out, err = run(["verify-theorem", "--n", "2", "--p", "1/2"], capsys)
    assert code == cli.EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert tuple(rows[0]) == cli.verifier.CSV_FIELDS
    assert "[PASS] n=2 p=1/2 difference=1/8" in err


def test_verify_theorem_grid_json(capsys):
    code, out, _ = run(["verify-theorem", "--n", "3", "--p-grid", "1/2:1:1/4", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] and len(doc["checks"]) == 3
    assert doc["counterexample"] is None


def test_out_selects_format(capsys, tmp_path):
    code, out, _ = run(["counts", "--n", "4", "--triplet", "2,2,1", "--out", "json"], capsys)
    assert code == 0
    assert json.loads(out)["rows"][0]["B"] == 10
    target = tmp_path / "rows.csv"
    code, out, _ = run(["counts", "--n", "4", "--all", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    rows = list(csv.DictReader(target.open()))
    assert len(rows) == sum(1 for _ in counting.valid_triplets(4))


def test_counts_check(capsys):
    code, _, err = run(["counts", "--n", "5", "--all", "--check"], capsys)
    assert code == 0 and "[PASS]" in err
    assert run(["counts", "--n", "9", "--all", "--check"], capsys)[0] == cli.EXIT_CAPACITY


def test_identities(capsys):
    code, out, err = run(["identities", "--k-max", "12"], capsys)
    assert code == 0
    assert len(list(csv.DictReader(io.StringIO(out)))) == 78
    assert "78 cells" in err


def test_identity_failure_exits_one(capsys, monkeypatch):
    monkeypatch.setattr(counting, "check_identity_even", lambda k, z: (k, z) != (3, 2))
    code, _, err = run(["identities", "--k-max", "4", "--format", "json"], capsys)
    assert code == cli.EXIT_COUNTEREXAMPLE
    assert "[FAIL]" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["verify-theorem", "--n", "2", "--p", "0.5"],
        ["verify-theorem", "--n", "2", "--p", "3/2"],
        ["verify-theorem", "--n", "2"],
        ["counts", "--n", "3", "--triplet", "3,3,1"],
        ["counts", "--n", "3"],
        ["aux", "--prop", "segment"],
        ["mc", "--p", "1/2"],
        ["mc", "--n", "4", "--p", "1/2", "--samples", "0"],
        ["threshold", "--n", "3", "--step", "0"],
        ["no-such-command"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == cli.EXIT_USAGE


def test_capacity_and_force(capsys):
    assert run(["verify-theorem", "--n", "30", "--p", "1/2"], capsys)[0] == cli.EXIT_CAPACITY
    assert run(["aux", "--prop", "2.3", "--n", "6"], capsys)[0] == cli.EXIT_CAPACITY


def test_aux_segment(capsys):
    code, out, err = run(["aux", "--prop", "segment", "--n", "3", "--p", "1/2"], capsys)
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert row["closed_form"] == row["engine"] == "1/32"
    assert "note:" in err


def test_aux_mean_inequality(capsys):
    code, out, _ = run(["aux", "--prop", "2.3", "--n", "2", "--trials", "2", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert all(c["passed"] for c in doc["checks"])
    assert doc["rows"][0]["by_engine"] == "9/32"


def test_aux_upper_bound_and_kn(capsys):
    code, out, _ = run(["aux", "--prop", "2.4", "--n", "2"], capsys)
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert row["difference"] == "1/8" and row["kn_bound"] == "7/16"
    code, out, err = run(["aux", "--prop", "kn", "--n", "9"], capsys)
    assert code == 0 and err.count("[PASS]") == 2


def test_mc_reproducible(capsys):
    argv = ["mc", "--n", "5", "--p", "3/5", "--samples", "20000", "--seed", "7"]
    first = run(argv, capsys)
    second = run(argv + ["--workers", "2"], capsys)
    assert first[0] == 0 and first[1] == second[1]


def test_threshold(capsys):
    code, out, err = run(["threshold", "--n", "2", "--step", "1/4"], capsys)
    assert code == 0
    assert len(list(csv.DictReader(io.StringIO(out)))) == 5
    assert "lemma threshold" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bunkbed", "counts", "--n", "2", "--triplet", "1,1,1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("n,x,y,z,B,C1,C2")
