import json
import subprocess
import sys

import pytest

from fkalg.cli import EXIT_CAP, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hilbert_text(capsys):
    code, out, _ = run(capsys, "hilbert", "--graph", "A:3")
    assert code == EXIT_OK
    assert "dims=1,2,2,1,0" in out and "engines agree" in out
    assert "factors=[2][3]" in out


def test_hilbert_expect_pass_and_fail(capsys):
    code, out, _ = run(capsys, "hilbert", "--graph", "star:4", "--expect", "[3][4]^2")
    assert code == EXIT_OK and "2/2 checks passed" in out
    code, out, _ = run(capsys, "hilbert", "--graph", "star:4", "--expect", "[4]^2[5][6]")
    assert code == EXIT_FAIL and "FAIL" in out


def test_hilbert_json(capsys):
    code, out, _ = run(capsys, "hilbert", "--graph", "cycle:4", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["schema"] == 1 and doc["passed"]
    rewrite = doc["rows"][0]
    assert rewrite["engine"] == "rewrite" and rewrite["dimension"] == 144


def test_hilbert_truncated_prefix(capsys):
    code, out, _ = run(capsys, "hilbert", "--graph", "complete:4", "--max-deg", "3",
                       "--expect", "[2]^2[3]^2[4]^2")
    assert code == EXIT_OK and "through degree 3" in out


def test_tsv(capsys):
    code, out, _ = run(capsys, "relcheck", "braid", "--format", "tsv")
    lines = out.strip().split("\n")
    assert code == EXIT_OK and lines[0].split("\t")[0] == "ok"
    assert lines[1].startswith("True\taba-bab")


def test_relcheck_threads(capsys):
    code, out, _ = run(capsys, "relcheck", "claw", "--threads", "2")
    assert code == EXIT_OK and "2/2 checks passed" in out


def test_env_override(capsys, monkeypatch):
    monkeypatch.setenv("FKALG_GRAPH", "A:2")
    monkeypatch.setenv("FKALG_FORMAT", "json")
    code, out, _ = run(capsys, "hilbert")
    assert code == EXIT_OK and json.loads(out)["rows"][0]["dims"] == [1, 1, 0]
    code, out, _ = run(capsys, "hilbert", "--graph", "A:3", "--format", "text")
    assert code == EXIT_OK and out.startswith("graph:")


def test_budget_exhaustion(capsys):
    code, _, err = run(capsys, "hilbert", "--graph", "complete:5", "--budget", "0", "--rewrite-only")
    assert code == EXIT_CAP and "budget" in err


def test_row_cap(capsys):
    code, _, err = run(capsys, "hilbert", "--graph", "complete:4", "--caps", "rows=5",
                       "--rewrite-only")
    assert code == EXIT_CAP


@pytest.mark.parametrize("argv", [
    ["hilbert"],
    ["hilbert", "--graph", "nonsense:3"],
    ["hilbert", "--graph", "A:3", "--caps", "cpu=3"],
    ["hilbert", "--graph", "A:3", "--max-deg", "-1"],
    ["hilbert", "--graph", "A:3", "--expect", "[2"],
    ["relcheck", "nope"],
    ["relcheck", "sextic", "--n", "4"],
    ["pair", "x12", "x12"],
    ["weyl", "--type", "B3"],
    ["affine", "ek", "--n", "4"],
    ["mcr", "--graph", "A:2"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_appendix(capsys):
    code, out, _ = run(capsys, "appendix", "--vertices", "3")
    assert code == EXIT_OK and "FAIL" not in out


def test_mcr_commands(capsys):
    code, out, _ = run(capsys, "mcr", "--graph", "1-2", "--other", "1-3", "--edge", "2-3")
    assert code == EXIT_OK and "profile: 1,1,1" in out
    code, out, _ = run(capsys, "mcr", "--graph", "D:4", "--sup", "D:5", "--format", "json")
    doc = json.loads(out)
    assert [len(m) for m in doc["M"]] == [1, 1, 1, 2, 2, 1, 1, 1] and doc["exact"]


def test_pair_and_nf(capsys):
    code, out, _ = run(capsys, "pair", "x12.x23", "x23.x12", "--n", "3")
    assert code == EXIT_OK and out.startswith("value: ")
    code, out, _ = run(capsys, "nf", "x12.x12", "--n", "3")
    assert code == EXIT_OK and "normal_form: 0" in out


def test_weyl(capsys):
    code, out, _ = run(capsys, "weyl", "--type", "D4", "--expect", "[3][4]^2")
    assert code == EXIT_OK and "order: 192" in out
    assert run(capsys, "weyl", "--type", "A3", "--expect", "[2]")[0] == EXIT_FAIL


def test_affine(capsys):
    code, out, _ = run(capsys, "affine", "primitives", "--n", "3", "--series", "--pairing")
    assert code == EXIT_OK and "count: 6" in out
    code, out, _ = run(capsys, "affine", "reduced", "--window", "[0,2,4]")
    assert code == EXIT_OK and "length:" in out
    code, out, _ = run(capsys, "affine", "ek", "--n", "5", "--k", "1")
    assert out.count("----") == 5


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "fkalg", "weyl", "--type", "E6"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "order: 51840" in res.stdout
