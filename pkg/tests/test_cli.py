import json
import subprocess
import sys

import pytest

from cyclicweights.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cosets(capsys):
    code, out, _ = run(capsys, "cosets", "--q", "2", "--n", "9")
    assert code == 0
    assert "{1,2,4,5,7,8}" in out and "{3,6}" in out
    code, out, _ = run(capsys, "cosets", "--q", "8", "--n", "21", "--format", "json")
    assert len(json.loads(out)["cosets"]) == 14


def test_gcd_error_exit_2(capsys):
    code, _, err = run(capsys, "cosets", "--q", "2", "--n", "4")
    assert code == 2 and "gcd" in err


def test_usage_error_exit_1(capsys):
    assert run(capsys, "weights", "--q", "2", "--n", "9")[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "bound", "--q", "2", "--n", "9", "--cosets", "x")[0] == 1


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "--q", "2", "--n", "15", "--cosets", "1,3")
    assert code == 0
    lines = dict(line.split(None, 1) for line in out.splitlines()[1:-1])
    assert lines["cor34"].strip() == "8" and lines["cz_published"].strip() == "19"
    _, out, _ = run(capsys, "bound", "--q", "2", "--n", "7", "--cosets", "1,3", "--format", "json")
    data = json.loads(out)
    assert data["methods"]["thm34"]["value"] == 4 and data["methods"]["cor34"]["value"] == 5
    _, out, _ = run(capsys, "bound", "--q", "4", "--n", "15", "--cosets", "1,2", "--format", "csv")
    assert "thm36_l0,true,3," in out


def test_weights(capsys):
    code, out, _ = run(capsys, "weights", "--q", "2", "--n", "9", "--cosets", "1", "--format", "csv")
    assert code == 0 and out.splitlines() == ["weight,count", "0,1", "2,9", "4,27", "6,27"]
    _, out, _ = run(capsys, "weights", "--q", "2", "--n", "9", "--cosets", "1", "--format", "json")
    assert json.loads(out) == {"weights": {"0": 1, "2": 9, "4": 27, "6": 27}}


def test_weights_cap_exit_2(capsys):
    code, _, err = run(capsys, "weights", "--q", "2", "--n", "9", "--cosets", "1", "--cap", "10")
    assert code == 2 and "10" in err


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", "--q", "2", "--n", "9", "--cosets", "1")
    assert code == 0
    assert "l=3" in out and "thm31=3" in out and "TIGHT" in out and "NOT TIGHT" not in out
    _, out, _ = run(capsys, "compare", "--q", "4", "--n", "15", "--cosets", "1,2", "--format", "json")
    data = json.loads(out)
    assert data["ok"] and data["tight"] is False and data["best"]["value"] == 3


def test_orbits(capsys):
    code, out, _ = run(capsys, "orbits", "--q", "2", "--n", "7", "--cosets", "0", "--group", "rho,sigma")
    assert code == 0 and out.startswith("q=2 n=7 cosets={0}: 1 orbits")
    _, out, _ = run(capsys, "orbits", "--q", "2", "--n", "21", "--cosets", "3,9", "--format", "json", "--burnside")
    data = json.loads(out)
    assert data["orbit_count"] == data["burnside"] == 4 and data["group_order"] == 252


def test_orbits_bad_group_exit_2(capsys):
    code, _, err = run(capsys, "orbits", "--q", "2", "--n", "7", "--cosets", "1", "--group", "mu_-1")
    assert code == 2 and "preserve" in err


def test_code_info(capsys):
    code, out, _ = run(capsys, "code-info", "--q", "2", "--n", "7", "--cosets", "0", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["dimension"] == 1 and data["generator_poly"] == [1] * 7


def test_search_stream(capsys, tmp_path):
    path = tmp_path / "out.jsonl"
    code, _, _ = run(capsys, "search", "--q", "8", "--n", "21", "--tau", "2", "--verify", "--format", "json", "--out", str(path))
    assert code == 0
    recs = [json.loads(line) for line in path.read_text().splitlines()]
    assert [7] in [r["cosets"] for r in recs]
    assert all(r["l"] <= r["best_bound"] <= 2 for r in recs)
    code, out, _ = run(capsys, "search", "--q", "2", "--n", "3-15", "--odd-only", "--format", "csv")
    assert out.splitlines()[0] == "q,n,cosets,dim,best_bound,method,l,tight"


def test_output_independent_of_threads(capsys):
    args = ["search", "--q", "2,3", "--n", "1-20", "--max-cosets", "2", "--verify", "--format", "json"]
    outs = [run(capsys, *args, "--threads", t)[1] for t in ("1", "4")]
    assert outs[0] == outs[1]
    outs = [run(capsys, "weights", "--q", "3", "--n", "26", "--cosets", "1,2", "--format", "json", "--threads", t)[1] for t in ("1", "3")]
    assert outs[0] == outs[1]


@pytest.mark.parametrize("argv", [["cosets", "--q", "2", "--n", "9"]])
def test_module_entry_point(argv):
    res = subprocess.run([sys.executable, "-m", "cyclicweights", *argv], capture_output=True, text=True)
    assert res.returncode == 0 and "{3,6}" in res.stdout
