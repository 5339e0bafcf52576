import json

import pytest

from simplexion.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def lines(out):
    return [json.loads(l) for l in out.splitlines() if l.strip()]


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--d", "2", "--A", "0,1;1,0", "--B", "0,0")
    assert code == 0 and json.loads(out)["verified"] is True
    code, out, _ = run(capsys, "verify", "--n", "3", "--d", "2", "--A", "0,0,1;0,1,0;1,0,0",
                       "--B", "0,0,0")
    assert code == 1 and json.loads(out)["verified"] is False
    code, out, _ = run(capsys, "verify", "--n", "2", "--d", "5", "--A", "1,0;0,1", "--B", "3,4")
    assert code == 0
    doc = json.loads(out)
    assert doc["details"] == {"matrix": True, "tensor": True}


def test_verify_levels_and_singular(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--d", "2", "--A", "1,1;1,1",
                       "--level", "tensor")
    assert code == 1 and "singular" in json.loads(out)["details"]["note"]
    code, out, _ = run(capsys, "verify", "--n", "2", "--d", "3", "--A", "0,1;1,0",
                       "--level", "matrix")
    assert code == 0 and list(json.loads(out)["details"]) == ["matrix"]


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "2", "--d", "2", "--A", "0,1;1"],
    ["verify", "--n", "2", "--d", "2", "--A", "a,b;c,d"],
    ["verify", "--n", "2", "--d", "2", "--A", "0,1;1,0", "--B", "1"],
    ["verify", "--n", "2"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_search_perm(capsys):
    code, out, _ = run(capsys, "search", "--n", "2", "--d", "2", "--mode", "perm")
    recs = lines(out)
    assert code == 0 and len(recs) == 6
    summary = recs[-1]
    assert summary["total"] == 24 and summary["solutions"] == 5 and summary["affine"] == 5


def test_search_budget(capsys):
    code, _, err = run(capsys, "search", "--n", "2", "--d", "7", "--mode", "perm")
    assert code == 3 and "budget" in err
    code, _, _ = run(capsys, "search", "--n", "4", "--d", "5")
    assert code == 3


def test_search_tetrahedron_summary(capsys):
    code, out, _ = run(capsys, "search", "--n", "3", "--d", "2")
    summary = lines(out)[-1]
    assert code == 0 and summary["representatives"] == 2 and summary["findings"] == 0


def test_search_round_trip(capsys):
    _, out, _ = run(capsys, "search", "--n", "2", "--d", "3", "--no-classify")
    recs = lines(out)[:-1]
    assert len(recs) == 31
    for rec in recs:
        A = ";".join(",".join(map(str, r)) for r in rec["A"])
        B = ",".join(map(str, rec["B"]))
        code, _, _ = run(capsys, "verify", "--n", "2", "--d", "3", "--A", A, "--B", B)
        assert code == 0


def test_search_deterministic(capsys):
    _, a, _ = run(capsys, "search", "--n", "3", "--d", "3")
    _, b, _ = run(capsys, "search", "--n", "3", "--d", "3", "--jobs", "2")
    assert a == b


def test_equations(capsys):
    code, out, _ = run(capsys, "equations", "--n", "2", "--compare")
    doc = json.loads(out)
    assert code == 0 and doc["equal"] == {"2": True, "3": True, "5": True}
    code, out, _ = run(capsys, "equations", "--n", "3", "--compare")
    doc = json.loads(out)
    assert code == 0 and doc["equal"] == {"2": True, "3": True} and doc["polynomials"] == 29
    code, out, _ = run(capsys, "equations", "--n", "4")
    assert code == 0 and len(out.splitlines()) > 0
    code, out, _ = run(capsys, "equations", "--n", "4", "--compare")
    assert code == 0 and json.loads(out)["compare"] is None
    code, _, _ = run(capsys, "equations", "--n", "5")
    assert code == 2


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "--family", "2-3", "--d", "11")
    assert code == 0 and lines(out)[0]["passed"]
    code, _, err = run(capsys, "catalog", "--family", "4-D2-1", "--d", "3")
    assert code == 2 and "only defined" in err
    code, _, _ = run(capsys, "catalog", "--family", "no-such", "--d", "3")
    assert code == 2
    code, out, _ = run(capsys, "catalog", "--family", "all", "--d", "5", "--k", "20")
    reports = lines(out)
    assert code == 0 and len(reports) > 50 and all(r["passed"] for r in reports)


def test_catalog_failure_exit(capsys):
    code, out, _ = run(capsys, "catalog", "--family", "2-D3-5", "--d", "3")
    assert code == 1 and not lines(out)[0]["passed"]


def test_orbit(capsys):
    # A is an involution with unit row sums: B in {(1,1),(2,2)}, times A or its reflection
    code, out, _ = run(capsys, "orbit", "--n", "2", "--d", "3", "--A", "2,2;0,1", "--B", "1,1")
    doc = json.loads(out)
    assert code == 0 and doc["size"] == len(doc["members"]) == 4
    assert doc["canonical"]["A"] == [[1, 0], [2, 2]] and doc["canonical"]["B"] == [1, 1]
    assert all(m["verified"] for m in doc["members"])
    code, out, _ = run(capsys, "orbit", "--n", "2", "--d", "2", "--A", "1,0;0,1")
    assert json.loads(out)["size"] == 1
    code, out, _ = run(capsys, "orbit", "--n", "2", "--d", "3", "--A", "2,2;0,2")
    members = [m["A"] for m in json.loads(out)["members"]]
    assert [[2, 0], [2, 2]] in members
    code, out, _ = run(capsys, "orbit", "--n", "3", "--d", "3", "--A", "0,1,2;1,0,1;0,0,1",
                       "--include-transpose")
    assert "transpose" in json.loads(out)["generators"]
