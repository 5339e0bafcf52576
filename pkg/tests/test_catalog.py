import itertools
import json

import pytest

from simplexion import expr
from simplexion.catalog import (Catalog, CatalogFamily, assignments, band_matrix, default_catalog,
                                domain_size, instantiate, load_catalog, match_family,
                                validate_family)
from simplexion.errors import BudgetExceeded, DomainViolation, NotAUnit
from simplexion.linalg import VecZd
from simplexion.solution import AffineSolution, verify_affine
from simplexion.symmetry import gauge_transform
from simplexion.zmod import unit_values

CAT = default_catalog()


def with_printed(fid, D, params):
    """Instance built from the printed (uncorrected) templates."""
    f = CAT.get(fid)
    A = f.printed.get("A", f.A)
    B = f.printed.get("B", f.B)
    return AffineSolution.from_lists([[expr.eval_mod(e, params, D) for e in r] for r in A],
                                     [expr.eval_mod(e, params, D) for e in B], D)


def test_schema():
    assert len(CAT) >= 80
    for f in CAT:
        assert len(f.A) == f.n and all(len(r) == f.n for r in f.A) and len(f.B) == f.n
        used = set().union(*(expr.names(e) for r in f.A for e in r), *(expr.names(e) for e in f.B))
        assert used <= set(f.params), f.id
        assert set(f.params.values()) <= {"free", "unit", "unit_ne1"}


def test_instantiate_examples():
    for D in (2, 3, 11):
        s = instantiate("2-3", {}, D)
        assert s.A.tolist() == [[0, 1], [1, 0]] and s.B.tolist() == [0, 0]
    s = instantiate("3-1b", {"d": 2}, 5)
    assert s.A.tolist() == [[0, 1, 3], [1, 0, 1], [0, 0, 2]] and s.B.tolist() == [0, 0, 0]
    s = instantiate("4-19", {"a": 1, "b": 2, "d": 1}, 5)
    assert s.A[2, 2] == 3


def test_instantiate_domain_errors():
    with pytest.raises(DomainViolation):
        instantiate("4-D2-1", {}, 3)
    with pytest.raises(DomainViolation):
        instantiate("2-1b", {"a": 0, "d": 1}, 5)
    with pytest.raises(DomainViolation):
        instantiate("2-1b", {"a": 1}, 5)
    with pytest.raises(KeyError):
        CAT.get("9-9")


def test_validate_examples():
    r = validate_family("2-1a", 5)
    assert r.passed and r.instances_tested == 25
    r = validate_family("3-3", 7)
    assert r.passed and r.excluded == 1 and r.instances_tested == 6 ** 3 - 1
    assert validate_family("4-D2-2", 2).passed
    with pytest.raises(DomainViolation):
        validate_family("4-D2-1", 3)


def test_validate_sample_mode_is_seeded():
    a = validate_family("4-15c", 5, mode="sample", k=30, seed=3, tensor=0)
    b = validate_family("4-15c", 5, mode="sample", k=30, seed=3, tensor=0)
    assert a.to_dict() == b.to_dict() and a.passed and a.instances_tested == 30


def test_exhaustive_budget():
    big = CatalogFamily("big", 2, (("a", "b"), ("c", "d")), ("x", "y"),
                        {k: "free" for k in "abcdxy"})
    cat = Catalog([big], {})
    with pytest.raises(BudgetExceeded):
        validate_family("big", 11, catalog=cat)


def test_failing_family_reports_failures():
    bad = CatalogFamily("bad", 3, (("0", "0", "1"), ("0", "1", "0"), ("1", "0", "0")),
                        ("0", "0", "0"), {})
    r = validate_family("bad", 2, catalog=Catalog([bad], {}))
    assert not r.passed
    assert {m for _, m in r.failures} == {"matrix-level equation fails", "tensor-level equation fails"}


@pytest.mark.parametrize("D", [3, 5, 7])
def test_printed_3_2b_fails(D):
    fails = [p for p in assignments(CAT.get("3-2b"), D)
             if not verify_affine(with_printed("3-2b", D, p))]
    assert fails and all(p["a"] != 1 for p in fails)


@pytest.mark.parametrize("D", [5, 7])
def test_printed_4_7b_fails(D):
    assert any(not verify_affine(with_printed("4-7b", D, p)) for p in assignments(CAT.get("4-7b"), D))


@pytest.mark.parametrize("D", [3, 5])
def test_printed_4_8b_fails(D):
    assert any(not verify_affine(with_printed("4-8b", D, p)) for p in assignments(CAT.get("4-8b"), D))


def test_printed_4_2_pre_gauge_fails():
    f = CAT.get("4-2")
    D, hits = 5, 0
    for p in assignments(f, D):
        for z in range(1, D):
            env = dict(p, z=z)
            base = instantiate(f, p, D)
            B = [expr.eval_mod(e, env, D) for e in f.pre_gauge["printed_B"]]
            hits += not verify_affine(AffineSolution(base.A, VecZd(tuple(B), D)))
    assert hits


def test_d3_special_five_is_not_a_solution():
    s = instantiate("2-D3-5", {}, 3)
    assert CAT.get("2-D3-5").erratum
    assert not verify_affine(s)


@pytest.mark.parametrize("D", [3, 5, 7])
def test_gauge_claim_2_1b(D):
    units = unit_values(D)
    for a, d, u in itertools.product(units, units, units):
        for z in range(D):
            pre = AffineSolution.from_lists([[a, 0], [0, d]], [(a - 1) * z, (d - 1) * z], D)
            assert verify_affine(pre)
            assert gauge_transform(pre, u, u * z).B == VecZd.zeros(2, D)


@pytest.mark.parametrize("D", [3, 5, 7])
def test_gauge_claim_2_2a_only_scaling(D):
    for a in unit_values(D):
        for z in range(D):
            s = instantiate("2-2a", {"a": a, "z": z}, D)
            images = {gauge_transform(s, u, v).B for u in unit_values(D) for v in range(D)}
            assert images == {s.B.scale(u) for u in unit_values(D)}


def test_d4_free_g_family():
    r = validate_family("2-D4B-2", 4)
    assert r.passed and r.instances_tested == 64


def test_match_family_examples():
    s = AffineSolution.from_lists([[1, 0], [0, 1]], [1, 0], 2)
    assert match_family(s) == [("2-1a", {"x": 1, "y": 0})]
    assert match_family(AffineSolution.from_lists([[0, 1], [1, 0]], [0, 0], 3)) == [("2-3", {})]
    hit = AffineSolution.from_lists([[0, 1, 1], [1, 0, 1], [0, 0, 1]], [0, 1, 0], 2)
    assert [f for f, _ in match_family(hit)] == ["3-1a"]
    assert match_family(AffineSolution.from_lists([[1, 1], [1, 0]], [0, 0], 3)) == []


def test_groups_and_aliases():
    assert [f.id for f in CAT.group("4-21")] == ["4-D2-1", "4-D2-2", "4-D2-3", "4-D2-4"]
    assert sorted(f.id for f in CAT.group("4-19")) == ["4-19a", "4-19b"]
    assert CAT.resolve("4-19") == "4-19b"
    assert [f.id for f in CAT.group("4-1")] == ["4-1"]


def test_domain_size():
    assert domain_size(CAT.get("2-1a"), 5) == 25
    assert domain_size(CAT.get("3-3"), 7) == 216


def test_band_pattern():
    a = [2, 3, 4, 2, 3]
    M = band_matrix(a, 5)
    assert M.rows[0] == (2, (1 - 6) % 5, 0, 0, 0)
    assert M.rows[1] == (0, 3, 0, 0, 0)
    assert M.rows[2] == (0, (1 - 12) % 5, 4, (1 - 8) % 5, 0)
    assert M.rows[4] == (0, 0, 0, (1 - 6) % 5, 3)
    three = band_matrix([2, 3, 4], 7)
    assert verify_affine(AffineSolution(three, VecZd.zeros(3, 7)))


def test_catalog_env_override(tmp_path, monkeypatch):
    data = {"families": [{"id": "only", "n": 2, "A": [["0", "1"], ["1", "0"]], "B": ["0", "0"],
                          "params": {}}], "aliases": {}}
    path = tmp_path / "cat.json"
    path.write_text(json.dumps(data))
    monkeypatch.setenv("SIMPLEXION_CATALOG", str(path))
    cat = load_catalog()
    assert [f.id for f in cat] == ["only"]
    assert validate_family("only", 3, catalog=cat).passed


def test_rational_entries_need_units():
    f = CAT.get("4-19b")
    with pytest.raises(DomainViolation):
        instantiate(f, {"a": 1, "b": 0, "d": 1}, 5)
    with pytest.raises(NotAUnit):
        expr.eval_mod("1/b", {"b": 2}, 4)
