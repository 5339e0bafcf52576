import itertools

import pytest
from hypothesis import given, strategies as st

from simplexion.catalog import instantiate
from simplexion.errors import NotAUnit, Singular
from simplexion.linalg import VecZd
from simplexion.search import search_affine
from simplexion.solution import AffineSolution, verify_affine
from simplexion.symmetry import (INVERSE, REFLECT, SymmetryOp, a_class_key, apply_op,
                                 canonical_form, gauge_compose, gauge_transform, generators,
                                 inverse_transform, orbit, reflect_transform, transpose_transform)
from simplexion.zmod import unit_values

S = AffineSolution.from_lists


@pytest.fixture(scope="module", params=[(2, 2), (2, 3), (3, 2), (3, 3)])
def found(request):
    n, D = request.param
    return search_affine(n, D).solutions


def test_inverse_examples():
    assert inverse_transform(S([[1, 0], [0, 1]], [1, 2], 5)) == S([[1, 0], [0, 1]], [4, 3], 5)
    P = S([[0, 1], [1, 0]], [0, 0], 3)
    assert inverse_transform(P) == P
    assert inverse_transform(S([[2, 0], [0, 3]], [0, 0], 5)) == S([[3, 0], [0, 2]], [0, 0], 5)
    with pytest.raises(Singular):
        inverse_transform(S([[2, 0], [0, 1]], [0, 0], 4))


def test_reflect_examples():
    a, d, D = 2, 3, 5
    s = S([[a, 1 - a * d], [0, d]], [0, 0], D)
    assert reflect_transform(s) == S([[d, 0], [1 - a * d, a]], [0, 0], D)
    ident = S([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, 0, 0], 3)
    assert reflect_transform(ident) == ident
    m = S([[0, 0, 1], [0, 0, 0], [0, 0, 0]], [1, 2, 0], 3)
    r = reflect_transform(m)
    assert r.A[2, 0] == 1 and r.B.tolist() == [0, 2, 1]


def test_transpose_examples():
    d, D = 2, 5
    s = S([[0, 1, -d], [1, 0, 1], [0, 0, d]], [0, 0, 0], D)
    assert transpose_transform(s).A.tolist() == [[0, 1, 0], [1, 0, 0], [-d % D, 1, d]]
    sym = S([[0, 1], [1, 0]], [0, 0], 3)
    assert transpose_transform(sym) == sym
    a2 = instantiate("3-2c", {"a": 2, "b": 2, "c": 2}, 5)
    assert verify_affine(a2) and verify_affine(transpose_transform(a2))


def test_gauge_examples():
    D = 7
    for a, d, z, u in [(2, 3, 4, 1), (5, 6, 1, 3), (3, 3, 6, 6)]:
        s = S([[a, 0], [0, d]], [(a - 1) * z, (d - 1) * z], D)
        assert gauge_transform(s, u, u * z).B == VecZd.zeros(2, D)
    P = S([[0, 1], [1, 0]], [2, 5], D)
    for u, v in itertools.product(unit_values(D), range(D)):
        assert gauge_transform(P, u, v).B == P.B.scale(u)
    s = S([[1, 2], [3, 4]], [5, 6], D)
    assert gauge_transform(s, 1, 0) == s
    with pytest.raises(NotAUnit):
        gauge_transform(S([[1, 0], [0, 1]], [0, 0], 4), 2, 0)


def test_soundness_over_search(found):
    for s in found:
        assert verify_affine(s)
        for g in generators(s.D):
            assert verify_affine(apply_op(s, g))


def test_involutions(found):
    for s in found:
        assert inverse_transform(inverse_transform(s)) == s
        assert reflect_transform(reflect_transform(s)) == s


def test_transpose_homogeneous_only(found):
    for s in found:
        if s.is_homogeneous:
            assert verify_affine(transpose_transform(s))


def test_transpose_can_break_inhomogeneous():
    # transposing A while keeping B does not preserve inhomogeneous solutions in general
    broken = [s for s in search_affine(3, 3).solutions
              if not s.is_homogeneous and not verify_affine(transpose_transform(s))]
    assert broken


@pytest.mark.parametrize("D", [2, 3, 4, 5])
def test_gauge_composition(D):
    s = S([[1, 2], [0, 3]] if D > 3 else [[1, 1], [0, 1]], [1, 1], D)
    units = unit_values(D)
    for u1, u2 in itertools.product(units, repeat=2):
        for v1, v2 in itertools.product(range(D), repeat=2):
            u, v = gauge_compose(u2, v2, u1, v1, D)
            lhs = gauge_transform(gauge_transform(s, u1, v1), u2, v2)
            assert lhs == gauge_transform(s, u, v)


def test_orbit_examples():
    ident = S([[1, 0], [0, 1]], [0, 0], 2)
    assert orbit(ident).members == {ident}
    a, d, D = 2, 2, 3
    s = S([[a, 1 - a * d], [0, d]], [0, 0], D)
    assert reflect_transform(s) in orbit(s)
    P = S([[0, 1], [1, 0]], [0, 0], 3)
    assert len(orbit(P)) == 1
    assert len(orbit(S([[0, 1], [1, 0]], [1, 0], 3))) == 4


def test_orbit_chains_reach_members():
    s = instantiate("2-2", {"a": 2, "d": 2, "z": 1}, 5)
    orb = orbit(s)
    for m, chain in orb.chains.items():
        cur = AffineSolution(s.A, s.B)
        for op in chain:
            cur = apply_op(cur, op)
        assert cur == m
        assert verify_affine(m)


def test_canonical_form():
    s = S([[2, 0], [2, 2]], [0, 0], 3)
    c = canonical_form(s)
    assert c in orbit(s)
    assert c == min(orbit(s).members, key=AffineSolution.key)
    for m in orbit(s).members:
        assert canonical_form(m) == c


def test_a_class_key_invariant():
    s = instantiate("3-2c", {"a": 2, "b": 3, "c": 4}, 5)
    k = a_class_key(s.A)
    for op in (INVERSE, REFLECT, SymmetryOp("gauge", 2, 1)):
        assert a_class_key(apply_op(s, op).A) == k


def test_op_dict():
    assert SymmetryOp("gauge", 2, 3).to_dict() == {"kind": "gauge", "u": 2, "v": 3}
    assert INVERSE.to_dict() == {"kind": "inverse"}
    with pytest.raises(ValueError):
        apply_op(S([[1, 0], [0, 1]], [0, 0], 2), SymmetryOp("rotate"))


@given(st.sampled_from([3, 5, 7]), st.integers(0, 10 ** 6))
def test_random_family_orbit_verifies(D, seed):
    import random
    rng = random.Random(seed)
    units = unit_values(D)
    s = instantiate("2-2", {"a": rng.choice(units), "d": rng.choice(units), "z": rng.randrange(D)}, D)
    u, v = rng.choice(units), rng.randrange(D)
    for t in (inverse_transform(s), reflect_transform(s), gauge_transform(s, u, v)):
        assert verify_affine(t)
