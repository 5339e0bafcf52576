"""Transformations of (A, B) that map solutions to solutions.

* inverse:   (A, B) -> (A^-1, -A^-1 B)          (index transposition of R)
* reflect:   A[i][j] -> A[n-1-i][n-1-j], B reversed (index reversal of R)
* gauge:     B_a -> u B_a + (1 - rowsum_a(A)) v  (u a unit)
* transpose: A -> A^T with B kept; only safe for B = 0.

The default orbit is the closure under inverse, reflect and every gauge;
transposes are treated as separate families.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import NotAUnit
from .linalg import MatZd, VecZd, is_invertible, mat_inv, mat_vec
from .solution import AffineSolution
from .zmod import is_unit, unit_values


@dataclass(frozen=True)
class SymmetryOp:
    kind: str  # "inverse" | "reflect" | "transpose" | "gauge"
    u: int = 1
    v: int = 0

    def __str__(self):
        if self.kind == "gauge":
            return f"gauge(u={self.u},v={self.v})"
        return self.kind

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == "gauge":
            d.update(u=self.u, v=self.v)
        return d


INVERSE = SymmetryOp("inverse")
REFLECT = SymmetryOp("reflect")
TRANSPOSE = SymmetryOp("transpose")


def inverse_transform(s: AffineSolution) -> AffineSolution:
    Ainv = mat_inv(s.A)
    return AffineSolution(Ainv, -mat_vec(Ainv, s.B), s.provenance)


def reflect_transform(s: AffineSolution) -> AffineSolution:
    return AffineSolution(s.A.reflect(), s.B.reversed(), s.provenance)


def transpose_transform(s: AffineSolution) -> AffineSolution:
    """A -> A^T, B unchanged. Re-verify when B != 0."""
    return AffineSolution(s.A.transpose(), s.B, s.provenance)


def gauge_transform(s: AffineSolution, u: int, v: int) -> AffineSolution:
    D = s.D
    u, v = int(u) % D, int(v) % D
    if not is_unit(u, D):
        raise NotAUnit(f"gauge scale {u} is not a unit mod {D}")
    B = tuple(u * b + (1 - r) * v for b, r in zip(s.B, s.A.row_sums()))
    return AffineSolution(s.A, VecZd(B, D), s.provenance)


def gauge_compose(u2: int, v2: int, u1: int, v1: int, D: int) -> tuple[int, int]:
    """Parameters of gauge(u2, v2) after gauge(u1, v1)."""
    return (u2 * u1) % D, (u2 * v1 + v2) % D


def apply_op(s: AffineSolution, op: SymmetryOp) -> AffineSolution:
    if op.kind == "inverse":
        return inverse_transform(s)
    if op.kind == "reflect":
        return reflect_transform(s)
    if op.kind == "transpose":
        return transpose_transform(s)
    if op.kind == "gauge":
        return gauge_transform(s, op.u, op.v)
    raise ValueError(f"unknown symmetry {op.kind!r}")


def generators(D: int, invertible: bool = True, include_transpose: bool = False) -> list[SymmetryOp]:
    gens = [REFLECT]
    if invertible:
        gens.insert(0, INVERSE)
    if include_transpose:
        gens.append(TRANSPOSE)
    gens += [SymmetryOp("gauge", u, v) for u in unit_values(D) for v in range(D)
             if (u, v) != (1, 0)]
    return gens


@dataclass
class Orbit:
    members: frozenset[AffineSolution]
    generators_used: list[SymmetryOp]
    chains: dict[AffineSolution, tuple[SymmetryOp, ...]] = field(default_factory=dict)

    def __len__(self):
        return len(self.members)

    def __contains__(self, s):
        return s in self.members

    def sorted_members(self) -> list[AffineSolution]:
        return sorted(self.members, key=AffineSolution.key)


def orbit(s: AffineSolution, include_transpose: bool = False) -> Orbit:
    """Closure of {s}; ``chains`` records one generator word reaching each member."""
    start = AffineSolution(s.A, s.B)
    gens = generators(s.D, is_invertible(s.A), include_transpose)
    chains = {start: ()}
    todo = deque([start])
    while todo:
        cur = todo.popleft()
        for g in gens:
            nxt = apply_op(cur, g)
            if nxt not in chains:
                chains[nxt] = chains[cur] + (g,)
                todo.append(nxt)
    return Orbit(frozenset(chains), gens, chains)


def canonical_form(s: AffineSolution) -> AffineSolution:
    """Lexicographically smallest member of the orbit (A row-major, then B)."""
    best = min(orbit(s).members, key=AffineSolution.key)
    return best.with_provenance(s.provenance)


def a_class_key(A: MatZd) -> tuple[int, ...]:
    """Canonical key of A under {inverse, reflect}; gauge never changes A."""
    cands = [A, A.reflect()]
    if is_invertible(A):
        Ai = mat_inv(A)
        cands += [Ai, Ai.reflect()]
    return min(c.flat() for c in cands)
