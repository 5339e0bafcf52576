"""Polynomial systems behind the affine ansatz.

Entries of A (and optionally B) become formal variables; the embedded
factors are multiplied out over the integers and every nonzero entry of
LHS - RHS is one polynomial. Printed systems are kept as text and parsed
with sympy, so their transcription stays readable.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import sympy
from sympy.parsing.sympy_parser import (convert_xor, implicit_multiplication_application,
                                        parse_expr, standard_transformations)

from .errors import BudgetExceeded, DimensionMismatch
from .linalg import VecZd
from .structure import build_system
from .zmod import ZModElement

DEFAULT_BUDGET = 10_000_000  # assignments D^vars per comparison
EVAL_CHUNK = 1 << 16

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class PolyExpr:
    """Integer polynomial as {exponent vector: coefficient}, zero terms dropped."""
    terms: tuple[tuple[Monomial, int], ...]
    nvars: int

    @classmethod
    def from_dict(cls, terms: dict, nvars: int) -> PolyExpr:
        items = sorted((tuple(e), int(c)) for e, c in terms.items() if c)
        for e, _ in items:
            if len(e) != nvars:
                raise DimensionMismatch(f"exponent {e} does not have {nvars} entries")
        return cls(tuple(items), nvars)

    @classmethod
    def const(cls, c: int, nvars: int) -> PolyExpr:
        return cls.from_dict({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> PolyExpr:
        e = [0] * nvars
        e[i] = 1
        return cls.from_dict({tuple(e): 1}, nvars)

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: PolyExpr) -> PolyExpr:
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return PolyExpr.from_dict(d, self.nvars)

    def __neg__(self) -> PolyExpr:
        return PolyExpr(tuple((e, -c) for e, c in self.terms), self.nvars)

    def __sub__(self, other: PolyExpr) -> PolyExpr:
        return self + (-other)

    def __mul__(self, other: PolyExpr) -> PolyExpr:
        d: dict[Monomial, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(x + y for x, y in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return PolyExpr.from_dict(d, self.nvars)

    def sign_normalized(self) -> PolyExpr:
        """p or -p, whichever has a positive leading coefficient."""
        if self.terms and self.terms[-1][1] < 0:
            return -self
        return self

    def to_text(self, variables: list[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(variables, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class PolySystem:
    variables: tuple[str, ...]
    polys: tuple[PolyExpr, ...]
    origin: str = "generated"

    def __len__(self):
        return len(self.polys)

    def to_text(self) -> str:
        return "\n".join(p.to_text(list(self.variables)) for p in self.polys) + "\n"

    def restrict(self, variables) -> PolySystem:
        """Same polynomials over another variable list containing every variable used."""
        variables = tuple(variables)
        pos = {v: i for i, v in enumerate(variables)}
        polys = []
        for p in self.polys:
            d = {}
            for e, c in p.terms:
                ne = [0] * len(variables)
                for v, k in zip(self.variables, e):
                    if k:
                        if v not in pos:
                            raise DimensionMismatch(f"variable {v} missing from {variables}")
                        ne[pos[v]] = k
                d[tuple(ne)] = c
            polys.append(PolyExpr.from_dict(d, len(variables)))
        return PolySystem(variables, tuple(polys), self.origin)

    def union(self, other: PolySystem) -> PolySystem:
        variables = self.variables + tuple(v for v in other.variables if v not in self.variables)
        a, b = self.restrict(variables), other.restrict(variables)
        return PolySystem(variables, _dedup(a.polys + b.polys), self.origin)


def a_variables(n: int) -> list[str]:
    if n == 2:
        return list("abcd")
    if n == 3:
        return list("abcxyzuvw")
    return [f"a{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1)]


def b_variables(n: int) -> list[str]:
    return list("xy") if n == 2 else [f"b{i}" for i in range(1, n + 1)]


def _dedup(polys) -> tuple[PolyExpr, ...]:
    seen, out = set(), []
    for p in polys:
        q = p.sign_normalized()
        if not q.is_zero() and q not in seen:
            seen.add(q)
            out.append(q)
    return tuple(out)


def _matmul(X, Y, nv):
    m = len(X)
    zero = PolyExpr.const(0, nv)
    out = []
    for i in range(m):
        row = []
        for j in range(m):
            acc = zero
            for k in range(m):
                if X[i][k].terms and Y[k][j].terms:
                    acc = acc + X[i][k] * Y[k][j]
            row.append(acc)
        out.append(row)
    return out


@lru_cache(maxsize=None)
def gen_system(n: int, homogeneous: bool = True) -> PolySystem:
    if n not in (2, 3, 4):
        raise ValueError(f"gen_system supports n in 2..4, got {n}")
    sys = build_system(n)
    N = sys.N
    names = a_variables(n) + ([] if homogeneous else b_variables(n))
    nv = len(names)
    A = [[PolyExpr.var(i * n + j, nv) for j in range(n)] for i in range(n)]
    B = None if homogeneous else [PolyExpr.var(n * n + i, nv) for i in range(n)]
    one, zero = PolyExpr.const(1, nv), PolyExpr.const(0, nv)

    def factor(p):
        M = [[one if i == j else zero for j in range(N + 1)] for i in range(N + 1)]
        idx = [k - 1 for k in p]
        for a, ia in enumerate(idx):
            for b, ib in enumerate(idx):
                M[ia][ib] = A[a][b]
            if B is not None:
                M[ia][N] = B[a]
        return M

    def product(order):
        out = None
        for p in order:
            out = factor(p) if out is None else _matmul(out, factor(p), nv)
        return out

    lhs, rhs = product(sys.lhs_order), product(sys.rhs_order)
    diffs = [lhs[i][j] - rhs[i][j] for i in range(N + 1) for j in range(N + 1)]
    return PolySystem(tuple(names), _dedup(diffs), "generated")


# printed systems, transcribed as text

_PRINTED_TEXT = {
    "n2-5eq": (list("abcd"), [
        "abc=0", "bcd=0", "bc(b-c)=0", "b(ad+b-1)=0", "c(ad+c-1)=0",
    ]),
    "n2-B-3eq": (list("abcdxy"), [
        "b(x+ay)=0", "c(y+dx)=0", "x(c+d-bc-1)=y(a+b-bc-1)",
    ]),
    "n3-29eq": (list("abcxyzuvw"), [
        "a b x=0", "b x y=0", "v y z=0", "v w z=0",
        "b x (b - x)=0", "v z (v - z)=0", "y (b u - c v)=0", "y ( - c x + u z)=0",
        "b (a y + b - 1)=0", "x (a y + x - 1)=0", "z (w y + z - 1)=0", "v (w y + v - 1)=0",
        "a b u z + a c x + b c u=0", "b v x z + c v y + c x y=0", "b u w z + c u z + c v w=0",
        "a b u + a c v x + c u x=0", "b u y + b v x z + u y z=0", "c u v + c v w x + u w z=0",
        "a b w z + a c z + b c w + c^2=0", "a u v + a v w x + u^2 + u w x=0",
        "b u v z + c u y + c v^2 - c v z=0", "b u x z - b c x + c u y + c x^2=0",
        " - b^2 u - b c v x + b u x - c u y=0", " - c u y - c v x z + u v z - u z^2=0",
        "b w x z + c w y + c x z + c z - c=0", "a b v z + a c y + b c v + b c - c=0",
        " - a u y - a v x z - u x z - u x + u=0", " - b u v - b v w x - u v - u w y + u=0",
        " - b c u + b u^2 z - c^2 v x + c u v + c u x - c u z=0",
    ]),
}

_TRANSFORMS = standard_transformations + (implicit_multiplication_application, convert_xor)


def parse_equation(text: str, variables: list[str]) -> PolyExpr:
    """``"lhs=rhs"`` (or a bare expression) as the polynomial lhs - rhs."""
    syms = {v: sympy.Symbol(v) for v in variables}
    sides = text.split("=")
    if len(sides) > 2:
        raise ValueError(f"more than one '=' in {text!r}")
    expr = parse_expr(sides[0], local_dict=syms, transformations=_TRANSFORMS)
    if len(sides) == 2:
        expr -= parse_expr(sides[1], local_dict=syms, transformations=_TRANSFORMS)
    poly = sympy.Poly(sympy.expand(expr), *[syms[v] for v in variables], domain="ZZ")
    return PolyExpr.from_dict({e: int(c) for e, c in poly.as_dict().items()}, len(variables))


def printed_system(sid: str) -> PolySystem:
    try:
        variables, eqs = _PRINTED_TEXT[sid]
    except KeyError:
        raise KeyError(f"unknown printed system {sid!r}; known: {sorted(_PRINTED_TEXT)}") from None
    polys = tuple(parse_equation(e, variables) for e in eqs)
    return PolySystem(tuple(variables), polys, sid)


def printed_system_ids() -> list[str]:
    return sorted(_PRINTED_TEXT)


# evaluation

def eval_poly(p: PolyExpr, assignment: VecZd) -> ZModElement:
    if len(assignment) != p.nvars:
        raise DimensionMismatch(f"assignment has {len(assignment)} values, polynomial has {p.nvars} variables")
    D = assignment.modulus
    total = 0
    for e, c in p.terms:
        t = c
        for x, k in zip(assignment.entries, e):
            if k:
                t = t * pow(x, k, D) % D
        total += t
    return ZModElement(total % D, D)


def eval_poly_batch(p: PolyExpr, X: np.ndarray, D: int) -> np.ndarray:
    """Values of p mod D at every row of X (shape (m, nvars))."""
    out = np.zeros(X.shape[0], dtype=np.int64)
    for e, c in p.terms:
        t = np.full(X.shape[0], c % D, dtype=np.int64)
        for i, k in enumerate(e):
            for _ in range(k):
                t = (t * X[:, i]) % D
        out = (out + t) % D
    return out


def vanishing_mask(system: PolySystem, X: np.ndarray, D: int) -> np.ndarray:
    mask = np.ones(X.shape[0], dtype=bool)
    for p in system.polys:
        idx = np.flatnonzero(mask)
        if not len(idx):
            break
        mask[idx] = eval_poly_batch(p, X[idx], D) == 0
    return mask


def _assignments(lo: int, hi: int, nvars: int, D: int) -> np.ndarray:
    k = np.arange(lo, hi, dtype=np.int64)
    return np.stack([(k // D ** (nvars - 1 - i)) % D for i in range(nvars)], axis=1)


def solution_sets_equal(s1: PolySystem, s2: PolySystem, D: int,
                        budget: int = DEFAULT_BUDGET) -> bool:
    """True iff both systems vanish on exactly the same points of Z_D^vars."""
    if s1.variables != s2.variables:
        if set(s2.variables) - set(s1.variables):
            s1 = s1.restrict(sorted(set(s1.variables) | set(s2.variables)))
        s2 = s2.restrict(s1.variables)
    nv = len(s1.variables)
    total = D ** nv
    if total > budget:
        raise BudgetExceeded(f"{D}^{nv} = {total} assignments exceeds budget {budget}")
    for lo in range(0, total, EVAL_CHUNK):
        X = _assignments(lo, min(total, lo + EVAL_CHUNK), nv, D)
        if not np.array_equal(vanishing_mask(s1, X, D), vanishing_mask(s2, X, D)):
            return False
    return True


def zero_set(system: PolySystem, D: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """All points of Z_D^vars where every polynomial vanishes, lexicographic."""
    nv = len(system.variables)
    total = D ** nv
    if total > budget:
        raise BudgetExceeded(f"{D}^{nv} = {total} assignments exceeds budget {budget}")
    out = []
    for lo in range(0, total, EVAL_CHUNK):
        X = _assignments(lo, min(total, lo + EVAL_CHUNK), nv, D)
        out.append(X[vanishing_mask(system, X, D)])
    return np.concatenate(out) if out else np.zeros((0, nv), dtype=np.int64)
