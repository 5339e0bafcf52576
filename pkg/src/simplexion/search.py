"""Exhaustive searches for permutation-type solutions.

``search_affine`` walks every A in Z_D^(n x n) in lexicographic order, keeps
those with unit determinant that solve the homogeneous equation, then solves
the (linear in B) inhomogeneous part exactly. ``brute_force_perm`` drops the
linearity assumption and tests every permutation of Z_D^n at tensor level.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded
from .linalg import MatZd, VecZd, solve_linear
from .solution import (AffineSolution, IndexMap, affine_from_index_map, tensor_ok_batch,
                       verify_affine)
from .structure import build_system, homogeneous_ok_batch, products_batch
from .symmetry import a_class_key, canonical_form
from .zmod import unit_values

DEFAULT_BUDGET = 50_000_000       # A-candidates, D^(n*n)
DEFAULT_PERM_BUDGET = 1_000_000   # permutations, (D^n)!
CHUNK = 1 << 15
PERM_CHUNK = 5040


@dataclass
class Representative:
    """One class of irreducible solutions sharing A up to inverse and reflection."""
    solution: AffineSolution
    orbits: list[AffineSolution]
    families: list[tuple[str, dict]] = field(default_factory=list)
    unmatched: list[AffineSolution] = field(default_factory=list)
    size: int = 0

    def to_dict(self) -> dict:
        return {
            "A": self.solution.A.tolist(),
            "size": self.size,
            "b_orbits": [o.B.tolist() for o in self.orbits],
            "orbit_forms": [o.to_record() for o in self.orbits],
            "families": [{"id": fid, "params": p} for fid, p in self.families],
            "unmatched": [o.to_record() for o in self.unmatched],
        }


@dataclass
class SearchReport:
    n: int
    D: int
    mode: str = "affine"
    total_candidates: int = 0
    unit_det_candidates: int = 0
    homogeneous: int = 0
    solutions: list[AffineSolution] = field(default_factory=list)
    maps: list[IndexMap] = field(default_factory=list)
    affine_flags: list[bool] = field(default_factory=list)
    reduced_out: int = 0
    orbit_representatives: list[Representative] = field(default_factory=list)
    classified: bool = False

    @property
    def findings(self) -> list[Representative]:
        return [r for r in self.orbit_representatives if r.unmatched]

    def summary(self) -> dict:
        out = {"summary": True, "n": self.n, "d": self.D, "mode": self.mode,
               "total": self.total_candidates}
        if self.mode == "perm":
            out.update(solutions=len(self.maps), affine=sum(self.affine_flags),
                       non_affine=len(self.maps) - sum(self.affine_flags))
        else:
            out.update(unit_det=self.unit_det_candidates, homogeneous=self.homogeneous,
                       solutions=len(self.solutions))
        if self.classified:
            out.update(reduced_out=self.reduced_out,
                       representatives=len(self.orbit_representatives),
                       findings=len(self.findings),
                       classes=[r.to_dict() for r in self.orbit_representatives])
        return out


# affine search

def _leibniz(n: int):
    perms = list(itertools.permutations(range(n)))
    signs = []
    for p in perms:
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        signs.append(-1 if inv % 2 else 1)
    return perms, signs


def det_batch(A: np.ndarray) -> np.ndarray:
    """Exact integer determinants of a stack of small matrices."""
    n = A.shape[1]
    out = np.zeros(A.shape[0], dtype=np.int64)
    rows = np.arange(n)
    for p, sg in zip(*_leibniz(n)):
        out += sg * np.prod(A[:, rows, list(p)], axis=1)
    return out


def candidates(lo: int, hi: int, n: int, D: int) -> np.ndarray:
    """A-matrices with lexicographic index lo..hi-1 (entry (0,0) most significant)."""
    k = np.arange(lo, hi, dtype=np.int64)
    m = n * n
    digits = np.stack([(k // D ** (m - 1 - p)) % D for p in range(m)], axis=1)
    return digits.reshape(-1, n, n)


def b_equation_matrices(A: np.ndarray, n: int, D: int) -> np.ndarray:
    """For each homogeneous solution A, the N x n matrix M with (LHS-RHS) B-column = M B."""
    N = build_system(n).N
    m = A.shape[0]
    As = np.repeat(A, n, axis=0)
    Bs = np.tile(np.eye(n, dtype=np.int64), (m, 1))
    lhs, rhs = products_batch(As, Bs, n, D)
    cols = ((lhs - rhs)[:, :N, N] % D).reshape(m, n, N)
    return np.transpose(cols, (0, 2, 1))


def _scan_range(args) -> tuple[int, int, list[tuple[tuple[int, ...], list[tuple[int, ...]]]]]:
    lo, hi, n, D = args
    unit = np.zeros(D, dtype=bool)
    unit[list(unit_values(D))] = True
    n_unit = n_hom = 0
    found = []
    for start in range(lo, hi, CHUNK):
        A = candidates(start, min(hi, start + CHUNK), n, D)
        A = A[unit[det_batch(A) % D]]
        n_unit += len(A)
        if not len(A):
            continue
        A = A[homogeneous_ok_batch(A, n, D)]
        n_hom += len(A)
        if not len(A):
            continue
        Ms = b_equation_matrices(A, n, D)
        for a, M in zip(A, Ms):
            sols = solve_linear(MatZd.from_numpy(M, D), VecZd.zeros(M.shape[0], D))
            found.append((tuple(int(x) for x in a.ravel()), [v.entries for v in sols]))
    return n_unit, n_hom, found


def search_affine(n: int, D: int, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> SearchReport:
    if not 2 <= n <= 4:
        raise ValueError(f"affine search supports n in 2..4, got {n}")
    total = D ** (n * n)
    if total > budget:
        raise BudgetExceeded(f"{D}^{n * n} = {total} A-candidates exceeds budget {budget}")
    shards = max(1, jobs) * 4 if jobs > 1 else 1
    bounds = [total * i // shards for i in range(shards + 1)]
    tasks = [(bounds[i], bounds[i + 1], n, D) for i in range(shards)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_range, tasks))
    else:
        parts = [_scan_range(t) for t in tasks]
    report = SearchReport(n, D, "affine", total)
    rows = []
    for n_unit, n_hom, found in parts:
        report.unit_det_candidates += n_unit
        report.homogeneous += n_hom
        rows.extend(found)
    rows.sort()
    for flat, bs in rows:
        A = MatZd(tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)), D)
        for b in bs:
            report.solutions.append(AffineSolution(A, VecZd(b, D), f"search(n={n},d={D})"))
    return report


# brute force over all permutations

def brute_force_perm(n: int, D: int, budget: int = DEFAULT_PERM_BUDGET) -> SearchReport:
    size = D ** n
    total = math.factorial(size)
    if total > budget:
        raise BudgetExceeded(f"({D}^{n})! = {total} permutations exceeds budget {budget}")
    sys = build_system(n)
    report = SearchReport(n, D, "perm", total)
    perms = itertools.permutations(range(size))
    while True:
        chunk = list(itertools.islice(perms, PERM_CHUNK))
        if not chunk:
            break
        tables = np.array(chunk, dtype=np.int64)
        for t in tables[tensor_ok_batch(sys, tables, D)]:
            m = IndexMap(n, D, t)
            report.maps.append(m)
            report.affine_flags.append(affine_from_index_map(m) is not None)
    return report


# reducibility and classification

def _splits(n: int) -> list[int]:
    if n < 3:
        return []
    out = [1, n - 1]
    if n == 4:
        out.append(2)
    return sorted(set(out))


def _block_solves(A: MatZd, B: VecZd, lo: int, hi: int) -> bool:
    m = hi - lo
    if m == 1:
        return True
    sub = AffineSolution(
        MatZd(tuple(r[lo:hi] for r in A.rows[lo:hi]), A.modulus),
        VecZd(B.entries[lo:hi], B.modulus))
    return verify_affine(sub)


def is_reducible(s: AffineSolution) -> bool:
    """True if (A, B) is a tensor product of lower-order solutions.

    Checked splits: 1 + (n-1), (n-1) + 1 and, for n = 4, 2 + 2. The
    off-diagonal blocks of A must vanish and every block of size >= 2, with
    its slice of B, must solve the lower simplex equation.
    """
    A, B, n = s.A, s.B, s.n
    for k in _splits(n):
        if any(A[i, j] for i in range(k) for j in range(k, n)):
            continue
        if any(A[i, j] for i in range(k, n) for j in range(k)):
            continue
        if _block_solves(A, B, 0, k) and _block_solves(A, B, k, n):
            return True
    return False


def classify(report: SearchReport, catalog=None, match: bool = True) -> SearchReport:
    """Drop reducible solutions, group the rest by A up to inverse/reflection,
    record the full orbits inside each class and match them to catalog families."""
    from .catalog import default_catalog, match_family

    cat = catalog or default_catalog() if match else None
    sols = report.solutions
    if report.mode == "perm":
        sols = [affine_from_index_map(m) for m, ok in zip(report.maps, report.affine_flags) if ok]
    keep = [s for s in sols if not is_reducible(s)]
    report.reduced_out = len(sols) - len(keep)
    classes: dict[tuple[int, ...], list[AffineSolution]] = {}
    for s in keep:
        classes.setdefault(a_class_key(s.A), []).append(s)
    reps = []
    for key in sorted(classes):
        members = classes[key]
        n, D = members[0].n, members[0].D
        A = MatZd(tuple(tuple(key[i * n:(i + 1) * n]) for i in range(n)), D)
        orbit_forms = sorted({canonical_form(s) for s in members}, key=AffineSolution.key)
        rep = Representative(AffineSolution(A, VecZd.zeros(n, D), "canonical"),
                             orbit_forms, size=len(members))
        if match:
            fams = {}
            for o in orbit_forms:
                hits = match_family(o, cat)
                if not hits:
                    rep.unmatched.append(o)
                for fid, p in hits:
                    fams.setdefault(fid, p)
            rep.families = sorted(fams.items())
        reps.append(rep)
    report.orbit_representatives = reps
    report.classified = True
    return report
