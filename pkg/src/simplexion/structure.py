"""Shape of the n-simplex equation and the embedded index matrices.

Spaces are the 2-subsets {i, j} of {1..n+1} numbered 1..N in lexicographic
order; operator alpha acts on every space whose pair contains alpha. For
n = 2, 3, 4 this gives R12 R13 R23, R123 R145 R246 R356 and
R1234 R1567 R2589 R3680 R4790 (with "0" standing for space 10).

Internally space labels are 1-based (as printed) and matrix indices 0-based.
The fictitious affine index is the last row/column, index N.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatch
from .linalg import MatZd, VecZd, mat_mul


@dataclass(frozen=True)
class SimplexSystem:
    n: int
    N: int
    placements: tuple[tuple[int, ...], ...]

    @property
    def lhs_order(self) -> tuple[tuple[int, ...], ...]:
        return self.placements

    @property
    def rhs_order(self) -> tuple[tuple[int, ...], ...]:
        return self.placements[::-1]

    def label(self) -> str:
        def name(p):
            return "R_" + "".join(str(k) if self.N < 10 else f"{k}," for k in p).rstrip(",")
        lhs = " ".join(name(p) for p in self.lhs_order)
        rhs = " ".join(name(p) for p in self.rhs_order)
        return f"{lhs} = {rhs}"


@dataclass(frozen=True)
class EmbeddedFactor:
    base: MatZd
    placement: tuple[int, ...]


@lru_cache(maxsize=None)
def build_system(n: int) -> SimplexSystem:
    if n < 2:
        raise ValueError(f"simplex order must be >= 2, got {n}")
    pairs = list(itertools.combinations(range(1, n + 2), 2))
    label = {p: k + 1 for k, p in enumerate(pairs)}
    placements = tuple(
        tuple(sorted(label[p] for p in pairs if alpha in p)) for alpha in range(1, n + 2)
    )
    return SimplexSystem(n=n, N=len(pairs), placements=placements)


def _check_placement(placement, n: int, N: int):
    if len(placement) != n:
        raise DimensionMismatch(f"placement {placement} has length != {n}")
    if list(placement) != sorted(set(placement)) or not all(1 <= k <= N for k in placement):
        raise ValueError(f"bad placement {placement} for N={N}")


def embed(A: MatZd, B: VecZd, placement, N: int) -> EmbeddedFactor:
    n = A.nrows
    if A.ncols != n or len(B) != n:
        raise DimensionMismatch(f"A is {A.shape}, B has length {len(B)}")
    if A.modulus != B.modulus:
        raise DimensionMismatch("A and B have different moduli")
    placement = tuple(placement)
    _check_placement(placement, n, N)
    M = [[int(i == j) for j in range(N + 1)] for i in range(N + 1)]
    idx = [k - 1 for k in placement]
    for a, ia in enumerate(idx):
        for b, ib in enumerate(idx):
            M[ia][ib] = A[a, b]
        M[ia][N] = B[a]
    return EmbeddedFactor(MatZd(tuple(map(tuple, M)), A.modulus), placement)


def lhs_rhs_products(sys: SimplexSystem, A: MatZd, B: VecZd) -> tuple[MatZd, MatZd]:
    """Products of the embedded factors in placement order and in reverse."""
    if A.nrows != sys.n:
        raise DimensionMismatch(f"A is {A.shape} but n = {sys.n}")
    factors = {p: embed(A, B, p, sys.N).base for p in sys.placements}
    lhs = rhs = MatZd.identity(sys.N + 1, A.modulus)
    for p in sys.lhs_order:
        lhs = mat_mul(lhs, factors[p])
    for p in sys.rhs_order:
        rhs = mat_mul(rhs, factors[p])
    return lhs, rhs


def extract(M: MatZd, placement, n: int) -> tuple[MatZd, VecZd]:
    """Inverse of :func:`embed`: read (A, B) back out of an embedded factor."""
    N = M.nrows - 1
    idx = [k - 1 for k in placement]
    A = MatZd(tuple(tuple(M[i, j] for j in idx) for i in idx), M.modulus)
    B = VecZd(tuple(M[i, N] for i in idx), M.modulus)
    return A, B


# Batched numpy path used by the search and by verify_affine.

@lru_cache(maxsize=None)
def placement_indices(n: int) -> np.ndarray:
    sys = build_system(n)
    return np.array(sys.placements, dtype=np.intp) - 1


def embed_batch(A: np.ndarray, B: np.ndarray | None, n: int) -> list[np.ndarray]:
    """Embedded factors for a stack of (A, B); returns n+1 arrays (m, N+1, N+1)."""
    sys = build_system(n)
    m = A.shape[0]
    eye = np.broadcast_to(np.eye(sys.N + 1, dtype=np.int64), (m, sys.N + 1, sys.N + 1))
    out = []
    for idx in placement_indices(n):
        F = eye.copy()
        F[:, idx[:, None], idx[None, :]] = A
        if B is not None:
            F[:, idx, sys.N] = B
        out.append(F)
    return out


def products_batch(A: np.ndarray, B: np.ndarray | None, n: int, D: int) -> tuple[np.ndarray, np.ndarray]:
    factors = embed_batch(A, B, n)
    lhs = factors[0]
    for F in factors[1:]:
        lhs = (lhs @ F) % D
    rhs = factors[-1]
    for F in factors[-2::-1]:
        rhs = (rhs @ F) % D
    return lhs, rhs


def homogeneous_ok_batch(A: np.ndarray, n: int, D: int) -> np.ndarray:
    """Boolean mask: which A in the stack satisfy the B = 0 equation."""
    sys = build_system(n)
    lhs, rhs = products_batch(A, None, n, D)
    N = sys.N
    return np.all((lhs[:, :N, :N] == rhs[:, :N, :N]).reshape(len(A), -1), axis=1)
