"""Affine permutation solutions R = delta(A, B) and their two verifiers.

``verify_affine`` checks the (N+1)x(N+1) matrix equation built from the
embedded index matrices. ``verify_tensor`` is the ground truth: it pushes
every state of Z_D^N through the operator products and compares.

State tuples are encoded with the first index as the *least* significant
D-ary digit, code = i_1 + D*i_2 + ... + D^(n-1)*i_n; this reproduces the
printed 8x8 tetrahedron R-matrices exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, Singular
from .linalg import MatZd, VecZd, as_mat, is_invertible
from .structure import SimplexSystem, build_system, products_batch

# states pushed through verify_tensor per chunk
STATE_CHUNK = 1 << 20


@dataclass(frozen=True)
class AffineSolution:
    A: MatZd
    B: VecZd
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        if self.A.nrows != self.A.ncols or len(self.B) != self.A.nrows:
            raise DimensionMismatch(f"A is {self.A.shape}, B has length {len(self.B)}")
        if self.A.modulus != self.B.modulus:
            raise DimensionMismatch("A and B have different moduli")

    @classmethod
    def from_lists(cls, A, B=None, D: int = 2, provenance: str = "") -> AffineSolution:
        A = as_mat(A, D)
        B = VecZd(tuple(B) if B is not None else (0,) * A.nrows, D)
        return cls(A, B, provenance)

    @property
    def n(self) -> int:
        return self.A.nrows

    @property
    def D(self) -> int:
        return self.A.modulus

    def key(self) -> tuple[int, ...]:
        """Flattened integer sequence (A row-major, then B); used for ordering."""
        return self.A.flat() + self.B.entries

    @property
    def is_homogeneous(self) -> bool:
        return not any(self.B)

    def with_provenance(self, provenance: str) -> AffineSolution:
        return AffineSolution(self.A, self.B, provenance)

    def to_record(self, verified: bool | None = None) -> dict:
        rec = {"n": self.n, "d": self.D, "A": self.A.tolist(), "B": self.B.tolist(),
               "provenance": self.provenance}
        if verified is not None:
            rec["verified"] = verified
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> AffineSolution:
        sol = cls.from_lists(rec["A"], rec["B"], int(rec["d"]), rec.get("provenance", ""))
        if sol.n != int(rec["n"]):
            raise DimensionMismatch(f"record says n={rec['n']} but A is {sol.A.shape}")
        return sol

    def __str__(self):
        rows = [" ".join(f"{x}" for x in r) + f" | {b}" for r, b in zip(self.A.rows, self.B)]
        return "\n".join(rows)


@dataclass(frozen=True, eq=False)
class IndexMap:
    """A permutation of Z_D^n given as a code -> code table."""
    n: int
    D: int
    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        if t.shape != (self.D ** self.n,):
            raise DimensionMismatch(f"table of shape {t.shape} for D^n = {self.D ** self.n}")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    def __call__(self, state):
        return decode(int(self.table[encode(state, self.D)]), self.n, self.D)

    def __eq__(self, other):
        return (isinstance(other, IndexMap) and (self.n, self.D) == (other.n, other.D)
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.n, self.D, self.table.tobytes()))

    def is_bijective(self) -> bool:
        return len(np.unique(self.table)) == len(self.table)

    @classmethod
    def identity(cls, n: int, D: int) -> IndexMap:
        return cls(n, D, np.arange(D ** n))


def encode(state, D: int) -> int:
    return sum(int(x) * D ** k for k, x in enumerate(state))


def decode(code: int, n: int, D: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        code, r = divmod(code, D)
        out.append(r)
    return tuple(out)


def all_states(n: int, D: int) -> np.ndarray:
    """Row k holds the digits of code k (first column least significant)."""
    codes = np.arange(D ** n, dtype=np.int64)
    return np.stack([(codes // D ** k) % D for k in range(n)], axis=1)


def to_index_map(s: AffineSolution) -> IndexMap:
    if not is_invertible(s.A):
        raise Singular("A is not invertible; delta(A, B) is not a permutation")
    states = all_states(s.n, s.D)
    images = (states @ s.A.to_numpy().T + np.array(s.B.entries)) % s.D
    weights = s.D ** np.arange(s.n)
    return IndexMap(s.n, s.D, images @ weights)


def affine_from_index_map(m: IndexMap) -> AffineSolution | None:
    """The (A, B) with m(i) = A i + B for all i, or None if m is not affine."""
    n, D = m.n, m.D
    B = decode(int(m.table[0]), n, D)
    cols = []
    for k in range(n):
        e = [0] * n
        e[k] = 1
        img = decode(int(m.table[encode(e, D)]), n, D)
        cols.append([(x - b) % D for x, b in zip(img, B)])
    A = [list(r) for r in zip(*cols)]
    cand = AffineSolution.from_lists(A, B, D)
    if not is_invertible(cand.A):
        return None
    return cand if to_index_map(cand) == m else None


def verify_affine(s: AffineSolution) -> bool:
    lhs, rhs = products_batch(s.A.to_numpy()[None], np.array(s.B.entries, dtype=np.int64)[None],
                              s.n, s.D)
    return bool(np.array_equal(lhs, rhs))


def _apply(states: np.ndarray, tables: np.ndarray, idx: np.ndarray, D: int) -> None:
    """Apply the local map at one placement, in place; states is (P, S, N)."""
    weights = D ** np.arange(len(idx))
    codes = states[:, :, idx] @ weights
    out = np.take_along_axis(tables, codes, axis=1)
    for k, col in enumerate(idx):
        states[:, :, col] = (out // D ** k) % D


def compose(sys: SimplexSystem, tables: np.ndarray, order, D: int, states: np.ndarray) -> np.ndarray:
    """Push ``states`` through the operator string ``order`` (rightmost acts first).

    ``tables`` is (P, D^n) for P local maps; returns the final (P, S, N) states.
    """
    idx_of = {p: np.array(p, dtype=np.intp) - 1 for p in sys.placements}
    cur = np.broadcast_to(states, (tables.shape[0],) + states.shape).copy()
    for p in reversed(order):
        _apply(cur, tables, idx_of[p], D)
    return cur


def tensor_ok_batch(sys: SimplexSystem, tables: np.ndarray, D: int) -> np.ndarray:
    """Mask over P local maps: which satisfy the simplex equation on all states."""
    tables = np.asarray(tables, dtype=np.int64)
    ok = np.ones(tables.shape[0], dtype=bool)
    total = D ** sys.N
    step = max(1, STATE_CHUNK // max(1, tables.shape[0]))
    for lo in range(0, total, step):
        codes = np.arange(lo, min(total, lo + step), dtype=np.int64)
        states = np.stack([(codes // D ** k) % D for k in range(sys.N)], axis=1)
        left = compose(sys, tables, sys.lhs_order, D, states)
        right = compose(sys, tables, sys.rhs_order, D, states)
        ok &= np.all((left == right).reshape(tables.shape[0], -1), axis=1)
        if not ok.any():
            break
    return ok


def verify_tensor(sys: SimplexSystem, local: IndexMap, D: int) -> bool:
    if local.n != sys.n or local.D != D:
        raise DimensionMismatch(f"map is (n={local.n}, D={local.D}), system n={sys.n}, D={D}")
    return bool(tensor_ok_batch(sys, local.table[None], D)[0])


def verify_solution_tensor(s: AffineSolution) -> bool:
    return verify_tensor(build_system(s.n), to_index_map(s), s.D)


def r_matrix(local: IndexMap) -> np.ndarray:
    """0/1 matrix with R[out, in] = 1; codes as in :func:`encode`."""
    size = local.D ** local.n
    R = np.zeros((size, size), dtype=np.int64)
    R[local.table, np.arange(size)] = 1
    return R


def index_map_from_permutation(perm, n: int, D: int) -> IndexMap:
    return IndexMap(n, D, np.asarray(perm))

