"""Dense matrices and vectors over Z_D.

Matrices here are tiny (at most 16x16), so everything is plain tuples of ints.
Composite moduli are first-class: inversion goes through the adjugate and
linear systems over composite D are solved by enumeration.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, ModulusMismatch, Singular
from .zmod import ZModElement, inv_int, is_unit

# composite-D solve_linear enumerates D**cols vectors; cap the column count
MAX_ENUM_COLS = 8


def is_prime(D: int) -> bool:
    if D < 2:
        return False
    return all(D % p for p in range(2, int(D**0.5) + 1))


@dataclass(frozen=True)
class VecZd:
    entries: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) % self.modulus for x in self.entries))

    @classmethod
    def zeros(cls, n: int, D: int) -> VecZd:
        return cls((0,) * n, D)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def element(self, i: int) -> ZModElement:
        return ZModElement(self.entries[i], self.modulus)

    def __add__(self, other: VecZd) -> VecZd:
        _same_modulus(self, other)
        if len(self) != len(other):
            raise DimensionMismatch(f"{len(self)} vs {len(other)}")
        return VecZd(tuple(a + b for a, b in zip(self, other)), self.modulus)

    def __neg__(self) -> VecZd:
        return VecZd(tuple(-x for x in self), self.modulus)

    def scale(self, u: int) -> VecZd:
        return VecZd(tuple(u * x for x in self), self.modulus)

    def reversed(self) -> VecZd:
        return VecZd(self.entries[::-1], self.modulus)

    def tolist(self) -> list[int]:
        return list(self.entries)


@dataclass(frozen=True)
class MatZd:
    rows: tuple[tuple[int, ...], ...]
    modulus: int

    def __post_init__(self):
        rows = tuple(tuple(int(x) % self.modulus for x in r) for r in self.rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int, D: int) -> MatZd:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), D)

    @classmethod
    def zeros(cls, r: int, c: int, D: int) -> MatZd:
        return cls(((0,) * c,) * r, D)

    @classmethod
    def from_numpy(cls, arr, D: int) -> MatZd:
        return cls(tuple(tuple(int(x) for x in row) for row in np.asarray(arr)), D)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def element(self, i: int, j: int) -> ZModElement:
        return ZModElement(self.rows[i][j], self.modulus)

    def flat(self) -> tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)

    def transpose(self) -> MatZd:
        return MatZd(tuple(zip(*self.rows)), self.modulus)

    def reflect(self) -> MatZd:
        """Reflection across the matrix center: entry (i, j) <- (n-1-i, n-1-j)."""
        return MatZd(tuple(r[::-1] for r in self.rows[::-1]), self.modulus)

    def __matmul__(self, other):
        if isinstance(other, VecZd):
            return mat_vec(self, other)
        return mat_mul(self, other)

    def to_numpy(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.shape)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) % self.modulus for r in self.rows)

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


def _same_modulus(x, y):
    if x.modulus != y.modulus:
        raise ModulusMismatch(f"mod {x.modulus} vs mod {y.modulus}")


def mat_mul(X: MatZd, Y: MatZd) -> MatZd:
    _same_modulus(X, Y)
    if X.ncols != Y.nrows:
        raise DimensionMismatch(f"{X.shape} @ {Y.shape}")
    cols = list(zip(*Y.rows))
    return MatZd(
        tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in X.rows),
        X.modulus,
    )


def mat_vec(X: MatZd, v: VecZd) -> VecZd:
    _same_modulus(X, v)
    if X.ncols != len(v):
        raise DimensionMismatch(f"{X.shape} @ ({len(v)},)")
    return VecZd(tuple(sum(a * b for a, b in zip(r, v)) for r in X.rows), X.modulus)


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by Bareiss fraction-free elimination."""
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def det(X: MatZd) -> ZModElement:
    if X.nrows != X.ncols:
        raise DimensionMismatch(f"det of non-square {X.shape}")
    return ZModElement(int_det(X.rows), X.modulus)


def adjugate(X: MatZd) -> MatZd:
    n = X.nrows
    if n == 1:
        return MatZd(((1,),), X.modulus)
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(X.rows) if k != i]
            cof[i][j] = (-1) ** (i + j) * int_det(minor)
    return MatZd(tuple(zip(*cof)), X.modulus)


def mat_inv(X: MatZd) -> MatZd:
    """Inverse via adjugate / det, valid for composite D whenever det is a unit."""
    d = det(X)
    if not d.is_unit():
        raise Singular(f"det {d.value} is not a unit mod {X.modulus}")
    dinv = inv_int(d.value, X.modulus)
    adj = adjugate(X)
    return MatZd(tuple(tuple(dinv * x for x in r) for r in adj.rows), X.modulus)


def solve_linear(M: MatZd, c: VecZd) -> list[VecZd]:
    """All x with M x = c over Z_D, sorted lexicographically."""
    _same_modulus(M, c)
    if M.nrows != len(c):
        raise DimensionMismatch(f"{M.shape} vs rhs of length {len(c)}")
    D = M.modulus
    if is_prime(D):
        sols = _solve_prime(M, c)
    else:
        sols = _solve_enum(M, c)
    return sorted(sols, key=lambda v: v.entries)


def _solve_enum(M: MatZd, c: VecZd) -> list[VecZd]:
    D, n = M.modulus, M.ncols
    if n > MAX_ENUM_COLS:
        raise BudgetExceeded(f"enumerating Z_{D}^{n} exceeds the composite-modulus solver limit")
    if n == 0:
        return [VecZd((), D)] if not any(c) else []
    xs = np.array(list(itertools.product(range(D), repeat=n)), dtype=np.int64)
    A = M.to_numpy() if M.nrows else np.zeros((0, n), dtype=np.int64)
    ok = np.all((xs @ A.T - np.array(c.entries, dtype=np.int64)) % D == 0, axis=1)
    return [VecZd(tuple(x), D) for x in xs[ok]]


def _solve_prime(M: MatZd, c: VecZd) -> list[VecZd]:
    D, n = M.modulus, M.ncols
    aug = [list(r) + [b] for r, b in zip(M.rows, c.entries)]
    pivots: list[int] = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, len(aug)) if aug[i][col] % D), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        s = inv_int(aug[row][col], D)
        aug[row] = [(x * s) % D for x in aug[row]]
        for i in range(len(aug)):
            if i != row and aug[i][col] % D:
                f = aug[i][col]
                aug[i] = [(x - f * y) % D for x, y in zip(aug[i], aug[row])]
        pivots.append(col)
        row += 1
    if any(r[n] % D for r in aug[row:]):
        return []
    free = [j for j in range(n) if j not in pivots]
    out = []
    for vals in itertools.product(range(D), repeat=len(free)):
        x = [0] * n
        for j, v in zip(free, vals):
            x[j] = v
        for i, pc in enumerate(pivots):
            x[pc] = (aug[i][n] - sum(aug[i][j] * x[j] for j in free)) % D
        out.append(VecZd(tuple(x), D))
    return out


def as_mat(rows: Iterable[Iterable[int]], D: int) -> MatZd:
    return MatZd(tuple(tuple(r) for r in rows), D)


def is_invertible(X: MatZd) -> bool:
    return is_unit(int_det(X.rows), X.modulus)
