"""Exact integer linear algebra: Smith normal form, integer solves, cokernels.

Everything here is arbitrary-precision integer arithmetic; no floating point
is used anywhere in this module.  Matrices are dense numpy arrays with
dtype=object holding Python ints, which gives exact vectorized row and column
operations.

The Smith normal form drives the whole verification story: a relation matrix
A (relations as rows, ambient coordinates as columns) presents the abelian
group Z^cols / rowspace(A), and U*A*V = D with unimodular U, V reads off its
invariant factors and free rank.  Pivoting always picks the nonzero entry of
minimal absolute value, breaking ties at the lowest (row, col); since the
minimum possible is 1, a first scan hunts for a +-1 entry and only falls back
to a full scan when none exists.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional, Sequence, Tuple

import numpy as np

DENSE_CAP = 5000


class MatrixSizeError(ValueError):
    """Matrix exceeds the dense materialization guardrail."""


def _as_int(x) -> int:
    if isinstance(x, (bool, np.bool_)):
        raise TypeError("matrix entries must be integers, got a boolean")
    if isinstance(x, (int, np.integer)):
        return int(x)
    raise TypeError(f"matrix entries must be integers, got {type(x).__name__}")


def _obj_matrix(rows: int, cols: int) -> np.ndarray:
    a = np.empty((rows, cols), dtype=object)
    a.fill(0)
    return a


class ZMatrix:
    """Dense exact integer matrix; treat instances as immutable."""

    __slots__ = ("_a",)

    def __init__(self, entries):
        if isinstance(entries, np.ndarray):
            if entries.ndim != 2:
                raise ValueError("ZMatrix needs a 2-d array")
            rows, cols = entries.shape
            a = _obj_matrix(rows, cols)
            for i in range(rows):
                for j in range(cols):
                    a[i, j] = _as_int(entries[i, j])
        else:
            data = [list(r) for r in entries]
            rows = len(data)
            cols = len(data[0]) if rows else 0
            if any(len(r) != cols for r in data):
                raise ValueError("ragged rows")
            a = _obj_matrix(rows, cols)
            for i, r in enumerate(data):
                for j, x in enumerate(r):
                    a[i, j] = _as_int(x)
        if rows > DENSE_CAP or cols > DENSE_CAP:
            raise MatrixSizeError(
                f"{rows}x{cols} exceeds the {DENSE_CAP}x{DENSE_CAP} dense cap"
            )
        self._a = a

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "ZMatrix":
        m = object.__new__(cls)
        m._a = arr
        return m

    @classmethod
    def identity(cls, k: int) -> "ZMatrix":
        a = _obj_matrix(k, k)
        for i in range(k):
            a[i, i] = 1
        return cls._wrap(a)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ZMatrix":
        if rows > DENSE_CAP or cols > DENSE_CAP:
            raise MatrixSizeError(f"{rows}x{cols} exceeds the dense cap")
        return cls._wrap(_obj_matrix(rows, cols))

    @classmethod
    def hstack(cls, blocks: Sequence["ZMatrix"]) -> "ZMatrix":
        if not blocks:
            raise ValueError("hstack needs at least one block")
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise ValueError("hstack blocks must share the row count")
        arr = np.concatenate([b._a for b in blocks], axis=1)
        if arr.shape[1] > DENSE_CAP:
            raise MatrixSizeError("stacked width exceeds the dense cap")
        return cls._wrap(arr)

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def array(self) -> np.ndarray:
        """Underlying object array; callers must not mutate it."""
        return self._a

    def entry(self, i: int, j: int) -> int:
        return self._a[i, j]

    def __getitem__(self, idx):
        return self._a[idx]

    def row(self, i: int) -> Tuple[int, ...]:
        return tuple(self._a[i, :])

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(self._a[:, j])

    def to_lists(self) -> List[List[int]]:
        return [[self._a[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def transpose(self) -> "ZMatrix":
        return ZMatrix._wrap(self._a.T.copy())

    def dot(self, other: "ZMatrix") -> "ZMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        return ZMatrix._wrap(np.dot(self._a, other._a))

    def dot_vector(self, vec: Sequence[int]) -> Tuple[int, ...]:
        v = list(vec)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        if self.rows == 0:
            return ()
        if self.cols == 0:
            return (0,) * self.rows
        b = np.empty(len(v), dtype=object)
        for i, x in enumerate(v):
            b[i] = int(x)
        return tuple(np.dot(self._a, b))

    def __eq__(self, other):
        if not isinstance(other, ZMatrix):
            return NotImplemented
        return self._a.shape == other._a.shape and bool((self._a == other._a).all())

    def __repr__(self):
        return f"ZMatrix({self.rows}x{self.cols})"

    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.rows}x{self.cols}:".encode())
        for i in range(self.rows):
            h.update(",".join(str(x) for x in self._a[i, :]).encode())
            h.update(b";")
        return h.hexdigest()

    def to_json_obj(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(x) for x in self._a[i, :]] for i in range(self.rows)],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ZMatrix":
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        entries = obj["entries"]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError("matrix JSON shape mismatch")
        a = _obj_matrix(rows, cols)
        for i, r in enumerate(entries):
            for j, x in enumerate(r):
                a[i, j] = int(x)
        return cls._wrap(a)


@dataclass
class ZQuotientStructure:
    """SNF description of the group Z^cols / rowspace(A).

    invariant_factors are the nonzero diagonal entries d_1 | d_2 | ... (the
    1s are kept); free_rank = cols - len(invariant_factors).  left_transform
    U and right_transform V satisfy U*A*V = diag(d_1..d_r) exactly; either
    may be None when a reduced computation (or a cache load) skipped it.
    right_inverse, when present, is V^{-1}.
    """

    invariant_factors: Tuple[int, ...]
    free_rank: int
    rows: int
    cols: int
    left_transform: Optional[ZMatrix] = None
    right_transform: Optional[ZMatrix] = None
    right_inverse: Optional[ZMatrix] = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        """Rank of the row lattice (number of nonzero invariant factors)."""
        return len(self.invariant_factors)

    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d != 1)

    def is_torsion_free(self) -> bool:
        return all(d == 1 for d in self.invariant_factors)

    def diagonal_matrix(self) -> ZMatrix:
        d = ZMatrix.zeros(self.rows, self.cols).array
        for i, f in enumerate(self.invariant_factors):
            d[i, i] = f
        return ZMatrix._wrap(d)

    def to_json_obj(self) -> dict:
        def m(x):
            return None if x is None else x.to_json_obj()

        return {
            "invariant_factors": [str(d) for d in self.invariant_factors],
            "free_rank": self.free_rank,
            "rows": self.rows,
            "cols": self.cols,
            "left_transform": m(self.left_transform),
            "right_transform": m(self.right_transform),
            "right_inverse": m(self.right_inverse),
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ZQuotientStructure":
        def m(x):
            return None if x is None else ZMatrix.from_json_obj(x)

        return cls(
            invariant_factors=tuple(int(d) for d in obj["invariant_factors"]),
            free_rank=int(obj["free_rank"]),
            rows=int(obj["rows"]),
            cols=int(obj["cols"]),
            left_transform=m(obj.get("left_transform")),
            right_transform=m(obj.get("right_transform")),
            right_inverse=m(obj.get("right_inverse")),
        )


def _egcd(a: int, b: int) -> Tuple[int, int, int]:
    """g, s, u with s*a + u*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_u, u = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_u, u = u, old_u - q * u
    if old_r < 0:
        old_r, old_s, old_u = -old_r, -old_s, -old_u
    return old_r, old_s, old_u


def _find_pivot(a: np.ndarray, t: int) -> Optional[Tuple[int, int]]:
    # minimal |entry| over the active block, ties at lowest (row, col); a
    # +-1 hit ends the scan early because no nonzero integer is smaller
    m = a.shape[0]
    best = None
    best_abs = None
    for i in range(t, m):
        row = a[i, t:]
        nz = np.nonzero(row)[0]
        if nz.size == 0:
            continue
        vals = np.abs(row[nz])
        ones = np.nonzero(vals == 1)[0]
        if ones.size:
            return i, t + int(nz[int(ones[0])])
        j = int(np.argmin(vals))
        v = int(vals[j])
        if best is None or v < best_abs:
            best = (i, t + int(nz[j]))
            best_abs = v
    return best


def _smith_engine(a: np.ndarray, track_left: bool, track_right: bool,
                  track_right_inverse: bool):
    """Diagonalize in place; returns (diag, U, V, Vinv) with None for untracked."""
    m, c = a.shape
    U = np.identity(m, dtype=object) if track_left else None
    V = np.identity(c, dtype=object) if track_right else None
    Vinv = np.identity(c, dtype=object) if track_right_inverse else None

    def swap_rows(p, q):
        if p == q:
            return
        a[[p, q], :] = a[[q, p], :]
        if U is not None:
            U[[p, q], :] = U[[q, p], :]

    def swap_cols(p, q):
        if p == q:
            return
        a[:, [p, q]] = a[:, [q, p]]
        if V is not None:
            V[:, [p, q]] = V[:, [q, p]]
        if Vinv is not None:
            Vinv[[p, q], :] = Vinv[[q, p], :]

    def add_cols(j, i, f):
        # col_j += f * col_i
        a[:, j] = a[:, j] + f * a[:, i]
        if V is not None:
            V[:, j] = V[:, j] + f * V[:, i]
        if Vinv is not None:
            Vinv[i, :] = Vinv[i, :] - f * Vinv[j, :]

    t = 0
    limit = min(m, c)
    while t < limit:
        piv = _find_pivot(a, t)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            if a[t, t] < 0:
                a[t, :] = a[t, :] * -1
                if U is not None:
                    U[t, :] = U[t, :] * -1
            p = a[t, t]
            col = a[t + 1:, t]
            nzi = np.nonzero(col)[0]
            if nzi.size:
                q = col[nzi] // p
                qnz = np.nonzero(q)[0]
                if qnz.size:
                    rows = t + 1 + nzi[qnz]
                    qq = q[qnz][:, None]
                    a[rows, :] = a[rows, :] - qq * a[t, :]
                    if U is not None:
                        U[rows, :] = U[rows, :] - qq * U[t, :]
                col = a[t + 1:, t]
                nzi = np.nonzero(col)[0]
                if nzi.size:
                    # residues sit in [1, p): a strictly smaller pivot exists
                    best = int(np.argmin(col[nzi]))
                    swap_rows(t, t + 1 + int(nzi[best]))
                    continue
            row = a[t, t + 1:]
            nzj = np.nonzero(row)[0]
            if nzj.size:
                q = row[nzj] // p
                qnz = np.nonzero(q)[0]
                if qnz.size:
                    cols = t + 1 + nzj[qnz]
                    qq = q[qnz][None, :]
                    a[:, cols] = a[:, cols] - a[:, t][:, None] * qq
                    if V is not None:
                        V[:, cols] = V[:, cols] - V[:, t][:, None] * qq
                    if Vinv is not None:
                        Vinv[t, :] = Vinv[t, :] + np.dot(q[qnz], Vinv[cols, :])
                row = a[t, t + 1:]
                nzj = np.nonzero(row)[0]
                if nzj.size:
                    best = int(np.argmin(row[nzj]))
                    swap_cols(t, t + 1 + int(nzj[best]))
                    continue
            break
        t += 1
    r = t

    # enforce the divisibility chain d_1 | d_2 | ... on the diagonal
    changed = True
    while changed:
        changed = False
        for s in range(r - 1):
            di = a[s, s]
            dj = a[s + 1, s + 1]
            if dj % di == 0:
                continue
            changed = True
            j = s + 1
            add_cols(s, j, 1)  # puts dj into position (j, s)
            g, se, ue = _egcd(di, dj)
            rs = a[s, :].copy()
            rj = a[j, :].copy()
            a[s, :] = se * rs + ue * rj
            a[j, :] = (-(dj // g)) * rs + (di // g) * rj
            if U is not None:
                us = U[s, :].copy()
                uj = U[j, :].copy()
                U[s, :] = se * us + ue * uj
                U[j, :] = (-(dj // g)) * us + (di // g) * uj
            add_cols(j, s, -(ue * (dj // g)))  # clears the (s, j) remnant

    diag = [int(a[s, s]) for s in range(r)]
    return diag, U, V, Vinv


def smith_normal_form(A: ZMatrix, *, left: bool = True, right: bool = True,
                      right_inverse: bool = False) -> ZQuotientStructure:
    """SNF of A with unimodular transforms; U*A*V = diag(invariant_factors).

    The keyword flags skip transform tracking for large runs where only part
    of the data is needed; the default computes both transforms.
    """
    work = A.array.copy()
    diag, U, V, Vinv = _smith_engine(work, left, right, right_inverse)
    return ZQuotientStructure(
        invariant_factors=tuple(diag),
        free_rank=A.cols - len(diag),
        rows=A.rows,
        cols=A.cols,
        left_transform=None if U is None else ZMatrix._wrap(U),
        right_transform=None if V is None else ZMatrix._wrap(V),
        right_inverse=None if Vinv is None else ZMatrix._wrap(Vinv),
    )


def cokernel_rank_and_torsion(A: ZMatrix) -> Tuple[int, Tuple[int, ...]]:
    """(free rank, invariant factors) of Z^cols / rowspace(A)."""
    s = smith_normal_form(A, left=False, right=False)
    return s.free_rank, s.invariant_factors


def solve_integer_system(A: ZMatrix, b: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """Some x in Z^cols with A*x = b, or None when no integral solution exists.

    The solution is the deterministic one with all free right-transform
    coordinates set to zero.
    """
    bv = [int(x) for x in b]
    if len(bv) != A.rows:
        raise ValueError(f"b has length {len(bv)}, expected {A.rows}")
    s = smith_normal_form(A)
    r = s.rank
    c = s.left_transform.dot_vector(bv) if A.cols or A.rows else ()
    z = [0] * A.cols
    for idx in range(r):
        d = s.invariant_factors[idx]
        q, rem = divmod(int(c[idx]), d)
        if rem:
            return None
        z[idx] = q
    for idx in range(r, A.rows):
        if c[idx] != 0:
            return None
    return s.right_transform.dot_vector(z)


def determinant(A: ZMatrix) -> int:
    """Exact determinant (Bareiss fraction-free elimination)."""
    if A.rows != A.cols:
        raise ValueError("determinant needs a square matrix")
    n = A.rows
    if n == 0:
        return 1
    a = [[A.entry(i, j) for j in range(n)] for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
