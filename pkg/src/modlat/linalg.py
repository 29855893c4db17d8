"""Matrices over F_q: reduced row echelon form, spans, subspace meet and join.

A subspace is always carried as the nonzero rows of its RREF, so two
subspaces are equal exactly when their bases compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import FieldSpec


@dataclass(frozen=True)
class FqMatrix:
    field: FieldSpec
    ncols: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, field: FieldSpec, rows, ncols: int | None = None) -> "FqMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError(f"row {r} does not have {ncols} entries")
            for x in r:
                if not 0 <= x < field.q:
                    raise ValueError(f"entry {x} is not an element of {field}")
        return cls(field, ncols, rows)

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "FqMatrix":
        return cls(field, ncols, ((0,) * ncols,) * nrows)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "FqMatrix":
        return cls(field, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.nrows, self.ncols)

    def nonzero_rows(self) -> "FqMatrix":
        return FqMatrix(self.field, self.ncols, tuple(r for r in self.rows if any(r)))

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(map(str, r)) for r in self.rows) + "]"


def _scale(F: FieldSpec, c, v):
    return F.mul[c, v]


def _axpy(F: FieldSpec, c, x, y):
    """Return ``y - c*x``."""
    return F.add[y, F.neg[F.mul[c, x]]]


def rref_array(F: FieldSpec, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    A = np.array(A, dtype=np.int64, copy=True)
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, col])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = _scale(F, F.inv[A[r, col]], A[r])
        for k in range(nrows):
            if k != r and A[k, col]:
                A[k] = _axpy(F, A[k, col], A[r], A[k])
        pivots.append(col)
        r += 1
    return A, pivots


def rref(M: FqMatrix) -> tuple[FqMatrix, int]:
    """Reduced row echelon form of ``M`` (same shape, zero rows last) and its rank."""
    for r in M.rows:
        for x in r:
            if not 0 <= x < M.field.q:
                raise ValueError(f"entry {x} is not an element of {M.field}")
    if M.nrows == 0:
        return M, 0
    A, pivots = rref_array(M.field, M.array())
    return FqMatrix(M.field, M.ncols, tuple(map(tuple, A.tolist()))), len(pivots)


def is_rref(M: FqMatrix) -> bool:
    last = -1
    seen_zero = False
    pivots = []
    for r in M.rows:
        nz = [j for j, x in enumerate(r) if x]
        if not nz:
            seen_zero = True
            continue
        if seen_zero or nz[0] <= last or r[nz[0]] != 1:
            return False
        last = nz[0]
        pivots.append(last)
    for i, c in enumerate(pivots):
        for k, r in enumerate(M.rows):
            if k != i and r[c]:
                return False
    return True


def row_basis(M: FqMatrix) -> FqMatrix:
    """Canonical basis (nonzero RREF rows) of the row space of ``M``."""
    return rref(M)[0].nonzero_rows()


def span_array(F: FieldSpec, basis: np.ndarray, n: int) -> np.ndarray:
    """All ``q**k`` vectors in the span of the ``k`` rows of ``basis``."""
    vecs = np.zeros((1, n), dtype=np.int64)
    for row in np.asarray(basis, dtype=np.int64).reshape(-1, n):
        parts = [F.add[vecs, F.mul[c, row][None, :]] for c in range(F.q)]
        vecs = np.concatenate(parts, axis=0)
    return vecs


def span(M: FqMatrix) -> set[tuple[int, ...]]:
    return set(map(tuple, span_array(M.field, M.array(), M.ncols).tolist()))


def encode_vectors(q: int, vecs: np.ndarray) -> np.ndarray:
    """Mixed-radix index ``sum(v_i * q**i)`` of each row."""
    n = vecs.shape[1]
    return vecs @ (q ** np.arange(n, dtype=np.int64))


def subspace_meet_join(A: FqMatrix, B: FqMatrix) -> tuple[FqMatrix, FqMatrix]:
    """Intersection and sum of two row spaces, both as canonical bases.

    The meet comes from the left kernel of the stacked system: rows
    ``(x, y)`` with ``x A + y B = 0`` give the vectors ``x A`` of the
    intersection.
    """
    if A.field != B.field:
        raise ValueError("subspaces live over different fields")
    if A.ncols != B.ncols:
        raise ValueError(f"ambient dimension mismatch: {A.ncols} vs {B.ncols}")
    F, n = A.field, A.ncols
    a, b = A.array(), B.array()
    if a.shape[0] + b.shape[0] == 0:
        empty = FqMatrix(F, n, ())
        return empty, empty
    join = row_basis(FqMatrix(F, n, A.rows + B.rows))
    ka, kb = a.shape[0], b.shape[0]
    aug = np.zeros((ka + kb, n + ka), dtype=np.int64)
    aug[:ka, :n] = a
    aug[:ka, n:] = np.eye(ka, dtype=np.int64)
    aug[ka:, :n] = b
    R, _ = rref_array(F, aug)
    meet_rows = []
    for row in R:
        if not row[:n].any() and row[n:].any():
            x = row[n:]
            v = np.zeros(n, dtype=np.int64)
            for c, r in zip(x, a):
                if c:
                    v = F.add[v, F.mul[c, r]]
            meet_rows.append(v.tolist())
    if meet_rows:
        meet = row_basis(FqMatrix(F, n, tuple(map(tuple, meet_rows))))
    else:
        meet = FqMatrix(F, n, ())
    return meet, join
