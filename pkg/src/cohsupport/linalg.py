"""Dense linear algebra over F_p with numpy int64 arrays."""
from __future__ import annotations

import numpy as np


def _as_array(A, p):
    A = np.array(A, dtype=np.int64, copy=True)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    return A % p


def rref(A, p: int):
    """Reduced row echelon form and pivot columns."""
    M = _as_array(A, p)
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = M[r] * inv % p
        col = M[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            M[nzr] = (M[nzr] - np.outer(col[nzr], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A, p: int) -> np.ndarray:
    """Basis of {v : A v = 0} as rows of the returned array."""
    A = np.asarray(A)
    if A.ndim != 2:
        raise ValueError("matrix expected")
    cols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref(A, p)
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for r, c in enumerate(piv):
            out[i, c] = (-R[r, f]) % p
    return out


def in_span(rows, v, p: int) -> bool:
    rows = np.asarray(rows, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64).reshape(1, -1)
    if rows.size == 0:
        return not np.any(v % p)
    return rank(np.vstack([rows, v]), p) == rank(rows, p)


def complement_rows(span_rows, candidates, p: int):
    """Indices of candidate rows extending span_rows to a basis of their joint span."""
    chosen = []
    basis = np.asarray(span_rows, dtype=np.int64)
    width = np.asarray(candidates).shape[1] if len(candidates) else (basis.shape[1] if basis.size else 0)
    if basis.size == 0:
        basis = np.zeros((0, width), dtype=np.int64)
    R, _ = rref(basis, p) if basis.shape[0] else (basis, [])
    current = rank(R, p) if R.shape[0] else 0
    for i, row in enumerate(candidates):
        trial = np.vstack([R, np.asarray(row, dtype=np.int64).reshape(1, -1)])
        r2 = rank(trial, p)
        if r2 > current:
            chosen.append(i)
            R, _ = rref(trial, p)
            current = r2
    return chosen
