"""Sparse matrices of polynomials."""
from __future__ import annotations

from collections import defaultdict
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .algebra import Poly, PolyRing, inv_mod


class PolyMatrix:
    """A nrows x ncols matrix over ``ring``; only nonzero entries are stored."""

    __slots__ = ("ring", "nrows", "ncols", "_e")

    def __init__(self, ring: PolyRing, nrows: int, ncols: int, entries: Dict[Tuple[int, int], Poly] = None):
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self._e: Dict[Tuple[int, int], Poly] = {}
        for (i, j), f in (entries or {}).items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError("entry (%d, %d) outside %dx%d" % (i, j, nrows, ncols))
            if not f.is_zero():
                self._e[(i, j)] = f

    # -- constructors ----------------------------------------------------
    @classmethod
    def zeros(cls, ring, nrows, ncols):
        return cls(ring, nrows, ncols)

    @classmethod
    def identity(cls, ring, n, scalar=1):
        c = ring.const(scalar)
        return cls(ring, n, n, {(i, i): c for i in range(n)})

    @classmethod
    def from_columns(cls, ring, nrows, columns: Sequence[Sequence[Poly]]):
        entries = {}
        for j, col in enumerate(columns):
            if len(col) != nrows:
                raise ValueError("column %d has length %d, expected %d" % (j, len(col), nrows))
            for i, f in enumerate(col):
                if not f.is_zero():
                    entries[(i, j)] = f
        return cls(ring, nrows, len(columns), entries)

    @classmethod
    def from_rows(cls, ring, rows: Sequence[Sequence[Poly]], ncols=None):
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, f in enumerate(row):
                if not f.is_zero():
                    entries[(i, j)] = f
        return cls(ring, len(rows), ncols, entries)

    @classmethod
    def block_diag(cls, ring, blocks: Sequence["PolyMatrix"]):
        entries = {}
        r0 = c0 = 0
        for b in blocks:
            for (i, j), f in b._e.items():
                entries[(r0 + i, c0 + j)] = f
            r0 += b.nrows
            c0 += b.ncols
        return cls(ring, r0, c0, entries)

    @classmethod
    def hstack(cls, ring, nrows, blocks: Sequence["PolyMatrix"]):
        entries = {}
        c0 = 0
        for b in blocks:
            if b.nrows != nrows:
                raise ValueError("row mismatch in hstack")
            for (i, j), f in b._e.items():
                entries[(i, c0 + j)] = f
            c0 += b.ncols
        return cls(ring, nrows, c0, entries)

    @classmethod
    def vstack(cls, ring, ncols, blocks: Sequence["PolyMatrix"]):
        entries = {}
        r0 = 0
        for b in blocks:
            if b.ncols != ncols:
                raise ValueError("column mismatch in vstack")
            for (i, j), f in b._e.items():
                entries[(r0 + i, j)] = f
            r0 += b.nrows
        return cls(ring, r0, ncols, entries)

    # -- access ----------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij) -> Poly:
        return self._e.get(ij) or self.ring.zero()

    def items(self):
        return self._e.items()

    def nnz(self):
        return len(self._e)

    def col(self, j) -> Tuple[Poly, ...]:
        z = self.ring.zero()
        out = [z] * self.nrows
        for (i, jj), f in self._e.items():
            if jj == j:
                out[i] = f
        return tuple(out)

    def columns(self) -> List[Tuple[Poly, ...]]:
        z = self.ring.zero()
        cols = [[z] * self.nrows for _ in range(self.ncols)]
        for (i, j), f in self._e.items():
            cols[j][i] = f
        return [tuple(c) for c in cols]

    def rows(self) -> List[List[Poly]]:
        z = self.ring.zero()
        out = [[z] * self.ncols for _ in range(self.nrows)]
        for (i, j), f in self._e.items():
            out[i][j] = f
        return out

    def is_zero(self) -> bool:
        return not self._e

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        rmap = {r: k for k, r in enumerate(rows)}
        cmap = {c: k for k, c in enumerate(cols)}
        entries = {(rmap[i], cmap[j]): f for (i, j), f in self._e.items() if i in rmap and j in cmap}
        return PolyMatrix(self.ring, len(rows), len(cols), entries)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.ncols, self.nrows, {(j, i): f for (i, j), f in self._e.items()})

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s vs %s" % (self.shape, other.shape))
        out = dict(self._e)
        for k, f in other._e.items():
            g = out.get(k)
            s = f if g is None else g + f
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return PolyMatrix(self.ring, self.nrows, self.ncols, out)

    def __neg__(self):
        return PolyMatrix(self.ring, self.nrows, self.ncols, {k: -f for k, f in self._e.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PolyMatrix":
        if isinstance(c, int):
            return PolyMatrix(self.ring, self.nrows, self.ncols, {k: f.scale(c) for k, f in self._e.items()})
        return PolyMatrix(self.ring, self.nrows, self.ncols, {k: f * c for k, f in self._e.items()})

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValueError("cannot compose %s with %s" % (self.shape, other.shape))
        by_row = defaultdict(list)
        for (j, k), g in other._e.items():
            by_row[j].append((k, g))
        acc: Dict[Tuple[int, int], Poly] = {}
        for (i, j), f in self._e.items():
            for k, g in by_row.get(j, ()):
                prod = f * g
                cur = acc.get((i, k))
                acc[(i, k)] = prod if cur is None else cur + prod
        return PolyMatrix(self.ring, self.nrows, other.ncols, acc)

    def apply(self, vec: Sequence[Poly]) -> Tuple[Poly, ...]:
        out = [self.ring.zero()] * self.nrows
        for (i, j), f in self._e.items():
            if not vec[j].is_zero():
                out[i] = out[i] + f * vec[j]
        return tuple(out)

    def map_entries(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.nrows, self.ncols, {k: fn(f) for k, f in self._e.items()})

    def constant_part(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.int64)
        for (i, j), f in self._e.items():
            out[i, j] = f.constant_term()
        return out

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __repr__(self):
        return "PolyMatrix(%dx%d, nnz=%d)" % (self.nrows, self.ncols, len(self._e))

    def pretty(self) -> str:
        rows = self.rows()
        return "\n".join("[" + ", ".join(str(f) for f in r) + "]" for r in rows)


def cancel_unit_pair(M: PolyMatrix, r: int, c: int) -> Tuple[PolyMatrix, List[int]]:
    """Gaussian elimination of the constant entry M[r, c] in a square D with D^2 = 0.

    Returns the reduced matrix on the basis with r and c removed, and the
    surviving original indices.
    """
    u = M[(r, c)]
    if not u.is_constant() or u.is_zero():
        raise ValueError("entry is not a unit")
    if r == c:
        raise ValueError("diagonal unit in a square-zero matrix")
    uinv = inv_mod(u.constant_term(), M.ring.p)
    keep = [i for i in range(M.nrows) if i != r and i != c]
    kmap = {i: k for k, i in enumerate(keep)}
    col_c = [(i, f) for (i, j), f in M.items() if j == c and i in kmap]
    row_r = [(j, f) for (i, j), f in M.items() if i == r and j in kmap]
    entries = {(kmap[i], kmap[j]): f for (i, j), f in M.items() if i in kmap and j in kmap}
    for i, f in col_c:
        fi = f.scale(uinv)
        for j, g in row_r:
            key = (kmap[i], kmap[j])
            val = entries.get(key, M.ring.zero()) - fi * g
            if val.is_zero():
                entries.pop(key, None)
            else:
                entries[key] = val
    return PolyMatrix(M.ring, len(keep), len(keep), entries), keep


def find_unit(M: PolyMatrix):
    best = None
    for (i, j), f in M.items():
        if f.is_constant():
            if best is None or (i, j) < best:
                best = (i, j)
    return best


def cancel_units(M: PolyMatrix, labels: Sequence = None):
    """Repeatedly cancel constant entries of a square-zero matrix."""
    labels = list(labels) if labels is not None else list(range(M.nrows))
    while True:
        pos = find_unit(M)
        if pos is None:
            return M, labels
        M, keep = cancel_unit_pair(M, *pos)
        labels = [labels[i] for i in keep]
