"""Graded free complexes and resolutions over Q and over R = Q/I."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .algebra import InhomogeneousError, Poly, PolyRing, inv_mod, operator_ring
from .groebner import (
    GroebnerBasis,
    Lifter,
    column_degree,
    minimal_column_subset,
    minimal_generators,
    normal_form,
    reduced_groebner,
    syzygies,
)
from .matrices import PolyMatrix, cancel_units

Column = Tuple[Poly, ...]


class CohenPresentationError(ValueError):
    pass


class LiftError(RuntimeError):
    """A cycle that should be a boundary was not."""


# ---------------------------------------------------------------------------
# the ring R = Q/I


@dataclass(frozen=True)
class QuotientRing:
    Q: PolyRing
    generators: Tuple[Poly, ...]

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero())
        for g in gens:
            if g.ring != self.Q:
                raise ValueError("ideal generator lives in a different ring")
            if not g.is_homogeneous():
                raise InhomogeneousError("inhomogeneous generator %s" % g)
            if g.degree() <= 1:
                raise CohenPresentationError("not a minimal Cohen presentation: generator %s has a linear part" % g)
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, Q: PolyRing, *texts) -> "QuotientRing":
        return cls(Q, tuple(Q.parse(t) if isinstance(t, str) else t for t in texts))

    @cached_property
    def f(self) -> Tuple[Poly, ...]:
        """Minimal generators of I, in input order."""
        if not self.generators:
            return ()
        return minimal_generators(self.generators)[1]

    @cached_property
    def gb(self) -> GroebnerBasis:
        return reduced_groebner(self.generators, self.Q) if self.generators else GroebnerBasis(self.Q, ())

    @property
    def p(self) -> int:
        return self.Q.p

    @property
    def e(self) -> int:
        return self.Q.nvars

    @property
    def n(self) -> int:
        return len(self.f)

    @cached_property
    def S(self) -> PolyRing:
        return operator_ring(self.n, self.p)

    def nf(self, g: Poly) -> Poly:
        if not self.gb.elements:
            return g
        return normal_form(g, self.gb)[0]

    def nf_column(self, col: Sequence[Poly]) -> Column:
        return tuple(self.nf(g) for g in col)

    def ideal_block(self, shifts: Sequence[int]) -> List[Column]:
        """Columns f_i e_l generating I * Q^g."""
        z = self.Q.zero()
        out = []
        for l in range(len(shifts)):
            for fi in self.f:
                col = [z] * len(shifts)
                col[l] = fi
                out.append(tuple(col))
        return out

    def __str__(self):
        return "%s/(%s)" % (",".join(self.Q.variables), ", ".join(str(g) for g in self.generators))


# ---------------------------------------------------------------------------
# presentations, modules and complexes over R


@dataclass(frozen=True)
class Presentation:
    """coker of the relation columns inside Q^g with the given shifts."""
    ring: PolyRing
    shifts: Tuple[int, ...]
    relations: Tuple[Column, ...]

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(self.shifts))
        rels = tuple(tuple(c) for c in self.relations if any(not f.is_zero() for f in c))
        for c in rels:
            if len(c) != len(self.shifts):
                raise ValueError("relation length does not match the number of generators")
            column_degree(c, self.shifts)
        object.__setattr__(self, "relations", rels)

    def relation_shifts(self) -> Tuple[int, ...]:
        return tuple(column_degree(c, self.shifts) for c in self.relations)


def prune_presentation(pres: Presentation) -> Presentation:
    """Remove generators killed by a relation with a unit entry."""
    shifts = list(pres.shifts)
    rels = [list(c) for c in pres.relations]
    p = pres.ring.p
    while True:
        hit = None
        for j, c in enumerate(rels):
            for i, f in enumerate(c):
                if not f.is_zero() and f.is_constant():
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            break
        i, j = hit
        piv = rels[j]
        uinv = inv_mod(piv[i].constant_term(), p)
        out = []
        for k, c in enumerate(rels):
            if k == j:
                continue
            if not c[i].is_zero():
                t = c[i].scale(uinv)
                c = [a - t * b for a, b in zip(c, piv)]
            del c[i]
            out.append(c)
        del shifts[i]
        rels = out
    return Presentation(pres.ring, tuple(shifts), tuple(tuple(c) for c in rels))


@dataclass(frozen=True)
class RModule:
    """M = Q^g / (relations + I Q^g), a graded module over R."""
    ring: QuotientRing
    shifts: Tuple[int, ...]
    relations: Tuple[Column, ...] = ()
    name: str = ""

    def __post_init__(self):
        pres = Presentation(self.ring.Q, self.shifts, self.relations)
        object.__setattr__(self, "shifts", pres.shifts)
        object.__setattr__(self, "relations", pres.relations)

    @property
    def rank(self) -> int:
        return len(self.shifts)

    @classmethod
    def free(cls, ring: QuotientRing, shifts=(0,), name="R"):
        return cls(ring, tuple(shifts), (), name)

    @classmethod
    def residue_field(cls, ring: QuotientRing, name="k"):
        return cls(ring, (0,), tuple((x,) for x in ring.Q.gens()), name)

    @classmethod
    def cyclic(cls, ring: QuotientRing, gens: Sequence[Poly], name=""):
        """R/J for a homogeneous ideal J."""
        return cls(ring, (0,), tuple((g,) for g in gens), name)

    @classmethod
    def coker(cls, ring: QuotientRing, rows: Sequence[Sequence[Poly]], shifts=None, name=""):
        """Cokernel of a matrix given by rows; generator shifts default to 0."""
        if not rows:
            raise ValueError("empty matrix")
        g = len(rows)
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        shifts = tuple(shifts) if shifts is not None else (0,) * g
        if len(shifts) != g:
            raise ValueError("need one shift per row")
        cols = tuple(tuple(rows[i][j] for i in range(g)) for j in range(ncols))
        return cls(ring, shifts, cols, name)

    def q_relations(self) -> List[Column]:
        return list(self.relations) + self.ring.ideal_block(self.shifts)

    def q_presentation(self) -> Presentation:
        return Presentation(self.ring.Q, self.shifts, tuple(self.q_relations()))

    def is_residue_field(self) -> bool:
        if self.rank != 1 or self.shifts[0] != 0:
            return False
        if any(column_degree(c, self.shifts) != 1 for c in self.relations):
            return False
        Q = self.ring.Q
        rows = np.array([[c[0].coeff(tuple(int(i == v) for i in range(Q.nvars))) for v in range(Q.nvars)]
                         for c in self.relations], dtype=np.int64).reshape(-1, Q.nvars)
        return linalg.rank(rows, Q.p) == Q.nvars


@dataclass
class RComplex:
    """Bounded complex of finitely presented R-modules; maps[j]: M_j -> M_{j-1}."""
    ring: QuotientRing
    modules: Dict[int, RModule]
    maps: Dict[int, PolyMatrix] = field(default_factory=dict)
    name: str = ""
    summands: Tuple["RComplex", ...] = ()

    def __post_init__(self):
        if not self.modules:
            raise ValueError("a complex needs at least one module")
        for j, d in self.maps.items():
            src = self.module(j)
            tgt = self.module(j - 1)
            if d.shape != (tgt.rank, src.rank):
                raise ValueError("map in degree %d has shape %s, expected %s" % (j, d.shape, (tgt.rank, src.rank)))
            for (a, b), f in d.items():
                if not f.is_homogeneous() or f.degree() != src.shifts[b] - tgt.shifts[a]:
                    raise InhomogeneousError("map entry (%d,%d) in degree %d has the wrong degree" % (a, b, j))

    @classmethod
    def from_module(cls, M: RModule, degree: int = 0):
        return cls(M.ring, {degree: M}, {}, M.name)

    @property
    def lo(self) -> int:
        return min(self.modules)

    @property
    def hi(self) -> int:
        return max(self.modules)

    def module(self, j) -> RModule:
        M = self.modules.get(j)
        return M if M is not None else RModule(self.ring, (), ())

    def map(self, j) -> PolyMatrix:
        d = self.maps.get(j)
        if d is None:
            return PolyMatrix(self.ring.Q, self.module(j - 1).rank, self.module(j).rank)
        return d

    def check(self) -> bool:
        """Maps are well defined and compose to zero modulo the relations."""
        Q = self.ring.Q
        for j in range(self.lo, self.hi + 1):
            tgt = self.module(j - 1)
            if tgt.rank == 0:
                continue
            rels = tgt.q_relations()
            lifter = Lifter(rels, tgt.shifts, Q) if rels else None

            def inside(col):
                if all(f.is_zero() for f in col):
                    return True
                return lifter is not None and lifter.contains(col)

            d = self.map(j)
            for c in self.module(j).relations:
                if not inside(d.apply(c)):
                    return False
            dd = self.map(j - 1) @ d
            tgt2 = self.module(j - 2)
            if tgt2.rank and not dd.is_zero():
                rels2 = tgt2.q_relations()
                lift2 = Lifter(rels2, tgt2.shifts, Q) if rels2 else None
                for col in dd.columns():
                    if any(not f.is_zero() for f in col) and (lift2 is None or not lift2.contains(col)):
                        return False
        return True


def direct_sum(*parts: RComplex, name: str = "") -> RComplex:
    if not parts:
        raise ValueError("empty direct sum")
    ring = parts[0].ring
    if any(c.ring != ring for c in parts):
        raise ValueError("summands over different rings")
    flat: List[RComplex] = []
    for c in parts:
        flat.extend(c.summands if c.summands else (c,))
    lo = min(c.lo for c in flat)
    hi = max(c.hi for c in flat)
    modules, maps = {}, {}
    for j in range(lo, hi + 1):
        ms = [c.module(j) for c in flat]
        if sum(m.rank for m in ms) == 0:
            continue
        shifts, rels = [], []
        off, total = 0, sum(m.rank for m in ms)
        z = ring.Q.zero()
        for m in ms:
            shifts.extend(m.shifts)
            for c in m.relations:
                col = [z] * total
                col[off:off + m.rank] = c
                rels.append(tuple(col))
            off += m.rank
        modules[j] = RModule(ring, tuple(shifts), tuple(rels))
    for j in range(lo + 1, hi + 1):
        if j in modules and (j - 1) in modules:
            maps[j] = PolyMatrix.block_diag(ring.Q, [c.map(j) for c in flat])
    return RComplex(ring, modules, maps, name, tuple(flat))


# ---------------------------------------------------------------------------
# graded free complexes


@dataclass(frozen=True)
class GradedFreeModule:
    ring: PolyRing
    shifts: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.shifts)


def check_map_degrees(matrix: PolyMatrix, source: Sequence[int], target: Sequence[int], shift: int = 0) -> None:
    for (i, j), f in matrix.items():
        if not f.is_homogeneous() or f.degree() != source[j] - target[i] + shift:
            raise InhomogeneousError("entry (%d, %d) has the wrong degree" % (i, j))


@dataclass(frozen=True)
class GradedMap:
    source: GradedFreeModule
    target: GradedFreeModule
    matrix: PolyMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.rank, self.source.rank):
            raise ValueError("matrix shape does not match the modules")
        check_map_degrees(self.matrix, self.source.shifts, self.target.shifts)


@dataclass
class GradedComplex:
    """Free modules F_j (by their shifts) with d[j]: F_j -> F_{j-1}."""
    ring: PolyRing
    shifts: Dict[int, Tuple[int, ...]]
    d: Dict[int, PolyMatrix] = field(default_factory=dict)

    def __post_init__(self):
        self.shifts = {j: tuple(s) for j, s in self.shifts.items() if len(s)}
        for j, m in list(self.d.items()):
            if m.shape != (self.rank(j - 1), self.rank(j)):
                raise ValueError("differential %d has shape %s, expected %s" % (j, m.shape, (self.rank(j - 1), self.rank(j))))
            if m.is_zero():
                del self.d[j]

    def rank(self, j) -> int:
        return len(self.shifts.get(j, ()))

    def module(self, j) -> GradedFreeModule:
        return GradedFreeModule(self.ring, self.shifts.get(j, ()))

    def diff(self, j) -> PolyMatrix:
        m = self.d.get(j)
        return m if m is not None else PolyMatrix(self.ring, self.rank(j - 1), self.rank(j))

    def differential(self, j) -> GradedMap:
        return GradedMap(self.module(j), self.module(j - 1), self.diff(j))

    @property
    def degrees(self) -> List[int]:
        return sorted(self.shifts)

    @property
    def lo(self) -> int:
        return min(self.shifts) if self.shifts else 0

    @property
    def hi(self) -> int:
        return max(self.shifts) if self.shifts else -1

    def betti(self) -> Dict[int, int]:
        return {j: self.rank(j) for j in self.degrees}

    def check_degrees(self) -> None:
        for j, m in self.d.items():
            check_map_degrees(m, self.shifts.get(j, ()), self.shifts.get(j - 1, ()))

    def is_complex(self) -> bool:
        return all((self.diff(j - 1) @ self.diff(j)).is_zero() for j in range(self.lo + 1, self.hi + 1))

    def is_minimal(self) -> bool:
        return all(not f.is_constant() for m in self.d.values() for _, f in m.items())

    def total(self):
        """Square total matrix with labels (j, index) in increasing j."""
        labels = [(j, i) for j in self.degrees for i in range(self.rank(j))]
        pos = {lab: k for k, lab in enumerate(labels)}
        entries = {}
        for j, m in self.d.items():
            for (a, b), f in m.items():
                entries[(pos[(j - 1, a)], pos[(j, b)])] = f
        return PolyMatrix(self.ring, len(labels), len(labels), entries), labels


def complex_from_total(ring: PolyRing, shifts: Dict[int, Tuple[int, ...]], D: PolyMatrix, labels) -> GradedComplex:
    new_shifts: Dict[int, List[int]] = {}
    where = {}
    for k, (j, i) in enumerate(labels):
        where[k] = (j, len(new_shifts.setdefault(j, [])))
        new_shifts[j].append(shifts[j][i])
    blocks: Dict[int, Dict] = {}
    for (a, b), f in D.items():
        ja, ia = where[a]
        jb, ib = where[b]
        if ja != jb - 1:
            raise ValueError("total matrix is not a differential of homological degree -1")
        blocks.setdefault(jb, {})[(ia, ib)] = f
    d = {j: PolyMatrix(ring, len(new_shifts.get(j - 1, ())), len(new_shifts[j]), e) for j, e in blocks.items()}
    return GradedComplex(ring, {j: tuple(s) for j, s in new_shifts.items()}, d)


def minimalize(C: GradedComplex) -> GradedComplex:
    """Cancel unit entries; the result is homotopy equivalent to C."""
    D, labels = C.total()
    D, labels = cancel_units(D, labels)
    return complex_from_total(C.ring, C.shifts, D, labels)


@dataclass
class Resolution:
    complex: GradedComplex
    over: str
    minimal: bool
    truncation: Optional[int] = None
    presentation: object = None

    def betti(self) -> Tuple[int, ...]:
        C = self.complex
        if not C.shifts:
            return ()
        top = C.hi if self.truncation is None else max(C.hi, self.truncation)
        return tuple(C.rank(j) for j in range(C.lo, top + 1))

    @property
    def length(self) -> int:
        return self.complex.hi

    def degree_shifts(self) -> Dict[int, Tuple[int, ...]]:
        return dict(self.complex.shifts)


# ---------------------------------------------------------------------------
# resolutions over Q


def _as_presentation(obj) -> Presentation:
    if isinstance(obj, Presentation):
        return obj
    if isinstance(obj, RModule):
        return obj.q_presentation()
    if isinstance(obj, QuotientRing):
        return RModule.free(obj).q_presentation()
    raise TypeError("cannot read a presentation from %r" % (obj,))


def _free_resolution_columns(ring: PolyRing, shifts: Tuple[int, ...], relations: Sequence[Column]):
    """Shifts and differentials of a resolution whose first map is a minimal subset of relations."""
    out_shifts = {0: tuple(shifts)}
    d = {}
    rels = [c for c in relations if any(not f.is_zero() for f in c)]
    if not shifts or not rels:
        return out_shifts, d
    keep = minimal_column_subset(rels, shifts, ring)
    cols = [rels[i] for i in keep]
    j = 1
    cur_shifts = tuple(shifts)
    while cols:
        src = tuple(column_degree(c, cur_shifts) for c in cols)
        out_shifts[j] = src
        d[j] = PolyMatrix.from_columns(ring, len(cur_shifts), cols)
        syz = syzygies(cols, cur_shifts, ring, minimal=True)
        cols = list(syz.columns)
        cur_shifts = src
        j += 1
    return out_shifts, d


def minimal_resolution_Q(presentation) -> Resolution:
    """Minimal graded free resolution over the polynomial ring (finite, Hilbert syzygy theorem)."""
    pres = prune_presentation(_as_presentation(presentation))
    shifts, d = _free_resolution_columns(pres.ring, pres.shifts, pres.relations)
    C = GradedComplex(pres.ring, shifts, d)
    return Resolution(C, "Q", True, None, pres)


# ---------------------------------------------------------------------------
# resolutions over R


def _project(col: Column, k: int) -> Column:
    return col[:k]


def _resolution_R_groebner(M: RModule, N: int) -> Resolution:
    R = M.ring
    Q = R.Q
    pres = prune_presentation(Presentation(Q, M.shifts, M.relations))
    shifts = {0: pres.shifts}
    d = {}
    if not pres.shifts:
        return Resolution(GradedComplex(Q, shifts, d), "R", True, N, M)
    fixed = R.ideal_block(pres.shifts)
    rels = [R.nf_column(c) for c in pres.relations]
    rels = [c for c in rels if any(not f.is_zero() for f in c)]
    keep = minimal_column_subset(rels, pres.shifts, Q, fixed=fixed) if rels else []
    cols = [rels[i] for i in keep]
    cur = pres.shifts
    for j in range(1, N + 1):
        if not cols:
            break
        src = tuple(column_degree(c, cur) for c in cols)
        shifts[j] = src
        d[j] = PolyMatrix.from_columns(Q, len(cur), cols)
        if j == N:
            break
        block = R.ideal_block(cur)
        syz = syzygies(list(cols) + block, cur, Q, minimal=False)
        proj = [_project(c, len(cols)) for c in syz.columns]
        proj = [R.nf_column(c) for c in proj]
        proj = [c for c in proj if any(not f.is_zero() for f in c)]
        if not proj:
            cols = []
            break
        keep = minimal_column_subset(proj, src, Q, fixed=R.ideal_block(src))
        cols = [proj[i] for i in keep]
        cur = src
    return Resolution(GradedComplex(Q, shifts, d), "R", True, N, M)


class GradedPieces:
    """Degreewise bases of R = Q/I (standard monomials) with cached normal forms."""

    def __init__(self, R: QuotientRing):
        self.R = R
        self.Q = R.Q
        self._lead = R.gb.leading_monomials() if R.gb.elements else []
        self._std: Dict[int, Tuple] = {}
        self._nf: Dict[Tuple[int, ...], Dict] = {}

    def std(self, d: int):
        got = self._std.get(d)
        if got is None:
            if d < 0:
                mons = ()
            else:
                mons = tuple(m for m in self.Q.monomials_of_degree(d)
                             if not any(all(a <= b for a, b in zip(L, m)) for L in self._lead))
            got = (mons, {m: k for k, m in enumerate(mons)})
            self._std[d] = got
        return got

    def nf_mono(self, exps) -> Dict:
        got = self._nf.get(exps)
        if got is None:
            if not self._lead or not any(all(a <= b for a, b in zip(L, exps)) for L in self._lead):
                got = {exps: 1}
            else:
                got = self.R.nf(self.Q.monomial(exps)).term_dict()
            self._nf[exps] = got
        return got

    def basis(self, shifts: Sequence[int], d: int):
        """Index of the degree-d piece of the free module with the given shifts."""
        index = {}
        for l, s in enumerate(shifts):
            mons, _ = self.std(d - s)
            for m in mons:
                index[(l, m)] = len(index)
        return index

    def coords(self, vec: Sequence[Poly], index, mult=None) -> np.ndarray:
        """Coordinates of NF(mult * vec) in a degree piece."""
        p = self.Q.p
        out = np.zeros(len(index), dtype=np.int64)
        for l, g in enumerate(vec):
            for m, c in g.term_dict().items():
                mm = m if mult is None else tuple(a + b for a, b in zip(m, mult))
                for s, c2 in self.nf_mono(mm).items():
                    k = index.get((l, s))
                    if k is None:
                        raise ValueError("vector is not homogeneous of the requested degree")
                    out[k] = (out[k] + c * c2) % p
        return out

    def map_matrix(self, columns: Sequence[Column], src_shifts, tgt_shifts, d: int) -> np.ndarray:
        """Matrix of the R-linear map given by columns, restricted to degree d."""
        src = self.basis(src_shifts, d)
        tgt = self.basis(tgt_shifts, d)
        A = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for (l, m), k in src.items():
            A[:, k] = self.coords(columns[l], tgt, m)
        return A

    def span_matrix(self, columns: Sequence[Column], col_degrees, tgt_shifts, d: int) -> np.ndarray:
        """Rows spanning the degree-d part of the submodule generated by columns."""
        tgt = self.basis(tgt_shifts, d)
        rows = []
        for c, a in zip(columns, col_degrees):
            if a is None or a > d:
                continue
            mons, _ = self.std(d - a)
            for m in mons:
                rows.append(self.coords(c, tgt, m))
        if not rows:
            return np.zeros((0, len(tgt)), dtype=np.int64)
        return np.array(rows, dtype=np.int64)

    def element(self, row, index) -> Tuple[Poly, ...]:
        rank = 1 + max((l for l, _ in index), default=-1)
        terms: List[Dict] = [dict() for _ in range(rank)]
        for (l, m), k in index.items():
            if row[k]:
                terms[l][m] = int(row[k])
        return tuple(Poly(self.Q, t) for t in terms)


def backelin_cap(R: QuotientRing, i: int) -> int:
    """Upper bound for the degrees of the i-th syzygies of k over R."""
    D = max((g.degree() for g in R.gb.elements), default=2)
    return 1 + (i - 1) * (max(D, 2) - 1)


def _resolution_k_degreewise(R: QuotientRing, N: int, stop=None) -> Resolution:
    """Degree-by-degree linear algebra; ``stop(i, rank)`` may end the computation early."""
    Q = R.Q
    pieces = GradedPieces(R)
    shifts = {0: (0,)}
    d = {}
    cols = [(x,) for x in Q.gens()]
    if not cols:
        return Resolution(GradedComplex(Q, shifts, d), "R", True, N, RModule.residue_field(R))
    shifts[1] = (1,) * len(cols)
    d[1] = PolyMatrix.from_columns(Q, 1, cols)
    p = Q.p
    for i in range(2, N + 1):
        src, tgt = shifts[i - 1], shifts[i - 2]
        new_cols: List[Column] = []
        new_degs: List[int] = []
        lo = min(src) + 1
        for deg in range(lo, backelin_cap(R, i) + 1):
            A = pieces.map_matrix(cols, src, tgt, deg)
            index = pieces.basis(src, deg)
            if not index:
                continue
            ker = linalg.nullspace(A, p) if A.shape[0] else np.eye(len(index), dtype=np.int64)
            if ker.shape[0] == 0:
                continue
            W = pieces.span_matrix(new_cols, new_degs, src, deg)
            for k in linalg.complement_rows(W, ker, p):
                new_cols.append(pieces.element(ker[k], index))
                new_degs.append(deg)
        if not new_cols:
            break
        shifts[i] = tuple(new_degs)
        d[i] = PolyMatrix.from_columns(Q, len(src), new_cols)
        cols = new_cols
        if stop is not None and stop(i, len(new_cols)):
            return Resolution(GradedComplex(Q, shifts, d), "R", True, i, RModule.residue_field(R))
    return Resolution(GradedComplex(Q, shifts, d), "R", True, N, RModule.residue_field(R))


def resolution_R(M, N: int, method: str = "auto") -> Resolution:
    """Minimal R-free resolution of M truncated at homological degree N."""
    if N < 1:
        raise ValueError("truncation N must be at least 1")
    if isinstance(M, QuotientRing):
        M = RModule.free(M)
    if method not in ("auto", "groebner", "degreewise"):
        raise ValueError("unknown method %r" % method)
    if method == "degreewise" or (method == "auto" and M.is_residue_field()):
        if not M.is_residue_field():
            raise ValueError("the degreewise route only resolves the residue field")
        return _resolution_k_degreewise(M.ring, N)
    return _resolution_R_groebner(M, N)


def betti_numbers(res: Resolution, N: Optional[int] = None) -> Tuple[int, ...]:
    top = N if N is not None else (res.truncation if res.truncation is not None else res.complex.hi)
    return tuple(res.complex.rank(j) for j in range(0, top + 1))


# ---------------------------------------------------------------------------
# degreewise certificates


class _FreePieces(GradedPieces):
    """Degree pieces of Q itself (no ideal)."""

    def __init__(self, Q: PolyRing):
        self.R = None
        self.Q = Q
        self._lead = []
        self._std = {}
        self._nf = {}


def exactness_cap(C: GradedComplex) -> int:
    top = max((max(s) for s in C.shifts.values()), default=0)
    return top + C.ring.nvars + 2


def exactness_certificate(C: GradedComplex, cap: Optional[int] = None, ring: Optional[QuotientRing] = None,
                          upto: Optional[int] = None) -> Dict:
    """Check rank ker = rank im in every internal degree up to cap, in homological degrees > lo.

    Over Q when ring is None, otherwise over R = ring (entries read modulo I).
    """
    pieces = _FreePieces(C.ring) if ring is None else GradedPieces(ring)
    cap = exactness_cap(C) if cap is None else cap
    p = C.ring.p
    failures = []
    top = C.hi if upto is None else min(C.hi, upto)
    for j in range(C.lo + 1, top):
        dj = C.diff(j).columns()
        dj1 = C.diff(j + 1).columns()
        src, tgt, up = C.shifts.get(j, ()), C.shifts.get(j - 1, ()), C.shifts.get(j + 1, ())
        for deg in range(0, cap + 1):
            index = pieces.basis(src, deg)
            if not index:
                continue
            A = pieces.map_matrix(dj, src, tgt, deg) if tgt else np.zeros((0, len(index)), dtype=np.int64)
            ker = len(index) - linalg.rank(A, p)
            B = pieces.map_matrix(dj1, up, src, deg) if up else np.zeros((len(index), 0), dtype=np.int64)
            im = linalg.rank(B, p)
            if ker != im:
                failures.append((j, deg, ker, im))
    return {"cap": cap, "exact": not failures, "failures": failures}


def homology_dimensions(C: RComplex, degrees: Sequence[int]) -> Dict[int, Dict[int, int]]:
    """dim_k H_j(C)_d for the given internal degrees, by linear algebra."""
    pieces = GradedPieces(C.ring)
    p = C.ring.p
    out: Dict[int, Dict[int, int]] = {}

    def rel_rows(M: RModule, deg):
        degs = [column_degree(c, M.shifts) for c in M.relations]
        return pieces.span_matrix(list(M.relations), degs, M.shifts, deg)

    def rank_stack(A_cols: np.ndarray, W: np.ndarray) -> int:
        # column span of A together with the row span of W, in the same ambient space
        mats = [A_cols.T] if A_cols.size else []
        if W.size:
            mats.append(W)
        if not mats:
            return 0
        return linalg.rank(np.vstack(mats), p)

    for j in range(C.lo, C.hi + 1):
        Mj, Mlow, Mup = C.module(j), C.module(j - 1), C.module(j + 1)
        row = {}
        for deg in degrees:
            V = pieces.basis(Mj.shifts, deg)
            if not V:
                row[deg] = 0
                continue
            Wj = rel_rows(Mj, deg)
            if Mlow.rank:
                A = pieces.map_matrix(C.map(j).columns(), Mj.shifts, Mlow.shifts, deg)
                Wl = rel_rows(Mlow, deg)
                r1 = rank_stack(A, Wl)
                r0 = linalg.rank(Wl, p) if Wl.size else 0
            else:
                r1 = r0 = 0
            if Mup.rank:
                B = pieces.map_matrix(C.map(j + 1).columns(), Mup.shifts, Mj.shifts, deg)
                r2 = rank_stack(B, Wj)
            else:
                r2 = linalg.rank(Wj, p) if Wj.size else 0
            row[deg] = len(V) - r1 + r0 - r2
        out[j] = row
    return out


# ---------------------------------------------------------------------------
# semifree resolutions of bounded complexes


@dataclass
class SemifreeResolution:
    """F -> M over Q with generators of K = ker(F -> M), which is acyclic.

    ``augmentation[j]`` maps F_j onto the generators of M_j; ``kernel[j]``
    has columns generating K_j inside F_j, of degrees ``kernel_shifts[j]``.
    """
    source: RComplex
    complex: GradedComplex
    kernel: Dict[int, PolyMatrix]
    kernel_shifts: Dict[int, Tuple[int, ...]]
    augmentation: Dict[int, PolyMatrix]

    def kernel_lifter(self, s: int) -> Optional["KernelLifter"]:
        return KernelLifter.build(self, s)


class KernelLifter:
    """Solves d(x) = y for a cycle y in K_s with x taken in K_{s+1}."""

    def __init__(self, K: PolyMatrix, A: PolyMatrix, target_shifts, source_shifts):
        self.K = K
        self.A = A
        self.target_shifts = tuple(target_shifts)
        ring = K.ring
        self.lifter = Lifter(A.columns(), self.target_shifts, ring, source_shifts)

    @classmethod
    def build(cls, F: "SemifreeResolution", s: int):
        C = F.complex
        if C.rank(s + 1) == 0 or C.rank(s) == 0:
            return None
        K = F.kernel[s + 1]
        A = C.diff(s + 1) @ K
        return cls(K, A, C.shifts[s], F.kernel_shifts[s + 1])

    def lift(self, y: Column) -> Column:
        c = self.lifter.lift(y)
        if c is None:
            raise LiftError("obstruction is not a boundary in the kernel complex")
        return self.K.apply(c)

    def lift_matrix(self, Y: PolyMatrix) -> PolyMatrix:
        cols = [self.lift(c) if any(not f.is_zero() for f in c) else tuple(self.K.ring.zero() for _ in range(self.K.nrows))
                for c in Y.columns()]
        return PolyMatrix.from_columns(self.K.ring, self.K.nrows, cols)


def _lift_through(lifters, F_old, kernel, kshifts, s: int, Y: PolyMatrix) -> PolyMatrix:
    """Columns x in F_{s+1} with d x = Y, chosen inside the kernel complex."""
    if Y.is_zero():
        return PolyMatrix(Y.ring, F_old.rank(s + 1), Y.ncols)
    if F_old.rank(s + 1) == 0:
        raise LiftError("nonzero obstruction in degree %d with nothing above it" % s)
    lf = lifters.get(s)
    if lf is None:
        K = kernel[s + 1]
        lf = KernelLifter(K, F_old.diff(s + 1) @ K, F_old.shifts[s], kshifts[s + 1])
        lifters[s] = lf
    return lf.lift_matrix(Y)


def _pad(M: PolyMatrix, nrows: int, ncols: int, r0: int = 0, c0: int = 0) -> Dict:
    return {(i + r0, j + c0): f for (i, j), f in M.items()}


def semifree_resolution(C: RComplex) -> SemifreeResolution:
    """Resolve a bounded complex by iterated cones over the Q-resolutions of its modules.

    The cone on P keeps the sign of d_P, so the comparison maps satisfy
    d phi_k + phi_{k-1} d_P = 0.
    """
    if C.summands:
        return direct_sum_semifree([semifree_resolution(s) for s in C.summands], C)
    R = C.ring
    Q = R.Q
    shifts: Dict[int, Tuple[int, ...]] = {}
    d: Dict[int, PolyMatrix] = {}
    kernel: Dict[int, PolyMatrix] = {}
    kshifts: Dict[int, Tuple[int, ...]] = {}
    aug: Dict[int, PolyMatrix] = {}
    offsets: Dict[int, int] = {}

    def rank(n):
        return len(shifts.get(n, ()))

    for t in range(C.lo, C.hi + 1):
        M = C.module(t)
        F_old = GradedComplex(Q, dict(shifts), dict(d))
        rels = [c for c in M.q_relations() if any(not f.is_zero() for f in c)]
        Ps, Pd = _free_resolution_columns(Q, M.shifts, rels) if M.rank else ({}, {})
        L = max(Ps) if Ps else -1
        # lift d_t to a chain map phi: P -> F_old[t-1]
        phi: Dict[int, PolyMatrix] = {}
        lifters: Dict[int, KernelLifter] = {}
        dt = C.map(t)
        if M.rank and not dt.is_zero() and rank(t - 1):
            sec = PolyMatrix(Q, rank(t - 1), dt.nrows,
                             {(offsets[t - 1] + i, i): Q.one() for i in range(dt.nrows)})
            x0 = sec @ dt
            y = _lift_through(lifters, F_old, kernel, kshifts, t - 2, F_old.diff(t - 1) @ x0) \
                if rank(t - 2) else PolyMatrix(Q, rank(t - 1), x0.ncols)
            phi[0] = x0 - y
            for k in range(1, L + 1):
                rhs = -(phi[k - 1] @ Pd[k])
                if rhs.is_zero():
                    break
                phi[k] = _lift_through(lifters, F_old, kernel, kshifts, t + k - 2, rhs)
        # assemble the cone
        new_shifts = dict(shifts)
        for k, sh in Ps.items():
            new_shifts[t + k] = shifts.get(t + k, ()) + tuple(sh)
        new_rank = {n: len(s) for n, s in new_shifts.items()}
        touched = set(t + k for k in Ps) | set(t + k + 1 for k in Ps)
        for n in sorted(touched):
            rows, cols = new_rank.get(n - 1, 0), new_rank.get(n, 0)
            if rows == 0 or cols == 0:
                continue
            entries = _pad(d[n], rows, cols) if n in d else {}
            k = n - t
            if k in Ps:
                c0 = rank(n)
                if k in phi:
                    entries.update(_pad(phi[k], rows, cols, 0, c0))
                if k >= 1:
                    entries.update(_pad(Pd[k], rows, cols, rank(n - 1), c0))
            d[n] = PolyMatrix(Q, rows, cols, entries)
        for k, sh in Ps.items():
            n = t + k
            old_k = kernel.get(n)
            if k == 0:
                block = PolyMatrix.from_columns(Q, len(sh), rels)
                bsh = tuple(column_degree(c, sh) for c in rels)
            else:
                block = PolyMatrix.identity(Q, len(sh))
                bsh = tuple(sh)
            kernel[n] = PolyMatrix.block_diag(Q, [old_k, block]) if old_k is not None else \
                PolyMatrix.block_diag(Q, [PolyMatrix(Q, rank(n), 0), block])
            kshifts[n] = kshifts.get(n, ()) + bsh
        for n, A in list(aug.items()):
            if new_rank.get(n, 0) != A.ncols:
                aug[n] = PolyMatrix(Q, A.nrows, new_rank[n], dict(A.items()))
        if M.rank:
            offsets[t] = rank(t)
            aug[t] = PolyMatrix(Q, M.rank, new_rank[t], {(i, rank(t) + i): Q.one() for i in range(M.rank)})
        shifts = new_shifts
    F = GradedComplex(Q, shifts, d)
    for n in F.degrees:
        aug.setdefault(n, PolyMatrix(Q, C.module(n).rank, F.rank(n)))
        if n not in kernel:
            kernel[n] = PolyMatrix.identity(Q, F.rank(n))
            kshifts[n] = F.shifts[n]
    return SemifreeResolution(C, F, kernel, kshifts, aug)


def direct_sum_semifree(parts: Sequence[SemifreeResolution], source: RComplex) -> SemifreeResolution:
    Q = source.ring.Q
    degrees = sorted(set(n for P in parts for n in P.complex.degrees))
    shifts = {n: sum((P.complex.shifts.get(n, ()) for P in parts), ()) for n in degrees}
    d = {}
    for n in degrees:
        if (n - 1) in shifts:
            d[n] = PolyMatrix.block_diag(Q, [P.complex.diff(n) for P in parts])
    kernel, kshifts, aug = {}, {}, {}
    for n in degrees:
        blocks = []
        for P in parts:
            K = P.kernel.get(n)
            blocks.append(K if K is not None else PolyMatrix(Q, P.complex.rank(n), 0))
        kernel[n] = PolyMatrix.block_diag(Q, blocks)
        kshifts[n] = sum((P.kernel_shifts.get(n, ()) for P in parts), ())
        ab = []
        for P in parts:
            A = P.augmentation.get(n)
            ab.append(A if A is not None else PolyMatrix(Q, P.source.module(n).rank, P.complex.rank(n)))
        aug[n] = PolyMatrix.block_diag(Q, ab)
    return SemifreeResolution(source, GradedComplex(Q, shifts, d), kernel, kshifts, aug)


def resolve_complex_Q(C) -> Resolution:
    """Minimal Q-free complex quasi-isomorphic to a bounded complex of R-modules."""
    if isinstance(C, RModule):
        C = RComplex.from_module(C)
    F = semifree_resolution(C)
    return Resolution(minimalize(F.complex), "Q", True, None, C)
