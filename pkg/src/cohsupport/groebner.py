"""Gröbner bases for ideals and graded submodules over a prime field.

Everything runs through one Buchberger engine on module vectors.  A vector
is a dict ``{(position, exponents): coefficient}``; an ideal is a submodule
of the rank-one free module.  Module orders compare a block index first
(used for elimination), then the shifted weighted degree, then reverse
lexicographic exponents, then the lower position.
"""
from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Exps, InhomogeneousError, Poly, PolyRing, divides, inv_mod

Term = Tuple[int, Exps]
Vec = Dict[Term, int]


class _Ctx:
    """Term order and grading data for a free module over ``ring``."""

    def __init__(self, ring: PolyRing, shifts: Sequence[int], blocks: Sequence[int] = None):
        self.ring = ring
        self.p = ring.p
        self.shifts = tuple(shifts)
        self.blocks = tuple(blocks) if blocks is not None else (0,) * len(self.shifts)
        self.weights = ring.weights
        self._nk: Dict[Term, tuple] = {}

    @property
    def rank(self):
        return len(self.shifts)

    def nk(self, t: Term):
        """Sort key; smaller means larger in the term order."""
        v = self._nk.get(t)
        if v is None:
            pos, e = t
            deg = self.shifts[pos] + sum(w * x for w, x in zip(self.weights, e))
            v = (self.blocks[pos], -deg, e[::-1], pos)
            self._nk[t] = v
        return v

    def tdeg(self, t: Term) -> int:
        pos, e = t
        return self.shifts[pos] + sum(w * x for w, x in zip(self.weights, e))

    def lt(self, v: Vec) -> Term:
        return min(v, key=self.nk)


def _monic(v: Vec, ctx: _Ctx) -> Vec:
    c = v[ctx.lt(v)]
    if c == 1:
        return v
    inv = inv_mod(c, ctx.p)
    p = ctx.p
    return {t: x * inv % p for t, x in v.items()}


class _Basis:
    def __init__(self, ctx: _Ctx):
        self.ctx = ctx
        self.vecs: List[Vec] = []
        self.lts: List[Term] = []
        self.by_pos: Dict[int, List[Tuple[Exps, int]]] = defaultdict(list)

    def add(self, v: Vec) -> int:
        v = _monic(v, self.ctx)
        t = self.ctx.lt(v)
        idx = len(self.vecs)
        self.vecs.append(v)
        self.lts.append(t)
        self.by_pos[t[0]].append((t[1], idx))
        return idx

    def divisor(self, t: Term) -> Optional[int]:
        e = t[1]
        for ge, i in self.by_pos.get(t[0], ()):
            if all(a <= b for a, b in zip(ge, e)):
                return i
        return None


def _reduce(v: Vec, basis: _Basis, full: bool = True, cof: Dict[int, Dict[Exps, int]] = None) -> Vec:
    """Normal form of ``v``; lowest-index divisor wins."""
    ctx = basis.ctx
    p = ctx.p
    nk = ctx.nk
    v = dict(v)
    heap = [(nk(t), t) for t in v]
    heapq.heapify(heap)
    rem: Vec = {}
    while heap:
        _, t = heapq.heappop(heap)
        c = v.pop(t, 0)
        if not c:
            continue
        i = basis.divisor(t)
        if i is None:
            rem[t] = c
            if not full:
                rem.update(v)
                return rem
            continue
        g = basis.vecs[i]
        glt = basis.lts[i]
        q = tuple(b - a for a, b in zip(glt[1], t[1]))
        if cof is not None:
            slot = cof.setdefault(i, {})
            slot[q] = (slot.get(q, 0) + c) % p
        for (gp, ge), gc in g.items():
            if gp == glt[0] and ge == glt[1]:
                continue
            nt = (gp, tuple(a + b for a, b in zip(ge, q)))
            old = v.get(nt)
            new = ((old or 0) - c * gc) % p
            if new:
                v[nt] = new
                if old is None:
                    heapq.heappush(heap, (nk(nt), nt))
            elif old is not None:
                del v[nt]
    return rem


def _spoly(basis: _Basis, i: int, j: int, lcm: Exps) -> Vec:
    p = basis.ctx.p
    out: Vec = {}
    for k, sign in ((i, 1), (j, p - 1)):
        e0 = basis.lts[k][1]
        q = tuple(a - b for a, b in zip(lcm, e0))
        for (gp, ge), gc in basis.vecs[k].items():
            nt = (gp, tuple(a + b for a, b in zip(ge, q)))
            val = (out.get(nt, 0) + sign * gc) % p
            if val:
                out[nt] = val
            else:
                out.pop(nt, None)
    return out


def _lcm(a: Exps, b: Exps) -> Exps:
    return tuple(max(x, y) for x, y in zip(a, b))


def _buchberger(ctx: _Ctx, gens: Sequence[Vec], nfixed: int = 0) -> Tuple[List[Vec], List[int]]:
    """Reduced Gröbner basis and the indices of inputs that were needed.

    Inputs and S-pairs are processed by increasing degree, pairs first, so
    for homogeneous input the kept indices form a minimal generating set.
    """
    basis = _Basis(ctx)
    ideal_mode = ctx.rank == 1
    order = sorted((i for i, g in enumerate(gens) if g),
                   key=lambda i: (ctx.tdeg(ctx.lt(gens[i])), i >= nfixed, i))
    pending = list(order)
    gpos = 0
    G: List[int] = []
    B: List[Tuple[int, int, int, Exps, int]] = []  # (deg, i, j, lcm, seq)
    kept: List[int] = []
    seq = 0

    def update(h: int):
        nonlocal G, B, seq
        hp, he = basis.lts[h]

        def disjoint(g):
            return ideal_mode and all(not (a and b) for a, b in zip(he, basis.lts[g][1]))

        C = [g for g in G if basis.lts[g][0] == hp]
        lc = {g: _lcm(he, basis.lts[g][1]) for g in C}
        D: List[int] = []
        for idx, g1 in enumerate(C):
            if disjoint(g1):
                D.append(g1)
                continue
            m1 = lc[g1]
            if any(divides(lc[g2], m1) for g2 in C[idx + 1:]) or any(divides(lc[g2], m1) for g2 in D):
                continue
            D.append(g1)
        keepB = []
        for item in B:
            _, i, j, m, _ = item
            if basis.lts[i][0] == hp and divides(he, m) and _lcm(basis.lts[i][1], he) != m \
                    and _lcm(basis.lts[j][1], he) != m:
                continue
            keepB.append(item)
        for g in D:
            if disjoint(g):
                continue
            m = lc[g]
            seq += 1
            keepB.append((ctx.tdeg((hp, m)), g, h, m, seq))
        B = keepB
        G = [g for g in G if not (basis.lts[g][0] == hp and divides(he, basis.lts[g][1]))] + [h]

    while B or gpos < len(pending):
        dg = ctx.tdeg(ctx.lt(gens[pending[gpos]])) if gpos < len(pending) else None
        dp = min(b[0] for b in B) if B else None
        if dp is not None and (dg is None or dp <= dg):
            k = min(range(len(B)), key=lambda t: (B[t][0], B[t][4]))
            _, i, j, m, _ = B.pop(k)
            h = _reduce(_spoly(basis, i, j, m), basis, full=False)
            source = None
        else:
            source = pending[gpos]
            gpos += 1
            h = _reduce(gens[source], basis, full=False)
        if not h:
            continue
        h = _reduce(h, basis, full=True)
        idx = basis.add(h)
        if source is not None:
            kept.append(source)
        update(idx)
    return _interreduce(ctx, basis), kept


def _interreduce(ctx: _Ctx, basis: _Basis) -> List[Vec]:
    lts = basis.lts
    keep = []
    for i, t in enumerate(lts):
        if any(j != i and lts[j][0] == t[0] and divides(lts[j][1], t[1]) and (lts[j] != t or j < i)
               for j in range(len(lts))):
            continue
        keep.append(i)
    small = _Basis(ctx)
    for i in keep:
        small.add(basis.vecs[i])
    out = []
    for k, i in enumerate(keep):
        v = small.vecs[k]
        t = small.lts[k]
        rest = {s: c for s, c in v.items() if s != t}
        others = _Basis(ctx)
        for k2 in range(len(keep)):
            if k2 != k:
                others.add(small.vecs[k2])
        red = _reduce(rest, others, full=True)
        red[t] = 1
        out.append(red)
    out.sort(key=lambda v: ctx.nk(ctx.lt(v)))
    return out


# ---------------------------------------------------------------------------
# conversions


def _column_to_vec(col: Sequence[Poly], offset: int = 0) -> Vec:
    v: Vec = {}
    for pos, f in enumerate(col):
        for e, c in f.term_dict().items():
            v[(pos + offset, e)] = c
    return v


def _vec_to_column(v: Vec, ring: PolyRing, rank: int, offset: int = 0) -> Tuple[Poly, ...]:
    parts: List[Dict[Exps, int]] = [dict() for _ in range(rank)]
    for (pos, e), c in v.items():
        parts[pos - offset][e] = c
    return tuple(Poly(ring, d, _clean=True) for d in parts)


def column_degree(col: Sequence[Poly], shifts: Sequence[int]):
    """Common degree of a column vector (entry degree plus row shift), None if zero."""
    degs = set()
    for f, s in zip(col, shifts):
        for e in f.term_dict():
            degs.add(f.ring.wdeg(e) + s)
    if len(degs) > 1:
        raise InhomogeneousError("column is not homogeneous for shifts %s" % (list(shifts),))
    return degs.pop() if degs else None


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class Ideal:
    ring: PolyRing
    generators: Tuple[Poly, ...]

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero())
        for g in gens:
            if g.ring != self.ring:
                raise ValueError("generator in the wrong ring")
            if not g.is_homogeneous():
                raise InhomogeneousError("inhomogeneous generator %s" % g)
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, ring: PolyRing, *texts) -> "Ideal":
        return cls(ring, tuple(ring.parse(t) if isinstance(t, str) else t for t in texts))

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, tuple(a * b for a in self.generators for b in other.generators))

    def gb(self) -> "GroebnerBasis":
        return reduced_groebner(self)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolyRing
    elements: Tuple[Poly, ...]
    order: str = "degrevlex"
    _basis: _Basis = field(default=None, repr=False, compare=False)

    def _engine(self) -> _Basis:
        if self._basis is None:
            b = _Basis(_Ctx(self.ring, (0,)))
            for g in self.elements:
                b.add(_column_to_vec((g,)))
            object.__setattr__(self, "_basis", b)
        return self._basis

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def contains(self, f: Poly) -> bool:
        return normal_form(f, self)[0].is_zero()

    def leading_monomials(self) -> List[Exps]:
        return [g.lead()[0] for g in self.elements]

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.elements)


def _as_gens(obj, ring: PolyRing = None):
    if isinstance(obj, Ideal):
        return obj.ring, list(obj.generators)
    if isinstance(obj, GroebnerBasis):
        return obj.ring, list(obj.elements)
    gens = [g for g in obj if not g.is_zero()]
    if ring is None:
        if not gens:
            raise ValueError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    return ring, gens


def reduced_groebner(gens, ring: PolyRing = None, allow_inhomogeneous: bool = False) -> GroebnerBasis:
    if isinstance(gens, GroebnerBasis):
        return gens
    ring, gens = _as_gens(gens, ring)
    if not allow_inhomogeneous:
        for g in gens:
            if not g.is_homogeneous():
                raise InhomogeneousError("inhomogeneous generator %s" % g)
    ctx = _Ctx(ring, (0,))
    vecs, _ = _buchberger(ctx, [_column_to_vec((g,)) for g in gens])
    elements = tuple(_vec_to_column(v, ring, 1)[0] for v in vecs)
    return GroebnerBasis(ring, elements)


def normal_form(f: Poly, gb: GroebnerBasis):
    """Return (remainder, cofactors) with f = sum(cof_i * g_i) + remainder."""
    basis = gb._engine()
    cof: Dict[int, Dict[Exps, int]] = {}
    rem = _reduce(_column_to_vec((f,)), basis, full=True, cof=cof)
    ring = gb.ring
    cofactors = tuple(Poly(ring, cof.get(i, {})) for i in range(len(gb.elements)))
    return _vec_to_column(rem, ring, 1)[0], cofactors


def minimal_generators(ideal) -> Tuple[int, Tuple[Poly, ...]]:
    """Size and a minimal generating subset (inputs kept in given order)."""
    ring, gens = _as_gens(ideal)
    for g in gens:
        if not g.is_homogeneous():
            raise InhomogeneousError("inhomogeneous generator %s" % g)
    _, kept = _buchberger(_Ctx(ring, (0,)), [_column_to_vec((g,)) for g in gens])
    subset = tuple(gens[i] for i in sorted(kept))
    return len(subset), subset


def krull_dimension(ideal) -> int:
    """Dimension of ring/ideal; -1 for the unit ideal.

    Largest set of variables on which no leading monomial is supported.
    """
    gb = reduced_groebner(ideal) if not isinstance(ideal, GroebnerBasis) else ideal
    n = gb.ring.nvars
    if gb.is_unit():
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in gb.leading_monomials()]
    for size in range(n, -1, -1):
        for U in combinations(range(n), size):
            Us = set(U)
            if not any(s <= Us for s in supports):
                return size
    return 0


def radical_membership(f: Poly, ideal) -> bool:
    """f in sqrt(J) iff 1 in J + (t*f - 1) over the ring with one more variable."""
    ring, gens = _as_gens(ideal, f.ring)
    if f.is_zero():
        return True
    if not f.is_homogeneous():
        raise InhomogeneousError("radical membership needs a homogeneous polynomial")
    if f.is_constant():
        return bool(reduced_groebner(gens, ring).is_unit()) if gens else False
    name = "_t"
    while name in ring.variables:
        name += "_"
    big = PolyRing(ring.p, ring.variables + (name,), ring.weights + (1,))

    def lift(g: Poly) -> Poly:
        return Poly(big, {e + (0,): c for e, c in g.term_dict().items()}, _clean=True)

    t = big.gen(name)
    extra = t * lift(f) - big.one()
    gb = reduced_groebner([lift(g) for g in gens] + [extra], big, allow_inhomogeneous=True)
    return gb.is_unit()


def _ideal_gens(J):
    if isinstance(J, GroebnerBasis):
        return list(J.elements)
    if isinstance(J, Ideal):
        return list(J.generators)
    return [g for g in J if not g.is_zero()]


def variety_contains(J1, J2) -> bool:
    """V(J1) is contained in V(J2)."""
    gens1 = _ideal_gens(J1)
    ring = J1.ring if hasattr(J1, "ring") else None
    return all(radical_membership(g, Ideal(g.ring, tuple(gens1)) if ring is None else Ideal(ring, tuple(gens1)))
               for g in _ideal_gens(J2))


def variety_equal(J1, J2) -> bool:
    return variety_contains(J1, J2) and variety_contains(J2, J1)


def ideal_contains(J, f: Poly) -> bool:
    return reduced_groebner(J).contains(f)


def ideals_equal(J1, J2) -> bool:
    return reduced_groebner(J1).elements == reduced_groebner(J2).elements


# ---------------------------------------------------------------------------
# submodules


@dataclass(frozen=True)
class SubmoduleBasis:
    """Columns in a graded free module ``ring^rank`` with the given shifts."""
    ring: PolyRing
    shifts: Tuple[int, ...]
    columns: Tuple[Tuple[Poly, ...], ...]
    order: str = "block-elimination/term-over-position"

    @property
    def rank(self):
        return len(self.shifts)

    def column_degrees(self) -> Tuple[int, ...]:
        return tuple(column_degree(c, self.shifts) for c in self.columns)

    def is_zero(self) -> bool:
        return not self.columns


def _check_columns(ring, columns, shifts):
    degs = []
    for c in columns:
        if len(c) != len(shifts):
            raise ValueError("column length %d does not match rank %d" % (len(c), len(shifts)))
        degs.append(column_degree(c, shifts))
    return degs


def module_groebner(columns, shifts, ring: PolyRing) -> List[Tuple[Poly, ...]]:
    ctx = _Ctx(ring, shifts)
    _check_columns(ring, columns, shifts)
    vecs, _ = _buchberger(ctx, [_column_to_vec(c) for c in columns])
    return [_vec_to_column(v, ring, len(shifts)) for v in vecs]


def minimal_column_subset(columns, shifts, ring: PolyRing, fixed=()) -> List[int]:
    """Indices of ``columns`` forming a minimal generating set modulo ``fixed``.

    ``fixed`` columns are always part of the submodule but not counted; they
    are fed ahead of candidates of the same degree.
    """
    _check_columns(ring, list(fixed) + list(columns), shifts)
    nfix = len(fixed)
    gens = [_column_to_vec(c) for c in fixed] + [_column_to_vec(c) for c in columns]
    _, kept = _buchberger(_Ctx(ring, shifts), gens, nfixed=nfix)
    return sorted(i - nfix for i in kept if i >= nfix)


class Lifter:
    """Solve ``A c = y`` for a fixed homogeneous matrix ``A`` given by columns.

    Built on a Gröbner basis of the graph module {(A u, u)} under an order
    that eliminates the target block.
    """

    def __init__(self, columns, shifts, ring: PolyRing, source_shifts=None):
        self.ring = ring
        self.shifts = tuple(shifts)
        self.columns = [tuple(c) for c in columns]
        r = len(self.shifts)
        m = len(self.columns)
        degs = _check_columns(ring, self.columns, self.shifts)
        if source_shifts is None:
            source_shifts = [d if d is not None else 0 for d in degs]
        self.source_shifts = tuple(source_shifts)
        for d, s in zip(degs, self.source_shifts):
            if d is not None and d != s:
                raise InhomogeneousError("column degree %d differs from source shift %d" % (d, s))
        self.r, self.m = r, m
        self.ctx = _Ctx(ring, self.shifts + self.source_shifts, (0,) * r + (1,) * m)
        gens = []
        for k, c in enumerate(self.columns):
            v = _column_to_vec(c)
            v[(r + k, (0,) * ring.nvars)] = 1
            gens.append(v)
        vecs, _ = _buchberger(self.ctx, gens)
        self.basis = _Basis(self.ctx)
        for v in vecs:
            self.basis.add(v)
        self._vecs = vecs

    def syzygy_vectors(self) -> List[Tuple[Poly, ...]]:
        r = self.r
        out = []
        for v in self._vecs:
            if all(pos >= r for pos, _ in v):
                out.append(_vec_to_column(v, self.ring, self.m, offset=r))
        return out

    def lift(self, y: Sequence[Poly]) -> Optional[Tuple[Poly, ...]]:
        """Coefficients c with sum c_k A_k = y, or None when y is not in the image."""
        if len(y) != self.r:
            raise ValueError("vector length does not match target rank")
        rem = _reduce(_column_to_vec(y), self.basis, full=True)
        if any(pos < self.r for pos, _ in rem):
            return None
        p = self.ring.p
        neg = {t: p - c for t, c in rem.items()}
        return _vec_to_column(neg, self.ring, self.m, offset=self.r)

    def contains(self, y) -> bool:
        return self.lift(y) is not None


def syzygies(columns, shifts=None, ring: PolyRing = None, minimal: bool = True) -> SubmoduleBasis:
    """Generators of the module of relations among the given columns."""
    columns = [tuple(c) for c in columns]
    if ring is None:
        ring = next(f.ring for c in columns for f in c)
    if shifts is None:
        shifts = (0,) * (len(columns[0]) if columns else 0)
    degs = _check_columns(ring, columns, shifts)
    src = tuple(d if d is not None else 0 for d in degs)
    if not columns:
        return SubmoduleBasis(ring, src, ())
    lifter = Lifter(columns, shifts, ring, src)
    syz = lifter.syzygy_vectors()
    if minimal and syz:
        keep = minimal_column_subset(syz, src, ring)
        syz = [syz[i] for i in keep]
    return SubmoduleBasis(ring, src, tuple(syz))


def ideal_quotient(J, f: Poly) -> Ideal:
    """(J : f) for homogeneous J and f."""
    ring, gens = _as_gens(J, f.ring)
    if f.is_zero():
        return Ideal(ring, (ring.one(),))
    cols = [(f,)] + [(g,) for g in gens]
    syz = syzygies(cols, (0,), ring)
    return Ideal(ring, tuple(c[0] for c in syz.columns))


def intersect(J1, J2) -> Ideal:
    ring, g1 = _as_gens(J1)
    _, g2 = _as_gens(J2, ring)
    one, zero = ring.one(), ring.zero()
    cols = [(one, one)] + [(g, zero) for g in g1] + [(zero, g) for g in g2]
    syz = syzygies(cols, (0, 0), ring)
    return Ideal(ring, tuple(c[0] for c in syz.columns))
