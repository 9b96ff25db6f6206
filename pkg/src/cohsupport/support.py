"""Twisted differential over S, its homology, and cohomological support varieties."""
from __future__ import annotations

import logging
from itertools import combinations
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple


from .algebra import Poly, PolyRing
from .groebner import (
    column_degree,
    GroebnerBasis,
    Ideal,
    Lifter,
    intersect,
    krull_dimension,
    minimal_column_subset,
    radical_membership,
    reduced_groebner,
    variety_equal,
)
from .homotopies import HigherHomotopySystem, higher_homotopy_system, verify_system
from .matrices import PolyMatrix, cancel_units
from .resolutions import (
    Presentation,
    QuotientRing,
    RComplex,
    RModule,
    direct_sum,
    prune_presentation,
    semifree_resolution,
)

log = logging.getLogger(__name__)

MINOR_LIMIT = 5000


class SquareZeroError(ArithmeticError):
    pass


@dataclass
class TwistedDifferential:
    """D acting on T = S (x) (F mod m); labels[k] = (j, index) of the basis element."""
    S: PolyRing
    D: PolyMatrix
    labels: List[Tuple[int, int]]

    @property
    def size(self) -> int:
        return self.D.nrows

    def row_shifts(self) -> Tuple[int, ...]:
        return tuple(-j for j, _ in self.labels)

    def square_is_zero(self) -> bool:
        return (self.D @ self.D).is_zero()

    def reduced(self) -> "TwistedDifferential":
        D, labels = cancel_units(self.D, self.labels)
        return TwistedDifferential(self.S, D, labels)


def _chi_power(S: PolyRing, a) -> Poly:
    return S.monomial(tuple(a))


def twisted_differential(system: HigherHomotopySystem, check: bool = True) -> TwistedDifferential:
    """D = d mod m + sum over a of chi^a (sigma_a mod m).

    The d term vanishes on a minimal resolution; it is kept so that the
    construction also applies to the non-minimal semifree resolution.
    """
    F = system.complex
    S = system.resolution.source.ring.S if system.n == system.resolution.source.ring.n else None
    if S is None:
        from .algebra import operator_ring
        S = operator_ring(system.n, F.ring.p)
    labels = [(j, i) for j in F.degrees for i in range(F.rank(j))]
    pos = {lab: k for k, lab in enumerate(labels)}
    acc: Dict[Tuple[int, int], Dict] = {}
    p = S.p

    def add(r, c, exps, coeff):
        slot = acc.setdefault((r, c), {})
        slot[exps] = (slot.get(exps, 0) + coeff) % p

    zero_exp = (0,) * S.nvars
    for j, m in F.d.items():
        for (r, c), f in m.items():
            c0 = f.constant_term()
            if c0:
                add(pos[(j - 1, r)], pos[(j, c)], zero_exp, c0)
    for a, comps in system.sigma.items():
        k = sum(a)
        for j, m in comps.items():
            for (r, c), f in m.items():
                c0 = f.constant_term()
                if c0:
                    add(pos[(j + 2 * k - 1, r)], pos[(j, c)], tuple(a), c0)
    entries = {key: Poly(S, terms) for key, terms in acc.items()}
    D = PolyMatrix(S, len(labels), len(labels), entries)
    T = TwistedDifferential(S, D, labels)
    if check and not T.square_is_zero():
        raise SquareZeroError("twisted differential does not square to zero")
    return T


@dataclass
class HomologyPresentation:
    """H(T, D) = coker of ``relations`` inside S^g with the given shifts."""
    S: PolyRing
    shifts: Tuple[int, ...]
    relations: Tuple[Tuple[Poly, ...], ...]

    @property
    def ngens(self) -> int:
        return len(self.shifts)

    def matrix(self) -> PolyMatrix:
        return PolyMatrix.from_columns(self.S, self.ngens, self.relations)


def homology_presentation(T: TwistedDifferential, reduce: bool = True) -> HomologyPresentation:
    """Generators are kernel generators of D; relations are the image plus kernel syzygies."""
    if reduce:
        T = T.reduced()
    S = T.S
    m = T.size
    if m == 0:
        return HomologyPresentation(S, (), ())
    row_sh = T.row_shifts()
    src_sh = tuple(s + 1 for s in row_sh)
    cols = T.D.columns()
    kernel_lifter = Lifter(cols, row_sh, S, src_sh)
    Z = kernel_lifter.syzygy_vectors()
    if not Z:
        return HomologyPresentation(S, (), ())
    keep = minimal_column_subset(Z, src_sh, S)
    Z = [Z[i] for i in keep]
    zsh = tuple(column_degree(z, src_sh) for z in Z)
    zl = Lifter(Z, src_sh, S, zsh)
    rels = []
    for c in cols:
        if all(f.is_zero() for f in c):
            continue
        coords = zl.lift(c)
        if coords is None:
            raise SquareZeroError("image column is not a cycle")
        rels.append(coords)
    rels.extend(zl.syzygy_vectors())
    pres = prune_presentation(Presentation(S, zsh, tuple(rels)))
    return HomologyPresentation(S, pres.shifts, pres.relations)


def _determinant_minors(P: PolyMatrix) -> List[Poly]:
    """All maximal minors of a g x c matrix with g <= c, by memoized Laplace expansion."""
    g, c = P.shape
    rows = P.rows()
    S = P.ring
    memo: Dict[Tuple[int, Tuple[int, ...]], Poly] = {}

    def det(r0: int, cols: Tuple[int, ...]) -> Poly:
        if r0 == g:
            return S.one()
        key = (r0, cols)
        got = memo.get(key)
        if got is not None:
            return got
        acc = S.zero()
        for k, cidx in enumerate(cols):
            a = rows[r0][cidx]
            if a.is_zero():
                continue
            sub = det(r0 + 1, cols[:k] + cols[k + 1:])
            if sub.is_zero():
                continue
            term = a * sub
            acc = acc - term if k % 2 else acc + term
        memo[key] = acc
        return acc

    out = []
    for cols in combinations(range(c), g):
        d = det(0, cols)
        if not d.is_zero():
            out.append(d)
    return out


def fitting_ideal(H: HomologyPresentation) -> Ideal:
    """Zeroth Fitting ideal: maximal minors of the presentation matrix."""
    S = H.S
    g = H.ngens
    if g == 0:
        return Ideal(S, (S.one(),))
    if len(H.relations) < g:
        return Ideal(S, ())
    minors = _determinant_minors(H.matrix())
    return Ideal(S, tuple(minors))


def annihilator(H: HomologyPresentation) -> Ideal:
    """ann H = intersection over generators e_i of (im P : e_i)."""
    S = H.S
    g = H.ngens
    if g == 0:
        return Ideal(S, (S.one(),))
    result = None
    for i in range(g):
        e = tuple(S.one() if k == i else S.zero() for k in range(g))
        cols = [e] + list(H.relations)
        lf = Lifter(cols, H.shifts, S)
        quot = Ideal(S, tuple(v[0] for v in lf.syzygy_vectors()))
        result = quot if result is None else intersect(result, quot)
    return result


@dataclass
class SupportVariety:
    ideal: Ideal
    n: int
    dim: int
    method: str = "fitting"
    stats: Dict = field(default_factory=dict)

    @property
    def S(self) -> PolyRing:
        return self.ideal.ring

    @property
    def codim(self) -> int:
        return self.n - self.dim if self.dim >= 0 else self.n + 1

    @property
    def fitting_ideal(self) -> Ideal:
        return self.ideal

    def is_empty(self) -> bool:
        return self.dim < 0

    def is_origin(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.n

    def certificates(self) -> List[Poly]:
        """A basis of the degree-2 part of the ideal (linear forms in chi)."""
        if self.is_empty():
            return []
        gb = reduced_groebner(self.ideal) if self.ideal.generators else GroebnerBasis(self.S, ())
        return [g for g in gb.elements if g.degree() == 2]

    def equals(self, other) -> bool:
        return variety_equal(self.ideal, other.ideal if isinstance(other, SupportVariety) else other)

    def contains_hyperplane_of(self, chi: Poly) -> bool:
        return hyperplane_test(self, chi)


def _variety_from_ideal(J: Ideal, n: int, method: str, stats) -> SupportVariety:
    if not J.generators:
        dim = n
    else:
        dim = krull_dimension(J)
    return SupportVariety(J, n, dim, method, stats)


def variety_of_presentation(H: HomologyPresentation, n: int, method: str = "auto", stats=None) -> SupportVariety:
    stats = dict(stats or {})
    g, c = H.ngens, len(H.relations)
    stats.update({"homology_generators": g, "homology_relations": c})
    if method == "auto":
        method = "fitting" if g == 0 or c < g or comb(c, g) <= MINOR_LIMIT else "annihilator"
    if method == "fitting":
        J = fitting_ideal(H)
    elif method == "annihilator":
        log.info("using the annihilator: %d choose %d minors is too many", c, g)
        J = annihilator(H)
    else:
        raise ValueError("unknown method %r" % method)
    return _variety_from_ideal(J, n, method, stats)


def as_complex(obj) -> RComplex:
    if isinstance(obj, RComplex):
        return obj
    if isinstance(obj, RModule):
        return RComplex.from_module(obj)
    if isinstance(obj, QuotientRing):
        return RComplex.from_module(RModule.free(obj))
    raise TypeError("cannot compute a support for %r" % (obj,))


def support_variety(obj, seed: Optional[int] = None, method: str = "auto", verify: bool = True) -> SupportVariety:
    """V_R(M) as the zero set of Fitt_0 of the homology of the twisted differential."""
    C = as_complex(obj)
    F = semifree_resolution(C)
    system = higher_homotopy_system(F, seed=seed)
    if verify:
        res = verify_system(system)
        if not res:
            raise ArithmeticError("homotopy relations fail at %s" % (res.failure,))
    T = twisted_differential(system)
    Tr = T.reduced()
    H = homology_presentation(Tr, reduce=False)
    stats = {"F_ranks": {j: F.complex.rank(j) for j in F.complex.degrees}, "T_rank": T.size,
             "T_reduced_rank": Tr.size, "homotopies": len(system.nonzero_indices())}
    return variety_of_presentation(H, C.ring.n, method, stats)


def hyperplane_test(V: SupportVariety, chi: Poly) -> bool:
    """True iff V lies in the hyperplane chi = 0."""
    if chi.ring != V.S:
        raise ValueError("form lives in a different ring")
    if chi.is_zero() or not chi.is_homogeneous() or chi.degree() != 2:
        raise ValueError("hyperplane tests need a nonzero linear form in the chi variables")
    if V.is_empty():
        return True
    return radical_membership(chi, V.ideal)


# ---------------------------------------------------------------------------
# the complexes L_zeta


def linear_coefficients(zeta: Poly) -> Tuple[int, ...]:
    S = zeta.ring
    if zeta.is_zero():
        raise ValueError("zeta must be nonzero")
    if not zeta.is_homogeneous() or zeta.degree() != 2:
        raise ValueError("only forms of degree 2 in the chi variables are supported")
    return tuple(zeta.coeff(tuple(int(i == v) for i in range(S.nvars))) for v in range(S.nvars))


def _split_by_variable(f: Poly) -> List[Poly]:
    """c with f = sum c_j x_j, each term sent to its first variable."""
    Q = f.ring
    parts: List[Dict] = [dict() for _ in range(Q.nvars)]
    for exps, c in f.term_dict().items():
        j = next(i for i, e in enumerate(exps) if e)
        rest = list(exps)
        rest[j] -= 1
        parts[j][tuple(rest)] = c
    return [Poly(Q, t) for t in parts]


def build_L_zeta(R: QuotientRing, zeta: Poly, name: str = "") -> RComplex:
    """cone(k -> Sigma^2 k) for zeta = sum a_i chi_i, smartly truncated to degrees 1 and 2."""
    a = linear_coefficients(zeta)
    if zeta.ring.nvars != R.n:
        raise ValueError("zeta lives in an operator ring with %d variables, expected %d" % (zeta.ring.nvars, R.n))
    Q = R.Q
    e = Q.nvars
    fdeg = {R.f[i].degree() for i in range(R.n) if a[i]}
    if len(fdeg) != 1:
        raise ValueError("zeta mixes generators of different degrees; not homogeneous")
    s = fdeg.pop()
    xs = Q.gens()
    z = Q.zero()
    # generators of M_2: e copies of R(-1), then k(-s)
    shifts = (1,) * e + (s,)
    rels = []
    for i in range(e):
        for j in range(i + 1, e):
            col = [z] * (e + 1)
            col[i] = xs[j]
            col[j] = -xs[i]
            rels.append(tuple(col))
    for i, fi in enumerate(R.f):
        # the cocycle sends the column lifting f_i to a_i
        rels.append(tuple(_split_by_variable(fi)) + (Q.const(-a[i]),))
    for x in xs:
        col = [z] * e + [x]
        rels.append(tuple(col))
    M2 = RModule(R, shifts, tuple(rels))
    M1 = RModule.free(R)
    d2 = PolyMatrix.from_rows(Q, [list(xs) + [z]])
    label = name or "L_{%s}" % zeta
    return RComplex(R, {1: M1, 2: M2}, {2: d2}, label)


def realize_variety(R: QuotientRing, zetas: Sequence[Poly], name: str = "") -> RComplex:
    """A direct sum of L_zeta whose support is the union of the hyperplanes zeta = 0."""
    if not zetas:
        raise ValueError("need at least one form")
    parts = [build_L_zeta(R, z) for z in zetas]
    if len(parts) == 1:
        return parts[0]
    return direct_sum(*parts, name=name or " (+) ".join(p.name for p in parts))


def product_ideal(ideals: Sequence[Ideal]) -> Ideal:
    out = ideals[0]
    for J in ideals[1:]:
        out = out * J
    return out
