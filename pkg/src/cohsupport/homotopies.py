"""Systems of higher homotopies for the generators of I on a Q-free resolution."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .algebra import Poly
from .matrices import PolyMatrix
from .resolutions import (
    GradedComplex,
    KernelLifter,
    LiftError,
    RComplex,
    RModule,
    SemifreeResolution,
    semifree_resolution,
)

MultiIndex = Tuple[int, ...]


def multi_indices(n: int, total: int) -> List[MultiIndex]:
    """All a in N^n with |a| = total, in lexicographically decreasing order."""
    out = []

    def rec(i, left, acc):
        if i == n - 1:
            out.append(tuple(acc + [left]))
            return
        for k in range(left, -1, -1):
            rec(i + 1, left - k, acc + [k])

    if n == 0:
        return [()] if total == 0 else []
    rec(0, total, [])
    return out


def splittings(a: MultiIndex) -> Iterator[Tuple[MultiIndex, MultiIndex]]:
    """Ordered pairs (b, c) with b + c = a and b, c both nonzero."""
    for b in product(*(range(k + 1) for k in a)):
        c = tuple(x - y for x, y in zip(a, b))
        if any(b) and any(c):
            yield b, c


@dataclass
class HigherHomotopySystem:
    """sigma[a][j] : F_j -> F_{j + 2|a| - 1}; missing entries are zero."""
    resolution: SemifreeResolution
    f: Tuple[Poly, ...]
    sigma: Dict[MultiIndex, Dict[int, PolyMatrix]] = field(default_factory=dict)
    bound: int = 0

    @property
    def complex(self) -> GradedComplex:
        return self.resolution.complex

    @property
    def n(self) -> int:
        return len(self.f)

    def component(self, a: MultiIndex, j: int) -> PolyMatrix:
        F = self.complex
        if not any(a):
            return F.diff(j)
        m = self.sigma.get(a, {}).get(j)
        if m is None:
            return PolyMatrix(F.ring, F.rank(j + 2 * sum(a) - 1), F.rank(j))
        return m

    def nonzero_indices(self) -> List[MultiIndex]:
        return sorted((a for a, comps in self.sigma.items() if any(not m.is_zero() for m in comps.values())),
                      key=lambda a: (sum(a), tuple(-x for x in a)))


def _relation_lhs(system: HigherHomotopySystem, a: MultiIndex, j: int, skip_leading: bool = False) -> PolyMatrix:
    """Sum over b + c = a of sigma_b sigma_c on F_j (sigma_0 = d).

    With skip_leading the term d sigma_a is left out; that is the unknown.
    """
    F = system.complex
    Q = F.ring
    k = sum(a)
    tgt = j + 2 * k - 2
    acc = PolyMatrix(Q, F.rank(tgt), F.rank(j))
    if not skip_leading:
        acc = acc + F.diff(j + 2 * k - 1) @ system.component(a, j)
    acc = acc + system.component(a, j - 1) @ F.diff(j)
    for b, c in splittings(a):
        sc = system.component(c, j)
        if sc.is_zero():
            continue
        sb = system.component(b, j + 2 * sum(c) - 1)
        if sb.is_zero():
            continue
        acc = acc + sb @ sc
    return acc


def _target_f(system: HigherHomotopySystem, a: MultiIndex, j: int) -> PolyMatrix:
    F = system.complex
    if sum(a) == 1:
        i = a.index(1)
        return PolyMatrix.identity(F.ring, F.rank(j)).scale(system.f[i])
    return PolyMatrix(F.ring, F.rank(j + 2 * sum(a) - 2), F.rank(j))


def _random_poly(ring, deg: int, rng: random.Random) -> Poly:
    if deg < 0:
        return ring.zero()
    mons = ring.monomials_of_degree(deg)
    return Poly(ring, {m: rng.randrange(ring.p) for m in mons})


def _perturbation(F: GradedComplex, resolution: SemifreeResolution, s: int, col_degrees, rng) -> Optional[PolyMatrix]:
    """d(K_{s+1} c) for random homogeneous c, one column per entry of col_degrees."""
    K = resolution.kernel.get(s + 1)
    if K is None or F.rank(s + 1) == 0 or K.ncols == 0:
        return None
    ksh = resolution.kernel_shifts[s + 1]
    Q = F.ring
    cols = []
    for deg in col_degrees:
        c = tuple(_random_poly(Q, deg - g, rng) for g in ksh)
        cols.append(c)
    C = PolyMatrix.from_columns(Q, K.ncols, cols)
    return F.diff(s + 1) @ (K @ C)


def higher_homotopy_system(resolution, f: Sequence[Poly] = None, seed: Optional[int] = None,
                           bound: Optional[int] = None) -> HigherHomotopySystem:
    """Solve for sigma_a by increasing |a| and then increasing j, lifting through ker(F -> M).

    With a seed, every lift is perturbed by a random boundary of the kernel
    complex, which gives an independent valid choice.
    """
    if isinstance(resolution, RModule):
        resolution = RComplex.from_module(resolution)
    if isinstance(resolution, RComplex):
        resolution = semifree_resolution(resolution)
    F = resolution.complex
    if f is None:
        f = resolution.source.ring.f
    f = tuple(f)
    n = len(f)
    length = F.hi - F.lo
    if bound is None:
        bound = (length + 1) // 2
    rng = random.Random(seed) if seed is not None else None
    system = HigherHomotopySystem(resolution, f, {}, bound)
    fdeg = [g.degree() for g in f]
    lifters: Dict[int, Optional[KernelLifter]] = {}

    def lifter(s):
        if s not in lifters:
            lifters[s] = resolution.kernel_lifter(s)
        return lifters[s]

    for k in range(1, bound + 1):
        for a in multi_indices(n, k):
            comps: Dict[int, PolyMatrix] = {}
            system.sigma[a] = comps
            internal = sum(x * y for x, y in zip(a, fdeg))
            for j in range(F.lo, F.hi + 1):
                if F.rank(j) == 0:
                    continue
                s = j + 2 * k - 2
                rhs = _target_f(system, a, j) - _relation_lhs(system, a, j, skip_leading=True)
                if F.rank(s + 1) == 0:
                    if not rhs.is_zero():
                        raise LiftError("obstruction for a=%s, j=%d does not vanish" % (a, j))
                    continue
                if rhs.is_zero():
                    sol = PolyMatrix(F.ring, F.rank(s + 1), F.rank(j))
                else:
                    lf = lifter(s)
                    if lf is None:
                        raise LiftError("no kernel generators above degree %d" % s)
                    sol = lf.lift_matrix(rhs)
                if rng is not None:
                    degs = [sh + internal for sh in F.shifts[j]]
                    pert = _perturbation(F, resolution, s + 1, degs, rng)
                    if pert is not None:
                        sol = sol + pert
                if not sol.is_zero():
                    comps[j] = sol
            if not comps:
                del system.sigma[a]
    return system


def first_homotopies(resolution, f_i: Poly, seed: Optional[int] = None) -> Dict[int, PolyMatrix]:
    """sigma with d sigma + sigma d = f_i on every F_j."""
    system = higher_homotopy_system(resolution, (f_i,), seed=seed, bound=1)
    return system.sigma.get((1,), {})


@dataclass
class VerifyResult:
    ok: bool
    failure: Optional[Tuple[MultiIndex, int]] = None

    def __bool__(self):
        return self.ok


def verify_system(system: HigherHomotopySystem, max_order: Optional[int] = None) -> VerifyResult:
    """Check every defining relation as an exact matrix identity.

    Orders up to bound + 1 are checked, so the vanishing of the omitted
    sigma_a is also tested.
    """
    F = system.complex
    top = system.bound + 1 if max_order is None else max_order
    for k in range(1, top + 1):
        for a in multi_indices(system.n, k):
            for j in range(F.lo, F.hi + 1):
                if F.rank(j) == 0 or F.rank(j + 2 * k - 2) == 0:
                    continue
                lhs = _relation_lhs(system, a, j)
                if lhs != _target_f(system, a, j):
                    return VerifyResult(False, (a, j))
    return VerifyResult(True)
