"""Numerical invariants of R = Q/I and the truncated Golod test."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb
from typing import Optional, Tuple

from .groebner import krull_dimension
from .resolutions import (
    GradedPieces,
    QuotientRing,
    RModule,
    _resolution_k_degreewise,
    minimal_resolution_Q,
    resolution_R,
)


class NotArtinianError(ValueError):
    pass


@dataclass(frozen=True)
class RingProfile:
    e: int
    n: int
    dim: int
    depth: int
    codepth: int
    cid: int
    loewy: Optional[int]
    ci: bool
    pd: int

    @property
    def artinian(self) -> bool:
        return self.dim == 0

    def as_dict(self) -> dict:
        out = asdict(self)
        out.pop("pd")
        if self.loewy is None:
            out["loewy"] = "not artinian"
        return out

    def consistent(self) -> bool:
        return (self.codepth == self.e - self.depth and self.cid == self.n - self.e + self.dim
                and self.cid >= 0 and self.ci == (self.n == self.e - self.dim)
                and 0 <= self.depth <= self.dim <= self.e and (self.loewy is None) == (self.dim != 0))


def q_betti(R: QuotientRing) -> Tuple[int, ...]:
    """Betti numbers of R over Q, i.e. ranks of Koszul homology."""
    return minimal_resolution_Q(R).betti()


def dimension(R: QuotientRing) -> int:
    return krull_dimension(R.gb) if R.generators else R.e


def loewy_length(R: QuotientRing) -> int:
    """Least s with m^s = 0 in R."""
    if dimension(R) != 0:
        raise NotArtinianError("R is not artinian")
    pieces = GradedPieces(R)
    s = 0
    while pieces.std(s)[0]:
        s += 1
    return s


def embedding_invariants(R: QuotientRing) -> RingProfile:
    e, n = R.e, R.n
    dim = dimension(R)
    pd = len(q_betti(R)) - 1
    depth = e - pd
    cid = n - e + dim
    loewy = loewy_length(R) if dim == 0 else None
    return RingProfile(e, n, dim, depth, e - depth, cid, loewy, n == e - dim, pd)


def ci_test(R: QuotientRing) -> bool:
    return R.n == R.e - dimension(R)


@dataclass(frozen=True)
class SeriesTruncation:
    coefficients: Tuple[int, ...]
    kind: str

    def __getitem__(self, i):
        return self.coefficients[i]

    def __len__(self):
        return len(self.coefficients)


def _series_divide(num, den, N):
    """Power series num/den to order N for integer sequences with den[0] = 1."""
    out = []
    for i in range(N + 1):
        c = num[i] if i < len(num) else 0
        for k in range(1, min(i, len(den) - 1) + 1):
            c -= den[k] * out[i - k]
        out.append(c)
    return out


def serre_series_truncated(R: QuotientRing, N: int) -> SeriesTruncation:
    """(1+t)^e / (1 - t * sum_{i>=1} beta_i^Q(R) t^i) up to t^N."""
    if N < 1:
        raise ValueError("N must be at least 1")
    e = R.e
    num = [comb(e, i) for i in range(e + 1)]
    beta = q_betti(R)
    den = [1, 0] + [-b for b in beta[1:]]
    return SeriesTruncation(tuple(_series_divide(num, den, N)), "serre")


def poincare_series_truncated(R: QuotientRing, N: int) -> SeriesTruncation:
    res = resolution_R(RModule.residue_field(R), N)
    return SeriesTruncation(tuple(res.complex.rank(i) for i in range(N + 1)), "poincare")


@dataclass(frozen=True)
class GolodVerdict:
    golod: bool
    N: int
    witness: Optional[int]
    betti: Tuple[int, ...]
    serre: Tuple[int, ...]

    def __str__(self):
        if self.golod:
            return "golod_up_to(%d)" % self.N
        return "not_golod(witness %d)" % self.witness

    def as_dict(self) -> dict:
        return {"verdict": "golod_up_to" if self.golod else "not_golod", "N": self.N,
                "witness": self.witness, "betti": list(self.betti), "serre": list(self.serre)}


def golod_test(R: QuotientRing, N: int = 8) -> GolodVerdict:
    """Compare the Betti numbers of k with Serre's bound, stopping at the first disagreement."""
    if N < 2:
        raise ValueError("the Golod test needs N >= 2")
    serre = serre_series_truncated(R, N).coefficients
    res = _resolution_k_degreewise(R, N, stop=lambda i, r: r != serre[i])
    betti = tuple(res.complex.rank(i) for i in range(N + 1))
    for i in range(N + 1):
        if betti[i] != serre[i]:
            return GolodVerdict(False, N, i, betti[: i + 1], serre[: i + 1])
    return GolodVerdict(True, N, None, betti, serre)
