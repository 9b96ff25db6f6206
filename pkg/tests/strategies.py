"""Hypothesis strategies for small polynomials and monomial rings."""
from hypothesis import strategies as st

from cohsupport.algebra import Poly, PolyRing


def exponents(nvars, max_deg):
    return st.lists(st.integers(0, max_deg), min_size=nvars, max_size=nvars).filter(lambda e: sum(e) <= max_deg)


def polys(ring: PolyRing, max_deg=3, max_terms=4):
    term = st.tuples(exponents(ring.nvars, max_deg), st.integers(0, ring.p - 1))
    return st.lists(term, max_size=max_terms).map(lambda ts: Poly.from_terms(ring, ts))


@st.composite
def homogeneous_polys(draw, ring: PolyRing, deg, max_terms=3):
    mons = ring.monomials_of_degree(deg)
    chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=max_terms, unique=True))
    coeffs = draw(st.lists(st.integers(1, ring.p - 1), min_size=len(chosen), max_size=len(chosen)))
    return Poly.from_terms(ring, zip(chosen, coeffs))


@st.composite
def monomial_ideals(draw, nvars, max_gens=4, max_deg=3):
    """Exponent tuples of degree >= 2, pairwise non-dividing."""
    cands = draw(st.lists(exponents(nvars, max_deg).filter(lambda e: sum(e) >= 2), min_size=1, max_size=max_gens))
    out = []
    for e in sorted(set(map(tuple, cands)), key=sum):
        if not any(all(a <= b for a, b in zip(g, e)) for g in out):
            out.append(e)
    return out
