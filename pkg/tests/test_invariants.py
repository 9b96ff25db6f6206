import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohsupport.algebra import PolyRing
from cohsupport.invariants import (
    NotArtinianError,
    ci_test,
    embedding_invariants,
    golod_test,
    loewy_length,
    poincare_series_truncated,
    serre_series_truncated,
)
from cohsupport.resolutions import QuotientRing
from strategies import monomial_ideals

PROFILES = {
    "A": dict(e=4, n=5, dim=1, depth=0, codepth=4, cid=2, loewy="not artinian", ci=False),
    "B": dict(e=2, n=3, dim=0, depth=0, codepth=2, cid=1, loewy=2, ci=False),
    "C": dict(e=2, n=2, dim=0, depth=0, codepth=2, cid=0, loewy=3, ci=True),
    "D": dict(e=3, n=2, dim=2, depth=1, codepth=2, cid=1, loewy="not artinian", ci=False),
    "E": dict(e=1, n=1, dim=0, depth=0, codepth=1, cid=0, loewy=3, ci=True),
}


@pytest.mark.parametrize("name", sorted(PROFILES))
def test_profiles(rings, name):
    prof = embedding_invariants(rings[name])
    assert prof.as_dict() == PROFILES[name]
    assert prof.consistent()
    assert ci_test(rings[name]) == PROFILES[name]["ci"]


def test_loewy_needs_artinian(rings):
    with pytest.raises(NotArtinianError):
        loewy_length(rings["D"])


def test_serre_and_poincare_fixture_b(rings):
    assert serre_series_truncated(rings["B"], 5).coefficients == (1, 2, 4, 8, 16, 32)
    assert poincare_series_truncated(rings["B"], 5).coefficients == (1, 2, 4, 8, 16, 32)


def test_fixture_c_deviates_at_three(rings):
    v = golod_test(rings["C"], 8)
    assert not v.golod and v.witness == 3
    assert (v.betti[3], v.serre[3]) == (4, 5)
    assert str(v) == "not_golod(witness 3)"


@pytest.mark.parametrize("name,golod", [("A", False), ("B", True), ("D", True), ("E", True)])
def test_golod_verdicts(rings, name, golod):
    v = golod_test(rings[name], 6)
    assert v.golod == golod
    if golod:
        assert str(v) == "golod_up_to(6)"


@settings(max_examples=12)
@given(st.integers(2, 3).flatmap(lambda n: st.tuples(st.just(n), monomial_ideals(n, max_gens=3, max_deg=2))))
def test_serre_bound_holds(data):
    n, exps = data
    Q = PolyRing(101, ("x", "y", "z")[:n])
    R = QuotientRing(Q, tuple(Q.monomial(e) for e in exps))
    N = 4
    betti = poincare_series_truncated(R, N).coefficients
    serre = serre_series_truncated(R, N).coefficients
    assert all(b <= s for b, s in zip(betti, serre))
    assert betti[:2] == serre[:2]
