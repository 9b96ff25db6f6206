import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohsupport.algebra import PolyRing
from cohsupport.matrices import PolyMatrix
from cohsupport.resolutions import (
    CohenPresentationError,
    GradedComplex,
    QuotientRing,
    RComplex,
    RModule,
    direct_sum,
    exactness_certificate,
    minimal_resolution_Q,
    minimalize,
    resolution_R,
    semifree_resolution,
)
from strategies import monomial_ideals


@pytest.mark.parametrize("name,betti", [("A", (1, 5, 7, 4, 1)), ("B", (1, 3, 2)), ("C", (1, 2, 1)),
                                        ("D", (1, 2, 1)), ("E", (1, 1))])
def test_betti_over_Q(rings, name, betti):
    res = minimal_resolution_Q(rings[name])
    assert res.betti() == betti
    assert res.complex.is_complex() and res.complex.is_minimal()
    assert exactness_certificate(res.complex)["exact"]


def test_linear_generator_is_rejected():
    Q = PolyRing(101, ("x", "y"))
    with pytest.raises(CohenPresentationError, match="not a minimal Cohen presentation"):
        QuotientRing.of(Q, "x", "y^2")


@pytest.mark.parametrize("method", ["groebner", "degreewise"])
def test_residue_field_over_fixture_b(rings, method):
    res = resolution_R(RModule.residue_field(rings["B"]), 5, method=method)
    assert tuple(res.complex.rank(i) for i in range(6)) == (1, 2, 4, 8, 16, 32)


def test_residue_field_over_fixture_c(rings):
    res = resolution_R(RModule.residue_field(rings["C"]), 4)
    assert tuple(res.complex.rank(i) for i in range(5)) == (1, 2, 3, 4, 5)


def test_routes_agree_on_fixture_d(rings):
    k = RModule.residue_field(rings["D"])
    a = resolution_R(k, 4, method="groebner")
    b = resolution_R(k, 4, method="degreewise")
    assert [a.complex.rank(i) for i in range(5)] == [b.complex.rank(i) for i in range(5)]


def test_minimalize_cancels_a_unit():
    Q = PolyRing(101, ("x",))
    x = Q.gen(0)
    # Q --(1, x)^T--> Q^2 ... a split summand next to x
    d1 = PolyMatrix.from_rows(Q, [[Q.one(), Q.zero()], [Q.zero(), x]])
    C = GradedComplex(Q, {0: (0, 0), 1: (0, 1)}, {1: d1})
    M = minimalize(C)
    assert M.rank(0) == 1 and M.rank(1) == 1
    assert M.is_minimal()


def test_minimalize_keeps_minimal_complexes(rings):
    C = minimal_resolution_Q(rings["A"]).complex
    assert minimalize(C).betti() == C.betti()


def test_semifree_resolution_of_cyclic_module(rings):
    R = rings["D"]
    M = RModule.cyclic(R, [R.Q.parse("x+z")])
    F = semifree_resolution(RComplex.from_module(M))
    assert F.complex.is_complex()
    assert exactness_certificate(F.complex)["exact"]


def test_direct_sum_is_block_diagonal(rings):
    R = rings["B"]
    k = RComplex.from_module(RModule.residue_field(R))
    Rf = RComplex.from_module(RModule.free(R))
    S = direct_sum(k, Rf)
    F = semifree_resolution(S)
    a = semifree_resolution(k).complex.betti()
    b = semifree_resolution(Rf).complex.betti()
    assert F.complex.betti() == {j: a.get(j, 0) + b.get(j, 0) for j in set(a) | set(b)}


@settings(max_examples=15)
@given(st.integers(2, 3).flatmap(lambda n: st.tuples(st.just(n), monomial_ideals(n))))
def test_monomial_resolutions_are_exact(data):
    n, exps = data
    Q = PolyRing(101, ("x", "y", "z")[:n])
    R = QuotientRing(Q, tuple(Q.monomial(e) for e in exps))
    res = minimal_resolution_Q(R)
    assert res.complex.is_complex()
    assert res.betti()[1] == len(exps)
    assert exactness_certificate(res.complex)["exact"]


def test_redundant_generator_gives_same_betti(rings):
    Q = rings["A"].Q
    gens = list(rings["A"].generators) + [Q.parse("x^2 + x*y")]
    assert minimal_resolution_Q(QuotientRing(Q, tuple(gens))).betti() == (1, 5, 7, 4, 1)
