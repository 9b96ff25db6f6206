import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohsupport.algebra import Poly
from cohsupport.groebner import Ideal, variety_equal
from cohsupport.homotopies import higher_homotopy_system
from cohsupport.resolutions import RComplex, RModule, direct_sum, homology_dimensions
from cohsupport.support import (
    annihilator,
    build_L_zeta,
    fitting_ideal,
    homology_presentation,
    hyperplane_test,
    realize_variety,
    support_variety,
    twisted_differential,
)


def S_ideal(R, *texts):
    return Ideal.of(R.S, *texts)


def line_module(R, a, b):
    x, y, z = R.Q.gens()
    return RModule.cyclic(R, [x.scale(a) + z.scale(b)])


def test_fixture_a_support(rings):
    V = support_variety(RModule.free(rings["A"]))
    assert (V.dim, V.codim) == (4, 1)
    assert V.equals(S_ideal(rings["A"], "chi1*chi5"))


@pytest.mark.parametrize("name,origin", [("A", False), ("B", False), ("C", True), ("D", False), ("E", True)])
def test_support_of_R_is_origin_exactly_for_ci(rings, name, origin):
    assert support_variety(RModule.free(rings[name])).is_origin() == origin


@pytest.mark.parametrize("name", ["B", "D"])
def test_residue_field_has_full_support(rings, name):
    assert support_variety(RModule.residue_field(rings[name])).is_full()


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 3), (5, -1)])
def test_lines_over_fixture_d(rings, a, b):
    R = rings["D"]
    V = support_variety(line_module(R, a, b))
    assert V.equals(S_ideal(R, "%d*chi1 - %d*chi2" % (b, a)))


def test_hyperplane_certificates_fixture_c(rings):
    V = support_variety(RModule.free(rings["C"]))
    S = rings["C"].S
    assert hyperplane_test(V, S.gen(0)) and hyperplane_test(V, S.gen(1))
    V = support_variety(RModule.free(rings["A"]))
    assert not hyperplane_test(V, rings["A"].S.gen(0))


@pytest.mark.parametrize("name", ["B", "C"])
def test_L_zeta_homology_and_support(rings, name):
    R = rings[name]
    zeta = R.S.gen(0)
    L = build_L_zeta(R, zeta)
    hom = homology_dimensions(L, range(0, 4))
    assert {j: sum(r.values()) for j, r in hom.items()} == {1: 1, 2: 1}
    assert support_variety(L).equals(Ideal(R.S, (zeta,)))


def test_realize_two_hyperplanes(rings):
    R = rings["B"]
    M = realize_variety(R, [R.S.gen(0), R.S.gen(1)])
    V = support_variety(M)
    assert V.dim == 2
    assert V.equals(S_ideal(R, "chi1*chi2"))


def test_fitting_and_annihilator_have_same_radical(rings):
    for name in "ABD":
        system = higher_homotopy_system(RModule.free(rings[name]))
        H = homology_presentation(twisted_differential(system).reduced())
        assert variety_equal(fitting_ideal(H), annihilator(H))


@pytest.mark.parametrize("name", list("ABCDE"))
def test_twisted_differential_squares_to_zero(rings, name):
    for M in (RModule.free(rings[name]), RModule.residue_field(rings[name])):
        T = twisted_differential(higher_homotopy_system(M, seed=3))
        assert T.square_is_zero()
        assert T.reduced().square_is_zero()


@pytest.mark.parametrize("name", list("ABCDE"))
def test_choice_invariance(rings, name):
    M = RModule.free(rings[name])
    a = support_variety(M, seed=11)
    b = support_variety(M, seed=29)
    assert variety_equal(a.ideal, b.ideal)


def _object(R, kind, coeffs):
    if kind == "k":
        return RComplex.from_module(RModule.residue_field(R))
    if kind == "R":
        return RComplex.from_module(RModule.free(R))
    zeta = Poly.from_terms(R.S, [(tuple(int(i == v) for i in range(R.n)), c) for v, c in enumerate(coeffs)])
    if zeta.is_zero():
        zeta = R.S.gen(0)
    return build_L_zeta(R, zeta)


@settings(max_examples=10)
@given(st.sampled_from(["B", "D"]), st.sampled_from(["k", "R", "L", "L"]), st.sampled_from(["R", "L"]),
       st.lists(st.integers(0, 100), min_size=3, max_size=3), st.lists(st.integers(0, 100), min_size=3, max_size=3))
def test_union_law(rings, name, kind1, kind2, c1, c2):
    R = rings[name]
    M = _object(R, kind1, c1[: R.n])
    N = _object(R, kind2, c2[: R.n])
    VM, VN = support_variety(M), support_variety(N)
    VS = support_variety(direct_sum(M, N))
    assert variety_equal(VS.ideal, VM.ideal * VN.ideal)


def test_zero_module_has_empty_support(rings):
    R = rings["B"]
    V = support_variety(RModule.cyclic(R, [R.Q.one()]))
    assert V.is_empty()
    assert V.ideal.generators == (R.S.one(),)
