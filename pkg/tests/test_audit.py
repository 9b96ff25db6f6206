import pytest

from cohsupport.audit import CERTIFIED_LABEL, audit_hyperplane_certificates, run_audit


@pytest.mark.parametrize("name", list("ABCDE"))
def test_audit_passes(rings, name):
    report = run_audit(rings[name], N=6)
    assert report.passed, report.as_dict()
    assert report.verdicts["ci"]["verdict"] == "consistent"


def test_fixture_b_dimension_bound_numbers(rings):
    rows = run_audit(rings["B"], N=6).rows["dimension_bounds"]
    R_row = next(r for r in rows if r.object == "R")
    got = [(c.lhs, c.relation, c.rhs) for c in R_row.checks[:2]]
    assert got == [(3, ">", 1), (3, ">=", 2)]


def test_golod_rows_for_fixture_b(rings):
    report = run_audit(rings["B"], N=8)
    assert not report.verdicts["golod"]["vacuous"]
    assert [(r.object, r.codim) for r in report.rows["golod"]] == [("R", 0), ("k", 0), ("L_chi1", 1)]


def test_golod_audit_is_vacuous_when_not_golod(rings):
    head = run_audit(rings["C"], N=6).verdicts["golod"]
    assert head["vacuous"] and head["pass"]


def test_hyperplane_certificates(rings):
    c = audit_hyperplane_certificates(rings["C"])
    assert c["certificates"] == ["chi1", "chi2"] and c["bound_kind"] == CERTIFIED_LABEL
    a = audit_hyperplane_certificates(rings["A"])
    assert a["certificates"] == [] and a["note"] == "no certified hyperplane"
