import json
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohsupport.cli import EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_OK, SessionError, format_session, main, parse_session
from cohsupport.fixtures import FIXTURES

ROOT = Path(__file__).resolve().parents[1]
SESSIONS = ROOT / "sessions"
SCHEMA = json.loads((ROOT / "docs" / "report.schema.json").read_text())


def run_cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    doc = json.loads(out.out) if out.out.strip() else None
    if doc is not None:
        jsonschema.validate(doc, SCHEMA)
    return code, doc, out.err


def test_fixture_a_session_parses():
    s = parse_session((SESSIONS / "fix_a.ses").read_text())
    assert len(s.variables) == 4 and len(s.ideal) == 5


def test_linear_generator_error():
    with pytest.raises(SessionError, match="not a minimal Cohen presentation") as exc:
        parse_session("ring p=101 vars x,y\nideal x\n")
    assert exc.value.line == 2


def test_inhomogeneous_error():
    with pytest.raises(SessionError, match="inhomogeneous"):
        parse_session("ring vars x,y\nideal x^2 + y^3\n")


def test_syntax_error_position():
    with pytest.raises(SessionError) as exc:
        parse_session("ring vars x,y\nideal x^2, x*@y\n")
    assert (exc.value.line, exc.value.column) == (2, 14)


def test_duplicate_and_unknown_names():
    base = "ring vars x,y,z\nideal x*y, y*z\nmodule M = coker [[x+z]]\n"
    with pytest.raises(SessionError, match="already defined"):
        parse_session(base + "module M = coker [[x]]\n")
    with pytest.raises(SessionError, match="unknown name"):
        parse_session(base + "sum N = M (+) P\n")


def test_coker_module_over_fixture_d():
    s = parse_session((SESSIONS / "fix_d.ses").read_text())
    d = next(d for d in s.definitions if d.name == "M")
    assert d.body == ("coker", (("x + z",),), None)


@pytest.mark.parametrize("path", sorted(SESSIONS.glob("*.ses")), ids=lambda p: p.name)
def test_round_trip_of_shipped_sessions(path):
    s = parse_session(path.read_text())
    assert parse_session(format_session(s)) == s


@settings(max_examples=20)
@given(st.sampled_from(sorted(FIXTURES)), st.lists(st.integers(1, 100), min_size=2, max_size=2),
       st.sampled_from(["", " shifts 1"]), st.integers(0, 3))
def test_round_trip_generated(name, coeffs, shifts, opt):
    names, gens = FIXTURES[name]
    lines = ["ring p=101 vars " + ",".join(names), "ideal " + ", ".join(gens), "option truncate=%d" % (opt + 2)]
    lines.append("module M = coker [[%d*%s, %s^2]]%s" % (coeffs[0], names[0], names[-1], shifts))
    lines.append("complex L = lzeta %d*chi1" % coeffs[1])
    lines.append("sum N = M (+) L (+) k")
    s = parse_session("\n".join(lines) + "\n")
    assert parse_session(format_session(s)) == s


def test_invariants_command(capsys):
    code, doc, _ = run_cli(capsys, SESSIONS / "fix_b.ses", "invariants")
    assert code == EXIT_OK
    assert doc["results"] == {"e": 2, "n": 3, "dim": 0, "depth": 0, "codepth": 2, "cid": 1, "loewy": 2, "ci": False}


def test_support_command_fixture_a(capsys):
    code, doc, _ = run_cli(capsys, SESSIONS / "fix_a.ses", "support", "R", "--expect", "chi1*chi5")
    r = doc["results"]
    assert code == EXIT_OK
    assert (r["fitting_dim"], r["codim"], r["variety_equal"]) == (4, 1, {"chi1*chi5": True})


def test_failed_expectation_exits_one(capsys):
    code, doc, _ = run_cli(capsys, SESSIONS / "fix_a.ses", "support", "R", "--expect", "chi1")
    assert code == EXIT_CHECK_FAILED and doc["passed"] is False


def test_audit_command_fixture_c(capsys):
    code, doc, _ = run_cli(capsys, SESSIONS / "fix_c.ses", "audit")
    assert code == EXIT_OK and doc["results"]["pass"]


def test_audit_with_objects(capsys):
    code, doc, _ = run_cli(capsys, SESSIONS / "fix_b.ses", "audit", "--objects", "k", "L1", "L12")
    assert code == EXIT_OK
    assert [(r["object"], r["codim"]) for r in doc["results"]["rows"]["golod"]] == [("R", 0), ("k", 0), ("L1", 1), ("L12", 1)]


def test_lzeta_and_realize(capsys):
    code, doc, _ = run_cli(capsys, SESSIONS / "fix_b.ses", "lzeta", "chi1-chi3")
    assert code == EXIT_OK and doc["results"]["variety_equal"]
    code, doc, _ = run_cli(capsys, SESSIONS / "fix_b.ses", "realize", "chi1", "chi2+chi3")
    assert code == EXIT_OK and doc["results"]["support"]["dim"] == 2


def test_golod_command(capsys):
    code, doc, _ = run_cli(capsys, SESSIONS / "fix_b.ses", "golod", "--truncate", "6")
    assert code == EXIT_OK and doc["results"]["verdict"] == "golod_up_to"
    assert doc["environment"]["truncate"] == 6


def test_input_errors_exit_two(capsys, tmp_path):
    bad = tmp_path / "bad.ses"
    bad.write_text("ring vars x,y\nideal x\n")
    assert main([str(bad), "invariants"]) == EXIT_INPUT
    assert main([str(SESSIONS / "fix_b.ses"), "support", "Nope"]) == EXIT_INPUT
    assert main([str(SESSIONS / "fix_b.ses"), "frobnicate"]) == EXIT_INPUT
    assert main([str(tmp_path / "missing.ses"), "invariants"]) == EXIT_INPUT
    capsys.readouterr()


def test_json_is_deterministic(capsys, tmp_path):
    out = tmp_path / "r.json"
    main([str(SESSIONS / "fix_d.ses"), "support", "N", "--json", str(out)])
    first = out.read_text()
    main([str(SESSIONS / "fix_d.ses"), "support", "N", "--json", str(out)])
    capsys.readouterr()
    assert out.read_text() == first
    jsonschema.validate(json.loads(first), SCHEMA)


def test_other_characteristic(capsys):
    code, doc, _ = run_cli(capsys, "--p", "7", SESSIONS / "fix_c.ses", "invariants")
    assert code == EXIT_OK and doc["environment"]["p"] == 7
