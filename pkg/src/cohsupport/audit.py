"""Check the dimension bounds, Golod structure and CI characterization on concrete inputs."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Poly, format_poly
from .invariants import GolodVerdict, RingProfile, ci_test, embedding_invariants, golod_test
from .resolutions import QuotientRing, RModule
from .support import SupportVariety, build_L_zeta, hyperplane_test, support_variety

CERTIFIED_LABEL = "certified subset, see open questions"


@dataclass
class Check:
    name: str
    lhs: object
    relation: str
    rhs: object
    passed: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "relation": self.relation, "rhs": self.rhs, "pass": self.passed}


def _compare(name, lhs, relation, rhs) -> Check:
    ops = {">=": lhs >= rhs, ">": lhs > rhs, "<=": lhs <= rhs, "==": lhs == rhs}
    return Check(name, lhs, relation, rhs, bool(ops[relation]))


@dataclass
class Row:
    object: str
    dim: Optional[int]
    codim: Optional[int]
    checks: List[Check] = field(default_factory=list)
    skipped: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        out = {"object": self.object, "dim": self.dim, "codim": self.codim,
               "checks": [c.as_dict() for c in self.checks], "pass": self.passed}
        if self.skipped:
            out["skipped"] = self.skipped
        return out


@dataclass
class AuditReport:
    profile: RingProfile
    rows: Dict[str, List[Row]] = field(default_factory=dict)
    verdicts: Dict[str, dict] = field(default_factory=dict)
    environment: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        rows_ok = all(r.passed for rs in self.rows.values() for r in rs)
        return rows_ok and all(v.get("pass", True) for v in self.verdicts.values())

    def as_dict(self) -> dict:
        return {"profile": self.profile.as_dict(),
                "rows": {k: [r.as_dict() for r in v] for k, v in self.rows.items()},
                "verdicts": self.verdicts, "environment": self.environment, "pass": self.passed}


class SupportCache:
    """Supports are computed once per object name."""

    def __init__(self, seed: Optional[int] = None):
        self.seed = seed
        self._cache: Dict[str, SupportVariety] = {}

    def get(self, name: str, obj) -> SupportVariety:
        V = self._cache.get(name)
        if V is None:
            V = support_variety(obj, seed=self.seed)
            self._cache[name] = V
        return V


def standard_objects(R: QuotientRing) -> List[Tuple[str, object]]:
    """R, k and L_{chi1}."""
    objs: List[Tuple[str, object]] = [("R", RModule.free(R)), ("k", RModule.residue_field(R))]
    if R.n:
        objs.append(("L_chi1", build_L_zeta(R, R.S.gen(0))))
    return objs


def _identity_checks(profile: RingProfile, V: SupportVariety) -> List[Check]:
    return [_compare("codim = n - dim", V.codim, "==", profile.n - V.dim),
            _compare("cid = n - e + dim R", profile.cid, "==", profile.n - profile.e + profile.dim)]


def audit_dimension_bounds(R: QuotientRing, objects, profile: RingProfile = None, cache: SupportCache = None) -> List[Row]:
    """dim V >= n - e + depth (strict unless CI); dim V >= n - loewy + 1 when artinian."""
    profile = profile or embedding_invariants(R)
    cache = cache or SupportCache()
    rows = []
    for name, obj in objects:
        V = cache.get(name, obj)
        if V.is_empty():
            rows.append(Row(name, None, None, [], "zero object: empty support exactly when the homology vanishes"))
            continue
        rhs = profile.n - profile.e + profile.depth
        checks = [_compare("dim V vs n - e + depth", V.dim, ">=" if profile.ci else ">", rhs)]
        if profile.artinian:
            checks.append(_compare("dim V vs n - loewy + 1", V.dim, ">=", profile.n - profile.loewy + 1))
        checks.extend(_identity_checks(profile, V))
        rows.append(Row(name, V.dim, V.codim, checks))
    return rows


def audit_golod(R: QuotientRing, objects, N: int = 8, profile: RingProfile = None,
                cache: SupportCache = None, verdict: GolodVerdict = None) -> Tuple[dict, List[Row]]:
    """Full support of R and codim <= 1 for every object, conditional on the truncated Golod verdict."""
    profile = profile or embedding_invariants(R)
    cache = cache or SupportCache()
    verdict = verdict or golod_test(R, N)
    head = {"golod": verdict.as_dict(), "codepth": profile.codepth}
    if not verdict.golod or profile.codepth < 2:
        why = str(verdict) if not verdict.golod else "codepth %d < 2" % profile.codepth
        head.update({"vacuous": True, "reason": why, "pass": True})
        return head, []
    head.update({"vacuous": False, "conditional_on": str(verdict)})
    rows = []
    VR = cache.get("R", RModule.free(R))
    rows.append(Row("R", VR.dim, VR.codim, [_compare("dim V_R(R) is full", VR.dim, "==", profile.n)]))
    for name, obj in objects:
        if name == "R":
            continue
        V = cache.get(name, obj)
        if V.is_empty():
            rows.append(Row(name, None, None, [], "zero object"))
            continue
        rows.append(Row(name, V.dim, V.codim, [_compare("codim V", V.codim, "<=", 1)]))
    failed = [r.object for r in rows if not r.passed]
    head["pass"] = not failed
    if failed:
        head["counterexample_to_truncated_verdict"] = failed
    return head, rows


def audit_ci(R: QuotientRing, cache: SupportCache = None) -> dict:
    """ci_test and V_R(R) = {0} must agree."""
    cache = cache or SupportCache()
    ci = ci_test(R)
    V = cache.get("R", RModule.free(R))
    origin = V.is_origin()
    return {"ci": ci, "support_is_origin": origin, "dim": V.dim,
            "verdict": "consistent" if ci == origin else "inconsistent", "pass": ci == origin}


def audit_hyperplane_certificates(R: QuotientRing, tests: Sequence[Poly] = (), cache: SupportCache = None) -> dict:
    cache = cache or SupportCache()
    V = cache.get("R", RModule.free(R))
    certs = V.certificates()
    out = {"certificates": [format_poly(c) for c in certs],
           "tests": {format_poly(chi): hyperplane_test(V, chi) for chi in tests},
           # the certified hyperplanes contain V, so they bound rank span_k V from above
           # and the right side n - rank span_k V from below
           "span_rank_upper_bound": R.n - len(certs),
           "rhs_lower_bound": len(certs),
           "bound_kind": CERTIFIED_LABEL}
    if not certs:
        out["note"] = "no certified hyperplane"
    return out


def run_audit(R: QuotientRing, objects=None, N: int = 8, tests: Sequence[Poly] = (), seed: Optional[int] = None) -> AuditReport:
    objects = list(objects) if objects is not None else standard_objects(R)
    profile = embedding_invariants(R)
    cache = SupportCache(seed)
    report = AuditReport(profile)
    report.rows["dimension_bounds"] = audit_dimension_bounds(R, objects, profile, cache)
    head, rows = audit_golod(R, objects, N, profile, cache)
    report.rows["golod"] = rows
    report.verdicts["golod"] = head
    report.verdicts["ci"] = audit_ci(R, cache)
    report.verdicts["hyperplanes"] = audit_hyperplane_certificates(R, tests, cache)
    report.environment = {"p": R.p, "truncate": N, "objects": [name for name, _ in objects]}
    return report
