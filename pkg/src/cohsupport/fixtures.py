"""The five reference rings, as session text and as QuotientRing objects."""
from __future__ import annotations

from .algebra import PolyRing
from .resolutions import QuotientRing

FIXTURES = {
    "A": (("x", "y", "z", "w"), ("x^2", "x*y", "y*z", "z*w", "w^2")),
    "B": (("x", "y"), ("x^2", "x*y", "y^2")),
    "C": (("x", "y"), ("x^2", "y^2")),
    "D": (("x", "y", "z"), ("x*y", "y*z")),
    "E": (("x",), ("x^3",)),
}


def fixture(name: str, p: int = 101) -> QuotientRing:
    names, gens = FIXTURES[name.upper()]
    return QuotientRing.of(PolyRing(p, names), *gens)


def session_text(name: str, p: int = 101) -> str:
    names, gens = FIXTURES[name.upper()]
    return "ring p=%d vars %s\nideal %s\n" % (p, ",".join(names), ", ".join(gens))
