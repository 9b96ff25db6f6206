"""Cohomological support varieties over graded quotients of polynomial rings over F_p."""
__version__ = "0.1.0"

from .algebra import InhomogeneousError, Poly, PolyParseError, PolyRing, format_poly, operator_ring, parse_poly
from .groebner import (
    Ideal,
    Lifter,
    krull_dimension,
    minimal_generators,
    radical_membership,
    reduced_groebner,
    syzygies,
    variety_equal,
)
from .resolutions import (
    CohenPresentationError,
    QuotientRing,
    RComplex,
    RModule,
    direct_sum,
    minimal_resolution_Q,
    minimalize,
    resolution_R,
    semifree_resolution,
)
from .homotopies import higher_homotopy_system, verify_system
from .invariants import embedding_invariants, golod_test, poincare_series_truncated, serre_series_truncated
from .support import build_L_zeta, fitting_ideal, hyperplane_test, realize_variety, support_variety, twisted_differential
from .audit import run_audit

__all__ = [
    "CohenPresentationError", "Ideal", "InhomogeneousError", "Lifter", "Poly", "PolyParseError", "PolyRing",
    "QuotientRing", "RComplex", "RModule", "build_L_zeta", "direct_sum", "embedding_invariants", "fitting_ideal",
    "format_poly", "golod_test", "higher_homotopy_system", "hyperplane_test", "krull_dimension",
    "minimal_generators", "minimal_resolution_Q", "minimalize", "operator_ring", "parse_poly",
    "poincare_series_truncated", "radical_membership", "realize_variety", "reduced_groebner", "resolution_R",
    "run_audit", "semifree_resolution", "serre_series_truncated", "support_variety", "syzygies",
    "twisted_differential", "variety_equal", "verify_system",
]
