"""Exact evaluation and Pfaff-method certification of terminating q-series identities."""

__version__ = "0.1.0"

from .algebra import AffineExp, Monomial, Point, Symbol, expr_eval, mono_eval, parse_monomial
from .catalog import CATALOG, get_identity, lhs_value, resolve_constraints, rhs_value
from .pfaff import certify_identity, check_recurrence, delta, reconstruct, singh_reduction_check
from .qseries import SeriesSpec, classify, phi_terminating_eval, qpoch

__all__ = [
    "AffineExp", "Monomial", "Point", "Symbol", "expr_eval", "mono_eval", "parse_monomial",
    "CATALOG", "get_identity", "lhs_value", "resolve_constraints", "rhs_value",
    "certify_identity", "check_recurrence", "delta", "reconstruct", "singh_reduction_check",
    "SeriesSpec", "classify", "phi_terminating_eval", "qpoch",
]
