"""Liaison and biliaison of space curves in P^3 over a prime field."""

from .curves import Curve, NotACurve, PreconditionError, make_curve, residual_subcurve
from .ideals import GradedIdeal, ideal_quotient, intersect, saturate, syzygies
from .koszul import KoszulType, koszul_dims, make_type, minimal_curve, predicted_invariants
from .liaison import (
    FactoredSurface,
    descend,
    descending_obstruction_report,
    elementary_biliaison,
    fundamental_diagram_check,
    injective_hom_exists,
    link,
    verify_minimality_subcanonical,
)
from .modules import GradedModule, ext_module, minimal_free_resolution
from .polynomial import DEFAULT_PRIME, ParseError, Polynomial, parse_polynomial

__version__ = "0.1.0"
