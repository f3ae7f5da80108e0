"""Exact star multiplication for polynomial solutions of grad f = M grad g."""

from .errors import (DimensionMismatch, FieldMismatch, NotASolutionError, NotClosedError, SchemaError,
                     StarmultError, VariableMismatch)
from .poly import OneForm, Poly, gradient, integrate_exact, is_closed
from .scalar import CQ, I, cq
from .staralg import (Modulus, MuPoly, StarSystem, check_solution, companion_matrix, star_power,
                      star_product, star_product_companion)

__all__ = [
    "CQ", "I", "cq",
    "Poly", "OneForm", "gradient", "integrate_exact", "is_closed",
    "Modulus", "MuPoly", "StarSystem", "check_solution", "companion_matrix",
    "star_product", "star_product_companion", "star_power",
    "StarmultError", "VariableMismatch", "FieldMismatch", "DimensionMismatch",
    "NotClosedError", "NotASolutionError", "SchemaError",
]

__version__ = "0.1.0"
