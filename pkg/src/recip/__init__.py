"""Constant-term reciprocity for linear Diophantine systems.

Solution generating functions are obtained as iterated constant terms of
Elliott-rational functions; the package decides when such a constant term
satisfies reciprocity under reversal of the monomial order.
"""
from .algebra import ElliottRational, ElliottTerm, OrderSpec, VariableSpace, equals, is_zero, series_truncate
from .ctengine import ct_all, ct_at_infinity, ct_at_zero, ct_lambda, hadamard_product, i_operator
from .errors import RecipError
from .ldsystem import LDSystem, MatrixForm, contribution_sequences, crude_E, crude_Ebar, sequence_ops
from .oracle import enumerate_solutions, has_positive_solution, indicator_series
from .reciprocity import (
    error_terms,
    homogeneous_reciprocity,
    i_property,
    monster_check,
    r_property,
    rec_domain_check,
    single_equation_r_property,
)

__version__ = "0.1.0"

__all__ = [
    "ElliottRational",
    "ElliottTerm",
    "LDSystem",
    "MatrixForm",
    "OrderSpec",
    "RecipError",
    "VariableSpace",
    "contribution_sequences",
    "crude_E",
    "crude_Ebar",
    "ct_all",
    "ct_at_infinity",
    "ct_at_zero",
    "ct_lambda",
    "enumerate_solutions",
    "equals",
    "error_terms",
    "hadamard_product",
    "has_positive_solution",
    "homogeneous_reciprocity",
    "i_operator",
    "i_property",
    "indicator_series",
    "is_zero",
    "monster_check",
    "r_property",
    "rec_domain_check",
    "sequence_ops",
    "series_truncate",
    "single_equation_r_property",
]
