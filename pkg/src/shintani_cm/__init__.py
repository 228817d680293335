"""Shintani fundamental domains and class numbers of CM extensions F(sqrt(-p)).

F is a totally real field of narrow class number one and p a rational prime
inert in F.  Everything is exact: rationals are Fractions and every real sign
is decided by interval enclosures that refine until the sign is certain.
"""
from .numfield import FieldSpec, HypothesisError, ValidationError, validate_field_spec
from .realalg import PrecisionBudget, SignUndecided
from .shintani import build_frame, build_frames
from .lfun import (NonIntegralClassNumber, class_number_cm, decompose, dirichlet_oracle,
                   girstmair_oracle, real_quadratic_skeleton)

__version__ = "0.1.0"

__all__ = [
    "FieldSpec", "HypothesisError", "ValidationError", "validate_field_spec",
    "PrecisionBudget", "SignUndecided", "build_frame", "build_frames",
    "NonIntegralClassNumber", "class_number_cm", "decompose", "dirichlet_oracle",
    "girstmair_oracle", "real_quadratic_skeleton",
]
