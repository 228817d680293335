from .rational import Q, as_q, q_str, parse_q, floor_q, lcm, lcm_many, check_reduced
from .poly import PolyQ, PolyFp, RationalFunction
from .linalg import Matrix, SingularMatrix, hnf
from .bernoulli import bernoulli_number, bernoulli_poly, bernoulli_poly_egf

__all__ = [
    "Q", "as_q", "q_str", "parse_q", "floor_q", "lcm", "lcm_many", "check_reduced",
    "PolyQ", "PolyFp", "RationalFunction",
    "Matrix", "SingularMatrix", "hnf",
    "bernoulli_number", "bernoulli_poly", "bernoulli_poly_egf",
]
