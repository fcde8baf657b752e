from polymellin.algebra.integer import integer_kernel, rational_inverse
from polymellin.algebra.laurent import (
    LaurentPolynomial,
    LogPoint,
    evaluate_log,
    evaluate_log_grid,
    multiply,
    truncate_to_face,
    weighted_euler_derivative,
)

__all__ = [
    "LaurentPolynomial",
    "LogPoint",
    "evaluate_log",
    "evaluate_log_grid",
    "integer_kernel",
    "multiply",
    "rational_inverse",
    "truncate_to_face",
    "weighted_euler_derivative",
]
