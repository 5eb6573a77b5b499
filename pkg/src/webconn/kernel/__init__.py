from fractions import Fraction as Rational

from .poly import MPoly, RatFunc, P, X, Y, ONE, ZERO, as_ratfunc, partial_derivative
from .linalg import (
    bareiss_det,
    matrix_rank,
    nullspace,
    resultant_coeffs,
    resultant_p,
    solve_linear,
    solve_linear_multi,
    sylvester_matrix,
)
from .forms import Form1, Form2, FormMatrix, exact_form, exterior_derivative, matrix_curvature

__all__ = [
    "Rational", "MPoly", "RatFunc", "P", "X", "Y", "ONE", "ZERO", "as_ratfunc",
    "partial_derivative", "bareiss_det", "matrix_rank", "nullspace", "resultant_coeffs",
    "resultant_p", "solve_linear", "solve_linear_multi", "sylvester_matrix",
    "Form1", "Form2", "FormMatrix", "exact_form", "exterior_derivative", "matrix_curvature",
]
