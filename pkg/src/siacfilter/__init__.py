"""Optimal SIAC B-spline convolution kernels over arbitrary knots."""

from .bspline import BSpline, eval_via_divdiff, eval_via_recurrence, monomial_moment
from .divdiff import Polynomial, divided_difference, divided_difference_expansion
from .filtering import (
    BoundaryError,
    PiecewiseField,
    ScaledKernel,
    convolve_field,
    convolve_monomial,
    error_norms,
    field_from_power_coefficients,
    reproduction_residuals,
)
from .kernel import (
    ConstraintMatrix,
    SiacKernel,
    SingularMatrixError,
    build_kernel,
    build_matrix_divdiff,
    build_matrix_single_knots,
    build_matrix_uniform,
    column_scales,
    normalize_coefficients,
    solve_coefficients,
    symmetric_knots,
)
from .rational import Rational, format_rational, parse_rational, rational_from_integer_pair

__all__ = [
    "BSpline",
    "BoundaryError",
    "ConstraintMatrix",
    "PiecewiseField",
    "Polynomial",
    "Rational",
    "ScaledKernel",
    "SiacKernel",
    "SingularMatrixError",
    "build_kernel",
    "build_matrix_divdiff",
    "build_matrix_single_knots",
    "build_matrix_uniform",
    "column_scales",
    "convolve_field",
    "convolve_monomial",
    "divided_difference",
    "divided_difference_expansion",
    "error_norms",
    "eval_via_divdiff",
    "eval_via_recurrence",
    "field_from_power_coefficients",
    "format_rational",
    "monomial_moment",
    "normalize_coefficients",
    "parse_rational",
    "rational_from_integer_pair",
    "reproduction_residuals",
    "solve_coefficients",
    "symmetric_knots",
]
