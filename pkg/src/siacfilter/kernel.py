"""Construction of optimal SIAC convolution kernels.

A kernel of degree d is a combination of 2d+1 B-splines over 3d+2 strictly
increasing knots; column gamma of the constraint system uses the d+2
consecutive knots starting at index gamma. The raw coefficients solve
M c = e1 where M(delta, gamma) is the divided difference of t^(d+1+delta)
over that knot subsequence; they are then divided by the per-column
average spacing s_gamma = (t_{gamma+d+1} - t_gamma)/(d+1) so that the
assembled spline reproduces monomials up to degree 2d.

Three matrix constructions are provided: the divided-difference recursion
(ground truth), the Lagrange expansion for single knots, and the explicit
uniform-knot formula. The uniform formula is kept verbatim as printed in
its source even though its alternating sign makes it (-1)^(d+1) times the
divided-difference matrix, flipping the solution's sign for even d; both
variants are exposed so golden tables can pin either convention.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bspline import BSpline, eval_via_recurrence
from .divdiff import Polynomial, divided_difference, divided_difference_expansion


class SingularMatrixError(ValueError):
    """The constraint system has no unique solution."""


@dataclass(frozen=True)
class ConstraintMatrix:
    degree: int
    entries: tuple  # (2d+1) x (2d+1); row -> delta in 0..2d, col -> gamma + d

    def __post_init__(self):
        n = 2 * self.degree + 1
        entries = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != n or any(len(row) != n for row in entries):
            raise ValueError(f"constraint matrix must be {n}x{n}")


@dataclass(frozen=True)
class SiacKernel:
    """Degree, the full 3d+2 knots, and raw plus normalized coefficients."""

    degree: int
    knots: tuple
    raw_coefficients: tuple
    normalized_coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "knots", tuple(self.knots))
        object.__setattr__(self, "raw_coefficients", tuple(self.raw_coefficients))
        object.__setattr__(
            self, "normalized_coefficients", tuple(self.normalized_coefficients)
        )
        _validate_knots(self.knots, self.degree)
        n = 2 * self.degree + 1
        if len(self.raw_coefficients) != n or len(self.normalized_coefficients) != n:
            raise ValueError(f"kernel of degree {self.degree} needs {n} coefficients")

    @property
    def support(self):
        return self.knots[0], self.knots[-1]

    def bsplines(self):
        d = self.degree
        return [BSpline(d, self.knots[g : g + d + 2]) for g in range(2 * d + 1)]

    def __call__(self, x):
        total = 0
        d = self.degree
        for g, c in enumerate(self.normalized_coefficients):
            total = total + c * eval_via_recurrence(
                BSpline(d, self.knots[g : g + d + 2]), x
            )
        return total


def _validate_knots(knots, d):
    if d < 0:
        raise ValueError("degree must be non-negative")
    if len(knots) != 3 * d + 2:
        raise ValueError(
            f"degree {d} needs {3 * d + 2} knots, got {len(knots)}"
        )
    if any(b <= a for a, b in zip(knots, knots[1:])):
        raise ValueError("knots must be strictly increasing")


def symmetric_knots(d, exact=True):
    """Unit-spaced knots centered so the kernel is symmetric about 0.

    The first knot sits at -(3d+1)/2; the 2d+1 column start values then run
    over -d-(d+1)/2 .. d-(d+1)/2. Half-integers appear for even d, hence
    the exact path returns Fractions.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    start = Fraction(-3 * d - 1, 2)
    knots = tuple(start + i for i in range(3 * d + 2))
    if not exact:
        knots = tuple(float(t) for t in knots)
    return knots


def build_matrix_divdiff(knots, d):
    """Constraint matrix via the divided-difference recursion (ground truth)."""
    _validate_knots(knots, d)
    rows = []
    for delta in range(2 * d + 1):
        mono = Polynomial.monomial(d + 1 + delta)
        rows.append(
            tuple(
                divided_difference(knots[g : g + d + 2], mono)
                for g in range(2 * d + 1)
            )
        )
    return ConstraintMatrix(d, tuple(rows))


def build_matrix_single_knots(knots, d):
    """Constraint matrix via the Lagrange-weight expansion (distinct knots)."""
    _validate_knots(knots, d)
    rows = []
    for delta in range(2 * d + 1):
        p = d + 1 + delta
        row = []
        for g in range(2 * d + 1):
            sub = knots[g : g + d + 2]
            row.append(divided_difference_expansion(sub, [t**p for t in sub]))
        rows.append(tuple(row))
    return ConstraintMatrix(d, tuple(rows))


def build_matrix_uniform(d, exact=True):
    """Explicit unit-spacing formula, kept verbatim:

        entry(delta, gamma) =
            (1/(d+1)!) * sum_{l=0}^{d+1} (-1)^l C(d+1, l) (gamma+l)^(d+1+delta)

    over the symmetric column starts. As printed this equals (-1)^(d+1)
    times build_matrix_divdiff(symmetric_knots(d)); see the module note.
    """
    starts = symmetric_knots(d, exact=exact)[: 2 * d + 1]
    fact = math.factorial(d + 1)
    rows = []
    for delta in range(2 * d + 1):
        p = d + 1 + delta
        row = []
        for g in starts:
            acc = 0
            for l in range(d + 2):
                acc = acc + (-1) ** l * math.comb(d + 1, l) * (g + l) ** p
            row.append(acc / fact)
        rows.append(tuple(row))
    return ConstraintMatrix(d, tuple(rows))


def _solve_exact(entries, rhs):
    n = len(rhs)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(entries)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("constraint matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col] / aug[col][col]
                for k in range(col, n + 1):
                    aug[r][k] -= f * aug[col][k]
    return tuple(Fraction(aug[i][n], 1) / aug[i][i] for i in range(n))


def solve_coefficients(m):
    """Solve M c = e1.

    Exact Gaussian elimination (first nonzero pivot) when the entries are
    rational; LAPACK partial pivoting on the float path.
    """
    n = 2 * m.degree + 1
    exact = all(
        isinstance(v, (Fraction, int)) for row in m.entries for v in row
    )
    if exact:
        rhs = [Fraction(0)] * n
        rhs[0] = Fraction(1)
        return _solve_exact(m.entries, rhs)
    a = np.array(m.entries, dtype=float)
    rhs = np.zeros(n)
    rhs[0] = 1.0
    try:
        sol = np.linalg.solve(a, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError("constraint matrix is singular") from exc
    if not np.all(np.isfinite(sol)):
        raise SingularMatrixError("constraint matrix is singular")
    return tuple(float(v) for v in sol)


def column_scales(knots, d):
    """Per-column average spacing s_gamma = (t_{gamma+d+1} - t_gamma)/(d+1)."""
    return tuple((knots[g + d + 1] - knots[g]) / (d + 1) for g in range(2 * d + 1))


def normalize_coefficients(knots, d, raw):
    """Divide each raw coefficient by its column scale.

    The raw solution targets unit-spacing B-spline moments; dividing by
    s_gamma makes the assembled kernel integrate to 1 and reproduce
    monomials on arbitrary knots. Identity map for unit-spaced knots.
    """
    return tuple(c / s for c, s in zip(raw, column_scales(knots, d)))


def build_kernel(knots, d, exact=False):
    """Assemble a SiacKernel: build matrix, solve, normalize.

    The float path first maps the knots affinely to zero mean and unit
    average spacing before elimination (the matrix is Vandermonde-like and
    conditions badly otherwise); raw coefficients are affine-invariant so
    no back-mapping is needed, and the normalization uses the original
    knots.
    """
    knots = tuple(knots)
    _validate_knots(knots, d)
    if exact:
        exact_knots = tuple(
            t if isinstance(t, (Fraction, int)) else Fraction(str(t)) for t in knots
        )
        raw = solve_coefficients(build_matrix_divdiff(exact_knots, d))
        return SiacKernel(d, exact_knots, raw, normalize_coefficients(exact_knots, d, raw))
    arr = np.asarray(knots, dtype=float)
    spacing = (arr[-1] - arr[0]) / (len(arr) - 1)
    conditioned = tuple(float(t) for t in (arr - arr.mean()) / spacing)
    raw = solve_coefficients(build_matrix_divdiff(conditioned, d))
    fknots = tuple(float(t) for t in arr)
    return SiacKernel(d, fknots, raw, normalize_coefficients(fknots, d, raw))
