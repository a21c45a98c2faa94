"""Applying SIAC kernels: monomial convolution, field convolution, norms.

Monomial convolution uses the closed-form B-spline moments and checks the
defining reproduction property K * x^delta = x^delta for delta <= 2d.
Field convolution integrates piecewise-polynomial (DG-style) data against
a mesh-scaled kernel with Gauss-Legendre quadrature, splitting at every
kernel-knot image and cell breakpoint so each piece is a single smooth
polynomial.
"""

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import legendre as npleg
from numpy.polynomial import polynomial as nppoly

from .bspline import monomial_moment
from .kernel import SiacKernel

# integration pieces shorter than this fraction of the domain are dropped
_DEGENERATE_PIECE = 1e-14


class BoundaryError(ValueError):
    """Kernel support leaves the field domain at the listed points."""

    def __init__(self, points):
        self.points = list(points)
        super().__init__(
            "kernel support exits the field domain at x = "
            + ", ".join(f"{p:g}" for p in self.points)
        )


@dataclass(frozen=True)
class PiecewiseField:
    """Cell breakpoints plus per-cell Legendre-modal coefficients on [-1, 1]."""

    breakpoints: tuple
    cells: tuple

    def __post_init__(self):
        bp = tuple(float(t) for t in self.breakpoints)
        cells = tuple(tuple(float(c) for c in cell) for cell in self.cells)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "cells", cells)
        if len(bp) < 2 or any(b <= a for a, b in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if len(cells) != len(bp) - 1:
            raise ValueError("need one coefficient list per cell")
        if any(len(c) == 0 for c in cells):
            raise ValueError("empty cell coefficient list")

    @property
    def domain(self):
        return self.breakpoints[0], self.breakpoints[-1]

    @property
    def cell_degree(self):
        return max(len(c) for c in self.cells) - 1

    def __call__(self, t):
        bp = self.breakpoints
        if t < bp[0] or t > bp[-1]:
            raise ValueError(f"t = {t} outside field domain")
        # right-continuous: a breakpoint belongs to the cell on its right
        i = int(np.searchsorted(bp, t, side="right")) - 1
        i = min(i, len(self.cells) - 1)
        a, b = bp[i], bp[i + 1]
        xi = 2.0 * (t - a) / (b - a) - 1.0
        return float(npleg.legval(xi, self.cells[i]))


def field_from_power_coefficients(breakpoints, coefficients):
    """Represent a global power-basis polynomial as a PiecewiseField."""
    bp = [float(t) for t in breakpoints]
    poly = nppoly.Polynomial([float(c) for c in coefficients])
    cells = []
    for a, b in zip(bp[:-1], bp[1:]):
        on_cell = poly(nppoly.Polynomial([(a + b) / 2.0, (b - a) / 2.0]))
        cells.append(tuple(npleg.poly2leg(on_cell.coef)))
    return PiecewiseField(tuple(bp), tuple(cells))


@dataclass(frozen=True)
class ScaledKernel:
    """K_h(x) = K(x/h)/h; preserves the unit integral."""

    base: SiacKernel
    scale: float

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    @property
    def support(self):
        lo, hi = self.base.support
        return self.scale * float(lo), self.scale * float(hi)

    def __call__(self, x):
        return self.base(x / self.scale) / self.scale


def convolve_monomial(kernel, delta, x):
    """(K * (.)^delta)(x), closed form.

    The integrand K(t) (x-t)^delta is rewritten as (-1)^delta times
    K(t) (t-x)^delta and summed from the per-B-spline moments.
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    sign = (-1) ** delta
    total = 0
    for c, b in zip(kernel.normalized_coefficients, kernel.bsplines()):
        total = total + c * monomial_moment(b, delta, x)
    return sign * total


def reproduction_residuals(kernel, delta_max, xs):
    """Matrix of (K * x^delta)(x) - x^delta, rows delta = 0..delta_max."""
    if delta_max < 0:
        raise ValueError("delta_max must be non-negative")
    return [
        [convolve_monomial(kernel, delta, x) - x**delta for x in xs]
        for delta in range(delta_max + 1)
    ]


def convolve_field(kernel, field, xs):
    """Filter a piecewise-polynomial field at the points xs.

    For each x the integration domain is split at every kernel-knot image
    x - h*t_j and every cell breakpoint in between, and each piece is
    integrated with 2d+2 Gauss-Legendre nodes (exact for polynomial
    integrands up to degree 4d+3). Points whose kernel support exits the
    field domain raise BoundaryError.
    """
    if not isinstance(kernel, ScaledKernel):
        kernel = ScaledKernel(kernel, 1.0)
    base = kernel.base
    h = float(kernel.scale)
    bp = np.asarray(field.breakpoints, dtype=float)
    knots = np.asarray(base.knots, dtype=float)
    xs = [float(x) for x in xs]

    bad = [x for x in xs if x - h * knots[-1] < bp[0] or x - h * knots[0] > bp[-1]]
    if bad:
        raise BoundaryError(bad)

    nodes, weights = npleg.leggauss(2 * base.degree + 2)
    min_piece = _DEGENERATE_PIECE * (bp[-1] - bp[0])
    out = []
    for x in xs:
        images = x - h * knots[::-1]
        lo, hi = images[0], images[-1]
        inner = bp[(bp > lo) & (bp < hi)]
        cuts = np.unique(np.concatenate([images, inner]))
        total = 0.0
        for a, b in zip(cuts[:-1], cuts[1:]):
            if b - a < min_piece:
                continue
            mid, half = 0.5 * (a + b), 0.5 * (b - a)
            acc = 0.0
            for w, node in zip(weights, nodes):
                t = mid + half * node
                acc += w * field(t) * base((x - t) / h)
            total += half * acc / h
        out.append(total)
    return out


def error_norms(values, reference):
    """Discrete root-mean-square and max norms of values - reference."""
    v = np.asarray(values, dtype=float)
    r = np.asarray(reference, dtype=float)
    if v.size == 0 or v.shape != r.shape:
        raise ValueError("need two equal-length non-empty lists")
    diff = v - r
    return {
        "l2": float(np.sqrt(np.mean(diff**2))),
        "linf": float(np.max(np.abs(diff))),
    }
