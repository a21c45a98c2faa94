import numpy as np
import pytest
from numpy.polynomial import legendre as npleg

from siacfilter import (
    BoundaryError,
    PiecewiseField,
    ScaledKernel,
    SiacKernel,
    build_kernel,
    convolve_field,
    convolve_monomial,
    error_norms,
    eval_via_recurrence,
    field_from_power_coefficients,
    reproduction_residuals,
    symmetric_knots,
)


def kernel_quadrature(kernel, integrand, nodes=16):
    """Dense Gauss-Legendre over the kernel's knot spans; independent oracle."""
    x, w = npleg.leggauss(nodes)
    knots = [float(t) for t in kernel.knots]
    total = 0.0
    for a, b in zip(knots, knots[1:]):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        total += half * float(np.dot(w, [integrand(mid + half * t) for t in x]))
    return total


def sym_kernel(d):
    return build_kernel(symmetric_knots(d, exact=False), d)


def jitter_kernel(d, rng, center=True):
    base = np.arange(3 * d + 2, dtype=float)
    knots = np.sort(base + rng.uniform(-0.35, 0.35, base.size))
    if center:
        knots -= knots.mean()
    return build_kernel(tuple(float(t) for t in knots), d)


def test_field_validation_and_eval():
    with pytest.raises(ValueError):
        PiecewiseField((0, 0), ((1.0,),))
    with pytest.raises(ValueError):
        PiecewiseField((0, 1, 2), ((1.0,),))
    f = PiecewiseField((0.0, 1.0, 2.0), ((1.0,), (0.0, 1.0)))
    assert f(0.5) == 1.0
    # breakpoint belongs to the right cell; linear cell is xi there
    assert f(1.0) == -1.0
    assert f(2.0) == 1.0
    with pytest.raises(ValueError):
        f(2.5)


def test_field_from_power_coefficients():
    field = field_from_power_coefficients([0.0, 0.4, 1.0, 1.7], [1.0, -2.0, 3.0])
    for t in np.linspace(0.0, 1.7, 40):
        assert abs(field(float(t)) - (1 - 2 * t + 3 * t * t)) < 1e-12


def test_convolve_monomial_delta0_is_one():
    rng = np.random.default_rng(3)
    for d in (1, 2, 3):
        k = jitter_kernel(d, rng)
        for x in (-0.7, 0.0, 1.3):
            assert abs(convolve_monomial(k, 0, x) - 1.0) < 1e-12


def test_convolve_monomial_matches_quadrature():
    k = sym_kernel(1)
    for delta, x, expected in ((1, 0.3, 0.3), (2, -0.5, 0.25)):
        closed = convolve_monomial(k, delta, x)
        quad = kernel_quadrature(k, lambda t: k(t) * (x - t) ** delta)
        assert abs(closed - expected) < 1e-12
        assert abs(closed - quad) < 1e-11


def test_reproduction_residuals_gated_degrees():
    rng = np.random.default_rng(5)
    for d in (1, 2):
        k = jitter_kernel(d, rng)
        xs = np.linspace(-1.0, 1.0, 11)
        res = reproduction_residuals(k, 2 * d, xs)
        assert max(abs(v) for row in res for v in row) < 1e-10


def test_reproduction_fails_beyond_2d_for_generic_kernel():
    rng = np.random.default_rng(7)
    d = 2
    k = jitter_kernel(d, rng)
    delta = 2 * d + 1
    xs = np.linspace(-2.0, 2.0, 21)
    res = reproduction_residuals(k, delta, xs)[delta]
    quad_res = [
        kernel_quadrature(k, lambda t: k(t) * (x - t) ** delta) - x**delta
        for x in xs
    ]
    assert max(abs(v) for v in res) > 1e-6
    assert max(abs(a - b) for a, b in zip(res, quad_res)) < 1e-9


def test_raw_coefficients_need_normalization():
    # on non-uniform knots the raw solution does not even integrate to 1
    rng = np.random.default_rng(9)
    d = 2
    k = jitter_kernel(d, rng)
    raw_as_normalized = SiacKernel(d, k.knots, k.raw_coefficients, k.raw_coefficients)
    res = reproduction_residuals(raw_as_normalized, 0, [0.0])[0][0]
    assert abs(res) > 1e-6


def test_convolve_constant_field():
    k = sym_kernel(1)
    field = PiecewiseField(tuple(np.linspace(0.0, 1.0, 9)), ((1.0,),) * 8)
    vals = convolve_field(ScaledKernel(k, 0.05), field, [0.3, 0.5, 0.7])
    assert max(abs(v - 1.0) for v in vals) < 1e-12


def test_convolve_polynomial_field_reproduces():
    d = 1
    k = sym_kernel(d)
    coeffs = [0.3, -1.2, 0.8]  # degree 2d
    bp = np.linspace(0.0, 1.0, 11)
    field = field_from_power_coefficients(bp, coeffs)
    h = 0.05
    xs = np.linspace(0.2, 0.8, 13)
    vals = convolve_field(ScaledKernel(k, h), field, xs)
    for x, v in zip(xs, vals):
        expected = coeffs[0] + coeffs[1] * x + coeffs[2] * x * x
        assert abs(v - expected) < 1e-9


def test_convolve_field_matches_monomial_closed_form():
    # polynomial field: field convolution must agree with the closed form
    d = 2
    k = sym_kernel(d)
    coeffs = [0.5, 1.0, -0.25]
    bp = np.linspace(-6.0, 6.0, 13)
    field = field_from_power_coefficients(bp, coeffs)
    xs = [-1.0, 0.0, 0.5, 1.5]
    vals = convolve_field(ScaledKernel(k, 1.0), field, xs)
    for x, v in zip(xs, vals):
        closed = sum(c * convolve_monomial(k, m, x) for m, c in enumerate(coeffs))
        assert abs(v - closed) < 1e-11


def test_convolve_field_linearity():
    d = 1
    k = ScaledKernel(sym_kernel(d), 0.1)
    bp = tuple(np.linspace(0.0, 1.0, 7))
    rng = np.random.default_rng(13)
    f = PiecewiseField(bp, tuple(tuple(rng.uniform(-1, 1, 2)) for _ in range(6)))
    g = PiecewiseField(bp, tuple(tuple(rng.uniform(-1, 1, 2)) for _ in range(6)))
    alpha, beta = 0.7, -1.4
    combo = PiecewiseField(
        bp,
        tuple(
            tuple(alpha * a + beta * b for a, b in zip(ca, cb))
            for ca, cb in zip(f.cells, g.cells)
        ),
    )
    xs = [0.4, 0.5, 0.6]
    lhs = convolve_field(k, combo, xs)
    fv = convolve_field(k, f, xs)
    gv = convolve_field(k, g, xs)
    for l, a, b in zip(lhs, fv, gv):
        assert abs(l - (alpha * a + beta * b)) < 1e-12


def test_scaling_consistency():
    # filtering f with K_h equals filtering f(h x) with K_1, re-mapped
    d = 1
    k = sym_kernel(d)
    h = 0.25
    coeffs = [0.2, 0.9, -0.4]
    bp = np.linspace(-2.0, 2.0, 17)
    field = field_from_power_coefficients(bp, coeffs)
    # g(u) = f(h u) has power coefficients scaled by h^m
    g_coeffs = [c * h**m for m, c in enumerate(coeffs)]
    g_field = field_from_power_coefficients(bp / h, g_coeffs)
    xs = [-0.4, 0.0, 0.3]
    direct = convolve_field(ScaledKernel(k, h), field, xs)
    mapped = convolve_field(ScaledKernel(k, 1.0), g_field, [x / h for x in xs])
    for a, b in zip(direct, mapped):
        assert abs(a - b) < 1e-10


def test_boundary_error():
    k = sym_kernel(1)
    field = PiecewiseField((0.0, 0.5, 1.0), ((1.0,), (1.0,)))
    with pytest.raises(BoundaryError) as err:
        convolve_field(ScaledKernel(k, 0.2), field, [0.5, 0.05])
    assert err.value.points == [0.05]


def test_scaled_kernel_unit_integral():
    k = sym_kernel(2)
    sk = ScaledKernel(k, 0.35)
    x, w = npleg.leggauss(8)
    # integrate piecewise over the scaled knot spans, where K_h is polynomial
    spans = [0.35 * float(t) for t in k.knots]
    total = 0.0
    for a, b in zip(spans, spans[1:]):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        total += half * float(np.dot(w, [sk(mid + half * t) for t in x]))
    assert abs(total - 1.0) < 1e-12


def test_error_norms():
    assert error_norms([1.0, 2.0], [1.0, 2.0]) == {"l2": 0.0, "linf": 0.0}
    norms = error_norms([1.0, 2.0], [1.0, 0.0])
    assert abs(norms["l2"] - np.sqrt(2.0)) < 1e-15
    assert norms["linf"] == 2.0
    rng = np.random.default_rng(15)
    v = rng.normal(size=50)
    r = rng.normal(size=50)
    norms = error_norms(v, r)
    assert norms["linf"] >= norms["l2"] / np.sqrt(50) - 1e-15
    with pytest.raises(ValueError):
        error_norms([], [])
