"""Divided differences of polynomials over arbitrary knot sequences.

Two routes are provided: the defining recursion (handles repeated knots
through exact polynomial derivatives) and the Lagrange-weight expansion
(distinct knots only). They agree wherever both apply and cross-check
each other in the test suite.

All routines are generic over the scalar type: run them on Fractions for
exact results or on floats for speed.
"""

import math


class Polynomial:
    """Univariate polynomial sum_l coefficients[l] * (t - shift)**l.

    Trailing zero coefficients are stripped; the zero polynomial has an
    empty coefficient list and degree -inf.
    """

    __slots__ = ("coefficients", "shift")

    def __init__(self, coefficients, shift=0):
        coefficients = list(coefficients)
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        self.coefficients = coefficients
        self.shift = shift

    @classmethod
    def monomial(cls, power, shift=0):
        """(t - shift)**power"""
        return cls([0] * power + [1], shift)

    @property
    def degree(self):
        return len(self.coefficients) - 1 if self.coefficients else -math.inf

    def __call__(self, t):
        u = t - self.shift
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * u + c
        return acc

    def derivative(self):
        return Polynomial(
            [l * c for l, c in enumerate(self.coefficients)][1:], self.shift
        )

    def __repr__(self):
        return f"Polynomial({self.coefficients!r}, shift={self.shift!r})"


def _max_multiplicity(knots):
    best, run = 1, 1
    for a, b in zip(knots, knots[1:]):
        run = run + 1 if a == b else 1
        best = max(best, run)
    return best


def divided_difference(knots, h):
    """Divided difference of the polynomial h over the knot sequence.

    Computed by the defining recursion, memoized as a triangular Newton
    table. When a sub-sequence collapses to a single repeated value the
    result is h^(m)(t)/m! via exact differentiation, so the knots must be
    sorted whenever repeats are present. Multiplicity above degree(h)+1
    is rejected.
    """
    knots = list(knots)
    if not knots:
        raise ValueError("empty knot sequence")
    sorted_ok = all(a <= b for a, b in zip(knots, knots[1:]))
    if not sorted_ok and len(set(knots)) != len(knots):
        raise ValueError("repeated knots require a non-decreasing sequence")
    mult = _max_multiplicity(sorted(knots) if not sorted_ok else knots)
    if mult > max(h.degree, 0) + 1:
        raise ValueError(
            f"knot multiplicity {mult} exceeds polynomial degree {h.degree} + 1"
        )

    derivatives = [h]
    for _ in range(mult - 1):
        derivatives.append(derivatives[-1].derivative())

    table = [h(t) for t in knots]
    n = len(knots)
    for width in range(1, n):
        nxt = []
        for i in range(n - width):
            if knots[i + width] == knots[i]:
                nxt.append(derivatives[width](knots[i]) / math.factorial(width))
            else:
                nxt.append(
                    (table[i + 1] - table[i]) / (knots[i + width] - knots[i])
                )
        table = nxt
    return table[0]


def divided_difference_expansion(knots, values):
    """Divided difference from point values over strictly increasing knots.

    Returns sum_l values[l] / prod_{j != l} (knots[l] - knots[j]), where
    values[l] is the integrand evaluated at knots[l].
    """
    knots = list(knots)
    values = list(values)
    if not knots:
        raise ValueError("empty knot sequence")
    if len(knots) != len(values):
        raise ValueError("knots and values must have equal length")
    if any(b <= a for a, b in zip(knots, knots[1:])):
        raise ValueError("knots must be strictly increasing")
    total = 0
    for l, (t, v) in enumerate(zip(knots, values)):
        w = 1
        for j, s in enumerate(knots):
            if j != l:
                w = w * (t - s)
        total = total + v / w
    return total
