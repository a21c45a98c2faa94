"""B-spline evaluation and exact monomial convolution moments.

A B-spline of degree d over d+2 strictly increasing knots is evaluated two
ways: through divided differences of truncated powers (the definition used
throughout this package) and through the classical Cox-de Boor two-term
recurrence, which serves purely as an independent oracle. Splines are
right-continuous with half-open support [t_first, t_last).
"""

import math
from dataclasses import dataclass

from .divdiff import Polynomial, divided_difference, divided_difference_expansion


@dataclass(frozen=True)
class BSpline:
    degree: int
    knots: tuple

    def __post_init__(self):
        object.__setattr__(self, "knots", tuple(self.knots))
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        if len(self.knots) != self.degree + 2:
            raise ValueError(
                f"degree {self.degree} needs {self.degree + 2} knots, "
                f"got {len(self.knots)}"
            )
        if any(b <= a for a, b in zip(self.knots, self.knots[1:])):
            raise ValueError("knots must be strictly increasing")

    @property
    def support(self):
        return self.knots[0], self.knots[-1]


def _truncated_power(t, x, d):
    # right-continuous convention: value 0 whenever t <= x (also for d = 0)
    if t <= x:
        return 0
    return (t - x) ** d


def eval_via_divdiff(b, x):
    """(t_last - t_first) times the divided difference of max(t-x, 0)^d."""
    values = [_truncated_power(t, x, b.degree) for t in b.knots]
    return (b.knots[-1] - b.knots[0]) * divided_difference_expansion(b.knots, values)


def eval_via_recurrence(b, x):
    """Cox-de Boor degree-raising recurrence; independent of divdiff."""
    t = b.knots
    d = b.degree
    vals = [1 if t[i] <= x < t[i + 1] else 0 for i in range(d + 1)]
    for p in range(1, d + 1):
        nxt = []
        for i in range(d + 1 - p):
            left = (x - t[i]) / (t[i + p] - t[i]) * vals[i]
            right = (t[i + p + 1] - x) / (t[i + p + 1] - t[i + 1]) * vals[i + 1]
            nxt.append(left + right)
        vals = nxt
    return vals[0]


def monomial_moment(b, delta, x):
    """Closed form for integral of B(t) * (t - x)**delta dt.

    Equals s * C(k+delta, k)^-1 * divdiff(knots)(t - x)^(k+delta) with
    k = degree + 1 and the Peano normalization factor
    s = (t_last - t_first) / k, which restores exactness of the moment
    identity on non-uniform knots (it is 1 for unit-spaced knots).
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    k = b.degree + 1
    s = (b.knots[-1] - b.knots[0]) / k
    dd = divided_difference(b.knots, Polynomial.monomial(k + delta, shift=x))
    return s * dd / math.comb(k + delta, k)
