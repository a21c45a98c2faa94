"""Exact rational scalars.

The exact computation path runs entirely on arbitrary-precision rationals;
kernel coefficient denominators already reach eight digits at degree 5 and
intermediate elimination values grow far larger, so fixed-width integers
are not an option. Exact values serialize as "p/q" strings (the "/q" part
omitted when the denominator is 1), never as floats.
"""

from fractions import Fraction

Rational = Fraction


def rational_from_integer_pair(p, q):
    """Return p/q in canonical lowest terms with positive denominator."""
    if q == 0:
        raise ValueError("zero denominator")
    return Fraction(p, q)


def parse_rational(text):
    """Parse "p/q" or "p" into a Rational."""
    return Fraction(str(text).strip())


def format_rational(value):
    """Render a Rational as "p/q", omitting "/q" when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
