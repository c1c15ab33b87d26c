"""Exact rational arithmetic and negative (minus-sign) continued fractions.

Rationals are stdlib ``fractions.Fraction`` values: always reduced, positive
denominator, arbitrary-precision integer parts.  This module adds the text
syntax used by the CLI ("p/q" or "p", sign on the numerator only) and the
negative continued fraction expansion

    x = a_1 - 1/(a_2 - 1/(... - 1/a_k))

written [a_1, ..., a_k]^- throughout.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import DegenerateCF, DomainError

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")

STRICT = "strict"  # every coefficient >= 2; defined for x > 1
SLOPE = "slope"    # first coefficient >= 1, later ones >= 2; defined for x > 0


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" with the sign on the numerator only."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise DomainError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise DomainError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def neg_cf_expand(x: Fraction, form: str = STRICT) -> list[int]:
    """Expand x into its unique negative continued fraction.

    In strict form (x > 1) every coefficient is >= 2.  In slope form
    (x > 0) the leading coefficient may be 1, the rest are >= 2.  The
    expansion is the ceiling recursion a = ceil(x), continue on 1/(a - x).
    """
    if form not in (STRICT, SLOPE):
        raise DomainError(f"unknown expansion form: {form!r}")
    x = Fraction(x)
    if form == STRICT and x <= 1:
        raise DomainError(f"strict expansion needs x > 1, got {format_rational(x)}")
    if form == SLOPE and x <= 0:
        raise DomainError(f"slope expansion needs x > 0, got {format_rational(x)}")
    coeffs = []
    while True:
        a = -((-x.numerator) // x.denominator)  # ceil(x)
        coeffs.append(a)
        rem = a - x
        if rem == 0:
            return coeffs
        x = 1 / rem  # rem is in (0, 1), so x > 1 from here on


def neg_cf_eval(coeffs: list[int]) -> Fraction:
    """Right-to-left fold x <- a - 1/x.  Exact inverse of neg_cf_expand."""
    if not coeffs:
        raise DomainError("empty coefficient list")
    x = Fraction(coeffs[-1])
    for a in reversed(coeffs[:-1]):
        if x == 0:
            raise DegenerateCF(f"zero intermediate value while folding {coeffs}")
        x = a - 1 / x
    return x


def floor_sqrt(x: Fraction) -> int:
    """floor(sqrt(x)) for a nonnegative rational, exactly."""
    if x < 0:
        raise DomainError("negative radicand")
    # sqrt(a/b) = sqrt(a*b)/b
    return math.isqrt(x.numerator * x.denominator) // x.denominator
