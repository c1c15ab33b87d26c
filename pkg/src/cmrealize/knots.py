"""Torus knots, cables of torus knots, and their surgery invariants.

Alexander polynomials are stored in symmetric normalized form: the tuple
(a_0, ..., a_g) with Delta(t) = a_0 + sum a_i (t^i + t^-i) and Delta(1) = 1.
Surgery formulas map (knot, slope) to a raw Seifert presentation and then
through ``normalize`` to the canonical oriented form.

The closed formulas used here are standard:
    Delta_{T(r,s)}(t) = (t^{rs} - 1)(t - 1) / ((t^r - 1)(t^s - 1)),
    Delta of an (a,b)-cable = Delta_companion(t^a) * Delta_{T(a,b)}(t),
    g(T(r,s)) = (r-1)(s-1)/2,  g(cable) = a g + (a-1)(|b|-1)/2,
with mirrors leaving Delta and genus unchanged.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, NotSeifertSlope, ReducibleSurgery
from .plumbing import SeifertForm, normalize


@dataclass(frozen=True)
class TorusKnot:
    """T_{sign*r, s} with 2 <= r < s coprime; sign -1 is the mirror."""

    r: int
    s: int
    sign: int = 1

    def __post_init__(self):
        if not (2 <= self.r < self.s):
            raise DomainError(f"torus parameters need 2 <= r < s, got ({self.r}, {self.s})")
        if math.gcd(self.r, self.s) != 1:
            raise DomainError(f"torus parameters must be coprime: ({self.r}, {self.s})")
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")

    def mirror(self) -> "TorusKnot":
        return TorusKnot(self.r, self.s, -self.sign)

    def text(self) -> str:
        return f"T({self.sign * self.r},{self.s})"

    def sort_key(self):
        return (0, self.r, self.s, 0, 0, self.sign)


@dataclass(frozen=True)
class CableKnot:
    """(a,b)-cable of a torus knot: winding a >= 2, gcd(a, b) = 1."""

    a: int
    b: int
    companion: TorusKnot

    def __post_init__(self):
        if self.a < 2:
            raise DomainError("cable winding number must be >= 2")
        if self.b == 0 or math.gcd(self.a, abs(self.b)) != 1:
            raise DomainError(f"cable parameters must be coprime and b nonzero: ({self.a}, {self.b})")

    def mirror(self) -> "CableKnot":
        return CableKnot(self.a, -self.b, self.companion.mirror())

    def text(self) -> str:
        return f"C({self.a},{self.b});{self.companion.text()}"

    def sort_key(self):
        c = self.companion
        return (1, c.r, c.s, self.a, self.b, c.sign)


Knot = TorusKnot | CableKnot

_KNOT_RE = re.compile(r"^T\((-?\d+),(\d+)\)$")
_CABLE_RE = re.compile(r"^C\((\d+),(-?\d+)\);(.+)$")


def parse_knot(text: str) -> Knot:
    """Parse "T(r,s)", "T(-r,s)" or "C(a,b);T(r,s)"."""
    text = text.strip().replace(" ", "")
    m = _CABLE_RE.match(text)
    if m:
        companion = parse_knot(m.group(3))
        if not isinstance(companion, TorusKnot):
            raise DomainError("cable companion must be a torus knot")
        return CableKnot(int(m.group(1)), int(m.group(2)), companion)
    m = _KNOT_RE.match(text)
    if m:
        rr, s = int(m.group(1)), int(m.group(2))
        return TorusKnot(abs(rr), s, 1 if rr > 0 else -1)
    raise DomainError(f"not a knot spec: {text!r}")


# ---------------------------------------------------------------------------
# Alexander polynomials and torsion coefficients


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_divmod_exact(num, den):
    """Exact division of integer polynomials; raises on nonzero remainder."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % den[-1] != 0:
            raise DomainError("polynomial division is not exact")
        q = c // den[-1]
        out[i] = q
        if q:
            for j, d in enumerate(den):
                num[i + j] -= q * d
    if any(num):
        raise DomainError("polynomial division left a remainder")
    return out


def _one_minus_t_pow(n):
    """t^n - 1 as a coefficient list."""
    out = [0] * (n + 1)
    out[0] = -1
    out[n] = 1
    return out


def _torus_alexander_full(r: int, s: int) -> list[int]:
    """Delta_{T(r,s)} as coefficients of degrees 0..(r-1)(s-1)."""
    if r == 1 or s == 1:
        return [1]
    num = _poly_mul(_one_minus_t_pow(r * s), _one_minus_t_pow(1))
    den = _poly_mul(_one_minus_t_pow(r), _one_minus_t_pow(s))
    return _poly_divmod_exact(num, den)


@dataclass(frozen=True)
class AlexanderPoly:
    """Symmetric normalization: coeffs = (a_0, ..., a_g), Delta(1) = 1."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise DomainError("empty Alexander polynomial")
        if self.coeffs[0] + 2 * sum(self.coeffs[1:]) != 1:
            raise DomainError("Alexander polynomial is not normalized to Delta(1) = 1")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> int:
        i = abs(i)
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def to_json(self) -> dict:
        return {"symmetric_coeffs": list(self.coeffs), "degree": self.degree}


def _symmetrize(full: list[int]) -> AlexanderPoly:
    while full and full[-1] == 0:
        full = full[:-1]
    deg = len(full) - 1
    if deg % 2 != 0:
        raise DomainError("Alexander polynomial has odd degree; cannot symmetrize")
    g = deg // 2
    if full != full[::-1]:
        raise DomainError("Alexander polynomial is not palindromic")
    return AlexanderPoly(coeffs=tuple(full[g:]))


def alexander(k: Knot) -> AlexanderPoly:
    """Symmetric normalized Alexander polynomial; mirrors share it."""
    if isinstance(k, TorusKnot):
        return _symmetrize(_torus_alexander_full(k.r, k.s))
    comp = _torus_alexander_full(k.companion.r, k.companion.s)
    stretched = [0] * ((len(comp) - 1) * k.a + 1)
    for i, c in enumerate(comp):
        stretched[i * k.a] = c
    pattern = _torus_alexander_full(k.a, abs(k.b))
    return _symmetrize(_poly_mul(stretched, pattern))


def genus(k: Knot) -> int:
    if isinstance(k, TorusKnot):
        return (k.r - 1) * (k.s - 1) // 2
    return k.a * genus(k.companion) + (k.a - 1) * (abs(k.b) - 1) // 2


def torsion_coeffs(poly: AlexanderPoly) -> tuple[int, ...]:
    """t_i = sum_{j >= 1} j * a_{i+j}, for i = 0..g (t_g = 0)."""
    g = poly.degree
    return tuple(
        sum(j * poly.coeff(i + j) for j in range(1, g - i + 1)) for i in range(g + 1)
    )


def torsion_at(torsion: tuple[int, ...], i: int) -> int:
    return torsion[i] if i < len(torsion) else 0


# ---------------------------------------------------------------------------
# Surgery formulas


@dataclass(frozen=True)
class SurgeryResult:
    raw_e: int
    raw_fibers: tuple[Fraction, Fraction, Fraction]
    normalized: SeifertForm
    reversed: bool

    def raw_text(self) -> str:
        from .exact import format_rational

        return f"{self.raw_e};" + ",".join(format_rational(f) for f in self.raw_fibers)


def _torus_seifert_invariants(r: int, s: int):
    """The integers 1 <= s' < r, 1 <= r' < s with s'/r + r'/s = 1 + 1/(rs)."""
    for s_p in range(1, r):
        num = r * s + 1 - s_p * s
        if num % r == 0:
            r_p = num // r
            if 1 <= r_p < s:
                return s_p, r_p
    raise DomainError(f"no Seifert invariants for ({r}, {s})")


def torus_surgery(r: int, s: int, slope: Fraction, sign: int = 1) -> SurgeryResult:
    """Seifert form of slope-surgery on T_{sign*r, s}.

    The positive case is (1; r/s', s/r', slope - rs); the mirror is handled
    by negating every surgery coefficient (which reverses orientation) and
    normalizing as usual.
    """
    slope = Fraction(slope)
    if math.gcd(r, s) != 1 or not (2 <= r < s):
        raise DomainError(f"invalid torus parameters ({r}, {s})")
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    base_slope = slope if sign == 1 else -slope
    if base_slope == r * s:
        raise ReducibleSurgery(f"slope {r * s} on T({r},{s}) is reducible")
    s_p, r_p = _torus_seifert_invariants(r, s)
    fibers = (Fraction(r, s_p), Fraction(s, r_p), base_slope - r * s)
    e = 1
    if sign == -1:
        e, fibers = -e, tuple(-f for f in fibers)
    normalized, rev = normalize(e, fibers)
    return SurgeryResult(raw_e=e, raw_fibers=fibers, normalized=normalized, reversed=rev)


def cable_slope_parts(a: int, b: int, slope: Fraction):
    """Split slope as ab + delta/q with delta = +-1, or NotSeifertSlope."""
    frac = Fraction(slope) - a * b
    if frac == 0 or abs(frac.numerator) != 1:
        raise NotSeifertSlope(
            f"slope {slope} is not of the form {a}*{b} +/- 1/q"
        )
    return frac.numerator, frac.denominator


def cable_surgery(a: int, b: int, companion: TorusKnot, slope: Fraction) -> SurgeryResult:
    """Surgery on the (a,b)-cable: delegates to the companion at slope/a^2.

    Only slopes ab +/- 1/q produce Seifert fibered spaces; anything else
    raises NotSeifertSlope.
    """
    cable_slope_parts(a, b, slope)
    return torus_surgery(companion.r, companion.s, Fraction(slope) / (a * a), companion.sign)


def surgery(k: Knot, slope: Fraction) -> SurgeryResult:
    if isinstance(k, TorusKnot):
        return torus_surgery(k.r, k.s, slope, k.sign)
    return cable_surgery(k.a, k.b, k.companion, slope)


@dataclass(frozen=True)
class SlopeWindow:
    """Open rational interval; None endpoints mean unbounded."""

    lo: Fraction | None
    hi: Fraction | None
    empty: bool = False

    def contains(self, x: Fraction) -> bool:
        if self.empty:
            return False
        if self.lo is not None and x <= self.lo:
            return False
        if self.hi is not None and x >= self.hi:
            return False
        return True


def e_window(sign: int, r: int, s: int, e: int) -> SlopeWindow:
    """Slopes for which surgery on T_{sign*r,s} normalizes to central weight e."""
    if e < 1:
        raise DomainError("central weight must be >= 1")
    rs = r * s
    if sign == 1:
        if e == 1:
            return SlopeWindow(None, None, empty=True)
        if e == 2:
            return SlopeWindow(Fraction(0), Fraction(rs - 1))
        return SlopeWindow(rs - Fraction(1, e - 2), rs - Fraction(1, e - 1))
    if e == 1:
        return SlopeWindow(Fraction(0), None)
    if e == 2:
        return SlopeWindow(None, Fraction(-rs - 1))
    return SlopeWindow(-rs - Fraction(1, e - 2), -rs - Fraction(1, e - 1))
