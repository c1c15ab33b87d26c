import math
import random
from fractions import Fraction

import pytest

from cmrealize.errors import DomainError, NotSeifertSlope, ReducibleSurgery
from cmrealize.knots import (
    CableKnot,
    TorusKnot,
    alexander,
    cable_surgery,
    e_window,
    genus,
    parse_knot,
    surgery,
    torsion_coeffs,
    torus_surgery,
)
from cmrealize.knots import _torus_alexander_full
from cmrealize.plumbing import SeifertForm, epsilon


def test_parse_and_text():
    assert parse_knot("T(5,13)") == TorusKnot(5, 13)
    assert parse_knot("T(-2,3)") == TorusKnot(2, 3, -1)
    cab = parse_knot("C(2,33);T(3,5)")
    assert cab == CableKnot(2, 33, TorusKnot(3, 5))
    assert parse_knot(cab.text()) == cab
    for bad in ["T(3,6)", "T(1,5)", "C(1,3);T(2,3)", "C(2,4);T(2,3)", "K(2,3)"]:
        with pytest.raises(DomainError):
            parse_knot(bad)


def test_mirror_convention():
    cab = CableKnot(2, 33, TorusKnot(3, 5))
    assert cab.mirror() == CableKnot(2, -33, TorusKnot(3, 5, -1))
    assert cab.mirror().mirror() == cab


def test_alexander_trefoil():
    poly = alexander(TorusKnot(2, 3))
    assert poly.coeffs == (-1, 1)  # t - 1 + t^{-1}
    assert poly.degree == 1


def test_alexander_degenerate_unknot_pattern():
    # T(1, n) is admitted only internally; its polynomial is 1
    assert _torus_alexander_full(1, 7) == [1]


def test_alexander_cable_example():
    cab = CableKnot(2, 33, TorusKnot(3, 5))
    poly = alexander(cab)
    assert poly.degree == 24
    assert poly.coeffs[0] + 2 * sum(poly.coeffs[1:]) == 1  # Delta(1) = 1
    # mirrors share the polynomial
    assert alexander(cab.mirror()) == poly


def test_genus_examples():
    assert genus(TorusKnot(5, 13)) == 24
    assert genus(TorusKnot(2, 3)) == 1
    assert genus(CableKnot(2, 33, TorusKnot(3, 5))) == 24


def test_genus_equals_degree():
    for r in range(2, 7):
        for s in range(r + 1, 13):
            if math.gcd(r, s) != 1 or r * s > 60:
                continue
            k = TorusKnot(r, s)
            assert genus(k) == alexander(k).degree
    for a, b, r, s in [(2, 3, 2, 3), (2, 7, 2, 5), (3, 4, 2, 3), (2, -9, 2, 3), (4, 3, 2, 3)]:
        k = CableKnot(a, b, TorusKnot(r, s))
        if genus(k) <= 40:
            assert genus(k) == alexander(k).degree


def test_torsion_examples():
    assert torsion_coeffs(alexander(TorusKnot(2, 3))) == (1, 0)
    # non-increasing, terminal zero
    for k in [TorusKnot(3, 5), TorusKnot(5, 13), CableKnot(2, 33, TorusKnot(3, 5))]:
        ts = torsion_coeffs(alexander(k))
        assert all(a >= b for a, b in zip(ts, ts[1:]))
        assert ts[-1] == 0


def test_torsion_recovers_alexander():
    # a_j = t_{j-1} - 2 t_j + t_{j+1} for all torus knots with rs <= 40
    for r in range(2, 7):
        for s in range(r + 1, 21):
            if math.gcd(r, s) != 1 or r * s > 40:
                continue
            poly = alexander(TorusKnot(r, s))
            ts = list(torsion_coeffs(poly)) + [0, 0]
            for j in range(1, poly.degree + 1):
                assert poly.coeff(j) == ts[j - 1] - 2 * ts[j] + ts[j + 1]


def test_torus_surgery_133_2():
    res = torus_surgery(5, 13, Fraction(133, 2))
    assert res.raw_e == 1
    assert res.raw_fibers == (Fraction(5, 2), Fraction(13, 8), Fraction(3, 2))
    assert res.normalized == SeifertForm.parse("2;13/5,5/3,3/1")
    assert res.reversed is True


def test_torus_surgery_21_4():
    res = torus_surgery(2, 3, Fraction(21, 4))
    assert res.normalized == SeifertForm.parse("3;2,3/2,3/2")
    assert res.reversed is False
    assert res.raw_fibers[2] == Fraction(-3, 4)


def test_torus_surgery_reducible_and_mirror():
    with pytest.raises(ReducibleSurgery):
        torus_surgery(2, 3, Fraction(6))
    pos = torus_surgery(5, 13, Fraction(133, 2))
    neg = torus_surgery(5, 13, Fraction(-133, 2), sign=-1)
    assert neg.normalized == pos.normalized
    assert neg.reversed != pos.reversed


def test_epsilon_consistency_random():
    # epsilon(raw) = (1/rs) (p/q) / (rs - p/q) for 200 random samples
    rng = random.Random(0)
    produced = 0
    while produced < 200:
        r = rng.randint(2, 6)
        s = rng.randint(r + 1, 7)
        if math.gcd(r, s) != 1:
            continue
        p = rng.randint(-100, 100)
        q = rng.randint(2, 9)
        if p == 0 or math.gcd(abs(p), q) != 1:
            continue
        slope = Fraction(p, q)
        if abs(p - r * s * q) <= 1:
            continue  # reducible or lens-degenerate slopes are out of scope
        res = torus_surgery(r, s, slope)
        raw_eps = Fraction(res.raw_e) - sum(1 / f for f in res.raw_fibers)
        assert raw_eps == Fraction(1, r * s) * slope / (r * s - slope)
        produced += 1


def test_cable_surgery_flagship():
    cab = CableKnot(2, 33, TorusKnot(3, 5))
    res = cable_surgery(2, 33, TorusKnot(3, 5), Fraction(133, 2))
    same = torus_surgery(3, 5, Fraction(133, 8))
    assert res.normalized == same.normalized == SeifertForm.parse("2;13/5,5/3,3/1")
    assert surgery(cab, Fraction(133, 2)).normalized == res.normalized


def test_cable_surgery_errors_and_delegation():
    with pytest.raises(NotSeifertSlope):
        cable_surgery(2, 33, TorusKnot(3, 5), Fraction(66))
    with pytest.raises(NotSeifertSlope):
        cable_surgery(2, 7, TorusKnot(2, 3), Fraction(29, 3))  # 14 + 1/3 has q=3: fine?
    res = cable_surgery(2, 7, TorusKnot(2, 3), Fraction(29, 2))
    assert res.normalized == torus_surgery(2, 3, Fraction(29, 8)).normalized


def test_e_window_rows():
    assert e_window(1, 2, 3, 2).lo == 0 and e_window(1, 2, 3, 2).hi == 5
    w = e_window(1, 2, 3, 3)
    assert (w.lo, w.hi) == (Fraction(5), Fraction(11, 2))
    w = e_window(-1, 2, 3, 2)
    assert w.lo is None and w.hi == -7
    assert e_window(1, 2, 3, 1).empty
    w = e_window(-1, 2, 3, 1)
    assert w.lo == 0 and w.hi is None
    # e = 4 window for T(-3,5) is (-15 - 1/2, -15 - 1/3)
    assert e_window(-1, 3, 5, 4).contains(Fraction(-77, 5))
    assert not e_window(-1, 3, 5, 4).contains(Fraction(-61, 4))
