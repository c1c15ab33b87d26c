import math
from fractions import Fraction

import pytest

from cmrealize.errors import DegenerateCF, DomainError
from cmrealize.exact import (
    SLOPE,
    STRICT,
    floor_sqrt,
    format_rational,
    neg_cf_eval,
    neg_cf_expand,
    parse_rational,
)


@pytest.mark.parametrize(
    "x,expected",
    [
        (Fraction(13, 5), [3, 3, 2]),
        (Fraction(2), [2]),
        (Fraction(5, 3), [2, 3]),
        (Fraction(7), [7]),
    ],
)
def test_strict_expansion(x, expected):
    cf = neg_cf_expand(x, STRICT)
    assert cf == expected
    assert neg_cf_eval(cf) == x


def test_all_twos_closed_form():
    # [2, 2, ..., 2] with k entries evaluates to (k+1)/k
    for k in range(1, 30):
        assert neg_cf_eval([2] * k) == Fraction(k + 1, k)


def test_q_over_q_minus_r_small_case():
    # q/(q-r) for (q, r) = (2, 1) expands to the single coefficient [2]
    assert neg_cf_expand(Fraction(2, 1), STRICT) == [2]


def test_slope_form():
    assert neg_cf_expand(Fraction(133, 2), SLOPE) == [67, 2]
    assert neg_cf_expand(Fraction(15, 2), SLOPE) == [8, 2]
    assert neg_cf_expand(Fraction(1, 2), SLOPE) == [1, 2]
    cf = neg_cf_expand(Fraction(19, 3), SLOPE)
    assert cf[0] >= 1 and all(a >= 2 for a in cf[1:])
    assert neg_cf_eval(cf) == Fraction(19, 3)


def test_expansion_domain_errors():
    with pytest.raises(DomainError):
        neg_cf_expand(Fraction(1), STRICT)
    with pytest.raises(DomainError):
        neg_cf_expand(Fraction(1, 2), STRICT)
    with pytest.raises(DomainError):
        neg_cf_expand(Fraction(-3, 2), SLOPE)
    with pytest.raises(DomainError):
        neg_cf_expand(Fraction(3, 2), "positive")


def test_eval_errors():
    with pytest.raises(DomainError):
        neg_cf_eval([])
    # [1, 1] folds to 0 at the tail, so a further fold divides by zero
    with pytest.raises(DegenerateCF):
        neg_cf_eval([3, 1, 1])


def test_round_trip_exhaustive():
    # every rational > 1 with numerator and denominator <= 200
    for p in range(2, 201):
        for q in range(1, p):
            if math.gcd(p, q) != 1:
                continue
            x = Fraction(p, q)
            cf = neg_cf_expand(x, STRICT)
            assert all(a >= 2 for a in cf)
            assert len(cf) <= p  # termination witness
            assert neg_cf_eval(cf) == x


def test_uniqueness_exhaustive():
    # no two strict-form lists with entries in [2, 5], length <= 5 collide
    import itertools

    seen = {}
    for length in range(1, 6):
        for cf in itertools.product(range(2, 6), repeat=length):
            val = neg_cf_eval(list(cf))
            assert val not in seen, (cf, seen[val])
            seen[val] = cf


def test_parse_and_format():
    assert parse_rational("13/5") == Fraction(13, 5)
    assert parse_rational("-133/2") == Fraction(-133, 2)
    assert parse_rational("7") == Fraction(7)
    assert format_rational(Fraction(-13, 5)) == "-13/5"
    assert format_rational(Fraction(4)) == "4"
    for bad in ["", "1/-2", "a/b", "1/0", "1.5"]:
        with pytest.raises(DomainError):
            parse_rational(bad)


def test_floor_sqrt():
    for num in range(0, 400):
        for den in (1, 2, 3, 7):
            x = Fraction(num, den)
            r = floor_sqrt(x)
            assert r * r <= x < (r + 1) * (r + 1)
