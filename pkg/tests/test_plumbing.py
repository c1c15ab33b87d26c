import itertools
import math
import random
from fractions import Fraction

import pytest

from cmrealize.errors import (
    DomainError,
    LensSpaceDegenerate,
    NotDefinite,
    NotNormalized,
    NotQuasiAlternating,
)
from cmrealize.lattice import det_int
from cmrealize.plumbing import (
    SeifertForm,
    StarPlumbing,
    epsilon,
    gram,
    is_quasi_alternating,
    normalize,
    orientation_reverse,
    plumbing_is_qa,
    q_form_eval,
    star_deficiency_min,
    star_plumbing,
    surjectivity_check,
    verify_inequalities,
)

Y133 = SeifertForm.parse("2;13/5,5/3,3/1")


def test_parse_and_text():
    assert Y133.e == 2
    assert Y133.fibers == (Fraction(3), Fraction(13, 5), Fraction(5, 3))
    assert SeifertForm.parse(Y133.text()) == Y133
    with pytest.raises(DomainError):
        SeifertForm.parse("garbage")
    with pytest.raises(NotNormalized):
        SeifertForm.parse("2;1/2,3,3")


def test_star_plumbing_examples():
    p = star_plumbing(Y133)
    assert p.central_weight == 2
    assert sorted(p.arms) == [(2, 3), (3,), (3, 3, 2)]
    p2 = star_plumbing(SeifertForm.parse("2;2/1,3/1,3/1"))
    assert sorted(p2.arms) == [(2,), (3,), (3,)]
    # vertex count is 1 + k + l + m
    assert p.vertex_count == 1 + 3 + 2 + 1
    assert p2.vertex_count == 4


def test_gram_examples():
    single = StarPlumbing(central_weight=2, arms=((2,), (3,), (3,)))
    g = gram(single)
    assert g.rank == 4
    assert [g.gram[i][i] for i in range(4)] == [2, 2, 3, 3]
    # center adjacent to all three arm heads
    assert g.gram[0][1] == g.gram[0][2] == g.gram[0][3] == -1
    assert gram(star_plumbing(Y133)).determinant() == 133


def test_epsilon_examples():
    assert epsilon(Y133) == Fraction(133, 195)
    rev = SeifertForm.parse("1;5/2,13/8,3/2")
    assert epsilon(rev) == Fraction(-133, 195)
    assert epsilon(SeifertForm.parse("3;2,2,2")) == Fraction(3, 2)


def test_orientation_reverse():
    rev = orientation_reverse(Y133)
    assert rev == SeifertForm.parse("1;5/2,13/8,3/2")
    assert orientation_reverse(rev) == Y133
    rng = random.Random(2)
    for _ in range(100):
        fibers = sorted(
            (Fraction(rng.randint(3, 30), rng.randint(1, 2) * 2 - 1) for _ in range(3)),
            reverse=True,
        )
        fibers = [f if f > 1 else f + 2 for f in fibers]
        y = SeifertForm(e=rng.randint(-2, 4), fibers=tuple(sorted(fibers, reverse=True)))
        assert epsilon(orientation_reverse(y)) == -epsilon(y)
        assert orientation_reverse(orientation_reverse(y)) == y


def test_normalize_examples():
    y, rev = normalize(1, [Fraction(2), Fraction(3, 2), Fraction(-3, 4)])
    assert (y, rev) == (SeifertForm.parse("3;2,3/2,3/2"), False)
    y, rev = normalize(2, [Fraction(13, 5), Fraction(5, 3), Fraction(3)])
    assert (y, rev) == (Y133, False)
    y, rev = normalize(1, [Fraction(5, 2), Fraction(13, 8), Fraction(3, 2)])
    assert (y, rev) == (Y133, True)


def test_normalize_idempotent_and_errors():
    y, rev = normalize(Y133.e, Y133.fibers)
    assert (y, rev) == (Y133, False)
    with pytest.raises(LensSpaceDegenerate):
        normalize(2, [Fraction(1), Fraction(3), Fraction(3)])
    with pytest.raises(LensSpaceDegenerate):
        normalize(2, [Fraction(1, 2), Fraction(3), Fraction(3)])
    with pytest.raises(DomainError):
        normalize(2, [Fraction(0), Fraction(3), Fraction(3)])
    # epsilon = 0: (1; 2, 3, 6) is not a rational homology sphere
    with pytest.raises(NotDefinite):
        normalize(1, [Fraction(2), Fraction(3), Fraction(6)])


def test_is_quasi_alternating():
    assert is_quasi_alternating(Y133)  # 5/13 + 1/3 < 1
    assert is_quasi_alternating(SeifertForm.parse("3;5/4,5/4,5/4"))
    assert not is_quasi_alternating(SeifertForm.parse("2;2,2,2"))


def test_q_form_eval():
    assert q_form_eval([2], [1]) == 2
    assert q_form_eval([3, 3, 2], [1, 1, 1]) == 4
    assert q_form_eval([3, 3, 2], [0, 0, 0]) == 0
    with pytest.raises(DomainError):
        q_form_eval([2, 2], [1])


def test_surjectivity_check():
    assert surjectivity_check([[1, 0], [0, 1]])
    assert not surjectivity_check([[2]])
    from cmrealize.changemaker import build_cm_lattice, standard_basis

    lat = build_cm_lattice(Fraction(133, 2), (2, 3, 5, 5))
    sb = standard_basis(lat)
    assert surjectivity_check([list(v) for v in sb.elements()])


def test_definite_iff_epsilon_positive():
    # exhaustive small scan: all fibers with p <= 13, e in {1, 2, 3};
    # det(gram) = p1 p2 p3 epsilon decides definiteness for these forms
    fibers = [
        Fraction(p, q)
        for p in range(2, 14)
        for q in range(1, p)
        if math.gcd(p, q) == 1
    ]
    rng = random.Random(9)
    sample = rng.sample(list(itertools.combinations_with_replacement(fibers, 3)), 400)
    for triple in sample:
        for e in (1, 2, 3):
            y = SeifertForm(e=e, fibers=tuple(sorted(triple, reverse=True)))
            g = gram(star_plumbing(y))
            eps = epsilon(y)
            d = g.determinant()
            p1, p2, p3 = (f.numerator for f in y.fibers)
            assert d == p1 * p2 * p3 * eps
            if eps > 0:
                g.check_definite()
            else:
                with pytest.raises(DomainError):
                    g.check_definite()


def test_verify_inequalities_on_flagship():
    report = verify_inequalities(star_plumbing(Y133), 3)
    assert report.passed
    assert report.counterexamples() == []
    assert report.suites["vertex-deficiency"].min_value == 2
    assert report.suites["chain-bound"].min_value == 2


def test_verify_requires_qa():
    with pytest.raises(NotQuasiAlternating):
        verify_inequalities(StarPlumbing(2, ((2,), (2,), (2,))), 2)


def test_single_vertex_equality_case():
    # a single vertex v gives ||v|| = 2 + (||v|| - 2): the bound is tight
    p = star_plumbing(Y133)
    mn, arg = star_deficiency_min(p, 3)
    assert mn == 2


def test_deficiency_dp_matches_brute_force():
    corpus = [
        StarPlumbing(2, ((2,), (3,), (3,))),
        StarPlumbing(2, ((3, 3), (3,), (2,))),
        StarPlumbing(2, ((4,), (3, 2), (2,))),
        StarPlumbing(2, ((2, 5), (5,), (3,))),
    ]
    for p in corpus:
        if not plumbing_is_qa(p):
            continue
        g = gram(p).gram
        n = len(g)
        best = None
        for x in itertools.product(range(-2, 3), repeat=n):
            if not any(x):
                continue
            nx = sum(g[i][j] * x[i] * x[j] for i in range(n) for j in range(n))
            d = nx - sum(abs(x[i]) * (g[i][i] - 2) for i in range(n))
            if best is None or d < best:
                best = d
        mn, _ = star_deficiency_min(p, 2)
        assert mn == best, p.arms
