import itertools
import random
from fractions import Fraction

import pytest

from cmrealize.changemaker import (
    brown_criterion,
    build_cm_lattice,
    greedy_subset,
    is_changemaker,
    match_plumbing,
    mu_norms,
    mu_vectors,
    slope_parts,
    stable_from_torsion,
    standard_basis,
    vi_minimization,
    vi_sequence,
    vi_sequence_for,
)
from cmrealize.errors import (
    DomainError,
    IncompatibleStable,
    NoRealizingTuple,
    NotChangemaker,
    WrongRegime,
)
from cmrealize.exact import neg_cf_eval
from cmrealize.knots import CableKnot, TorusKnot, alexander, torsion_coeffs
from cmrealize.lattice import det_int, dot, lattice_isomorphic
from cmrealize.plumbing import SeifertForm, gram, star_plumbing
from cmrealize.verify import brute_vi_sequence, random_lattice

Y133 = SeifertForm.parse("2;13/5,5/3,3/1")


def test_changemaker_examples():
    assert is_changemaker((1, 1, 2, 4))
    assert not is_changemaker((1, 3))
    assert is_changemaker(())
    assert is_changemaker((1,))


def test_brown_examples():
    assert brown_criterion((1, 1, 2, 4))
    assert not brown_criterion((1, 3))
    assert not brown_criterion((2,))
    assert not brown_criterion((2, 3))


def test_brown_equivalence_exhaustive_small():
    def tuples(max_sum):
        def rec(prefix, rem, lo):
            yield tuple(prefix)
            for x in range(lo, rem + 1):
                prefix.append(x)
                yield from rec(prefix, rem - x, x)
                prefix.pop()

        yield from rec([], max_sum, 1)

    for sigma in tuples(12):
        assert is_changemaker(sigma) == brown_criterion(sigma), sigma


def test_build_133_lattices():
    lat = build_cm_lattice(Fraction(133, 2), (2, 3, 5, 5))
    assert lat.w[0] == (1, 0, 1, 1, 1, 2, 3, 5, 5)
    assert lat.w[1] == (-1, 1, 0, 0, 0, 0, 0, 0, 0)
    assert lat.sigma.sigma == (1, 1, 1, 2, 3, 5, 5)
    lat2 = build_cm_lattice(Fraction(133, 2), (2, 2, 2, 4, 6))
    assert lat2.w[0] == (1, 0, 1, 1, 2, 2, 2, 4, 6)


def test_build_15_2():
    lat = build_cm_lattice(Fraction(15, 2), (2,))
    assert lat.w[0] == (1, 0, 1, 1, 1, 2)
    assert lat.w[1] == (-1, 1, 0, 0, 0, 0)
    assert lat.ambient_rank == 6 and lat.rank == 4


def test_build_errors():
    with pytest.raises(IncompatibleStable):
        build_cm_lattice(Fraction(133, 2), (9,))
    with pytest.raises(NotChangemaker):
        build_cm_lattice(Fraction(19, 2), (3,))
    with pytest.raises(DomainError):
        build_cm_lattice(Fraction(7), (2,))
    with pytest.raises(DomainError):
        build_cm_lattice(Fraction(15, 2), (3, 2))


def test_w_pairing_pattern():
    lat = build_cm_lattice(Fraction(89, 12), (2,))
    for i, wi in enumerate(lat.w):
        for j, wj in enumerate(lat.w):
            expected = lat.cf[i] if i == j else (-1 if abs(i - j) == 1 else 0)
            assert dot(wi, wj) == expected


def test_standard_basis_15_2():
    lat = build_cm_lattice(Fraction(15, 2), (2,))
    sb = standard_basis(lat)
    assert sb.m == 0
    assert sb.nu[0] == (1, 1, -1, 0, 0, 0)  # -e1 + f0 + f1, tight
    assert sb.nu_flags[0].tight
    assert sb.nu[1] == (0, 0, 1, -1, 0, 0)
    assert sb.nu[2] == (0, 0, 0, 1, -1, 0)
    assert sb.nu[3] == (0, 0, 0, 1, 1, -1)  # A_4 = {3, 2}
    assert sb.nu_flags[3].subset == frozenset({3, 2})
    g = sb.gram()
    assert sorted(g.gram[i][i] for i in range(4)) == [2, 2, 3, 3]
    assert g.determinant() == 15


def test_standard_basis_133_greedy():
    lat = build_cm_lattice(Fraction(133, 2), (2, 3, 5, 5))
    sb = standard_basis(lat)
    # sigma_7 = sigma_6 = 5 gives A_7 = {6}
    assert sb.nu_flags[6].subset == frozenset({6})
    assert sb.nu[6][lat.e_index(6)] == 1 and sb.nu[6][lat.e_index(7)] == -1


def test_greedy_matches_lex_max_exhaustively():
    # greedy largest-index-first equals the lexicographically maximal
    # representing subset (subsets compared by descending index sequences)
    def tuples(max_sum):
        def rec(prefix, rem, lo):
            if prefix:
                yield tuple(prefix)
            for x in range(lo, rem + 1):
                prefix.append(x)
                yield from rec(prefix, rem - x, x)
                prefix.pop()

        yield from rec([], max_sum, 1)

    for sigma in tuples(11):
        if not is_changemaker(sigma):
            continue
        t = len(sigma)
        for k in range(2, t + 1):
            prefix = sum(sigma[: k - 1])
            if sigma[k - 1] == prefix + 1:
                continue  # tight: no subset form
            best = None
            for size in range(0, k):
                for sub in itertools.combinations(range(k - 1, 0, -1), size):
                    if sum(sigma[i - 1] for i in sub) == sigma[k - 1]:
                        key = tuple(sorted(sub, reverse=True))
                        if best is None or key > best:
                            best = key
            got = tuple(sorted(greedy_subset(sigma, k), reverse=True))
            assert got == best, (sigma, k)


def test_membership_and_span():
    rng = random.Random(4)
    for _ in range(10):
        lat = random_lattice(rng, max_p=300)
        sb = standard_basis(lat)
        for v in sb.elements():
            assert lat.contains(v)
        coords = [lat.complement.member_coords(v) for v in sb.elements()]
        assert det_int([list(c) for c in coords]) in (1, -1)
        assert sb.gram().determinant() == lat.slope.numerator


def test_mu_pairing_pattern():
    rng = random.Random(8)
    for _ in range(12):
        lat = random_lattice(rng, max_p=300)
        mu0, mus = mu_vectors(lat)
        chain = [mu0] + mus
        for i, a in enumerate(chain):
            for j, b in enumerate(chain):
                if i == j:
                    assert dot(a, b) >= 2
                elif abs(i - j) == 1:
                    assert dot(a, b) == -1
                else:
                    assert dot(a, b) == 0


def test_mu_norms_special_slopes():
    # p/q = n - 1/q: q - 1 norms, all equal to 2
    for q in range(2, 9):
        norms = mu_norms(Fraction(8 * q - 1, q))
        assert norms == [2] * (q - 1)
    # p/q = n - (q-1)/q: the single norm [q]
    for q in range(2, 9):
        norms = mu_norms(Fraction(8 * q - (q - 1), q))
        assert norms == [q]
    assert mu_norms(Fraction(15, 2)) == [2]


def test_mu_cf_identity():
    for q in range(2, 13):
        for r in range(1, q):
            slope = Fraction(8 * q - r, q)
            assert neg_cf_eval(mu_norms(slope)) == Fraction(q, q - r)


def test_vi_15_2():
    lat = build_cm_lattice(Fraction(15, 2), (2,))
    assert vi_minimization(lat, 0) == 1
    for i in range(1, 8 // 2 + 1):
        assert vi_minimization(lat, i) == 0
    with pytest.raises(DomainError):
        vi_minimization(lat, 5)


def test_vi_nonincreasing_terminal_zero():
    rng = random.Random(17)
    for _ in range(8):
        lat = random_lattice(rng, max_p=200)
        vals = vi_sequence(lat)
        assert all(a >= b for a, b in zip(vals, vals[1:]))
        assert vals[-1] == 0


def test_vi_matches_brute_enumeration():
    rng = random.Random(23)
    produced = 0
    while produced < 6:
        lat = random_lattice(rng, max_p=150)
        if lat.t > 6:
            continue
        produced += 1
        assert vi_sequence(lat) == brute_vi_sequence(lat)


def test_vi_zero_cutoff_structure():
    # V_i = 0 exactly from i = (n - S) / 2 on, where S = 1 + sum(sigma)
    rng = random.Random(29)
    for _ in range(10):
        lat = random_lattice(rng, max_p=300)
        n = lat.cf[0]
        S = 1 + sum(lat.sigma.sigma)
        z = (n - S) // 2
        vals = vi_sequence(lat)
        for i, v in enumerate(vals):
            assert (v == 0) == (i >= z)


def test_stable_from_torsion_examples():
    assert stable_from_torsion(Fraction(15, 2), (1, 0)) == (2,)
    ts = torsion_coeffs(alexander(TorusKnot(5, 13)))
    assert stable_from_torsion(Fraction(133, 2), ts) == (2, 3, 5, 5)
    tsc = torsion_coeffs(alexander(CableKnot(2, 33, TorusKnot(3, 5))))
    assert stable_from_torsion(Fraction(133, 2), tsc) == (2, 2, 2, 4, 6)


def test_stable_from_torsion_no_match():
    with pytest.raises(NoRealizingTuple):
        stable_from_torsion(Fraction(15, 2), (1, 1, 0))
    with pytest.raises(NoRealizingTuple):
        stable_from_torsion(Fraction(15, 2), (5, 4, 3, 2, 1, 0))


def test_match_plumbing_15_2():
    lat = build_cm_lattice(Fraction(15, 2), (2,))
    p = star_plumbing(SeifertForm.parse("2;2/1,3/1,3/1"))
    m = match_plumbing(lat, p)
    assert m is not None and m.tag == "I"
    sb = standard_basis(lat)
    assert m.correspondence["center"] == sb.nu[1]
    arm_vecs = {m.correspondence[f"arm{i}[0]"] for i in range(1, 4)}
    assert arm_vecs == {sb.nu[0], sb.nu[2], sb.nu[3]}


def test_match_plumbing_133_both():
    p = star_plumbing(Y133)
    m1 = match_plumbing(build_cm_lattice(Fraction(133, 2), (2, 3, 5, 5)), p)
    assert m1 is not None and m1.tag == "I"
    m2 = match_plumbing(build_cm_lattice(Fraction(133, 2), (2, 2, 2, 4, 6)), p)
    assert m2 is not None and m2.tag == "II"
    # matched vertex sets reproduce the plumbing Gram exactly
    g = gram(p)
    for m in (m1, m2):
        vecs = [m.correspondence[l] for l in g.labels]
        for i, a in enumerate(vecs):
            for j, b in enumerate(vecs):
                assert dot(a, b) == g.gram[i][j]


def test_match_type_iii_regression():
    # C(2,15)-type cable torsion at slope 89/3 = 30 - 1/3
    ts = torsion_coeffs(alexander(CableKnot(2, 15, TorusKnot(2, 3))))
    stable = stable_from_torsion(Fraction(89, 3), ts)
    assert stable == (2, 2, 2, 4)
    lat = build_cm_lattice(Fraction(89, 3), stable)
    p = star_plumbing(SeifertForm.parse("2;17/5,3/1,2/1"))
    m = match_plumbing(lat, p)
    assert m is not None and m.tag == "III"
    g = gram(p)
    vecs = [m.correspondence[l] for l in g.labels]
    for i, a in enumerate(vecs):
        for j, b in enumerate(vecs):
            assert dot(a, b) == g.gram[i][j]


def test_match_wrong_regime():
    lat = build_cm_lattice(Fraction(15, 2), (2,))
    from cmrealize.plumbing import StarPlumbing

    with pytest.raises(WrongRegime):
        match_plumbing(lat, StarPlumbing(3, ((2,), (2,), (2,))))


def test_match_failure_returns_none():
    # the 15/2 lattice is not the form of this plumbing
    lat = build_cm_lattice(Fraction(15, 2), (2,))
    p = star_plumbing(SeifertForm.parse("2;5/2,3/1,2/1"))
    assert match_plumbing(lat, p) is None


def test_no_tight_in_type_I_II_matches():
    for stable in [(2, 3, 5, 5), (2, 2, 2, 4, 6)]:
        lat = build_cm_lattice(Fraction(133, 2), stable)
        m = match_plumbing(lat, star_plumbing(Y133))
        assert m.tag in ("I", "II")
        sb = standard_basis(lat)
        assert not any(f.tight for f in sb.nu_flags[1:])


def test_dual_path_agreement():
    # the template matcher and the generic isomorphism search agree
    p = star_plumbing(Y133)
    pg = gram(p)
    for stable in [(2, 3, 5, 5), (2, 2, 2, 4, 6)]:
        lat = build_cm_lattice(Fraction(133, 2), stable)
        sb = standard_basis(lat)
        assert match_plumbing(lat, p) is not None
        assert lattice_isomorphic(sb.gram(), pg) is not None
    lat = build_cm_lattice(Fraction(15, 2), (2,))
    p2 = star_plumbing(SeifertForm.parse("2;5/2,3/1,2/1"))
    assert match_plumbing(lat, p2) is None
    from cmrealize.errors import NotIsomorphic

    try:
        assert lattice_isomorphic(standard_basis(lat).gram(), gram(p2)) is None
    except NotIsomorphic:
        pass


def test_slope_parts():
    assert slope_parts(Fraction(133, 2)) == (67, 1, 2)
    assert slope_parts(Fraction(89, 3)) == (30, 1, 3)
    assert slope_parts(Fraction(19, 3)) == (7, 2, 3)
    with pytest.raises(DomainError):
        slope_parts(Fraction(7))
