"""Small Seifert fibered spaces and their canonical star-shaped plumbings.

A space is written (e; p1/q1, p2/q2, p3/q3) after Figure-1-style surgery
conventions: a central unknot with integer coefficient e and three fibers.
The normalized shape keeps every fiber in (1, oo), sorted descending; the
canonical orientation additionally has epsilon(Y) > 0, so Y bounds the
positive definite star plumbing whose arms are the strict negative
continued fractions of the fibers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DomainError,
    LensSpaceDegenerate,
    NotDefinite,
    NotNormalized,
    NotQuasiAlternating,
)
from .exact import STRICT, format_rational, neg_cf_eval, neg_cf_expand, parse_rational
from .lattice import GramLattice, make_gram, smith_invariant_factors


@dataclass(frozen=True)
class SeifertForm:
    """(e; f1, f2, f3) with every fiber > 1, sorted descending."""

    e: int
    fibers: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        if len(self.fibers) != 3:
            raise NotNormalized("exactly three exceptional fibers required")
        for f in self.fibers:
            if f <= 1:
                raise NotNormalized(f"fiber {format_rational(f)} is not > 1")
        if list(self.fibers) != sorted(self.fibers, reverse=True):
            raise NotNormalized("fibers must be sorted descending")

    def text(self) -> str:
        return f"{self.e};" + ",".join(format_rational(f) for f in self.fibers)

    @staticmethod
    def parse(text: str) -> "SeifertForm":
        try:
            head, tail = text.split(";")
            parts = tail.split(",")
            if len(parts) != 3:
                raise ValueError
            e = int(head.strip())
        except ValueError:
            raise DomainError(f'expected "e;p1/q1,p2/q2,p3/q3", got {text!r}')
        fibers = tuple(sorted((parse_rational(p) for p in parts), reverse=True))
        return SeifertForm(e=e, fibers=fibers)

    def to_json(self) -> dict:
        return {"e": self.e, "fibers": [format_rational(f) for f in self.fibers]}


@dataclass(frozen=True)
class StarPlumbing:
    """Star tree: central vertex and three integer-weighted arm paths.

    Arm weights are listed from the vertex adjacent to the center outward;
    every arm weight is >= 2.  ``marked`` optionally singles out one arm
    vertex (arm index, position) for the diagram-move constructions.
    """

    central_weight: int
    arms: tuple[tuple[int, ...], ...]
    marked: tuple[int, int] | None = None

    def __post_init__(self):
        if len(self.arms) != 3 or any(len(a) == 0 for a in self.arms):
            raise DomainError("a star plumbing has exactly three nonempty arms")
        for arm in self.arms:
            for w in arm:
                if w < 2:
                    raise DomainError("arm weights must be >= 2")
        if self.marked is not None:
            i, j = self.marked
            if not (0 <= i < 3 and 0 <= j < len(self.arms[i])):
                raise DomainError("marked vertex out of range")

    @property
    def vertex_count(self) -> int:
        return 1 + sum(len(a) for a in self.arms)

    def arm_fractions(self) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(neg_cf_eval(list(a)) for a in self.arms)

    def sorted_arms(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(self.arms))

    def to_json(self) -> dict:
        return {"central_weight": self.central_weight, "arms": [list(a) for a in self.arms]}


def star_plumbing(y: SeifertForm) -> StarPlumbing:
    """Canonical plumbing: central weight e, arm i the strict expansion of fiber i."""
    arms = tuple(tuple(neg_cf_expand(f, STRICT)) for f in y.fibers)
    return StarPlumbing(central_weight=y.e, arms=arms)


def gram(p: StarPlumbing) -> GramLattice:
    """Vertex-by-vertex pairing: weights on the diagonal, -1 on tree edges."""
    labels = ["center"]
    weights = [p.central_weight]
    edges = []
    idx = 1
    for a, arm in enumerate(p.arms):
        prev = 0
        for j, w in enumerate(arm):
            labels.append(f"arm{a + 1}[{j}]")
            weights.append(w)
            edges.append((prev, idx))
            prev = idx
            idx += 1
    n = len(weights)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = weights[i]
    for i, j in edges:
        rows[i][j] = rows[j][i] = -1
    return make_gram(rows, labels)


def epsilon(y: SeifertForm) -> Fraction:
    """e - q1/p1 - q2/p2 - q3/p3; positive iff Y bounds the definite plumbing."""
    return Fraction(y.e) - sum(1 / f for f in y.fibers)


def orientation_reverse(y: SeifertForm) -> SeifertForm:
    """Normalized form of -Y: (3 - e; p_i/(p_i - q_i)), re-sorted."""
    rev = tuple(sorted((f / (f - 1) for f in y.fibers), reverse=True))
    return SeifertForm(e=3 - y.e, fibers=rev)


def normalize(e: int, raw_fibers) -> tuple[SeifertForm, bool]:
    """Shift each fiber into (1, oo), then orient so epsilon > 0.

    Each unit shift of a fiber's reciprocal is absorbed into e (the surgery
    presentation move q/p -> q/p + 1, e -> e + 1, which fixes epsilon).
    Returns (form, reversed) where ``reversed`` records that the stored form
    is -Y rather than Y.  Degenerate inputs (a fiber shifting to exactly 1,
    i.e. integer reciprocal) raise LensSpaceDegenerate; epsilon = 0 raises
    NotDefinite since neither orientation bounds a definite plumbing.
    """
    raw = [Fraction(f) for f in raw_fibers]
    if len(raw) != 3:
        raise DomainError("exactly three fibers required")
    if any(f == 0 for f in raw):
        raise DomainError("zero fiber coefficient")
    shifted = []
    e_out = e
    for f in raw:
        r = 1 / f
        k = r.numerator // r.denominator  # floor
        r -= k
        e_out -= k
        if r == 0:
            raise LensSpaceDegenerate(
                "a fiber normalizes to infinity; fewer than three exceptional fibers",
                partial=(e_out, shifted),
            )
        shifted.append(1 / r)
    fibers = tuple(sorted(shifted, reverse=True))
    y = SeifertForm(e=e_out, fibers=fibers)
    eps = epsilon(y)
    if eps == 0:
        raise NotDefinite("epsilon = 0: not a rational homology sphere")
    if eps < 0:
        return orientation_reverse(y), True
    return y, False


def is_quasi_alternating(y: SeifertForm) -> bool:
    """e >= 3, or e = 2 with q_i/p_i + q_j/p_j < 1 for some pair of fibers."""
    if y.e >= 3:
        return True
    if y.e != 2:
        return False
    recips = [1 / f for f in y.fibers]
    return any(
        recips[i] + recips[j] < 1 for i in range(3) for j in range(i + 1, 3)
    )


def plumbing_is_qa(p: StarPlumbing) -> bool:
    """Quasi-alternating plumbing: central weight 2 and an arm pair with
    reciprocal sum < 1."""
    if p.central_weight != 2:
        return False
    recips = [1 / f for f in p.arm_fractions()]
    return any(
        recips[i] + recips[j] < 1 for i in range(3) for j in range(i + 1, 3)
    )


def q_form_eval(weights, x) -> int:
    """n1 x1^2 - 2 x1 x2 + n2 x2^2 - ... - 2 x_{k-1} x_k + n_k x_k^2."""
    if len(weights) != len(x):
        raise DomainError("weights and coefficients have different lengths")
    total = 0
    for i, (w, xi) in enumerate(zip(weights, x)):
        total += w * xi * xi
        if i + 1 < len(x):
            total -= 2 * xi * x[i + 1]
    return total


def surjectivity_check(rows) -> bool:
    """True iff the transpose of the row matrix is surjective over Z.

    Equivalently all invariant factors equal 1 and the rows are independent.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return True
    return smith_invariant_factors(rows) == [1] * len(rows)


# ---------------------------------------------------------------------------
# Exhaustive inequality verification
#
# Each suite checks an inequality of the shape
#     (quadratic form)(x) + linear terms >= required
# over every coefficient vector in the box [-bound, bound]^k (nonzero where
# the statement demands it).  The verdict is computed by exact integer
# minimization over the box: a chain/tree DP whose state is the coefficient
# of the current vertex.  That covers the box exhaustively in polynomial
# time; tests cross-check it against literal enumeration at small sizes.


def _chain_min(weights, lins, bound):
    """Exact min over the box of sum_i [w_i x_i^2 + lins_i(x_i)] - 2 sum x_i x_{i+1}.

    Returns {flag: (min, argmin)} for flag in (False, True), where flag
    says whether some coordinate is nonzero; argmin is the lexicographically
    smallest minimizer (coordinates scanned ascending).
    """
    vals = range(-bound, bound + 1)
    dp = {}
    for x in vals:
        cost = weights[0] * x * x + lins[0](x)
        key = (x, x != 0)
        cur = dp.get(key)
        if cur is None or cost < cur[0]:
            dp[key] = (cost, (x,))
    for i in range(1, len(weights)):
        ndp = {}
        for (px, pflag), (pcost, ppath) in dp.items():
            for x in vals:
                cost = pcost + weights[i] * x * x + lins[i](x) - 2 * px * x
                key = (x, pflag or x != 0)
                cur = ndp.get(key)
                if cur is None or cost < cur[0] or (cost == cur[0] and ppath + (x,) < cur[1]):
                    ndp[key] = (cost, ppath + (x,))
        dp = ndp
    out = {}
    for (x, flag), (cost, path) in dp.items():
        cur = out.get(flag)
        if cur is None or cost < cur[0] or (cost == cur[0] and path < cur[1]):
            out[flag] = (cost, path)
    return out


_ARM_CACHE: dict = {}


def _arm_table(weights, bound):
    """For an arm path (head listed first): map (head value, nonzero flag)
    to (min deficiency cost, argmin assignment head-first).

    Cost of an arm is sum_i [w_i x_i^2 - (w_i - 2)|x_i|] - 2 sum x_i x_{i+1},
    i.e. the arm's share of ||x|| - sum |c_v|(||v|| - 2).
    """
    key = (tuple(weights), bound)
    cached = _ARM_CACHE.get(key)
    if cached is not None:
        return cached
    vals = range(-bound, bound + 1)
    rev = list(weights)[::-1]  # process tip first
    dp = {}
    for x in vals:
        w = rev[0]
        cost = w * x * x - (w - 2) * abs(x)
        key2 = (x, x != 0)
        cur = dp.get(key2)
        if cur is None or cost < cur[0]:
            dp[key2] = (cost, (x,))
    for i in range(1, len(rev)):
        w = rev[i]
        ndp = {}
        for (px, pflag), (pcost, ppath) in dp.items():
            for x in vals:
                cost = pcost + w * x * x - (w - 2) * abs(x) - 2 * px * x
                key2 = (x, pflag or x != 0)
                cur = ndp.get(key2)
                path = (x,) + ppath
                if cur is None or cost < cur[0] or (cost == cur[0] and path < cur[1]):
                    ndp[key2] = (cost, path)
        dp = ndp
    _ARM_CACHE[key] = dp
    return dp


def star_deficiency_min(p: StarPlumbing, bound: int):
    """Exact min of ||x|| - sum_v |c_v|(||v|| - 2) over nonzero boxed x.

    Returns (min value, argmin) with the argmin given as (center, arms...)
    coefficients.  Lemma-level claim: the min is >= 2 on QA plumbings.
    """
    e = p.central_weight
    tables = [_arm_table(arm, bound) for arm in p.arms]
    best = None

    def arm_best(table, c, need_nonzero):
        out = None
        for (x, flag), (cost, path) in table.items():
            if need_nonzero and not flag:
                continue
            total = cost - 2 * c * x
            if out is None or total < out[0] or (total == out[0] and path < out[1]):
                out = (total, path)
        return out

    for c in range(-bound, bound + 1):
        center_cost = e * c * c - (e - 2) * abs(c)
        if c != 0:
            parts = [arm_best(t, c, False) for t in tables]
            total = center_cost + sum(q[0] for q in parts)
            cand = (total, (c,) + tuple(q[1] for q in parts))
        else:
            # some arm must be nonzero; pick the cheapest arm to force
            free = [arm_best(t, 0, False) for t in tables]
            forced = [arm_best(t, 0, True) for t in tables]
            best_j, best_total, best_paths = None, None, None
            for j in range(3):
                if forced[j] is None:
                    continue
                total = center_cost + sum(
                    (forced[j] if k == j else free[k])[0] for k in range(3)
                )
                paths = tuple((forced[j] if k == j else free[k])[1] for k in range(3))
                if best_total is None or total < best_total:
                    best_j, best_total, best_paths = j, total, paths
            if best_total is None:
                continue
            cand = (best_total, (0,) + best_paths)
        if best is None or cand[0] < best[0]:
            best = cand
    return best


@dataclass
class SuiteResult:
    checked: int
    min_value: int
    required: int
    counterexample: tuple | None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        return {
            "checked": self.checked,
            "min_value": self.min_value,
            "required": self.required,
            "counterexample": self.counterexample,
        }


@dataclass
class InequalityReport:
    bound: int
    suites: dict

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.suites.values())

    def counterexamples(self) -> list:
        return sorted(
            (name, r.counterexample) for name, r in self.suites.items() if not r.passed
        )

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "passed": self.passed,
            "suites": {k: v.to_json() for k, v in self.suites.items()},
        }


def _box(k, bound, nonzero):
    return (2 * bound + 1) ** k - (1 if nonzero else 0)


def verify_inequalities(p: StarPlumbing, coeff_bound: int) -> InequalityReport:
    """Exhaustively check the chain and star inequalities on the box.

    Per arm: the bare chain bound (nonzero z, >= 2), the augmented chain
    bounds Q_{1,c...} >= |c| + ... (all vectors) and Q_{1,c...} + |c| >= 2 + ...
    (nonzero vectors).  Per admissible arm pair: the two-arm chain bound.
    For the whole star: the vertex-deficiency bound (requires the plumbing
    to be quasi-alternating).
    """
    if coeff_bound < 1:
        raise DomainError("coefficient bound must be >= 1")
    b = coeff_bound
    suites = {}

    def neg_def(w):
        return lambda x: -(w - 2) * abs(x)

    # per-arm chain bounds
    chain_checked = 0
    chain_min, chain_arg = None, None
    aug_checked = 0
    aug_min, aug_arg = None, None
    augsum_checked = 0
    augsum_min, augsum_arg = None, None
    for arm in p.arms:
        lins = [neg_def(w) for w in arm]
        r = _chain_min(list(arm), lins, b)
        chain_checked += _box(len(arm), b, True)
        if True in r and (chain_min is None or r[True][0] < chain_min):
            chain_min, chain_arg = r[True]
        w1 = [1] + list(arm)
        r = _chain_min(w1, [lambda c: -abs(c)] + lins, b)
        aug_checked += _box(len(w1), b, False)
        lo = min(v[0] for v in r.values())
        if aug_min is None or lo < aug_min:
            aug_min, aug_arg = min((v for v in r.values()), key=lambda t: t[0])
        r = _chain_min(w1, [abs] + lins, b)
        augsum_checked += _box(len(w1), b, True)
        if True in r and (augsum_min is None or r[True][0] < augsum_min):
            augsum_min, augsum_arg = r[True]
    suites["chain-bound"] = SuiteResult(
        chain_checked, chain_min, 2, chain_arg if chain_min < 2 else None
    )
    suites["augmented-chain"] = SuiteResult(
        aug_checked, aug_min, 0, aug_arg if aug_min < 0 else None
    )
    suites["augmented-chain-sum"] = SuiteResult(
        augsum_checked, augsum_min, 2, augsum_arg if augsum_min < 2 else None
    )

    # two-arm chain bound, for pairs satisfying the reciprocal condition
    fracs = p.arm_fractions()
    pair_checked = 0
    pair_min, pair_arg = None, None
    for i in range(3):
        for j in range(3):
            if i == j or 1 / fracs[i] + 1 / fracs[j] >= 1:
                continue
            weights = list(p.arms[i])[::-1] + [1] + list(p.arms[j])
            lins = (
                [neg_def(w) for w in p.arms[i][::-1]]
                + [abs]
                + [neg_def(w) for w in p.arms[j]]
            )
            r = _chain_min(weights, lins, b)
            pair_checked += _box(len(weights), b, True)
            if True in r and (pair_min is None or r[True][0] < pair_min):
                pair_min, pair_arg = r[True]
    if pair_checked:
        suites["pair-chain"] = SuiteResult(
            pair_checked, pair_min, 2, pair_arg if pair_min < 2 else None
        )

    # whole-star vertex deficiency bound (QA only)
    if not plumbing_is_qa(p):
        raise NotQuasiAlternating(
            "vertex-deficiency suite requires a quasi-alternating plumbing"
        )
    mn, arg = star_deficiency_min(p, b)
    suites["vertex-deficiency"] = SuiteResult(
        _box(p.vertex_count, b, True), mn, 2, arg if mn < 2 else None
    )
    return InequalityReport(bound=b, suites=suites)
