"""Changemaker tuples, the lattices they span, and standard bases.

A coefficient tuple is a changemaker if every integer up to its sum is a
subset sum.  Given a positive non-integer slope p/q = [a_0, ..., a_l]^-
(slope form) and the stable coefficients (entries > 1), the lattice is the
orthogonal complement of the vectors

    w_0 = f_0 + sigma_1 e_1 + ... + sigma_t e_t        (norm a_0)
    w_k = -f_{alpha_{k-1}} + f_{alpha_{k-1}+1} + ... + f_{alpha_k}

inside Z^{s+t+1} with orthonormal basis (f_0, ..., f_s, e_1, ..., e_t),
where alpha_k = (a_1 - 1) + ... + (a_k - 1) and s = alpha_l.  The number of
unit coefficients is forced by ||w_0|| = a_0 = ceil(p/q).

The standard basis consists of the mu-chain vectors supported on the f's
and one nu-vector per sigma coordinate; its combinatorics (tight entries,
greedy subset representations, gaplessness) drive the identification of
these lattices with star-shaped plumbing forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    AmbiguousTuple,
    DomainError,
    IncompatibleStable,
    InternalError,
    NoRealizingTuple,
    NotChangemaker,
    SearchBudgetExceeded,
    WrongRegime,
)
from .exact import SLOPE, format_rational, neg_cf_expand
from .lattice import (
    GramLattice,
    SublatticeBasis,
    dot,
    make_gram,
    norm,
    orthogonal_complement,
    vec_add,
    vec_scale,
)
from .plumbing import StarPlumbing


def is_changemaker(sigma) -> bool:
    """Every 1 <= n <= sum(sigma) is a subset sum (subset-sum DP)."""
    sigma = list(sigma)
    if any(x < 1 for x in sigma):
        raise DomainError("changemaker entries must be positive")
    if sorted(sigma) != sigma:
        raise DomainError("changemaker entries must be nondecreasing")
    total = sum(sigma)
    reachable = 1  # bitmask: bit n set iff n is a subset sum
    for x in sigma:
        reachable |= reachable << x
    return reachable == (1 << (total + 1)) - 1


def brown_criterion(sigma) -> bool:
    """sigma_1 = 1 and sigma_i <= sigma_1 + ... + sigma_{i-1} + 1."""
    sigma = list(sigma)
    if any(x < 1 for x in sigma):
        raise DomainError("changemaker entries must be positive")
    if sorted(sigma) != sigma:
        raise DomainError("changemaker entries must be nondecreasing")
    prefix = 0
    for x in sigma:
        if x > prefix + 1:
            return False
        prefix += x
    return True


@dataclass(frozen=True)
class SigmaTuple:
    """Nondecreasing positive changemaker coefficients."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        if not is_changemaker(self.sigma):
            raise NotChangemaker(f"{self.sigma} fails the changemaker condition")

    @property
    def stable(self) -> tuple[int, ...]:
        return tuple(x for x in self.sigma if x > 1)


def slope_parts(slope: Fraction) -> tuple[int, int, int]:
    """Write p/q as n - r/q with n = ceil(p/q) and 1 <= r < q; returns (n, r, q)."""
    slope = Fraction(slope)
    if slope <= 0:
        raise DomainError("slope must be positive")
    q = slope.denominator
    if q < 2:
        raise DomainError("slope must be non-integer")
    n = -((-slope.numerator) // q)
    return n, n * q - slope.numerator, q


@dataclass
class ChangemakerLattice:
    """Everything derived from (slope, stable): vectors, index sets, kernel.

    The orthogonal complement basis is computed on first use; the matching
    and torsion paths never need it.
    """

    slope: Fraction
    sigma: SigmaTuple
    cf: tuple[int, ...]
    alpha: tuple[int, ...]
    betas: tuple[int, ...]
    w: tuple[tuple[int, ...], ...]
    _complement: SublatticeBasis | None = field(
        default=None, init=False, repr=False, compare=False
    )

    @property
    def complement(self) -> SublatticeBasis:
        if self._complement is None:
            self._complement = orthogonal_complement(self.w, self.ambient_rank)
        return self._complement

    @property
    def s(self) -> int:
        return self.alpha[-1]

    @property
    def t(self) -> int:
        return len(self.sigma.sigma)

    @property
    def ambient_rank(self) -> int:
        return self.s + self.t + 1

    @property
    def rank(self) -> int:
        return self.ambient_rank - len(self.w)

    def f_index(self, j: int) -> int:
        return j

    def e_index(self, i: int) -> int:
        return self.s + i

    def basis_vector(self, idx: int) -> tuple[int, ...]:
        v = [0] * self.ambient_rank
        v[idx] = 1
        return tuple(v)

    def contains(self, v: tuple[int, ...]) -> bool:
        return all(dot(v, w) == 0 for w in self.w)

    def to_json(self) -> dict:
        return {
            "slope": format_rational(self.slope),
            "sigma": list(self.sigma.sigma),
            "stable": list(self.sigma.stable),
            "ambient_rank": self.ambient_rank,
            "w": [list(w) for w in self.w],
        }


def build_cm_lattice(slope: Fraction, stable) -> ChangemakerLattice:
    """Construct the lattice for a positive non-integer slope and stable tuple.

    Pads the stable coefficients with the forced number of ones, validates
    the changemaker condition, and computes the orthogonal complement.
    """
    slope = Fraction(slope)
    stable = tuple(int(x) for x in stable)
    if any(x < 2 for x in stable):
        raise DomainError("stable coefficients must be > 1")
    if list(stable) != sorted(stable):
        raise DomainError("stable coefficients must be nondecreasing")
    cf = tuple(neg_cf_expand(slope, SLOPE))
    if len(cf) < 2:
        raise DomainError("slope must be non-integer")
    n = cf[0]
    ones = n - 1 - sum(x * x for x in stable)
    if ones < 0:
        raise IncompatibleStable(
            f"stable tuple {stable} has 1 + sum of squares > ceil({format_rational(slope)})"
        )
    sigma = SigmaTuple(sigma=(1,) * ones + stable)  # raises NotChangemaker
    t = len(sigma.sigma)
    alpha = [0]
    for a in cf[1:]:
        alpha.append(alpha[-1] + a - 1)
    s = alpha[-1]
    rank = s + t + 1

    def fvec(coords):
        v = [0] * rank
        for j, c in coords:
            v[j] += c
        return tuple(v)

    w = [fvec([(0, 1)] + [(s + i + 1, c) for i, c in enumerate(sigma.sigma)])]
    for k in range(1, len(cf)):
        coords = [(alpha[k - 1], -1)] + [(j, 1) for j in range(alpha[k - 1] + 1, alpha[k] + 1)]
        w.append(fvec(coords))
    for i, wi in enumerate(w):
        for j, wj in enumerate(w):
            expect = cf[i] if i == j else (-1 if abs(i - j) == 1 else 0)
            if dot(wi, wj) != expect:
                raise InternalError("defining vectors have the wrong pairing")
    excluded = set(alpha[1:-1])
    betas = tuple(j for j in range(s + 1) if j not in excluded)
    return ChangemakerLattice(
        slope=slope,
        sigma=sigma,
        cf=cf,
        alpha=tuple(alpha),
        betas=betas,
        w=tuple(w),
    )


# ---------------------------------------------------------------------------
# Standard bases


@dataclass(frozen=True)
class NuFlags:
    tight: bool
    gapless: bool
    subset: frozenset


@dataclass(frozen=True)
class StandardBasis:
    nu: tuple[tuple[int, ...], ...]
    nu_flags: tuple[NuFlags, ...]
    mu: tuple[tuple[int, ...], ...]
    mu0: tuple[int, ...]

    def elements(self) -> list:
        return list(self.nu) + list(self.mu)

    @property
    def m(self) -> int:
        return len(self.mu)

    def gram(self) -> GramLattice:
        els = self.elements()
        labels = [f"nu{k + 1}" for k in range(len(self.nu))] + [
            f"mu{k + 1}" for k in range(len(self.mu))
        ]
        rows = [[dot(a, b) for b in els] for a in els]
        return make_gram(rows, labels)

    def to_json(self) -> dict:
        return {
            "nu": [
                {
                    "vector": list(v),
                    "tight": f.tight,
                    "gapless": f.gapless,
                    "subset": sorted(f.subset),
                }
                for v, f in zip(self.nu, self.nu_flags)
            ],
            "mu": [list(v) for v in self.mu],
            "mu0": list(self.mu0),
        }


def greedy_subset(sigma, k: int) -> frozenset:
    """Largest-index-first subset of {1..k-1} with sum sigma_k.

    This realizes the lexicographically maximal representing subset; the
    changemaker condition guarantees the greedy descent never gets stuck.
    """
    target = sigma[k - 1]
    chosen = []
    for i in range(k - 1, 0, -1):
        if sigma[i - 1] <= target:
            chosen.append(i)
            target -= sigma[i - 1]
        if target == 0:
            break
    if target != 0:
        raise InternalError("greedy subset failed on a changemaker tuple")
    return frozenset(chosen)


def mu_vectors(L: ChangemakerLattice):
    """(mu0, [mu_1..mu_m]) from the beta index set."""
    betas = L.betas
    N = L.ambient_rank

    def fvec(coords):
        v = [0] * N
        for j, c in coords:
            v[j] += c
        return tuple(v)

    mu0 = fvec([(j, 1) for j in range(betas[1] + 1)])
    mus = []
    for k in range(1, len(betas) - 1):
        coords = [(betas[k], -1)] + [(j, 1) for j in range(betas[k] + 1, betas[k + 1] + 1)]
        mus.append(fvec(coords))
    return mu0, mus


def standard_basis(L: ChangemakerLattice) -> StandardBasis:
    """The nu/mu basis with tight/gapless bookkeeping.

    nu_k is -e_k + e_{k-1} + ... + e_1 + mu0 when sigma_k is tight
    (sigma_k = 1 + sigma_1 + ... + sigma_{k-1}), else -e_k + the greedy
    subset representation of sigma_k.
    """
    sigma = L.sigma.sigma
    mu0, mus = mu_vectors(L)
    nus = []
    flags = []
    prefix = 0
    for k in range(1, L.t + 1):
        sk = sigma[k - 1]
        tight = sk == prefix + 1
        if tight:
            v = list(mu0)
            for i in range(1, k):
                v[L.e_index(i)] += 1
            v[L.e_index(k)] -= 1
            subset = frozenset(range(1, k))
            gapless = False
        else:
            subset = greedy_subset(sigma, k)
            v = [0] * L.ambient_rank
            v[L.e_index(k)] = -1
            for i in subset:
                v[L.e_index(i)] = 1
            gapless = subset == frozenset(range(min(subset), k)) if subset else False
        nus.append(tuple(v))
        flags.append(NuFlags(tight=tight, gapless=gapless, subset=subset))
        prefix += sk
    basis = StandardBasis(nu=tuple(nus), nu_flags=tuple(flags), mu=tuple(mus), mu0=mu0)
    for v in basis.elements():
        if not L.contains(v):
            raise InternalError("standard basis element fails lattice membership")
    return basis


def mu_norms(slope: Fraction) -> list[int]:
    """[||mu_0||, ..., ||mu_m||], computable from the slope alone.

    Folding this list as a negative continued fraction gives q/(q-r).
    """
    n, r, q = slope_parts(slope)
    cf = neg_cf_expand(Fraction(slope), SLOPE)
    alpha = [0]
    for a in cf[1:]:
        alpha.append(alpha[-1] + a - 1)
    excluded = set(alpha[1:-1])
    betas = [j for j in range(alpha[-1] + 1) if j not in excluded]
    return [betas[k + 1] - betas[k] + 1 for k in range(len(betas) - 1)]


# ---------------------------------------------------------------------------
# The torsion minimization (Eq-style characteristic vector search)
#
# Minimizing ||c|| over characteristic vectors with |c . w_0| = n - 2i
# reduces, after writing each coordinate as c_j = 1 + 2 d_j, to
#
#     V_i = min { sum_j d_j (d_j + 1) / 2  :  sum_j u_j d_j = D_i },
#
# where u = (1, sigma_1, ..., sigma_t) and D_i = (n - 2i - sum(u)) / 2.
# The free coordinates f_1..f_s contribute their forced minimum and drop
# out; the sign choice of the target is absorbed by the cost-preserving
# symmetry d -> -1 - d.  Unit coordinates are interchangeable, so their
# block is solved in closed form (convex water-filling); the coordinates
# with sigma_j > 1 are enumerated within the stated bounds and certified
# by re-running with the bounds raised.


def _tri(d: int) -> int:
    return d * (d + 1) // 2


def _unit_block_cost(v: int, m: int) -> int:
    """Min of sum d_j (d_j + 1) / 2 over m unit coordinates with sum v."""
    if m == 0:
        return 0 if v == 0 else None
    if v >= 0:
        base, rem = divmod(v, m)
        return (m - rem) * _tri(base) + rem * _tri(base + 1)
    w = -v
    base, rem = divmod(w, m)
    return (m - rem) * _tri(base - 1) + rem * _tri(base)


_STABLE_DP_CACHE: dict = {}


def _stable_dp(stable, slack: int):
    """Achievable weighted sums of the stable block with their minimal costs,
    d_j in [-s_j-1-slack, s_j+slack], sorted by cost for early cutoff.

    Computed by extending the table of the one-shorter prefix, so runs over
    families of tuples with shared prefixes (the torsion inversion search)
    pay for each prefix once.
    """
    stable = tuple(stable)
    key = (stable, slack)
    cached = _STABLE_DP_CACHE.get(key)
    if cached is not None:
        return cached
    if not stable:
        items = [(0, 0)]
    else:
        sj = stable[-1]
        ndp = {}
        for ssum, cost in _stable_dp(stable[:-1], slack):
            for d in range(-sj - 1 - slack, sj + 1 + slack):
                k = ssum + sj * d
                c = cost + d * (d + 1) // 2
                if k not in ndp or c < ndp[k]:
                    ndp[k] = c
        items = sorted(ndp.items(), key=lambda kv: kv[1])
    if len(_STABLE_DP_CACHE) > 100000:
        _STABLE_DP_CACHE.clear()
    _STABLE_DP_CACHE[key] = items
    return items


def _vi_from_dp(items, units: int, target: int):
    """Min total cost to realize the target; items are (sum, cost) sorted by
    cost, so the scan stops once costs alone exceed the best found."""
    if target <= 0:
        # any deficit in [-(S-1), 0] is free: units at -1 plus a changemaker
        # subset of the stable entries
        return 0
    best = None
    for ssum, cost in items:
        if best is not None and cost >= best:
            break
        v = target - ssum
        if units == 0:
            if v != 0:
                continue
            uc = 0
        elif v >= 0:
            base, rem = divmod(v, units)
            uc = (units - rem) * (base * (base + 1) // 2) + rem * (
                (base + 1) * (base + 2) // 2
            )
        else:
            base, rem = divmod(-v, units)
            uc = (units - rem) * ((base - 1) * base // 2) + rem * (base * (base + 1) // 2)
        total = cost + uc
        if best is None or total < best:
            best = total
    return best


def vi_sequence_for(n: int, sigma, certify: bool = True) -> list[int]:
    """V_0, ..., V_{floor(n/2)} for the defining vector of norm n with the
    given coefficient tuple; no lattice construction needed.

    With certify=True the stable-coordinate bounds are raised by two and
    the results compared; disagreement raises SearchBudgetExceeded after a
    few escalations (it has never been observed to need any).
    """
    sigma = tuple(sigma)
    units = 1 + sum(1 for x in sigma if x == 1)
    stable = [x for x in sigma if x > 1]
    S = 1 + sum(sigma)
    targets = []
    for i in range(n // 2 + 1):
        d2 = n - 2 * i - S
        if d2 % 2 != 0:
            raise InternalError("parity violation in the torsion minimization")
        targets.append(d2 // 2)

    def run(slack):
        dp = _stable_dp(stable, slack)
        return [_vi_from_dp(dp, units, t) for t in targets]

    vals = run(0)
    if any(v is None for v in vals):
        raise InternalError("torsion minimization found no admissible vector")
    if certify and stable:
        for slack in (2, 4, 6):
            again = run(slack)
            if again == vals:
                return vals
            vals = again
        raise SearchBudgetExceeded("torsion minimization failed to stabilize")
    return vals


def vi_sequence(L: ChangemakerLattice, certify: bool = True) -> list[int]:
    """The minimization sequence of an assembled lattice."""
    return vi_sequence_for(L.cf[0], L.sigma.sigma, certify=certify)


def vi_minimization(L: ChangemakerLattice, i: int, certify: bool = True) -> int:
    """The i-th entry of the minimization sequence, 0 <= i <= n/2."""
    n = L.cf[0]
    if not (0 <= i <= n // 2):
        raise DomainError(f"index {i} outside 0..{n // 2}")
    return vi_sequence(L, certify=certify)[i]


def _stable_tuples_with_pair_sum(target: int, max_sq: int):
    """Nondecreasing tuples of ints >= 2 with sum sigma(sigma-1) = target
    and sum sigma^2 <= max_sq."""
    out = []

    def rec(prefix, remaining, sq, min_entry):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        sigma = min_entry
        while sigma * (sigma - 1) <= remaining:
            if sq + sigma * sigma <= max_sq:
                prefix.append(sigma)
                rec(prefix, remaining - sigma * (sigma - 1), sq + sigma * sigma, sigma)
                prefix.pop()
            sigma += 1

    rec([], target, 0, 2)
    return out


def stable_from_torsion(slope: Fraction, torsion) -> tuple[int, ...]:
    """The unique stable tuple whose minimization sequence matches torsion.

    The search space is cut down by two exact necessary conditions before
    the full sequence check: if z is the first index with t_z = 0, any
    matching tuple satisfies sum sigma_j (sigma_j - 1) = 2 z over the
    stable entries (so that V_i vanishes exactly for i >= z), and the unit
    count forced by the norm equation must be nonnegative and admissible.
    """
    slope = Fraction(slope)
    n, _, _ = slope_parts(slope)
    torsion = [int(x) for x in torsion]
    for a, b in zip(torsion, torsion[1:]):
        if b > a:
            raise DomainError("torsion must be non-increasing")
    if any(x < 0 for x in torsion):
        raise DomainError("torsion must be nonnegative")
    z = 0
    while z < len(torsion) and torsion[z] != 0:
        z += 1
    if any(torsion[j] != 0 for j in range(z, len(torsion))):
        raise DomainError("torsion must be eventually zero")
    if n - 2 * z < 1:
        raise NoRealizingTuple(f"no tuple supports {z} nonzero torsion entries at slope {slope}")

    def t_at(i):
        return torsion[i] if i < len(torsion) else 0

    # the value counts of the sequence pin the two largest coefficients:
    # cost-1 configurations reach exactly the sums 1..u_max and cost-2
    # configurations reach u_max+1 .. u_max+u_second, clipped to z
    win = n // 2 + 1
    c1 = sum(1 for i in range(win) if t_at(i) == 1)
    c2 = sum(1 for i in range(win) if t_at(i) == 2)
    matches = []
    for stable in _stable_tuples_with_pair_sum(2 * z, n - 1):
        u_max = stable[-1] if stable else 1
        u_second = stable[-2] if len(stable) >= 2 else 1
        if c1 != min(u_max, z):
            continue
        if c2 != min(u_max + u_second, z) - min(u_max, z):
            continue
        ones = n - 1 - sum(x * x for x in stable)
        sigma = (1,) * ones + stable
        if not is_changemaker(sigma):
            continue
        vals = vi_sequence_for(n, sigma)
        if all(v == t_at(i) for i, v in enumerate(vals)):
            matches.append(stable)
    if not matches:
        raise NoRealizingTuple(f"no stable tuple matches the torsion at slope {slope}")
    if len(matches) > 1:
        raise AmbiguousTuple(f"multiple stable tuples match: {matches}")
    return matches[0]


# ---------------------------------------------------------------------------
# Matching a changemaker lattice with a star plumbing


@dataclass(frozen=True)
class VertexSetType:
    tag: str  # "I", "II" or "III"
    correspondence: dict  # plumbing vertex label -> ambient vector

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "correspondence": {k: list(v) for k, v in self.correspondence.items()},
        }


def _pair_dots(vectors):
    """All pairwise dot products via an inverted coordinate index."""
    n = len(vectors)
    dots = [[0] * n for _ in range(n)]
    by_coord = {}
    for idx, v in enumerate(vectors):
        for j, c in enumerate(v):
            if c:
                by_coord.setdefault(j, []).append((idx, c))
    for entries in by_coord.values():
        for a in range(len(entries)):
            ia, ca = entries[a]
            dots[ia][ia] += ca * ca
            for b in range(a + 1, len(entries)):
                ib, cb = entries[b]
                dots[ia][ib] += ca * cb
                dots[ib][ia] += ca * cb
    return dots


def _try_star_match(vectors, names, plumbing: StarPlumbing):
    """If the vectors pair (up to per-vertex signs) as a star tree matching
    the plumbing, return (center index, arms as vector indices, labeled
    correspondence); else None.

    Vertex sets are only determined up to sign flips, so adjacency means
    pairing +-1; signs are then fixed walking the tree outward so that
    every edge pairs to exactly -1.
    """
    n = len(vectors)
    if n != plumbing.vertex_count:
        return None
    dots = _pair_dots(vectors)
    adj = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = dots[i][j]
            if d in (1, -1):
                adj[i].append(j)
                adj[j].append(i)
            elif d != 0:
                return None
    centers = [i for i in range(n) if len(adj[i]) == 3]
    if len(centers) != 1 or any(len(adj[i]) > 3 for i in range(n)):
        return None
    center = centers[0]
    if dots[center][center] != plumbing.central_weight:
        return None
    arms = []
    for head in adj[center]:
        arm = [head]
        prev, cur = center, head
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return None  # branching inside an arm
            prev, cur = cur, nxt[0]
            arm.append(cur)
        arms.append(arm)
    if sum(len(a) for a in arms) != n - 1:
        return None  # disconnected
    weight_lists = [tuple(dots[i][i] for i in arm) for arm in arms]
    if sorted(weight_lists) != sorted(plumbing.arms):
        return None
    # fix signs outward from the center so every tree edge pairs to -1
    signs = [0] * n
    signs[center] = 1
    for arm in arms:
        prev = center
        for vi in arm:
            signs[vi] = -signs[prev] * dots[prev][vi]
            prev = vi
    signed = [vec_scale(signs[i], vectors[i]) for i in range(n)]
    # deterministic arm assignment: match equal weight-lists in sorted order
    remaining = list(range(3))
    correspondence = {"center": signed[center]}
    for a_idx, target in enumerate(plumbing.arms):
        pick = None
        for r in remaining:
            if weight_lists[r] == tuple(target):
                pick = r
                break
        if pick is None:
            return None
        remaining.remove(pick)
        for j, vi in enumerate(arms[pick]):
            correspondence[f"arm{a_idx + 1}[{j}]"] = signed[vi]
    return center, arms, correspondence


def match_plumbing(L: ChangemakerLattice, plumbing: StarPlumbing) -> VertexSetType | None:
    """Identify the lattice with the plumbing form by vertex templates.

    Templates, tried in order: the standard basis itself (no tight nu_k for
    k >= 2), tagged I or II by the number of nu-neighbors of nu_1; and for
    slopes n - 1/q, the variant with one tight nu_k replaced by
    -(nu_k + mu_1 + ... + mu_m), tagged III.  A successful match is by
    exact pairing equality, so it is its own certificate.
    """
    if plumbing.central_weight != 2:
        raise WrongRegime("matching is defined for central weight 2 only")
    sb = standard_basis(L)
    t = len(sb.nu)
    names = [f"nu{k + 1}" for k in range(t)] + [f"mu{k + 1}" for k in range(len(sb.mu))]
    tight_ks = [k for k in range(2, t + 1) if sb.nu_flags[k - 1].tight]

    if not tight_ks:
        vectors = list(sb.nu) + list(sb.mu)
        hit = _try_star_match(vectors, names, plumbing)
        if hit is not None:
            center, arms, correspondence = hit
            dots_nu1 = [dot(sb.nu[0], sb.nu[k]) for k in range(1, t)]
            nu_neighbors = sum(1 for d in dots_nu1 if d == -1)
            tag = "II" if nu_neighbors == 2 else "I"
            return VertexSetType(tag=tag, correspondence=correspondence)
        return None

    n, r, q = slope_parts(L.slope)
    if r != 1:
        return None
    for k in tight_ks:
        combo = sb.nu[k - 1]
        for m in sb.mu:
            combo = vec_add(combo, m)
        special = vec_scale(-1, combo)
        vectors = [sb.nu[j - 1] for j in range(1, t + 1) if j != k]
        vectors.append(special)
        vectors.extend(sb.mu)
        hit = _try_star_match(vectors, names, plumbing)
        if hit is not None:
            _, _, correspondence = hit
            return VertexSetType(tag="III", correspondence=correspondence)
    return None
