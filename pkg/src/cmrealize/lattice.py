"""Integer lattices: Gram presentations, embedded sublattices, and oracles.

Vectors live in an orthonormal ambient Z^N and are plain tuples of ints.
A sublattice is given by an integral basis; all linear algebra is exact
(Python integers / Fractions), with no floating point anywhere.

The searches here (irreducibility, unbreakability, isomorphism) are
bounded-coordinate enumerations over positive definite forms.  They are
adequate at the desk scale of this package (rank <= 12 or so) and raise
SearchBudgetExceeded rather than guessing when the budget runs out.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DependentNormals,
    DomainError,
    InternalError,
    NotInLattice,
    NotIsomorphic,
    SearchBudgetExceeded,
)
from .exact import floor_sqrt

DEFAULT_BUDGET = 5_000_000


def search_budget() -> int:
    """Enumeration-step ceiling, overridable via CM_REALIZE_BUDGET."""
    raw = os.environ.get("CM_REALIZE_BUDGET")
    if not raw:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"CM_REALIZE_BUDGET is not an integer: {raw!r}")


def dot(u: tuple[int, ...], v: tuple[int, ...]) -> int:
    if len(u) != len(v):
        raise DomainError("dot product of vectors of different lengths")
    return sum(a * b for a, b in zip(u, v))


def norm(v: tuple[int, ...]) -> int:
    return sum(a * a for a in v)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


@dataclass(frozen=True)
class GramLattice:
    """A lattice presented by a symmetric integer Gram matrix."""

    rank: int
    gram: tuple[tuple[int, ...], ...]
    labels: tuple = ()

    def __post_init__(self):
        if len(self.gram) != self.rank or any(len(r) != self.rank for r in self.gram):
            raise DomainError("gram matrix shape does not match rank")
        for i in range(self.rank):
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise DomainError("gram matrix is not symmetric")

    def check_definite(self):
        """Raise unless all leading principal minors are positive."""
        for k in range(1, self.rank + 1):
            minor = [row[:k] for row in self.gram[:k]]
            if det_int(minor) <= 0:
                raise DomainError("gram matrix is not positive definite")

    def determinant(self) -> int:
        return det_int([list(r) for r in self.gram])

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "gram": [list(r) for r in self.gram],
            "labels": list(self.labels),
        }


@dataclass(frozen=True)
class SublatticeBasis:
    """Integral basis of a sublattice of Z^ambient_rank."""

    ambient_rank: int
    generators: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.generators)

    def member_coords(self, v: tuple[int, ...]) -> tuple[int, ...]:
        """Coordinates of v in this basis, or NotInLattice."""
        coords = _solve_in_span(self.generators, v)
        if coords is None:
            raise NotInLattice("vector is not in the sublattice")
        return coords

    def from_coords(self, coords) -> tuple[int, ...]:
        v = (0,) * self.ambient_rank
        for c, g in zip(coords, self.generators):
            v = vec_add(v, vec_scale(c, g))
        return v


def make_gram(rows, labels=()) -> GramLattice:
    g = tuple(tuple(int(x) for x in row) for row in rows)
    return GramLattice(rank=len(g), gram=g, labels=tuple(labels))


# ---------------------------------------------------------------------------
# Exact integer matrix utilities


def det_int(rows) -> int:
    """Determinant of a square integer matrix, fraction-free (Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(map(int, r)) for r in rows]
    if any(len(r) != n for r in m):
        raise DomainError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_invariant_factors(rows) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    m = [list(map(int, r)) for r in rows]
    if not m or not m[0]:
        return []
    nrows, ncols = len(m), len(m[0])
    factors = []
    top = 0
    while top < nrows and top < ncols:
        # locate the smallest nonzero entry in the remaining block
        pivot = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if m[i][j] != 0 and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        m[top], m[pi] = m[pi], m[top]
        for row in m:
            row[top], row[pj] = row[pj], row[top]
        # clear row and column of the pivot, restarting while remainders appear
        while True:
            dirty = False
            p = m[top][top]
            for i in range(top + 1, nrows):
                if m[i][top] != 0:
                    q = m[i][top] // p
                    for j in range(top, ncols):
                        m[i][j] -= q * m[top][j]
                    if m[i][top] != 0:
                        m[top], m[i] = m[i], m[top]
                        dirty = True
                        p = m[top][top]
            for j in range(top + 1, ncols):
                if m[top][j] != 0:
                    q = m[top][j] // p
                    for i in range(top, nrows):
                        m[i][j] -= q * m[i][top]
                    if m[top][j] != 0:
                        for row in m:
                            row[top], row[j] = row[j], row[top]
                        dirty = True
                        p = m[top][top]
            if not dirty:
                break
        # enforce divisibility of the remaining block by the pivot
        p = m[top][top]
        fixed = True
        for i in range(top + 1, nrows):
            for j in range(top + 1, ncols):
                if m[i][j] % p != 0:
                    for jj in range(top, ncols):
                        m[top][jj] += m[i][jj]
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        factors.append(abs(p))
        top += 1
    return factors


def kernel_basis(normals, ambient_rank: int) -> SublatticeBasis:
    """Primitive integral basis of {x in Z^N : x . w = 0 for all normals w}.

    Column elimination with unimodular column operations, smallest absolute
    pivot first to control entry growth.  Raises DependentNormals if the
    normals are linearly dependent.
    """
    k = len(normals)
    n = ambient_rank
    for w in normals:
        if len(w) != n:
            raise DomainError("normal vector has wrong ambient rank")
    m = [list(map(int, w)) for w in normals]  # k x n, columns get eliminated
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]  # n x n
    active = list(range(n))
    for r in range(k):
        while True:
            nonzero = [c for c in active if m[r][c] != 0]
            if len(nonzero) <= 1:
                break
            piv = min(nonzero, key=lambda c: abs(m[r][c]))
            for c in nonzero:
                if c == piv:
                    continue
                q = m[r][c] // m[r][piv]
                if q:
                    for i in range(k):
                        m[i][c] -= q * m[i][piv]
                    for i in range(n):
                        u[i][c] -= q * u[i][piv]
        nonzero = [c for c in active if m[r][c] != 0]
        if not nonzero:
            raise DependentNormals(f"normal {r} is dependent on the previous ones")
        active.remove(nonzero[0])
    gens = tuple(tuple(u[i][c] for i in range(n)) for c in active)
    basis = SublatticeBasis(ambient_rank=n, generators=gens)
    for w in normals:
        for g in gens:
            if dot(tuple(w), g) != 0:
                raise InternalError("kernel basis fails orthogonality")
    return basis


def orthogonal_complement(normals, ambient_rank: int) -> SublatticeBasis:
    """The sublattice orthogonal to the given independent normal vectors."""
    return kernel_basis(normals, ambient_rank)


def _solve_in_span(generators, v):
    """Integer coordinates of v in the generators' span, or None.

    Exact fraction-free elimination on the transposed system; returns None
    when v is outside the rational span or the coordinates are non-integral.
    """
    if not generators:
        return () if all(x == 0 for x in v) else None
    n = len(generators[0])
    k = len(generators)
    # rows: ambient coordinates; columns: generators | v
    aug = [[Fraction(generators[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    row = 0
    pivots = []
    for col in range(k):
        piv = next((r for r in range(row, n) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    coords = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        coords[col] = aug[r][-1]
    for r in range(row, n):
        if aug[r][-1] != 0:
            return None  # outside the rational span
    if len(pivots) < k:
        raise DependentNormals("generators are linearly dependent")
    if any(c.denominator != 1 for c in coords):
        return None
    out = tuple(int(c) for c in coords)
    # exact reconstruction guard
    rec = (0,) * n
    for c, g in zip(out, generators):
        rec = vec_add(rec, vec_scale(c, g))
    if rec != tuple(v):
        return None
    return out


def gram_of(basis: SublatticeBasis, labels=()) -> GramLattice:
    """Gram matrix of the basis under the standard ambient inner product."""
    g = tuple(
        tuple(dot(a, b) for b in basis.generators) for a in basis.generators
    )
    return GramLattice(rank=len(g), gram=g, labels=tuple(labels))


# ---------------------------------------------------------------------------
# Short vector enumeration over a positive definite Gram matrix


def _ldl(gram):
    """G = L D L^T with unit lower triangular L, positive rational D."""
    n = len(gram)
    L = [[Fraction(0)] * n for _ in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        d = Fraction(gram[j][j]) - sum(L[j][k] * L[j][k] * D[k] for k in range(j))
        if d <= 0:
            raise DomainError("gram matrix is not positive definite")
        D[j] = d
        L[j][j] = Fraction(1)
        for i in range(j + 1, n):
            L[i][j] = (
                Fraction(gram[i][j]) - sum(L[i][k] * L[j][k] * D[k] for k in range(j))
            ) / d
    return L, D


def short_vectors(gram, max_norm: int, budget: int | None = None):
    """All nonzero integer x with x^T G x <= max_norm, with their norms.

    Bounded coordinate search: coordinates are chosen from the back, each
    range extracted exactly from the quadratic completion of G.  Returns a
    list of (coords, norm) pairs; both x and -x appear.
    """
    n = len(gram)
    if max_norm < 1 or n == 0:
        return []
    L, D = _ldl(gram)
    ceiling = search_budget() if budget is None else budget
    steps = 0
    out = []
    x = [0] * n

    def descend(i, remaining):
        nonlocal steps
        if i < 0:
            if any(x):
                q = sum(gram[a][b] * x[a] * x[b] for a in range(n) for b in range(n))
                out.append((tuple(x), q))
            return
        c = sum(L[j][i] * x[j] for j in range(i + 1, n))
        # d_i (x_i + c)^2 <= remaining; bracket the exact range and filter
        t = remaining / D[i]
        r = floor_sqrt(t) + 2 + int(abs(c))
        for xi in range(-r, r + 1):
            y = xi + c
            used = D[i] * y * y
            if used > remaining:
                continue
            steps += 1
            if steps > ceiling:
                raise SearchBudgetExceeded("short vector enumeration ran past the budget")
            x[i] = xi
            descend(i - 1, remaining - used)
        x[i] = 0

    descend(n - 1, Fraction(max_norm))
    return out


def _coords_norm(gram, coords):
    n = len(coords)
    return sum(gram[i][j] * coords[i] * coords[j] for i in range(n) for j in range(n))


def _gram_pair(gram, xc, yc):
    n = len(xc)
    return sum(gram[i][j] * xc[i] * yc[j] for i in range(n) for j in range(n))


def irreducible_coords(gram, vcoords, budget: int | None = None) -> bool:
    """Irreducibility of the vector with the given basis coordinates.

    Works directly on the Gram presentation; any splitting v = x + y with
    x . y >= 0 has ||x|| + ||y|| <= ||v||, so searching x up to ||v|| - 1
    is exhaustive.
    """
    nv = _gram_pair(gram, vcoords, vcoords)
    if nv == 0:
        return False
    for coords, _ in short_vectors([list(r) for r in gram], nv - 1, budget=budget):
        y = tuple(a - b for a, b in zip(vcoords, coords))
        if any(y) and _gram_pair(gram, coords, y) >= 0:
            return False
    return True


def unbreakable_coords(gram, vcoords, budget: int | None = None) -> bool:
    """Unbreakability on the Gram presentation; splittings with x . y = -1
    have ||x|| + ||y|| = ||v|| + 2, bounding the search."""
    nv = _gram_pair(gram, vcoords, vcoords)
    g = [list(r) for r in gram]
    for coords, nx in short_vectors(g, nv + 1, budget=budget):
        y = tuple(a - b for a, b in zip(vcoords, coords))
        if _gram_pair(gram, coords, y) == -1 and nx != 2 and _gram_pair(gram, y, y) != 2:
            return False
    return True


def is_irreducible(v: tuple[int, ...], L: SublatticeBasis, budget: int | None = None) -> bool:
    """No splitting v = x + y with x, y in L nonzero and x . y >= 0."""
    coords = L.member_coords(v)  # raises NotInLattice when outside
    return irreducible_coords(gram_of(L).gram, coords, budget=budget)


def is_unbreakable(v: tuple[int, ...], L: SublatticeBasis, budget: int | None = None) -> bool:
    """Every splitting v = x + y in L with x . y = -1 has a norm-2 part."""
    coords = L.member_coords(v)
    return unbreakable_coords(gram_of(L).gram, coords, budget=budget)


# ---------------------------------------------------------------------------
# Small-rank isomorphism decider


def lattice_isomorphic(A: GramLattice, B: GramLattice, budget: int | None = None):
    """Find an integer U with det +-1 and U^T gram(A) U = gram(B), or None.

    Column j of U gives the image of B's j-th basis vector in A-coordinates.
    Backtracking over the short vectors of A of the required norms; since
    det(A) = det(B) is required up front, any integral solution of the Gram
    equation is automatically unimodular.
    """
    if A.rank != B.rank:
        raise NotIsomorphic("ranks differ")
    det_a, det_b = A.determinant(), B.determinant()
    if det_a != det_b:
        raise NotIsomorphic(f"determinants differ: {det_a} != {det_b}")
    n = A.rank
    if n == 0:
        return ()
    ga = [list(r) for r in A.gram]
    gb = B.gram
    max_diag = max(gb[j][j] for j in range(n))
    candidates_by_norm: dict[int, list] = {}
    for coords, q in short_vectors(ga, max_diag, budget=budget):
        candidates_by_norm.setdefault(q, []).append(coords)
    # assign hardest (rarest candidate set) positions first
    order = sorted(range(n), key=lambda j: len(candidates_by_norm.get(gb[j][j], [])))
    ceiling = search_budget() if budget is None else budget
    steps = 0
    images: list = [None] * n

    def pair(xc, yc):
        return sum(ga[i][j] * xc[i] * yc[j] for i in range(n) for j in range(n))

    def assign(k):
        nonlocal steps
        if k == n:
            return True
        j = order[k]
        for cand in candidates_by_norm.get(gb[j][j], []):
            steps += 1
            if steps > ceiling:
                raise SearchBudgetExceeded("isomorphism search ran past the budget")
            ok = True
            for kk in range(k):
                jj = order[kk]
                if pair(cand, images[jj]) != gb[j][jj]:
                    ok = False
                    break
            if ok:
                images[j] = cand
                if assign(k + 1):
                    return True
                images[j] = None
        return False

    if not assign(0):
        return None
    U = tuple(tuple(images[j][i] for j in range(n)) for i in range(n))
    d = det_int([list(r) for r in U])
    if d not in (1, -1):
        raise InternalError("gram-compatible change of basis is not unimodular")
    return U


def apply_change_of_basis(gram, U):
    """U^T G U for integer matrices, exact."""
    n = len(gram)
    gu = [[sum(gram[i][k] * U[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return tuple(
        tuple(sum(U[k][i] * gu[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )
