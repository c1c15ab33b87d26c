"""Surgery-diagram moves on rational-weighted trees.

This is the package's independent oracle for the plumbing constructions:
slam dunks fold an integer chain into a single rational coefficient,
reverse slam dunks unfold it, and blow-downs remove +-1-framed unknots
while adjusting their neighbors.  Diagrams are finite trees; moves are
restricted to the shapes those constructions produce (leaves and nodes of
degree at most two).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DegenerateCF,
    DomainError,
    NotBlowable,
    NothingToDo,
    UnsupportedShape,
)
from .exact import STRICT, format_rational, neg_cf_expand
from .changemaker import mu_norms, slope_parts
from .plumbing import StarPlumbing


@dataclass(frozen=True)
class ChainDiagram:
    """A tree of surgery coefficients; ``open_end`` marks the distinguished
    component of the knot-construction diagrams, when present."""

    coeffs: tuple[tuple[int, Fraction], ...]  # (node id, coefficient), sorted
    edges: frozenset  # frozenset({a, b}) pairs
    open_end: int | None = None

    @staticmethod
    def from_tree(weights: dict, edges, open_end=None) -> "ChainDiagram":
        coeffs = tuple(sorted((int(k), Fraction(v)) for k, v in weights.items()))
        e = frozenset(frozenset(pair) for pair in edges)
        d = ChainDiagram(coeffs=coeffs, edges=e, open_end=open_end)
        d._validate()
        return d

    @staticmethod
    def chain(values) -> "ChainDiagram":
        values = list(values)
        weights = {i: v for i, v in enumerate(values)}
        edges = [(i, i + 1) for i in range(len(values) - 1)]
        return ChainDiagram.from_tree(weights, edges)

    @staticmethod
    def from_star(p: StarPlumbing) -> "ChainDiagram":
        weights = {0: p.central_weight}
        edges = []
        idx = 1
        for arm in p.arms:
            prev = 0
            for w in arm:
                weights[idx] = w
                edges.append((prev, idx))
                prev = idx
                idx += 1
        return ChainDiagram.from_tree(weights, edges)

    def _validate(self):
        ids = {i for i, _ in self.coeffs}
        if len(ids) != len(self.coeffs):
            raise DomainError("duplicate node ids")
        for e in self.edges:
            if len(e) != 2 or not e <= ids:
                raise DomainError("edge endpoints must be distinct existing nodes")
        if self.coeffs and len(self.edges) != len(self.coeffs) - 1:
            raise DomainError("diagram must be a tree")
        if self.coeffs:
            seen = set()
            stack = [self.coeffs[0][0]]
            while stack:
                v = stack.pop()
                if v in seen:
                    continue
                seen.add(v)
                stack.extend(self.neighbors(v))
            if seen != ids:
                raise DomainError("diagram must be connected")
        if self.open_end is not None and self.open_end not in ids:
            raise DomainError("open end is not a node")

    @property
    def size(self) -> int:
        return len(self.coeffs)

    def is_empty(self) -> bool:
        return not self.coeffs

    def coefficient(self, node: int) -> Fraction:
        for i, c in self.coeffs:
            if i == node:
                return c
        raise DomainError(f"no node {node}")

    def node_ids(self):
        return [i for i, _ in self.coeffs]

    def neighbors(self, node: int) -> list[int]:
        out = []
        for e in self.edges:
            if node in e:
                (other,) = e - {node}
                out.append(other)
        return sorted(out)

    def degree(self, node: int) -> int:
        return len(self.neighbors(node))

    def _next_id(self) -> int:
        return max((i for i, _ in self.coeffs), default=-1) + 1

    def _replace(self, coeffs: dict, edges) -> "ChainDiagram":
        return ChainDiagram(
            coeffs=tuple(sorted((i, Fraction(c)) for i, c in coeffs.items())),
            edges=frozenset(frozenset(p) for p in edges),
            open_end=self.open_end,
        )

    def to_json(self) -> dict:
        return {
            "nodes": {str(i): format_rational(c) for i, c in self.coeffs},
            "edges": sorted(sorted(e) for e in self.edges),
            "open_end": self.open_end,
        }

    def canonical_key(self):
        """Isomorphism-invariant encoding of the weighted tree."""
        if not self.coeffs:
            return ()
        coeff = dict(self.coeffs)

        def encode(root, parent):
            subs = sorted(encode(v, root) for v in self.neighbors(root) if v != parent)
            return (coeff[root], tuple(subs))

        return min(encode(r, None) for r in self.node_ids())


def reverse_slam_dunk(d: ChainDiagram, leaf: int) -> ChainDiagram:
    """Unfold a non-integer leaf coefficient into its integer chain.

    The leaf keeps the first expansion coefficient and the rest hang off it
    as new nodes.  Integer leaves raise NothingToDo.
    """
    c = d.coefficient(leaf)
    if d.degree(leaf) > 1:
        raise UnsupportedShape("reverse slam dunk applies at a leaf")
    if c.denominator == 1:
        raise NothingToDo(f"leaf coefficient {c} is already an integer")
    expansion = neg_cf_expand(c, STRICT)
    coeffs = dict(d.coeffs)
    edges = [tuple(e) for e in d.edges]
    coeffs[leaf] = Fraction(expansion[0])
    prev = leaf
    nid = d._next_id()
    for a in expansion[1:]:
        coeffs[nid] = Fraction(a)
        edges.append((prev, nid))
        prev = nid
        nid += 1
    return d._replace(coeffs, edges)


def slam_dunk(d: ChainDiagram, leaf: int) -> ChainDiagram:
    """Absorb a leaf into its neighbor: neighbor coefficient c -> c - 1/leaf.

    A single merge step; isolated nodes are returned unchanged.  The leaf
    coefficient may be rational but must be nonzero.
    """
    nbrs = d.neighbors(leaf)
    if not nbrs:
        return d
    if len(nbrs) > 1:
        raise UnsupportedShape("slam dunk applies at a leaf")
    c = d.coefficient(leaf)
    if c == 0:
        raise DegenerateCF("cannot slam dunk a zero-framed leaf")
    (nbr,) = nbrs
    coeffs = dict(d.coeffs)
    coeffs[nbr] = coeffs[nbr] - 1 / c
    del coeffs[leaf]
    edges = [tuple(e) for e in d.edges if leaf not in e]
    return d._replace(coeffs, edges)


def fold_chain(d: ChainDiagram, leaf: int, steps: int) -> ChainDiagram:
    """Repeated slam dunks from a pendant chain end, tracking the moving leaf."""
    for _ in range(steps):
        nbrs = d.neighbors(leaf)
        if not nbrs:
            break
        (nbr,) = nbrs
        d = slam_dunk(d, leaf)
        leaf = nbr
    return d


def blow_down(d: ChainDiagram, node: int) -> ChainDiagram:
    """Remove a +-1-framed node of degree <= 2.

    Blowing down +1 decreases each neighbor's coefficient by one (the -1
    case is mirrored); two neighbors become adjacent.
    """
    c = d.coefficient(node)
    if c != 1 and c != -1:
        raise NotBlowable(f"coefficient {format_rational(c)} is not +-1")
    nbrs = d.neighbors(node)
    if len(nbrs) > 2:
        raise UnsupportedShape("blow-down supported at nodes of degree <= 2")
    coeffs = dict(d.coeffs)
    sign = int(c)
    for v in nbrs:
        coeffs[v] = coeffs[v] - sign
    del coeffs[node]
    edges = [tuple(e) for e in d.edges if node not in e]
    if len(nbrs) == 2:
        edges.append((nbrs[0], nbrs[1]))
    return d._replace(coeffs, edges)


def reduce_to_empty(d: ChainDiagram):
    """Search for a blow-down sequence emptying the diagram.

    Greedy depth-first with memoization on canonical forms; returns the
    move trace (one entry per blow-down) or None when no sequence exists.
    """
    seen = set()

    def rec(cur):
        if cur.is_empty():
            return []
        key = cur.canonical_key()
        if key in seen:
            return None
        candidates = [
            i
            for i in cur.node_ids()
            if cur.coefficient(i) in (1, -1) and cur.degree(i) <= 2
        ]
        for node in candidates:
            before = cur.to_json()
            nxt = blow_down(cur, node)
            tail = rec(nxt)
            if tail is not None:
                entry = {
                    "move": "blow_down",
                    "node": node,
                    "before": before,
                    "after": nxt.to_json(),
                }
                return [entry] + tail
        seen.add(key)
        return None

    return rec(d)


def marked_modification(delta: StarPlumbing, slope: Fraction, kind: str) -> StarPlumbing:
    """Rebuild the full plumbing from a half-integer model near its mark.

    Type I/II: the marked vertex becomes the chain of weights
    [1 + ||mu_0||, ||mu_1||, ..., ||mu_m||] computed from the slope.
    Type III: both neighbors of the marked vertex gain one and the vertex
    becomes a chain of q - 2 weight-2 vertices.
    """
    if delta.marked is None:
        raise DomainError("plumbing has no marked vertex")
    if kind not in ("I", "II", "III"):
        raise DomainError(f"unknown vertex-set type {kind!r}")
    slope = Fraction(slope)
    n, r, q = slope_parts(slope)
    arm_i, j = delta.marked
    arms = [list(a) for a in delta.arms]
    if kind in ("I", "II"):
        norms = mu_norms(slope)
        chain = [norms[0] + 1] + norms[1:]
        arms[arm_i] = arms[arm_i][:j] + chain + arms[arm_i][j + 1 :]
        return StarPlumbing(central_weight=delta.central_weight, arms=tuple(tuple(a) for a in arms))
    if r != 1:
        raise DomainError("type III modification needs a slope of the form n - 1/q")
    arm = arms[arm_i]
    if j == len(arm) - 1 and len(arm) >= 1 and j > 0:
        raise UnsupportedShape("type III marked vertex must have degree 2")
    center = delta.central_weight
    if j == 0:
        # neighbors are the center and the next arm vertex
        if len(arm) < 2:
            raise UnsupportedShape("type III marked vertex must have degree 2")
        center += 1
        new_arm = [2] * (q - 2) + [arm[1] + 1] + arm[2:]
    else:
        new_arm = arm[: j - 1] + [arm[j - 1] + 1] + [2] * (q - 2) + [arm[j + 1] + 1] + arm[j + 2 :]
    arms[arm_i] = new_arm
    if not new_arm:
        raise UnsupportedShape("type III modification emptied an arm")
    return StarPlumbing(central_weight=center, arms=tuple(tuple(a) for a in arms))
