"""Gridded trees, clusters of infinitely near points and unloading.

A cluster centred at a smooth surface point is stored as a weighted
gridded tree (an Enriques diagram).  Vertices are indexed ``0..r-1`` in an
order that extends "precedes"; the root is vertex ``0``.  Arc kinds are
``"slant"``, ``"horizontal"`` and ``"vertical"``.

The main entry points are :func:`build_tpq_tree` (the tree of the
Euclidean algorithm on ``(p, q)``), :func:`proximity_matrix`,
:func:`unload` and :func:`minimal_cluster`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterator, Sequence

import numpy as np

SLANT = "slant"
HORIZONTAL = "horizontal"
VERTICAL = "vertical"
ARC_KINDS = (SLANT, HORIZONTAL, VERTICAL)


class ClusterError(ValueError):
    """Raised on malformed trees or clusters, or violated preconditions."""


def euclid_quotients(p: int, q: int) -> tuple[int, ...]:
    """Partial quotients ``a_1..a_m`` of ``q = a_1 p + r_2, p = a_2 r_2 + r_3, ...``."""
    r0, r1 = q, p
    out = []
    while r1:
        a, r = divmod(r0, r1)
        out.append(a)
        r0, r1 = r1, r
    return tuple(out)


def euclid_remainders(p: int, q: int) -> tuple[int, ...]:
    """Remainders ``r_1 = p, r_2, ..., r_m`` paired with :func:`euclid_quotients`."""
    r0, r1 = q, p
    out = []
    while r1:
        out.append(r1)
        r0, r1 = r1, r0 % r1
    return tuple(out)


@dataclass(frozen=True)
class GriddedTree:
    """Rooted tree with kinded arcs; ``parents[0]`` is ``None``.

    ``segments`` holds the segment sizes when the tree comes from
    :func:`build_tpq_tree`, enabling the two-subscript names ``P_{k,i}``.
    """

    parents: tuple[int | None, ...]
    kinds: tuple[str | None, ...]
    segments: tuple[int, ...] | None = None

    def __post_init__(self):
        r = len(self.parents)
        if r == 0:
            raise ClusterError("a gridded tree needs at least one vertex")
        if len(self.kinds) != r:
            raise ClusterError("parents and kinds differ in length")
        if self.parents[0] is not None or self.kinds[0] is not None:
            raise ClusterError("vertex 0 must be the root")
        for v in range(1, r):
            par, kind = self.parents[v], self.kinds[v]
            if par is None:
                raise ClusterError(f"vertex {v} has no incoming arc (single root required)")
            if not 0 <= par < v:
                raise ClusterError(f"arc {par}->{v} breaks the topological vertex order")
            if kind not in ARC_KINDS:
                raise ClusterError(f"unknown arc kind {kind!r}")
        if self.segments is not None and sum(self.segments) != r:
            raise ClusterError("segment sizes do not add up to the vertex count")

    @classmethod
    def from_arcs(cls, n_vertices: int, arcs: Sequence[tuple[int, int, str]],
                  segments: Sequence[int] | None = None) -> "GriddedTree":
        parents: list[int | None] = [None] * n_vertices
        kinds: list[str | None] = [None] * n_vertices
        for src, dst, kind in arcs:
            if not 0 <= dst < n_vertices or not 0 <= src < n_vertices:
                raise ClusterError(f"arc {src}->{dst} out of range")
            if parents[dst] is not None:
                raise ClusterError(f"two arcs end at vertex {dst}")
            parents[dst], kinds[dst] = src, kind
        return cls(tuple(parents), tuple(kinds),
                   None if segments is None else tuple(segments))

    def __len__(self) -> int:
        return len(self.parents)

    @property
    def arcs(self) -> list[tuple[int, int, str]]:
        return [(self.parents[v], v, self.kinds[v]) for v in range(1, len(self))]

    def children(self, v: int) -> list[int]:
        return [w for w in range(v + 1, len(self)) if self.parents[w] == v]

    # vertex naming -------------------------------------------------------
    def label(self, v: int) -> str:
        return f"P{v + 1}"

    def segment_label(self, v: int) -> tuple[int, int]:
        """Two-subscript name ``(k, i)`` (both 1-based) of vertex ``v``."""
        if self.segments is None:
            raise ClusterError("tree carries no segment structure")
        if not 0 <= v < len(self):
            raise IndexError(v)
        for k, size in enumerate(self.segments, start=1):
            if v < size:
                return k, v + 1
            v -= size
        raise AssertionError("unreachable")

    def vertex(self, k: int, i: int) -> int:
        """Inverse of :meth:`segment_label`."""
        if self.segments is None:
            raise ClusterError("tree carries no segment structure")
        if not (1 <= k <= len(self.segments) and 1 <= i <= self.segments[k - 1]):
            raise IndexError((k, i))
        return sum(self.segments[:k - 1]) + i - 1

    # proximity -----------------------------------------------------------
    @cached_property
    def proximate_to(self) -> tuple[tuple[int, ...], ...]:
        """``proximate_to[b]`` lists the points ``a`` to which ``P_b`` is proximate.

        ``P_b`` is proximate to ``P_a`` iff an L-shape branch runs from
        ``a`` to ``b``: a single arc, or a first arc followed by a run of
        arcs that are all horizontal (or all vertical) and differ in kind
        from the first one.
        """
        out: list[tuple[int, ...]] = [()]
        for b in range(1, len(self)):
            prox = [self.parents[b]]
            kind = self.kinds[b]
            if kind in (HORIZONTAL, VERTICAL):
                v = self.parents[b]
                while v is not None and self.kinds[v] == kind:
                    v = self.parents[v]
                if v is not None and self.parents[v] is not None:
                    prox.append(self.parents[v])
            out.append(tuple(sorted(prox)))
        return tuple(out)

    @cached_property
    def proximates(self) -> tuple[tuple[int, ...], ...]:
        """``proximates[a]`` lists the points proximate to ``P_a``."""
        out: list[list[int]] = [[] for _ in range(len(self))]
        for b, alist in enumerate(self.proximate_to):
            for a in alist:
                out[a].append(b)
        return tuple(tuple(x) for x in out)

    @cached_property
    def pi(self) -> "ProximityMatrix":
        return proximity_matrix(self)

    @cached_property
    def star_chains(self) -> tuple[tuple[int, ...], ...]:
        return tuple(star_chains(self))

    def is_satellite(self, v: int) -> bool:
        return len(self.proximate_to[v]) == 2


@lru_cache(maxsize=None)
def build_tpq_tree(p: int, q: int) -> GriddedTree:
    """The tree ``T_{p,q}`` of the Euclidean algorithm on ``(q, p)``.

    It is a chain whose segments hold ``a_1, ..., a_m`` vertices.  The arcs
    leaving segment 1 are slant; those leaving segment ``k >= 2`` are
    horizontal for even ``k`` and vertical for odd ``k``.

    >>> build_tpq_tree(3, 5).arcs
    [(0, 1, 'slant'), (1, 2, 'horizontal'), (2, 3, 'vertical')]
    """
    if p <= 0 or q <= 0:
        raise ClusterError("p and q must be positive")
    if gcd(p, q) != 1:
        raise ClusterError(f"gcd({p}, {q}) != 1")
    if p > q:
        raise ClusterError("expected p <= q")
    quotients = euclid_quotients(p, q)
    kinds: list[str | None] = [None]
    for k, a in enumerate(quotients, start=1):
        kind = SLANT if k == 1 else (HORIZONTAL if k % 2 == 0 else VERTICAL)
        kinds.extend([kind] * a)
    # the last vertex has no outgoing arc
    kinds = kinds[:sum(quotients)]
    parents = (None,) + tuple(range(len(kinds) - 1))
    return GriddedTree(parents, tuple(kinds), quotients)


@dataclass(frozen=True)
class ProximityMatrix:
    """Integer proximity matrix ``Pi`` of a gridded tree.

    ``entries[a, b] == -1`` when ``P_b`` is proximate to ``P_a``.
    """

    entries: np.ndarray

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    @cached_property
    def inverse(self) -> np.ndarray:
        n = self.size
        inv = np.eye(n, dtype=np.int64)
        # Pi is unitriangular: back substitution stays in the integers
        for col in range(n):
            for row in range(col - 1, -1, -1):
                inv[row, col] = -sum(int(self.entries[row, k]) * int(inv[k, col])
                                     for k in range(row + 1, col + 1))
        return inv

    @cached_property
    def gram(self) -> np.ndarray:
        """``Pi Pi^t``; minus this is the intersection form of the strict transforms."""
        return self.entries @ self.entries.T

    def determinant(self) -> int:
        return int(round(np.linalg.det(self.entries)))

    def to_exceptional(self, weights: Sequence[int]) -> list[int]:
        """``c = w Pi^{-1}``."""
        return [int(x) for x in np.asarray(weights, dtype=np.int64) @ self.inverse]

    def to_weights(self, coefficients: Sequence[int]) -> list[int]:
        """``w = c Pi``."""
        return [int(x) for x in np.asarray(coefficients, dtype=np.int64) @ self.entries]

    def defects(self, weights: Sequence[int]) -> list[int]:
        """Proximity defects ``w - wbar = w Pi^t``."""
        return [int(x) for x in np.asarray(weights, dtype=np.int64) @ self.entries.T]


def proximity_matrix(cluster: "Cluster | GriddedTree") -> ProximityMatrix:
    if isinstance(cluster, Cluster):
        return cluster.tree.pi
    tree = cluster
    n = len(tree)
    pi = np.eye(n, dtype=np.int64)
    for b, alist in enumerate(tree.proximate_to):
        for a in alist:
            pi[a, b] = -1
    return ProximityMatrix(pi)


@dataclass(frozen=True)
class Cluster:
    """Weighted gridded tree.  Weights may be negative before unloading."""

    tree: GriddedTree
    weights: tuple[int, ...]
    pi: ProximityMatrix = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.weights) != len(self.tree):
            raise ClusterError(
                f"{len(self.weights)} weights for {len(self.tree)} vertices")
        object.__setattr__(self, "pi", self.tree.pi)

    @classmethod
    def empty(cls, tree: GriddedTree) -> "Cluster":
        return cls(tree, (0,) * len(tree))

    def __len__(self) -> int:
        return len(self.weights)

    def wbar(self, a: int) -> int:
        return sum(self.weights[b] for b in self.tree.proximates[a])

    def violations(self) -> list[int]:
        return [a for a in range(len(self)) if self.weights[a] < self.wbar(a)]

    @property
    def is_unloaded(self) -> bool:
        return not self.violations() and min(self.weights) >= 0

    @property
    def is_empty(self) -> bool:
        return not any(self.weights)

    @property
    def exceptional(self) -> list[int]:
        return weights_to_exceptional(self)

    @property
    def last_coefficient(self) -> int:
        return self.exceptional[-1]

    def with_weights(self, weights: Sequence[int]) -> "Cluster":
        return Cluster(self.tree, tuple(weights))


def weights_to_exceptional(cluster: Cluster) -> list[int]:
    """Coefficients ``c`` with ``sum w_a F_a = sum c_a E_a``."""
    c: list[int] = []
    for b, w in enumerate(cluster.weights):
        c.append(w + sum(c[a] for a in cluster.tree.proximate_to[b]))
    return c


def exceptional_to_weights(tree: GriddedTree, coefficients: Sequence[int]) -> list[int]:
    return tree.pi.to_weights(coefficients)


def unloading_step(weights: list[int], tree: GriddedTree, a: int) -> None:
    """One unloading at ``P_a`` (in place)."""
    weights[a] += 1
    for b in tree.proximates[a]:
        weights[b] -= 1


def antinef_closure(tree: GriddedTree, c: Sequence[int],
                    order: str | Iterator[int] = "last") -> list[int]:
    """Least ``c' >= c`` whose weights ``c' Pi`` satisfy the proximity
    inequalities, reached by unloading steps (each raises one ``c_a``)."""
    gram = tree.pi.gram
    c = np.array(c, dtype=np.int64)
    defect = c @ gram
    budget = (int(np.abs(c).max(initial=1)) + 1) * len(tree) ** 2 * 4 + 100
    for _ in range(budget):
        bad = np.flatnonzero(defect < 0)
        if not len(bad):
            return c.tolist()
        if order == "last" or order == "first":
            a = int(bad[-1] if order == "last" else bad[0])
            # repeat at ``a`` while it stays violated
            reps = -(int(defect[a]) // int(gram[a, a]))
        else:
            a = int(bad[next(order) % len(bad)])
            reps = 1
        c[a] += reps
        defect += reps * gram[a]
    raise RuntimeError("unloading exceeded its step budget")


def unload(cluster: Cluster, order: str | Iterator[int] = "last") -> Cluster:
    """Run the unloading procedure until all proximity relations hold.

    ``order`` chooses the violated vertex at each step: ``"last"`` (the
    default), ``"first"``, or an iterator of random integers used as
    indices into the list of violated vertices.  The named orders repeat
    the step at a vertex for as long as it stays violated.
    """
    tree = cluster.tree
    c = antinef_closure(tree, weights_to_exceptional(cluster), order)
    out = Cluster(tree, tuple(tree.pi.to_weights(c)))
    assert out.is_unloaded, out
    return out


def cluster_colength(cluster: Cluster) -> int:
    """Length of the subscheme defined by an unloaded cluster."""
    if not cluster.is_unloaded:
        raise ClusterError("colength formula needs an unloaded cluster")
    return sum(w * (w + 1) // 2 for w in cluster.weights)


# chain criterion -----------------------------------------------------------

def dual_graph_edges(tree: GriddedTree) -> list[tuple[int, int]]:
    """Pairs ``a < b`` joined by a maximal L-shape branch.

    Equivalently, the strict transforms ``E_a`` and ``E_b`` meet: the
    ``(a, b)`` entry of ``Pi Pi^t`` is ``-1``.
    """
    g = tree.pi.gram
    n = len(tree)
    return [(a, b) for a in range(n) for b in range(a + 1, n) if g[a, b] != 0]


def star_chains(tree: GriddedTree) -> Iterator[tuple[int, ...]]:
    """All increasing chains ``a_1 < ... < a_l < a_{l+1}`` of consecutive
    maximal L-shape branches (``l >= 1``); the final point closes the last
    branch and is returned as the last entry."""
    succ: dict[int, list[int]] = {}
    for a, b in dual_graph_edges(tree):
        succ.setdefault(a, []).append(b)

    def extend(path: list[int]) -> Iterator[tuple[int, ...]]:
        for b in succ.get(path[-1], ()):
            path.append(b)
            yield tuple(path)
            yield from extend(path)
            path.pop()

    for a in range(len(tree)):
        yield from extend([a])


@dataclass(frozen=True)
class StarResult:
    holds: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


def satisfies_star(cluster: Cluster) -> StarResult:
    """Check the minimality criterion on an unloaded cluster.

    For every chain of branches ``a_1 -> a_2 -> ... -> a_{l+1}`` the sum of
    proximity defects over the ``l`` starting points must stay below
    ``sum p_{a_j} + 2 - l``, ``p_a`` counting the points proximate to
    ``P_a``.  On failure the violating chain is returned as witness.
    """
    if not cluster.is_unloaded:
        raise ClusterError("the chain criterion is stated for unloaded clusters")
    tree = cluster.tree
    defect = cluster.pi.defects(cluster.weights)
    nprox = [len(x) for x in tree.proximates]
    for chain in tree.star_chains:
        starts = chain[:-1]
        lhs = sum(defect[a] for a in starts)
        rhs = sum(nprox[a] for a in starts) + 2 - len(starts)
        if lhs >= rhs:
            return StarResult(False, chain)
    return StarResult(True)


# minimal clusters ------------------------------------------------------------

def semigroup_pair(p: int, q: int, value: int) -> tuple[int, int] | None:
    """A pair ``(a, b)`` of non-negative integers with ``ap + bq == value``
    (least ``b`` first), or ``None``."""
    for b in range(value // q + 1):
        rest = value - b * q
        if rest % p == 0:
            return rest // p, b
    return None


def least_semigroup_at_least(p: int, q: int, bound: int) -> int:
    """Least ``ap + bq >= bound`` with ``a, b >= 0``."""
    v = max(bound, 0)
    while semigroup_pair(p, q, v) is None:
        v += 1
    return v


def minimal_cluster(p: int, q: int, a: int, b: int) -> Cluster:
    """``K_{p,q}(a, b)``: the minimal unloaded cluster on ``T_{p,q}`` with
    last exceptional coefficient ``ap + bq``.

    The ideal ``mu_* O(-(ap+bq) E_r)`` is the cluster with all its weight on
    the last point; unloading it yields the minimal unloaded cluster.
    """
    if a < 0 or b < 0:
        raise ClusterError("a and b must be non-negative")
    tree = build_tpq_tree(p, q)
    w = [0] * len(tree)
    w[-1] = a * p + b * q
    out = unload(Cluster(tree, tuple(w)))
    assert out.last_coefficient == a * p + b * q
    return out


def unloaded_clusters_with_last(tree: GriddedTree, last: int) -> Iterator[Cluster]:
    """Every unloaded cluster on ``tree`` whose last exceptional coefficient
    equals ``last`` (exhaustive, weights assigned from the last vertex back)."""
    n = len(tree)
    # coefficient of E_r in F_a
    mult = [int(x) for x in tree.pi.inverse[:, -1]]
    w = [0] * n

    def rec(v: int, budget: int) -> Iterator[Cluster]:
        if v < 0:
            if budget == 0:
                yield Cluster(tree, tuple(w))
            return
        lo = sum(w[b] for b in tree.proximates[v])
        for x in range(lo, budget // mult[v] + 1):
            w[v] = x
            yield from rec(v - 1, budget - x * mult[v])
        w[v] = 0

    yield from rec(n - 1, last)


def minimal_cluster_oracle(p: int, q: int, last: int) -> Cluster | None:
    """Brute-force minimal unloaded cluster with last coefficient ``last``.

    Among unloaded clusters, a larger ideal means a componentwise smaller
    vector of exceptional coefficients; returns ``None`` when no cluster
    attains ``last`` or when no componentwise minimum exists.
    """
    tree = build_tpq_tree(p, q)
    found = list(unloaded_clusters_with_last(tree, last))
    if not found:
        return None
    coeffs = [k.exceptional for k in found]
    low = [min(c[i] for c in coeffs) for i in range(len(tree))]
    for k, c in zip(found, coeffs):
        if c == low:
            return k
    return None
