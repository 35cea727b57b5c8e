"""Clusters realized at plane points and the linear conditions they impose."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import flint

from ..enriques import Cluster, ClusterError, build_tpq_tree, cluster_colength, unload
from .geometry import SingularPoint
from .polys import XY, Poly, fq
from .series import Truncation, expand, invert_frame, translate

# axis labels of a chart: an exceptional curve index or a frame axis
U_AXIS, V_AXIS = "u=0", "v=0"


@dataclass(frozen=True)
class Chart:
    """Monomial chart at a cluster point: ``u = s^a t^b``, ``v = s^c t^e``
    with ``matrix = ((a, b), (c, e))``.  ``axes`` names the curves
    ``s = 0`` and ``t = 0`` through the chart origin."""

    matrix: tuple[tuple[int, int], tuple[int, int]]
    axes: tuple[int | str, int | str]

    def valuation(self, a: int, b: int) -> int:
        """Order of ``u^a v^b`` along the exceptional curve of this point."""
        (m00, m01), (m10, m11) = self.matrix
        return a * (m00 + m01) + b * (m10 + m11)

    def proximate_to(self) -> tuple[int, ...]:
        return tuple(sorted(x for x in self.axes if isinstance(x, int)))


def model_charts(p: int, q: int, d: int = 1) -> list[Chart]:
    """Charts of the points of ``T_{p,q}`` resolving ``u^{dp} - v^{dq}``.

    The strict transform stays ``s^A - t^B`` at each chart origin; the
    tangent cone picks the chart until ``A = B``.
    """
    A, B = d * p, d * q
    m = ((1, 0), (0, 1))
    axes: tuple = (U_AXIS, V_AXIS)
    out = [Chart(m, axes)]
    while A != B:
        beta = len(out) - 1
        (m00, m01), (m10, m11) = m
        if A < B:
            # tangent cone s^A: the direction s = 0, chart s = s' t
            m = ((m00, m00 + m01), (m10, m10 + m11))
            axes = (axes[0], beta)
            B -= A
        else:
            m = ((m00 + m01, m01), (m10 + m11, m11))
            axes = (beta, axes[1])
            A -= B
        out.append(Chart(m, axes))
    return out


@dataclass(frozen=True)
class RealizedCluster:
    point: SingularPoint
    cluster: Cluster
    charts: tuple[Chart, ...]

    def conditions(self) -> frozenset[tuple[int, int]]:
        """Exponents ``(a, b)`` whose coefficient in the frame expansion must
        vanish.  At each point the pull-back of ``u^a v^b`` is divided by
        the exceptional coordinates to their imposed multiplicities; the
        virtual transform must have order at least the weight.  Terms
        not divisible are dropped: earlier points already killed them."""
        c = self.cluster.exceptional
        top = max(c, default=0)
        out = set()
        for chart, w in zip(self.charts, self.cluster.weights):
            if w <= 0:
                continue
            (m00, m01), (m10, m11) = chart.matrix
            cs, ct = (c[x] if isinstance(x, int) else 0 for x in chart.axes)
            for a in range(top):
                for b in range(top):
                    es = a * m00 + b * m10 - cs
                    et = a * m01 + b * m11 - ct
                    if es >= 0 and et >= 0 and es + et < w:
                        out.add((a, b))
        return frozenset(out)

    def staircase(self) -> frozenset[tuple[int, int]]:
        """Exponents ``(a, b)`` whose coefficient in the frame expansion must
        vanish: the order of ``u^a v^b`` along some ``E_beta`` is below
        ``c_beta``, i.e. the virtual transform there has order below the weight."""
        c = self.cluster.exceptional
        out = set()
        for chart, cb in zip(self.charts, c):
            if cb <= 0:
                continue
            # valuation is (a, b) -> a*nu_u + b*nu_v with positive nu's
            nu_u, nu_v = chart.valuation(1, 0), chart.valuation(0, 1)
            for a in range((cb - 1) // nu_u + 1):
                for b in range((cb - 1 - a * nu_u) // nu_v + 1):
                    out.add((a, b))
        return frozenset(out)


def realize_cluster(point: SingularPoint, cluster: Cluster) -> RealizedCluster:
    """Attach to each cluster vertex the chart of the corresponding point of
    the model resolution at ``point``.  Weights must be non-negative; the
    tree must be the ``T_{p,q}`` of the point's type."""
    t = point.type
    model = build_tpq_tree(t.p, t.q)
    if (cluster.tree.parents, cluster.tree.kinds) != (model.parents, model.kinds):
        raise ClusterError(f"cluster tree does not match type {t.label}")
    if min(cluster.weights, default=0) < 0:
        raise ClusterError("negative weights impose no conditions; unload first")
    charts = model_charts(t.p, t.q, t.d)
    for v, chart in enumerate(charts):
        if chart.proximate_to() != tuple(sorted(cluster.tree.proximate_to[v])):
            raise ClusterError(f"chart data disagree with proximities at vertex {v}")
    return RealizedCluster(point, cluster, tuple(charts))


def monomials(d: int) -> list[tuple[int, int, int]]:
    """Exponents of degree-``d`` monomials ``x^i y^j z^k`` in a fixed order."""
    return [(i, d - i - k, k) for i in range(d, -1, -1) for k in range(d - i + 1)]


@dataclass(frozen=True)
class ConditionMatrix:
    degree: int
    rows: tuple[tuple[flint.fmpq, ...], ...]
    colength: int

    @property
    def ncols(self) -> int:
        return (self.degree + 1) * (self.degree + 2) // 2 if self.degree >= 0 else 0

    def rank(self) -> int:
        if not self.rows or self.ncols == 0:
            return 0
        return flint.fmpq_mat([list(r) for r in self.rows]).rank()

    def stacked(self, other: "ConditionMatrix") -> "ConditionMatrix":
        if other.degree != self.degree:
            raise ValueError("degrees differ")
        return ConditionMatrix(self.degree, self.rows + other.rows, self.colength + other.colength)


def _local_rows(rc: RealizedCluster, d: int) -> list[tuple[flint.fmpq, ...]]:
    stairs = rc.conditions()
    if not stairs or d < 0:
        return []
    trunc = Truncation.down_set(stairs)
    x0, y0 = rc.point.xy
    X, Y = invert_frame(rc.point.frame.u, rc.point.frame.v, (x0, y0), trunc)
    # powers of x = x0 + X and y = y0 + Y, all within the staircase
    px = trunc.powers(X + fq(x0), d)
    py = trunc.powers(Y + fq(y0), d)
    order = sorted(stairs)
    index = {m: k for k, m in enumerate(order)}
    cols = []
    for i, j, _ in monomials(d):
        s = trunc.mul(px[i], py[j])
        col = [fq(0)] * len(order)
        for m, c in zip(s.monoms(), s.coeffs()):
            col[index[m]] = c
        cols.append(col)
    return [tuple(col[r] for col in cols) for r in range(len(order))]


def conditions_matrix(points: Sequence[tuple[SingularPoint, Cluster]], d: int) -> ConditionMatrix:
    """Rows: coefficients of the frame expansion that must vanish, as linear
    functionals on the coefficients of a degree-``d`` form (in the order of
    :func:`monomials`).  The colength is that of the unloaded clusters."""
    rows: list[tuple[flint.fmpq, ...]] = []
    colength = 0
    for point, cluster in points:
        rc = realize_cluster(point, cluster)
        rows += _local_rows(rc, d)
        colength += cluster_colength(unload(cluster)) if not cluster.is_unloaded \
            else cluster_colength(cluster)
    return ConditionMatrix(d, tuple(rows), colength)


@dataclass(frozen=True)
class Cohomology:
    degree: int
    rank: int
    colength: int
    h0: int
    h1: int


def cohomology_from_matrix(m: ConditionMatrix) -> Cohomology:
    d = m.degree
    if d < -2:
        raise ValueError("the twist must be at least -2 so that h^2 vanishes")
    dim = (d + 1) * (d + 2) // 2
    rank = m.rank() if d >= 0 else 0
    h0 = max(0, dim - rank) if d >= 0 else 0
    return Cohomology(d, rank, m.colength, h0, h0 - dim + m.colength)


def cohomology(points: Sequence[tuple[SingularPoint, Cluster]], d: int) -> Cohomology:
    """``h^0`` and ``h^1`` of the ideal sheaf of the clusters twisted by ``O(d)``."""
    if d < -2:
        raise ValueError("the twist must be at least -2 so that h^2 vanishes")
    return cohomology_from_matrix(conditions_matrix(points, d))
