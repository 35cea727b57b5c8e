"""Irregularity of ``n``-cyclic multiple planes ``z^n = f(x, y)``.

``q`` is the sum, over the admissible jumping numbers ``xi``, of the
superabundance ``h^1`` of the multiplier scheme of ``xi B`` twisted by
``-3 + xi b``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable

from .enriques import Cluster, build_tpq_tree
from .linsys.conditions import Cohomology, cohomology
from .linsys.curves import Arrangement
from .linsys.geometry import BranchCurve
from .multiplier import jumping_set, multiplier_cluster

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Term:
    xi: Fraction
    degree: int
    colength: int
    h0: int
    h1: int


@dataclass(frozen=True)
class IrregularityReport:
    n: int
    b: int
    terms: tuple[Term, ...]
    irreducible: bool = False
    transversality: str = "assumed"

    @property
    def q(self) -> int:
        return sum(t.h1 for t in self.terms)


def twist(xi: Fraction, b: int) -> int:
    d = -3 + xi * b
    if d.denominator != 1:
        raise ValueError(f"-3 + {xi} * {b} is not an integer")
    return int(d)


def scheme(curve: BranchCurve, xi: Fraction) -> list:
    """Local multiplier clusters of ``xi B``; points with an empty cluster are skipped."""
    out = []
    for pt in curve.singular_points:
        k = multiplier_cluster(pt.type, xi)
        if not k.is_empty:
            out.append((pt, k))
    return out


def superabundance(curve: BranchCurve, xi: Fraction) -> Cohomology:
    return cohomology(scheme(curve, xi), twist(xi, curve.degree))


def _report(curve, n, irreducible, h1_of: Callable[[Fraction], Cohomology], transversality):
    terms = []
    for xi in jumping_set(curve, n, irreducible):
        coh = h1_of(xi)
        terms.append(Term(xi, coh.degree, coh.colength, coh.h0, coh.h1))
    return IrregularityReport(n, curve.degree, tuple(terms), irreducible, transversality)


def irregularity(curve: BranchCurve, n: int, irreducible: bool = False,
                 transversality: str = "assumed") -> IrregularityReport:
    """Irregularity of the ``n``-cyclic multiple plane branched along ``curve``.

    With ``irreducible`` set, jumping numbers whose denominator is a prime
    power are left out (they contribute nothing for irreducible curves).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if transversality == "assumed":
        log.info("transversality of the line at infinity is assumed, not verified")
    return _report(curve, n, irreducible, lambda xi: superabundance(curve, xi), transversality)


def profile(curve: BranchCurve, n_max: int, irreducible: bool = False) -> list[tuple[int, int]]:
    """``(n, q)`` for ``n = 2 .. n_max``; each ``h^1`` is computed once per ``xi``."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    memo: dict[Fraction, Cohomology] = {}

    def h1_of(xi):
        if xi not in memo:
            memo[xi] = superabundance(curve, xi)
        return memo[xi]

    return [(n, _report(curve, n, irreducible, h1_of, "assumed").q)
            for n in range(2, n_max + 1)]


def curvilinear(t, alpha: int) -> Cluster:
    """``alpha`` free points with weight 1 along the first segment of ``T_{p,q}``."""
    tree = build_tpq_tree(t.p, t.q)
    if alpha > len(tree):
        raise ValueError("not enough points in the tree")
    return Cluster(tree, (1,) * alpha + (0,) * (len(tree) - alpha))


def irregularity_odd_even(curve: BranchCurve, n: int) -> IrregularityReport:
    """Irregularity for curves whose relevant points are all ``A_{2r-1}``
    (one ``r``) or all ``A_{2m}`` (one ``m``), summing over curvilinear
    schemes ``Z^[alpha]`` with the explicit twists of each family."""
    types = {pt.type for pt in curve.singular_points}
    if len(types) != 1:
        raise ValueError("expected a single singularity type")
    (t,) = types
    b = curve.degree
    g = gcd(b, n)
    terms = []
    if t.p == 1 and t.d == 2:
        r = t.q
        for alpha in range(1, r):
            xi = Fraction(alpha + r, 2 * r)
            if (xi * g).denominator == 1:
                d = -3 + (alpha + r) * b // (2 * r)
                terms.append((xi, d, alpha))
    elif t.p == 2 and t.d == 1:
        m = (t.q - 1) // 2
        for alpha in range(1, m + 1):
            xi = Fraction(alpha, 2 * m + 1) + Fraction(1, 2)
            if (xi * g).denominator == 1:
                d = -3 + alpha * b // (2 * m + 1) + b // 2
                terms.append((xi, d, alpha))
    else:
        raise ValueError(f"type {t.label} is neither A_odd nor A_even")
    out = []
    for xi, d, alpha in terms:
        coh = cohomology([(pt, curvilinear(t, alpha)) for pt in curve.singular_points], d)
        out.append(Term(xi, d, coh.colength, coh.h0, coh.h1))
    return IrregularityReport(n, b, tuple(out))


def triple_point_bound(arrangement: Arrangement, n: int, check: bool = True) -> int:
    """``min_i t_i`` over the lines; with ``check`` the irregularity is
    computed and compared against it."""
    if any(len(idx) > 3 for idx in arrangement.multiple_points.values()):
        raise ValueError("the bound is stated for arrangements with nodes and triple points only")
    bound = min(arrangement.triple_counts)
    if check:
        q = irregularity(arrangement.curve, n).q
        assert q <= bound, (q, bound)
        if arrangement.curve.degree % 3 or n % 3:
            assert q == 0
    return bound
