"""Explicit rational configurations with known irregularities.

Each builder returns a :class:`BranchCurve` (or an arrangement) whose
singular points are all rational and finite.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

import flint

from .linsys.conditions import conditions_matrix
from .linsys.curves import (
    Arrangement,
    ConstructionError,
    interpolating_curve,
    kernel_basis,
    form_from_vector,
    intersect,
    line_arrangement,
    oka_curve,
)
from .linsys.geometry import BranchCurve, LocalFrame, ProjectivePoint, SingularPoint
from .linsys.polys import XYZ, Poly, dehomogenize, fq, linear_form, parse_polynomial
from .enriques import Cluster, build_tpq_tree
from .multiplier import SingularityType

CONIC = "x*z - y^2"


def conic_points(k: int) -> list[ProjectivePoint]:
    """``k`` rational points ``(t^2 : t : 1)`` of the conic ``xz = y^2``."""
    return [ProjectivePoint((t * t, t, 1)) for t in range(k)]


def oka_conic_curve(q: int, seed: int = 0) -> BranchCurve:
    """``g^q + f^2`` for the conic ``g`` and a degree-``q`` curve ``f`` through
    ``2q`` of its points: ``2q`` points of type ``A_{q-1}`` on a conic."""
    if q % 2 == 0 or q < 3:
        raise ValueError("q must be odd and at least 3")
    g = parse_polynomial(CONIC, XYZ)
    f = interpolating_curve(conic_points(2 * q), q, avoid=g, rng=random.Random(seed))
    return oka_curve(2, q, g, f)


def zariski_sextic(seed: int = 0) -> BranchCurve:
    """Sextic with six cusps on a conic."""
    return oka_conic_curve(3, seed)


# y^2 = x^3 + 17 has many integral points
ELLIPTIC = "y^2*z - x^3 - 17*z^3"
ELLIPTIC_POINTS = [(-2, 3), (-2, -3), (-1, 4), (-1, -4), (2, 5), (2, -5), (4, 9), (4, -9),
                   (8, 23), (8, -23), (43, 282), (43, -282), (52, 375), (52, -375)]


def oka_elliptic_curve(seed: int = 0) -> BranchCurve:
    """``f_3^4 + f_4^3`` with ``f_3`` the cubic ``y^2 = x^3 + 17`` and ``f_4`` a
    quartic through 11 of its integral points; the twelfth intersection is
    then rational as well."""
    f3 = parse_polynomial(ELLIPTIC, XYZ)
    pts = [ProjectivePoint.affine(x, y) for x, y in ELLIPTIC_POINTS[:11]]
    rng = random.Random(seed)
    for _ in range(20):
        f4 = interpolating_curve(pts, 4, avoid=f3, rng=rng)
        try:
            return oka_curve(3, 4, f3, f4)
        except ConstructionError:
            continue
    raise ConstructionError("no transverse quartic found")


def _apply(form: Poly, matrix) -> Poly:
    """``form(M (x, y, z))``."""
    x, y, z = XYZ.gens()
    new = [sum((fq(c) * g for c, g in zip(row, (x, y, z))), XYZ.from_dict({}))
           for row in matrix]
    return form.compose(*new)


def _tangent(form: Poly, point) -> Poly:
    grad = [form.derivative(v)(*point) for v in ("x", "y", "z")]
    return linear_form(*grad)


# a projective change moving the line z = 0 away from the configurations below
MOVE = ((1, 0, 0), (0, 1, 0), (Fraction(1, 7), Fraction(1, 11), 1))


def _inverse_image(point, matrix) -> tuple:
    m = flint.fmpq_mat([[fq(c) for c in row] for row in matrix])
    sol = m.solve(flint.fmpq_mat([[fq(c)] for c in point]))
    return tuple(sol[i, 0] for i in range(3))


def artal_flex_curve() -> BranchCurve:
    """The Fermat cubic with the tangents at its three (collinear) rational
    inflexions: three points of type ``A_5``, moved so all are finite."""
    cubic = parse_polynomial("x^3 + y^3 + z^3", XYZ)
    flexes = [(1, -1, 0), (1, 0, -1), (0, 1, -1)]
    tangents = [_tangent(cubic, f) for f in flexes]
    moved = _apply(cubic, MOVE)
    lines = [_apply(t, MOVE) for t in tangents]
    poly = moved
    for l in lines:
        poly = poly * l
    points = []
    a5 = SingularityType(1, 3, 2)
    for flex, line in zip(flexes, lines):
        loc = ProjectivePoint(_inverse_image(flex, MOVE))
        x0, y0 = loc.xy()
        # a second coordinate transverse to the tangent line
        lu = dehomogenize(line)
        d = dict(zip(lu.monoms(), lu.coeffs()))
        a, b = d.get((1, 0), 0), d.get((0, 1), 0)
        other = parse_polynomial("x", XYZ) if b != 0 else parse_polynomial("y", XYZ)
        v = dehomogenize(other) - fq(x0 if b != 0 else y0)
        points.append(SingularPoint(loc, a5, LocalFrame(lu, v)))
    return BranchCurve(6, tuple(points), poly)


# y^2 = x^3 + 1: torsion Z/6 generated by (2, 3); (0, 1) has order 3
OSCULATING_CUBIC = "y^2*z - x^3 - z^3"
NONCOLLINEAR_POINTS = [(2, 3), (-1, 0), (0, -1)]


def osculating_cubics_curve(points=NONCOLLINEAR_POINTS, seed: int = 0) -> BranchCurve:
    """Two cubics meeting with contact 3 at three points, each an ``A_5``.

    The points ``(2,3), (-1,0), (0,-1)`` of ``y^2 = x^3 + 1`` sum to a point
    of order 3, so they are not collinear but ``3(P1+P2+P3)`` is cut by a
    cubic; that cubic spans with ``C`` the pencil of curves osculating ``C``.
    """
    c1 = parse_polynomial(OSCULATING_CUBIC, XYZ)
    cu = dehomogenize(c1)
    a5 = SingularityType(1, 3, 2)
    sps = []
    for x0, y0 in points:
        grad_y = cu.derivative("y")(x0, y0)
        # local parameter along C: a coordinate transverse to its tangent
        v = parse_polynomial(f"x - ({x0})") if grad_y != 0 else parse_polynomial(f"y - ({y0})")
        sps.append(SingularPoint(ProjectivePoint.affine(x0, y0), a5, LocalFrame(cu, v)))
    chain = Cluster(build_tpq_tree(1, 3), (1, 1, 1))
    m = conditions_matrix([(pt, chain) for pt in sps], 3)
    basis = [form_from_vector(v, 3) for v in kernel_basis(m.rows, 10)]
    rng = random.Random(seed)
    for _ in range(50):
        k = sum((rng.randint(-9, 9) * f for f in basis), XYZ.from_dict({}))
        if k.is_zero() or (k - (k.coeffs()[0] / c1.coeffs()[0]) * c1).is_zero():
            continue
        c2 = c1 + k
        try:
            return BranchCurve(6, tuple(sps), c1 * c2)
        except ValueError:
            continue
    raise ConstructionError("no osculating cubic found")


def nine_lines(s: Fraction = Fraction(1)) -> list[Poly]:
    """Nine lines with nine triple points (ten when ``s = 2``), before moving."""
    s = Fraction(s)
    x, y, z = XYZ.gens()
    def lin(a, b, c):
        return linear_form(a, b, c)
    return [lin(1, 0, 2), lin(1, 0, 0), lin(1, 0, -2),
            lin(0, 1, -s), lin(0, 1, 0), lin(0, 1, 2),
            # through (-2,-2), (0,s); through (-2,0), (2,s); y = -x
            lin((s + 2) / 2, -1, s), lin(s / 4, -1, s / 2), lin(1, 1, 0)]


def moved_lines(lines: Sequence[Poly], matrix=MOVE) -> list[Poly]:
    return [_apply(l, matrix) for l in lines]


def nine_line_arrangement(s: Fraction = Fraction(1)) -> Arrangement:
    return line_arrangement(moved_lines(nine_lines(s)))
