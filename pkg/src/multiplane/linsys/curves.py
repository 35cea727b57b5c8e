"""Branch curves built from auxiliary curves and from lines."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import flint

from ..multiplier import SingularityType
from .conditions import ConditionMatrix, monomials
from .geometry import BranchCurve, LocalFrame, ProjectivePoint, SingularPoint
from .polys import XY, XYZ, Poly, PolynomialError, dehomogenize, fq, is_homogeneous, to_fraction

log = logging.getLogger(__name__)


class ConstructionError(ValueError):
    pass


# linear algebra -------------------------------------------------------------

def kernel_basis(rows: Sequence[Sequence], ncols: int) -> list[list[flint.fmpq]]:
    """Basis of the right kernel of an exact rational matrix."""
    if not rows:
        return [[fq(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    rref, rank = flint.fmpq_mat([list(map(fq, r)) for r in rows]).rref()
    pivots = []
    for i in range(rank):
        pivots.append(next(j for j in range(ncols) if rref[i, j] != 0))
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        vec = [fq(0)] * ncols
        vec[f] = fq(1)
        for i, pj in enumerate(pivots):
            vec[pj] = -rref[i, f]
        basis.append(vec)
    return basis


def form_from_vector(vec: Sequence, d: int) -> Poly:
    return XYZ.from_dict({m: fq(c) for m, c in zip(monomials(d), vec) if c != 0})


def evaluation_rows(points: Sequence[ProjectivePoint], d: int) -> list[list[flint.fmpq]]:
    rows = []
    for pt in points:
        x, y, z = (fq(t) for t in pt.coords)
        rows.append([x ** i * y ** j * z ** k for i, j, k in monomials(d)])
    return rows


def forms_through(points: Sequence[ProjectivePoint], d: int) -> list[Poly]:
    """Basis of the degree-``d`` forms vanishing at ``points``."""
    return [form_from_vector(v, d)
            for v in kernel_basis(evaluation_rows(points, d), (d + 1) * (d + 2) // 2)]


def interpolating_curve(points: Sequence[ProjectivePoint], d: int, avoid: Poly | None = None,
                        rng: random.Random | None = None, attempts: int = 50) -> Poly:
    """A random degree-``d`` form through ``points``, not divisible by ``avoid``."""
    rng = rng or random.Random(0)
    basis = forms_through(points, d)
    if not basis:
        raise ConstructionError(f"no curve of degree {d} through the given points")
    for _ in range(attempts):
        f = sum((rng.randint(-9, 9) * g for g in basis), XYZ.from_dict({}))
        if f.is_zero():
            continue
        if avoid is not None and avoid.total_degree() <= d:
            quotient, remainder = divmod(f, avoid)
            if remainder.is_zero():
                continue
        return f
    raise ConstructionError("every interpolating curve contains the avoided curve")


# intersections ----------------------------------------------------------------

def _binary_at_infinity(f: Poly) -> flint.fmpq_poly:
    # f(x, 1, 0) as a polynomial in x, plus the x^deg coefficient via f(1, 0, 0)
    coeffs: dict[int, flint.fmpq] = {}
    for (i, j, k), c in zip(f.monoms(), f.coeffs()):
        if k == 0:
            coeffs[i] = coeffs.get(i, 0) + c
    top = max(coeffs, default=0)
    return flint.fmpq_poly([coeffs.get(i, 0) for i in range(top + 1)])


def _to_univariate(p: Poly, var: int) -> flint.fmpq_poly:
    coeffs: dict[int, flint.fmpq] = {}
    for m, c in zip(p.monoms(), p.coeffs()):
        if any(e for k, e in enumerate(m) if k != var):
            raise PolynomialError("polynomial is not univariate")
        coeffs[m[var]] = c
    top = max(coeffs, default=0)
    return flint.fmpq_poly([coeffs.get(i, 0) for i in range(top + 1)])


def rational_roots(poly: flint.fmpq_poly) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicity; raises if a factor is nonlinear."""
    _, factors = poly.factor()
    out = []
    for fac, mult in factors:
        if fac.degree() != 1:
            raise ConstructionError(f"irrational intersection points (factor {fac})")
        out.append((to_fraction(-fac[0] / fac[1]), mult))
    return sorted(out)


def jacobian(f: Poly, g: Poly, x0, y0) -> flint.fmpq:
    fx, fy = f.derivative("x"), f.derivative("y")
    gx, gy = g.derivative("x"), g.derivative("y")
    at = (fq(x0), fq(y0))
    return fx(*at) * gy(*at) - fy(*at) * gx(*at)


def intersect(f: Poly, g: Poly) -> list[ProjectivePoint]:
    """Intersection points of two plane curves, required to be finite,
    rational and transverse (so there are ``deg f * deg g`` of them)."""
    for h in (f, g):
        if h.context() is not XYZ or not is_homogeneous(h):
            raise PolynomialError("expected forms in x, y, z")
    at_inf = _binary_at_infinity(f).gcd(_binary_at_infinity(g))
    lead = [to_fraction(c) for c in (f(1, 0, 0), g(1, 0, 0))]
    if at_inf.degree() > 0 or (lead[0] == 0 and lead[1] == 0):
        raise ConstructionError("the curves meet on the line z = 0; move them first")
    F, G = dehomogenize(f), dehomogenize(g)
    res = F.resultant(G, "y")
    if res.is_zero():
        raise ConstructionError("the curves share a component")
    points = []
    for x0, _ in rational_roots(_to_univariate(res, 0)):
        y = XY.gens()[1]
        fx = _to_univariate(F.compose(XY.from_dict({(0, 0): fq(x0)}), y), 1)
        gx = _to_univariate(G.compose(XY.from_dict({(0, 0): fq(x0)}), y), 1)
        common = fx.gcd(gx)
        for y0, mult in rational_roots(common):
            if mult > 1 or jacobian(F, G, x0, y0) == 0:
                raise ConstructionError(f"the curves are tangent at ({x0}, {y0})")
            points.append(ProjectivePoint.affine(x0, y0))
    expected = f.total_degree() * g.total_degree()
    if len(points) != expected:
        raise ConstructionError(f"found {len(points)} transverse points, expected {expected}; "
                                "some intersection is not transverse")
    return points


# constructions ------------------------------------------------------------------

def oka_curve(p: int, q: int, f_p: Poly, f_q: Poly, check_jets: bool = True) -> BranchCurve:
    """``B = f_p^q + f_q^p`` with ``pq`` singular points of type ``(p, q, 1)``
    at the (rational, transverse) intersections of ``f_p`` and ``f_q``."""
    if gcd(p, q) != 1 or min(p, q) < 1:
        raise ConstructionError(f"need coprime positive degrees, got ({p}, {q})")
    if p > q:
        p, q, f_p, f_q = q, p, f_q, f_p
    if f_p.total_degree() != p or f_q.total_degree() != q:
        raise ConstructionError("degrees of the auxiliary curves do not match (p, q)")
    points = intersect(f_p, f_q)
    frame = LocalFrame(dehomogenize(f_q), dehomogenize(f_p))
    t = SingularityType(p, q, 1)
    sing = tuple(SingularPoint(pt, t, frame) for pt in points)
    return BranchCurve(p * q, sing, f_p ** q + f_q ** p, check_jets=check_jets)


def _line_coords(line) -> tuple[Fraction, Fraction, Fraction]:
    if isinstance(line, flint.fmpq_mpoly):
        if line.total_degree() != 1 or not is_homogeneous(line):
            raise ConstructionError(f"{line} is not a linear form")
        d = dict(zip(line.monoms(), line.coeffs()))
        return tuple(to_fraction(d.get(m, 0)) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    a, b, c = (to_fraction(t) for t in line)
    if a == b == c == 0:
        raise ConstructionError("the zero form is not a line")
    return a, b, c


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


@dataclass(frozen=True)
class Arrangement:
    curve: BranchCurve
    lines: tuple[tuple[Fraction, Fraction, Fraction], ...]
    multiple_points: dict  # ProjectivePoint -> tuple of line indices
    triple_counts: tuple[int, ...]


def line_arrangement(lines: Sequence, check_jets: bool = True) -> Arrangement:
    """Arrangement of distinct lines (linear forms or coefficient triples).

    Points where ``m >= 3`` lines meet get type ``(1, 1, m)`` with a frame
    made of two of those lines; nodes are dropped.  ``triple_counts[i]`` is
    the number of points of multiplicity at least 3 on line ``i``.
    """
    coords = [_line_coords(l) for l in lines]
    if not coords:
        raise ConstructionError("an arrangement needs at least one line")
    for i in range(len(coords)):
        for j in range(i):
            if _cross(coords[i], coords[j]) == (0, 0, 0):
                raise ConstructionError(f"lines {j} and {i} coincide")
    through: dict[ProjectivePoint, set[int]] = {}
    for i in range(len(coords)):
        for j in range(i):
            pt = ProjectivePoint(_cross(coords[i], coords[j]))
            through.setdefault(pt, set()).update((i, j))
    multiple = {pt: tuple(sorted(idx)) for pt, idx in through.items() if len(idx) >= 3}
    forms = [XYZ.from_dict({(1, 0, 0): fq(a), (0, 1, 0): fq(b), (0, 0, 1): fq(c)})
             for a, b, c in coords]
    sing = []
    for pt, idx in sorted(multiple.items(), key=lambda kv: kv[0].coords):
        frame = LocalFrame(dehomogenize(forms[idx[0]]), dehomogenize(forms[idx[1]]))
        sing.append(SingularPoint(pt, SingularityType(1, 1, len(idx)), frame))
    poly = XYZ.from_dict({(0, 0, 0): 1})
    for f in forms:
        poly = poly * f
    curve = BranchCurve(len(coords), tuple(sing), poly, check_jets=check_jets,
                        lines=tuple(forms))
    counts = tuple(sum(i in idx for idx in multiple.values()) for i in range(len(coords)))
    return Arrangement(curve, tuple(coords), multiple, counts)


def transversality_check(curve: BranchCurve, line) -> bool | None:
    """Whether ``line`` meets the curve in ``degree`` distinct points away
    from the listed singular points; ``None`` without a polynomial."""
    if curve.polynomial is None:
        return None
    a, b, c = _line_coords(line)
    for pt in curve.singular_points:
        x, y, z = pt.location.coords
        if a * x + b * y + c * z == 0:
            return False
    # two points spanning the line
    basis = kernel_basis([[fq(a), fq(b), fq(c)]], 3)
    P, Q = basis
    st = flint.fmpq_mpoly_ctx.get(("s", "t"), "lex")
    s, t = st.gens()
    restricted = curve.polynomial.compose(*(P[k] * s + Q[k] * t for k in range(3)), ctx=st)
    if restricted.is_zero():
        return False
    coeffs: dict[int, flint.fmpq] = {}
    for (i, _), cf in zip(restricted.monoms(), restricted.coeffs()):
        coeffs[i] = cf
    h = flint.fmpq_poly([coeffs.get(i, 0) for i in range(curve.degree + 1)])
    if h.degree() < curve.degree - 1:
        return False
    return h.gcd(h.derivative()).degree() == 0
