"""Points, local frames, singular points and branch curves in the plane."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import flint

from ..multiplier import SingularityType, singularity_params
from .polys import XY, XYZ, Poly, dehomogenize, fq, is_homogeneous, to_fraction
from .series import FrameError, Truncation, expand, invert_frame, linear_part, translate


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of the projective plane, scaled so its last nonzero coordinate is 1."""

    coords: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        c = tuple(to_fraction(t) for t in self.coords)
        if len(c) != 3:
            raise ValueError("a plane point has three homogeneous coordinates")
        nz = [t for t in c if t != 0]
        if not nz:
            raise ValueError("all homogeneous coordinates vanish")
        last = nz[-1]
        object.__setattr__(self, "coords", tuple(t / last for t in c))

    @classmethod
    def affine(cls, x, y) -> "ProjectivePoint":
        return cls((x, y, 1))

    @property
    def is_finite(self) -> bool:
        return self.coords[2] != 0

    def xy(self) -> tuple[Fraction, Fraction]:
        if not self.is_finite:
            raise FrameError(f"{self} lies on the line z = 0; move the configuration "
                             "so that every singular point is finite")
        return self.coords[0], self.coords[1]

    def __str__(self) -> str:
        return "(" + " : ".join(str(t) for t in self.coords) + ")"


@dataclass(frozen=True)
class LocalFrame:
    """Affine polynomials ``u, v`` in ``x, y`` giving local coordinates."""

    u: Poly
    v: Poly

    def check_at(self, point: ProjectivePoint) -> None:
        x0, y0 = point.xy()
        U, V = translate(self.u, x0, y0), translate(self.v, x0, y0)
        for name, f in (("u", U), ("v", V)):
            if dict(zip(f.monoms(), f.coeffs())).get((0, 0), 0) != 0:
                raise FrameError(f"frame function {name} does not vanish at {point}")
        (a, b), (c, d) = linear_part(U), linear_part(V)
        if a * d - b * c == 0:
            raise FrameError(f"frame at {point} has dependent linear parts")


@dataclass(frozen=True)
class SingularPoint:
    location: ProjectivePoint
    type: SingularityType
    frame: LocalFrame

    def __post_init__(self):
        if not isinstance(self.location, ProjectivePoint):
            object.__setattr__(self, "location", ProjectivePoint(tuple(self.location)))
        object.__setattr__(self, "type", singularity_params(self.type))
        self.frame.check_at(self.location)

    @property
    def xy(self):
        return self.location.xy()


class JetMismatch(ValueError):
    pass


def jet_check(polynomial: Poly, point: SingularPoint) -> None:
    """Check that ``polynomial`` (affine, in ``x, y``) has the declared type in
    the declared frame: in the expansion in ``u, v`` every term of
    ``(q, p)``-weighted degree below ``dpq`` vanishes and the leading
    weighted form, a binary form of degree ``d`` in ``u^p, v^q``, is
    squarefree and has no factor ``u`` (when ``p > 1``) nor ``v`` (when
    ``q > 1``).
    """
    t = point.type
    trunc = Truncation.weighted(t.q, t.p, t.dpq)
    X, Y = invert_frame(point.frame.u, point.frame.v, point.xy, trunc)
    series = expand(polynomial, point.xy, X, Y, trunc)
    lead: dict[int, flint.fmpq] = {}
    for (a, b), c in zip(series.monoms(), series.coeffs()):
        if a * t.q + b * t.p < t.dpq:
            raise JetMismatch(f"term u^{a} v^{b} below the weighted order at {point.location}")
        lead[a // t.p] = c
    form = flint.fmpq_poly([lead.get(k, 0) for k in range(t.d + 1)])
    if form.is_zero():
        raise JetMismatch(f"vanishing leading form at {point.location}")
    if form.degree() < t.d - 1 or (form.degree() < t.d and t.q > 1):
        raise JetMismatch(f"leading form has a factor v at {point.location}")
    if form[0] == 0 and t.p > 1:
        raise JetMismatch(f"leading form has a factor u at {point.location}")
    if form.gcd(form.derivative()).degree() > 0:
        raise JetMismatch(f"leading form is not squarefree at {point.location}")


@dataclass(frozen=True)
class BranchCurve:
    """Plane curve of degree ``degree`` with its relevant singular points.

    Points without subunitary jumping numbers (nodes) may be left out.
    When ``polynomial`` (a form in ``x, y, z``) is given, each listed point
    is checked against it unless ``check_jets`` is false.
    """

    degree: int
    singular_points: tuple[SingularPoint, ...]
    polynomial: Poly | None = None
    check_jets: bool = field(default=True, compare=False)
    lines: tuple[Poly, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "singular_points", tuple(self.singular_points))
        if self.degree < 1:
            raise ValueError("degree must be positive")
        locs = [pt.location for pt in self.singular_points]
        if len(set(locs)) != len(locs):
            raise ValueError("a singular point is listed twice")
        if self.polynomial is not None:
            f = self.polynomial
            if f.context() is not XYZ or not is_homogeneous(f) or f.total_degree() != self.degree:
                raise ValueError(f"polynomial is not a form of degree {self.degree} in x, y, z")
            if self.check_jets:
                affine = self.affine_polynomial()
                for pt in self.singular_points:
                    jet_check(affine, pt)

    def affine_polynomial(self) -> Poly:
        if self.polynomial is None:
            raise ValueError("no defining polynomial")
        return dehomogenize(self.polynomial)
