"""Truncated power series in the frame coordinates ``(u, v)``.

A truncation is a down-closed set of exponents given by a predicate; its
complement is an ideal, so products and compositions may be truncated at
every intermediate step.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import flint

from .polys import UV, XY, Poly, fq


class FrameError(ValueError):
    pass


@dataclass(frozen=True)
class Truncation:
    keep: Callable[[tuple[int, int]], bool]

    @classmethod
    def total(cls, order: int) -> "Truncation":
        return cls(lambda m: m[0] + m[1] <= order)

    @classmethod
    def weighted(cls, wu: int, wv: int, top: int) -> "Truncation":
        return cls(lambda m: wu * m[0] + wv * m[1] <= top)

    @classmethod
    def down_set(cls, exponents) -> "Truncation":
        box = frozenset(exponents)
        return cls(lambda m: m in box)

    def __call__(self, p: Poly) -> Poly:
        keep = self.keep
        return p.context().from_dict(
            {m: c for m, c in zip(p.monoms(), p.coeffs()) if keep(m)})

    def mul(self, a: Poly, b: Poly) -> Poly:
        return self(a * b)

    def powers(self, base: Poly, top: int) -> list[Poly]:
        out = [UV.from_dict({(0, 0): 1})]
        for _ in range(top):
            out.append(self.mul(out[-1], base))
        return out

    def compose(self, poly: Poly, X: Poly, Y: Poly) -> Poly:
        """``poly(X, Y)`` truncated, for ``poly`` in ``x, y`` and series ``X, Y``."""
        if poly.is_zero():
            return UV.from_dict({})
        dx, dy = poly.degrees()
        # Horner in x with coefficients expanded by Horner in y
        rows: dict[int, dict[int, flint.fmpq]] = {}
        for (i, j), c in zip(poly.monoms(), poly.coeffs()):
            rows.setdefault(i, {})[j] = c
        acc = UV.from_dict({})
        for i in range(dx, -1, -1):
            inner = UV.from_dict({})
            row = rows.get(i, {})
            if row:
                for j in range(max(row), -1, -1):
                    inner = self.mul(inner, Y)
                    if j in row:
                        inner = inner + row[j]
            acc = self.mul(acc, X) + inner
        return self(acc)


def translate(poly: Poly, x0, y0) -> Poly:
    """``poly(x0 + x, y0 + y)`` in ``XY``."""
    x, y = XY.gens()
    return poly.compose(x + fq(x0), y + fq(y0))


def linear_part(poly: Poly) -> tuple[flint.fmpq, flint.fmpq]:
    d = dict(zip(poly.monoms(), poly.coeffs()))
    return d.get((1, 0), fq(0)), d.get((0, 1), fq(0))


def invert_frame(u: Poly, v: Poly, point: tuple, trunc: Truncation) -> tuple[Poly, Poly]:
    """Series ``X(u, v), Y(u, v)`` with ``x = x0 + X`` and ``y = y0 + Y``.

    ``u`` and ``v`` are affine polynomials vanishing at ``point = (x0, y0)``
    with independent linear parts; the result is exact within ``trunc``.
    """
    U, V = translate(u, *point), translate(v, *point)
    zero = fq(0)
    for name, f in (("u", U), ("v", V)):
        if dict(zip(f.monoms(), f.coeffs())).get((0, 0), zero) != 0:
            raise FrameError(f"frame function {name} does not vanish at {point}")
    (a, b), (c, d) = linear_part(U), linear_part(V)
    det = a * d - b * c
    if det == 0:
        raise FrameError("frame functions have dependent linear parts")
    hu = U - (a * XY.gens()[0] + b * XY.gens()[1])
    hv = V - (c * XY.gens()[0] + d * XY.gens()[1])
    su, sv = UV.gens()
    X = trunc((d * su - b * sv) / det)
    Y = trunc((-c * su + a * sv) / det)
    if hu.is_zero() and hv.is_zero():
        return X, Y
    # fixed point of (X, Y) = A^{-1} ((u, v) - h(X, Y)); each pass gains an order
    depth = 0
    while True:
        ru, rv = su - trunc.compose(hu, X, Y), sv - trunc.compose(hv, X, Y)
        X1 = trunc((d * ru - b * rv) / det)
        Y1 = trunc((-c * ru + a * rv) / det)
        if X1 == X and Y1 == Y:
            return X, Y
        X, Y = X1, Y1
        depth += 1
        if depth > 10_000:
            raise RuntimeError("frame inversion did not converge")


def expand(poly: Poly, point: tuple, X: Poly, Y: Poly, trunc: Truncation) -> Poly:
    """Local expansion of an affine polynomial in the frame coordinates."""
    return trunc.compose(translate(poly, *point), X, Y)
