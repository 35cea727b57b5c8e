"""Jumping numbers and multiplier ideals of singularities ``x^{dp} = y^{dq}``.

All arithmetic is exact (:class:`fractions.Fraction`); the floors at the
jumping numbers are discontinuities, so floats never enter.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd
from typing import Sequence

from .enriques import (
    Cluster,
    antinef_closure,
    ClusterError,
    build_tpq_tree,
    cluster_colength,
    euclid_quotients,
    euclid_remainders,
    least_semigroup_at_least,
    minimal_cluster,
    semigroup_pair,
)


@dataclass(frozen=True, order=True)
class SingularityType:
    """Local type ``x^{dp} - y^{dq} = 0`` with ``gcd(p, q) = 1`` and ``p <= q``."""

    p: int
    q: int
    d: int

    def __post_init__(self):
        if min(self.p, self.q, self.d) < 1:
            raise ValueError(f"p, q, d must be positive, got {self}")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"gcd(p, q) must be 1, got {self}")
        if self.p > self.q:
            raise ValueError(f"expected p <= q, got {self}")

    @property
    def dpq(self) -> int:
        return self.d * self.p * self.q

    @property
    def label(self) -> str:
        p, q, d = self.p, self.q, self.d
        if (p, q, d) == (1, 1, 2):
            return "A_1"
        if p == 1 and d == 2:
            return f"A_{2 * q - 1}"
        if p == 2 and d == 1:
            return f"A_{q - 1}"
        if p == q == 1:
            return f"ordinary_{d}"
        return f"({p},{q},{d})"

    def tree(self):
        return build_tpq_tree(self.p, self.q)

    def multiplicities(self) -> list[int]:
        """Multiplicities of the curve at the points of ``T_{p,q}``."""
        out = []
        for a, r in zip(euclid_quotients(self.p, self.q), euclid_remainders(self.p, self.q)):
            out += [self.d * r] * a
        return out

    def curve_coefficients(self) -> list[int]:
        """Exceptional coefficients of the total transform of the curve."""
        return Cluster(self.tree(), tuple(self.multiplicities())).exceptional

    def canonical_coefficients(self) -> list[int]:
        """Exceptional coefficients of the relative canonical divisor."""
        return Cluster(self.tree(), (1,) * len(self.tree())).exceptional


_A_LABEL = re.compile(r"^A_?\{?(\d+)\}?$")
_ORD_LABEL = re.compile(r"^ordinary_?(\d+)$")


def singularity_params(label: str | SingularityType | Sequence[int]) -> SingularityType:
    """Parse ``"A_k"``, ``"ordinary_m"`` or an explicit ``(p, q, d)``.

    >>> singularity_params("A_2")
    SingularityType(p=2, q=3, d=1)
    >>> singularity_params("A_5")
    SingularityType(p=1, q=3, d=2)
    """
    if isinstance(label, SingularityType):
        return label
    if isinstance(label, str):
        s = label.strip()
        m = _A_LABEL.match(s)
        if m:
            k = int(m.group(1))
            if k <= 0:
                raise ValueError(f"A_k needs k >= 1, got {label!r}")
            if k % 2:
                return SingularityType(1, (k + 1) // 2, 2)
            return SingularityType(2, k + 1, 1)
        m = _ORD_LABEL.match(s)
        if m:
            mult = int(m.group(1))
            if mult < 2:
                raise ValueError(f"an ordinary point needs multiplicity >= 2, got {label!r}")
            return SingularityType(1, 1, mult)
        raise ValueError(f"unknown singularity label {label!r}")
    if isinstance(label, dict):
        return SingularityType(int(label["p"]), int(label["q"]), int(label["d"]))
    p, q, d = label
    return SingularityType(int(p), int(q), int(d))


@dataclass(frozen=True)
class JumpingNumber:
    value: Fraction
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not 0 < self.value < 1:
            raise ValueError("jumping numbers here are subunitary")


def jumping_numbers(t: SingularityType) -> list[JumpingNumber]:
    """Subunitary jumping numbers ``(ap + bq)/(dpq)`` with ``a, b >= 1``."""
    found: dict[Fraction, list[tuple[int, int]]] = {}
    for b in range(1, t.d * t.p + 1):
        for a in range(1, t.d * t.q + 1):
            num = a * t.p + b * t.q
            if num >= t.dpq:
                break
            found.setdefault(Fraction(num, t.dpq), []).append((a, b))
    return [JumpingNumber(x, tuple(sorted(found[x]))) for x in sorted(found)]


def _divisor_vector(t: SingularityType, xi: Fraction) -> list[int]:
    # exceptional coefficients of -K + floor(xi mu^* B)
    return [floor(xi * b) - k
            for b, k in zip(t.curve_coefficients(), t.canonical_coefficients())]


def cluster_by_unloading(t: SingularityType, xi: Fraction) -> Cluster:
    """Unloaded cluster of ``-K + floor(xi mu^* B)``, with weights
    ``floor(xi c) Pi - 1`` before unloading."""
    tree = t.tree()
    return Cluster(tree, tuple(tree.pi.to_weights(
        antinef_closure(tree, _divisor_vector(t, Fraction(xi))))))


def jumping_numbers_oracle(t: SingularityType) -> list[Fraction]:
    """Jumping numbers found by sweeping every breakpoint ``k / c_a`` of the
    floors and watching the colength of the unloaded cluster."""
    tree = t.tree()
    breaks = sorted({Fraction(k, b) for b in t.curve_coefficients() for k in range(1, b)})
    out = []
    prev_len, prev_c = 0, None
    for xi in breaks:
        c = _divisor_vector(t, xi)
        if prev_c is not None:
            # the closure is monotone in xi, so the last one is a valid floor
            c = [max(x, y) for x, y in zip(c, prev_c)]
        c = antinef_closure(tree, c)
        colength = cluster_colength(Cluster(tree, tuple(tree.pi.to_weights(c))))
        if colength > prev_len:
            out.append(xi)
        elif colength < prev_len:
            raise AssertionError("multiplier ideals must shrink as xi grows")
        prev_len, prev_c = colength, c
    return out


def last_coefficient(t: SingularityType, xi: Fraction) -> int:
    """Coefficient of the last exceptional curve in ``-K + floor(xi mu^* B)``."""
    return floor(t.dpq * Fraction(xi)) - (t.p + t.q - 1)


def multiplier_cluster(t: SingularityType, xi: Fraction) -> Cluster:
    """Cluster of the multiplier ideal of ``xi B`` at a point of type ``t``."""
    xi = Fraction(xi)
    if not 0 < xi < 1:
        raise ValueError(f"xi must lie in (0, 1), got {xi}")
    cr = last_coefficient(t, xi)
    if cr <= 0:
        return Cluster.empty(t.tree())
    target = least_semigroup_at_least(t.p, t.q, cr)
    a, b = semigroup_pair(t.p, t.q, target)
    return minimal_cluster(t.p, t.q, a, b)


def tilde_pair(p: int, q: int, alpha: int, beta: int) -> tuple[int, tuple[int, int]]:
    """Least value ``a'p + b'q >= (alpha-1)p + (beta-1)q + 1`` and the
    lexicographically least pair attaining it."""
    if gcd(p, q) != 1:
        raise ClusterError(f"gcd({p}, {q}) != 1")
    bound = (alpha - 1) * p + (beta - 1) * q + 1
    best = None
    for a in range(bound // p + 2):
        for b in range(bound // q + 2):
            v = a * p + b * q
            if v >= bound and (best is None or v < best[0]):
                best = (v, (a, b))
    return best


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    for f in range(2, int(n ** 0.5) + 1):
        if n % f == 0:
            while n % f == 0:
                n //= f
            return n == 1
    return True


def jumping_set(curve, n: int, irreducible: bool = False) -> list[Fraction]:
    """Subunitary jumping numbers of the curve lying in ``(1/gcd(b, n)) Z``.

    With ``irreducible`` set, rationals whose reduced denominator is a prime
    power are dropped.  ``curve`` needs ``degree`` and ``singular_points``
    (each with a ``type``).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    g = gcd(curve.degree, n)
    values: set[Fraction] = set()
    for pt in curve.singular_points:
        values.update(j.value for j in jumping_numbers(pt.type))
    out = [x for x in values if (x * g).denominator == 1]
    if irreducible:
        out = [x for x in out if not is_prime_power(x.denominator)]
    return sorted(out)
