"""Building data of cyclic coverings and their normalization.

A covering of degree ``n`` is described by the class ``L`` attached to a
fixed generator ``chi`` of the character group and by branch divisors
``B_f``, one for each epimorphism ``f`` onto a cyclic group ``Z/m_f``.
Since ``chi`` is fixed, ``f`` is recorded as ``(m_f, f(chi))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, Sequence


class CoveringError(ValueError):
    pass


class DivisorClass(Mapping[str, int]):
    """Finitely supported integer combination of named classes."""

    __slots__ = ("_items",)

    def __init__(self, coefficients: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        acc: dict[str, int] = {}
        for sym, c in items:
            if not isinstance(sym, str) or not sym:
                raise TypeError(f"basis symbols are non-empty strings, got {sym!r}")
            if int(c) != c:
                raise TypeError(f"coefficient of {sym} is not an integer: {c!r}")
            acc[sym] = acc.get(sym, 0) + int(c)
        self._items = tuple(sorted((s, c) for s, c in acc.items() if c))

    @classmethod
    def of(cls, symbol: str, coefficient: int = 1) -> "DivisorClass":
        return cls({symbol: coefficient})

    def __getitem__(self, sym: str) -> int:
        for s, c in self._items:
            if s == sym:
                return c
        return 0

    def __contains__(self, sym) -> bool:
        return any(s == sym for s, _ in self._items)

    def __iter__(self):
        return (s for s, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self) -> int:
        return hash(self._items)

    def __eq__(self, other) -> bool:
        if isinstance(other, DivisorClass):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self == DivisorClass(other)
        if other == 0:
            return not self._items
        return NotImplemented

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(list(self._items) + list(_as_class(other)._items))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-1) * _as_class(other)

    def __neg__(self) -> "DivisorClass":
        return (-1) * self

    def __mul__(self, k: int) -> "DivisorClass":
        if int(k) != k:
            raise TypeError("divisor classes scale by integers only")
        return DivisorClass((s, int(k) * c) for s, c in self._items)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self._items

    def is_effective(self) -> bool:
        return all(c >= 0 for _, c in self._items)

    def to_dict(self) -> dict[str, int]:
        return dict(self._items)

    def substitute(self, relations: Mapping[str, "DivisorClass"]) -> "DivisorClass":
        """Replace symbols by their classes until none of ``relations`` remains."""
        out = self
        for _ in range(len(relations) + 1):
            hit = [s for s in out if s in relations]
            if not hit:
                return out
            acc = DivisorClass((s, c) for s, c in out._items if s not in relations)
            for s in hit:
                acc = acc + out[s] * relations[s]
            out = acc
        raise CoveringError("relations are cyclic")

    def __str__(self) -> str:
        if not self._items:
            return "0"
        parts = []
        for s, c in self._items:
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign} {mag}{s}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"DivisorClass({self.to_dict()!r})"


ZERO = DivisorClass()


def _as_class(x) -> DivisorClass:
    if isinstance(x, DivisorClass):
        return x
    if isinstance(x, Mapping):
        return DivisorClass(x)
    if x == 0:
        return ZERO
    raise TypeError(f"not a divisor class: {x!r}")


@dataclass(frozen=True, order=True)
class Epimorphism:
    """Character-group epimorphism onto ``Z/m`` sending ``chi`` to ``value``."""

    m: int
    value: int

    def __post_init__(self):
        if self.m < 2:
            raise CoveringError(f"target order must be at least 2, got {self.m}")
        if not 1 <= self.value < self.m or gcd(self.value, self.m) != 1:
            raise CoveringError(f"{self.value} does not generate Z/{self.m}")

    def at(self, k: int) -> int:
        """``f(chi^k)`` as an integer in ``[0, m)``."""
        return (k * self.value) % self.m


@dataclass(frozen=True)
class Branch:
    f: Epimorphism
    divisor: DivisorClass

    def __post_init__(self):
        object.__setattr__(self, "divisor", _as_class(self.divisor))
        if not self.divisor.is_effective():
            raise CoveringError(f"branch divisor {self.divisor} is not effective")


def _merge(branches: Iterable[Branch]) -> tuple[Branch, ...]:
    acc: dict[Epimorphism, DivisorClass] = {}
    for br in branches:
        acc[br.f] = acc.get(br.f, ZERO) + br.divisor
    return tuple(Branch(f, d) for f, d in sorted(acc.items()) if not d.is_zero())


@dataclass(frozen=True)
class CoveringData:
    """Building data ``(L, {B_f})`` of a cyclic covering of degree ``n``.

    ``relations`` lists linear equivalences (symbol -> class) used only to
    check ``n L = sum (n / m_f) f(chi) B_f``.
    """

    n: int
    L: DivisorClass
    branches: tuple[Branch, ...]
    relations: Mapping[str, DivisorClass] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise CoveringError("degree must be positive")
        object.__setattr__(self, "L", _as_class(self.L))
        object.__setattr__(self, "branches", _merge(self.branches))
        object.__setattr__(self, "relations",
                           {k: _as_class(v) for k, v in dict(self.relations).items()})
        for br in self.branches:
            if self.n % br.f.m:
                raise CoveringError(f"Z/{br.f.m} is not a quotient of Z/{self.n}")
        seen: set[str] = set()
        for br in self.branches:
            overlap = seen & set(br.divisor)
            if overlap:
                raise CoveringError(f"{sorted(overlap)} appear in several branch divisors")
            seen |= set(br.divisor)
        defect = self.eq_n_defect()
        if not defect.is_zero():
            raise CoveringError(f"n L differs from the branch sum by {defect}")

    def branch_sum(self) -> DivisorClass:
        out = ZERO
        for br in self.branches:
            out = out + (self.n // br.f.m) * br.f.value * br.divisor
        return out

    def eq_n_defect(self) -> DivisorClass:
        """``n L - sum (n/m_f) f(chi) B_f`` after substituting the relations."""
        return (self.n * self.L - self.branch_sum()).substitute(self.relations)

    def branch(self, f: Epimorphism) -> DivisorClass:
        for br in self.branches:
            if br.f == f:
                return br.divisor
        return ZERO

    def is_normal(self) -> bool:
        return all(c == 1 for br in self.branches for c in br.divisor.values())


def multiple_plane_data(b: int, n: int) -> CoveringData:
    """Data of ``z^n = f`` for a plane curve of degree ``b``.

    On the plane, ``L = beta H`` with ``beta = ceil(b/n)`` and
    ``n L = B + (beta n - b) H_inf``; both branch parts map ``chi`` to 1.
    """
    if b < 1 or n < 1:
        raise CoveringError("degree and covering order must be positive")
    relations = {"B": DivisorClass.of("H", b), "H_inf": DivisorClass.of("H")}
    if n == 1:
        # the trivial covering: no characters besides 1
        return CoveringData(1, ZERO, (), relations)
    beta = -(-b // n)
    divisor = DivisorClass({"B": 1, "H_inf": beta * n - b})
    return CoveringData(n, DivisorClass.of("H", beta),
                        (Branch(Epimorphism(n, 1), divisor),), relations)


def character_bundle(data: CoveringData, k: int) -> DivisorClass:
    """``L_{chi^k} = k L - sum_f floor(k f(chi) / m_f) B_f`` for ``0 <= k <= n``.

    At ``k = n`` the class vanishes once the relations are substituted.
    """
    if not 0 <= k <= data.n:
        raise CoveringError(f"k must lie in [0, {data.n}], got {k}")
    defect = data.eq_n_defect()
    if not defect.is_zero():
        raise CoveringError(f"data violates n L = sum of branches: {defect}")
    out = k * data.L
    for br in data.branches:
        out = out - (k * br.f.value // br.f.m) * br.divisor
    if k == data.n:
        assert out.substitute(data.relations).is_zero(), out
    return out


def epsilon_factor(f: Epimorphism, i: int, j: int) -> int:
    """0 when ``f(chi^i) + f(chi^j) < m_f``, else 1."""
    return 0 if f.at(i) + f.at(j) < f.m else 1


def _replace(data: CoveringData, L: DivisorClass, branches: list[Branch]) -> CoveringData:
    return CoveringData(data.n, L, tuple(branches), data.relations)


def normalization_step(data: CoveringData, f: Epimorphism, symbol: str) -> CoveringData:
    """One of the three steps along the component ``symbol`` of ``B_f``."""
    bf = data.branch(f)
    r = bf[symbol]
    if r < 2:
        raise CoveringError(f"{symbol} is not a multiple component of B_f")
    C = DivisorClass.of(symbol)
    rest = bf - r * C
    others = [br for br in data.branches if br.f != f]
    m, v = f.m, f.value
    if r >= m:
        q, r1 = divmod(r, m)
        return _replace(data, data.L - v * q * C, others + [Branch(f, rest + r1 * C)])
    d = gcd(r, m)
    if d > 1:
        q, v1 = divmod(v, m // d)
        f1 = Epimorphism(m // d, v1)
        return _replace(data, data.L - q * (r // d) * C,
                        others + [Branch(f, rest), Branch(f1, (r // d) * C)])
    q, v1 = divmod(r * v, m)
    return _replace(data, data.L - q * C,
                    others + [Branch(f, rest), Branch(Epimorphism(m, v1), C)])


def normalize(data: CoveringData) -> CoveringData:
    """Apply the normalization steps until every branch component is reduced."""
    for _ in range(10_000):
        target = next(((br.f, s) for br in data.branches
                       for s, c in br.divisor.items() if c > 1), None)
        if target is None:
            return data
        data = normalization_step(data, *target)
    raise RuntimeError("normalization did not terminate")


def key_formula(data: CoveringData, g: Epimorphism, symbol: str, k: int) -> DivisorClass:
    """Closed form of ``L'_{chi^k}`` after normalizing the single multiple
    component ``r C`` of ``B_g = r C + R``."""
    bg = data.branch(g)
    r = bg[symbol]
    C = DivisorClass.of(symbol)
    R = bg - r * C
    out = k * data.L - (k * r * g.value // g.m) * C - (k * g.value // g.m) * R
    for br in data.branches:
        if br.f != g:
            out = out - (k * br.f.value // br.f.m) * br.divisor
    return out


def exceptional_symbol(point: int, alpha: int) -> str:
    return f"E_{{{point},{alpha}}}"


def resolved_plane_bundle(b: int, n: int, coefficients: Sequence[Sequence[int]],
                          k: int) -> DivisorClass:
    """``ceil(kb/n) H - sum_P floor(k c_P / n) . E_P`` on the resolved plane.

    ``coefficients[i]`` holds the exceptional multiplicities of the pulled
    back branch curve at the ``i``-th singular point; symbols are
    ``E_{i,alpha}`` with both indices starting at 1.
    """
    if b < 1 or n < 1:
        raise CoveringError("degree and covering order must be positive")
    beta = -(-b // n)
    assert beta * k - (k * (beta * n - b)) // n == -(-k * b // n)
    out = DivisorClass.of("H", -(-k * b // n))
    for i, cs in enumerate(coefficients, start=1):
        for alpha, c in enumerate(cs, start=1):
            out = out - (k * c // n) * DivisorClass.of(exceptional_symbol(i, alpha))
    return out
