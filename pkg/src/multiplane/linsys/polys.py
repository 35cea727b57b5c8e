"""Exact polynomials over Q: contexts, parsing and (de)serialization."""
from __future__ import annotations

import ast
from fractions import Fraction
from typing import Mapping

import flint

XY = flint.fmpq_mpoly_ctx.get(("x", "y"), "lex")
XYZ = flint.fmpq_mpoly_ctx.get(("x", "y", "z"), "lex")
UV = flint.fmpq_mpoly_ctx.get(("u", "v"), "lex")

Poly = flint.fmpq_mpoly


class PolynomialError(ValueError):
    pass


def fq(x) -> flint.fmpq:
    """Exact rational from int, Fraction, fmpq or a ``"num/den"`` string."""
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, flint.fmpz):
        return flint.fmpq(x)
    if isinstance(x, bool):
        raise PolynomialError("booleans are not rationals")
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, str):
        x = Fraction(x.strip())
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    raise PolynomialError(f"not an exact rational: {x!r}")


def to_fraction(x) -> Fraction:
    x = fq(x)
    return Fraction(int(x.p), int(x.q))


def rational_str(x) -> str:
    f = to_fraction(x)
    return f"{f.numerator}/{f.denominator}"


_OPS = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
        ast.Mult: lambda a, b: a * b}


def parse_polynomial(text: str, ctx=XY) -> Poly:
    """Parse ``"x^2 - 1/3*y + 2"`` into ``ctx``.  Only ``+ - * / ^ **``,
    integer literals, parentheses and the variables of ``ctx`` are accepted;
    division is allowed by constants only."""
    names = {str(g): g for g in ctx.gens()}
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise PolynomialError(f"cannot parse polynomial {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) \
                and not isinstance(node.value, bool):
            return ctx.from_dict({(0,) * ctx.nvars(): node.value})
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise PolynomialError(f"unknown variable {node.id!r} in {text!r}")
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = ev(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            if type(node.op) in _OPS:
                return _OPS[type(node.op)](ev(node.left), ev(node.right))
            if isinstance(node.op, ast.Div):
                den = ev(node.right)
                if not den.is_constant() or den.is_zero():
                    raise PolynomialError(f"division by a non-constant in {text!r}")
                return ev(node.left) * (1 / fq(den.leading_coefficient()))
            if isinstance(node.op, ast.Pow):
                exp = node.right
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)
                        and exp.value >= 0):
                    raise PolynomialError(f"exponents must be non-negative integers in {text!r}")
                return ev(node.left) ** exp.value
        raise PolynomialError(f"unsupported syntax in polynomial {text!r}")

    return ev(tree)


def polynomial_from_json(obj, ctx=XY) -> Poly:
    """A polynomial given either as a string or as ``{"i,j[,k]": "num/den"}``."""
    if isinstance(obj, str):
        return parse_polynomial(obj, ctx)
    if isinstance(obj, Mapping):
        terms = {}
        for key, coeff in obj.items():
            exps = tuple(int(e) for e in str(key).split(","))
            if len(exps) != ctx.nvars() or min(exps) < 0:
                raise PolynomialError(f"bad monomial key {key!r}")
            terms[exps] = fq(coeff)
        return ctx.from_dict(terms)
    raise PolynomialError(f"cannot read a polynomial from {obj!r}")


def polynomial_to_json(poly: Poly) -> dict[str, str]:
    return {",".join(str(e) for e in m): rational_str(c)
            for m, c in sorted(zip(poly.monoms(), poly.coeffs()))}


def constant(ctx, value) -> Poly:
    return ctx.from_dict({(0,) * ctx.nvars(): fq(value)})


def is_homogeneous(form: Poly) -> bool:
    return len({sum(m) for m in form.monoms()}) <= 1


def dehomogenize(form: Poly) -> Poly:
    """``F(x, y, 1)``."""
    acc: dict[tuple[int, int], flint.fmpq] = {}
    for (i, j, _), c in zip(form.monoms(), form.coeffs()):
        acc[(i, j)] = acc.get((i, j), 0) + c
    return XY.from_dict(acc)


def homogenize(poly: Poly, degree: int | None = None) -> Poly:
    d = poly.total_degree() if degree is None else degree
    if not poly.is_zero() and poly.total_degree() > d:
        raise PolynomialError("degree too small to homogenize")
    return XYZ.from_dict({(i, j, d - i - j): c for (i, j), c in zip(poly.monoms(), poly.coeffs())})


def linear_form(a, b, c) -> Poly:
    x, y, z = XYZ.gens()
    return fq(a) * x + fq(b) * y + fq(c) * z


def evaluate(form: Poly, point) -> flint.fmpq:
    return form(*[fq(t) for t in point])
