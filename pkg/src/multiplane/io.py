"""JSON formats for clusters, covering data, curves and reports.

Rationals are written as ``"num/den"`` strings; keys are sorted so equal
values serialize to identical bytes.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .covering import Branch, CoveringData, DivisorClass, Epimorphism
from .enriques import Cluster, ClusterError, GriddedTree, build_tpq_tree
from .irregularity import IrregularityReport, Term
from .linsys.curves import line_arrangement
from .linsys.geometry import BranchCurve, LocalFrame, ProjectivePoint, SingularPoint
from .linsys.polys import XY, XYZ, PolynomialError, polynomial_from_json, polynomial_to_json
from .multiplier import SingularityType, singularity_params


class FormatError(ValueError):
    """Malformed input; the message names the offending field."""


def dumps(obj: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def rational(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text, where: str) -> Fraction:
    if isinstance(text, bool):
        raise FormatError(f"{where}: expected a rational, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise FormatError(f"{where}: rationals are written as \"num/den\" strings, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"{where}: malformed rational {text!r}") from None


def _field(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    if key not in obj:
        raise FormatError(f"{where}: missing field {key!r}")
    return obj[key]


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"{where}: expected an integer, got {x!r}")
    return x


# clusters ---------------------------------------------------------------

def cluster_to_json(cluster: Cluster) -> dict:
    tree = cluster.tree
    out = {"vertices": len(tree), "arcs": [list(a) for a in tree.arcs],
           "weights": list(cluster.weights)}
    if tree.segments is not None:
        out["segments"] = list(tree.segments)
    return out


def cluster_from_json(obj: dict) -> Cluster:
    weights = [_int(w, f"weights[{i}]") for i, w in
               enumerate(_field(obj, "weights", "cluster"))]
    if "p" in obj and "q" in obj:
        tree = build_tpq_tree(_int(obj["p"], "p"), _int(obj["q"], "q"))
    else:
        n = _int(_field(obj, "vertices", "cluster"), "vertices")
        arcs = []
        for i, arc in enumerate(_field(obj, "arcs", "cluster")):
            if not (isinstance(arc, list) and len(arc) == 3):
                raise FormatError(f"arcs[{i}]: expected [parent, child, kind]")
            arcs.append((_int(arc[0], f"arcs[{i}][0]"), _int(arc[1], f"arcs[{i}][1]"), arc[2]))
        try:
            tree = GriddedTree.from_arcs(n, arcs, obj.get("segments"))
        except ClusterError as exc:
            raise FormatError(f"cluster: {exc}") from None
    try:
        return Cluster(tree, tuple(weights))
    except ClusterError as exc:
        raise FormatError(f"cluster: {exc}") from None


# covering data ----------------------------------------------------------

def _divisor(obj, where: str) -> DivisorClass:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected a symbol -> integer map")
    return DivisorClass({k: _int(v, f"{where}.{k}") for k, v in obj.items()})


def covering_to_json(data: CoveringData) -> dict:
    return {
        "n": data.n,
        "L": data.L.to_dict(),
        "branches": [{"m": br.f.m, "value": br.f.value, "divisor": br.divisor.to_dict()}
                     for br in data.branches],
        "relations": {k: v.to_dict() for k, v in sorted(data.relations.items())},
    }


def covering_from_json(obj: dict) -> CoveringData:
    n = _int(_field(obj, "n", "covering"), "n")
    L = _divisor(_field(obj, "L", "covering"), "L")
    branches = []
    for i, br in enumerate(_field(obj, "branches", "covering")):
        where = f"branches[{i}]"
        f = Epimorphism(_int(_field(br, "m", where), f"{where}.m"),
                        _int(_field(br, "value", where), f"{where}.value"))
        branches.append(Branch(f, _divisor(_field(br, "divisor", where), f"{where}.divisor")))
    relations = {k: _divisor(v, f"relations.{k}") for k, v in obj.get("relations", {}).items()}
    return CoveringData(n, L, tuple(branches), relations)


# curves -------------------------------------------------------------------

def type_to_json(t: SingularityType):
    return {"p": t.p, "q": t.q, "d": t.d}


def _poly(obj, ctx, where):
    try:
        return polynomial_from_json(obj, ctx)
    except (PolynomialError, ValueError) as exc:
        raise FormatError(f"{where}: {exc}") from None


def curve_to_json(curve: BranchCurve) -> dict:
    out: dict[str, Any] = {
        "degree": curve.degree,
        "singular_points": [
            {"location": [rational(c) for c in pt.location.coords],
             "type": type_to_json(pt.type),
             "frame": {"u": polynomial_to_json(pt.frame.u),
                       "v": polynomial_to_json(pt.frame.v)}}
            for pt in curve.singular_points],
    }
    if curve.polynomial is not None:
        out["polynomial"] = polynomial_to_json(curve.polynomial)
    if curve.lines is not None:
        out["lines"] = [polynomial_to_json(l) for l in curve.lines]
    return out


def curve_from_json(obj: dict, check_jets: bool = True) -> BranchCurve:
    """Read a curve; a file holding only ``lines`` describes an arrangement."""
    if "lines" in obj and "singular_points" not in obj:
        lines = [_poly(l, XYZ, f"lines[{i}]") for i, l in enumerate(obj["lines"])]
        return line_arrangement(lines, check_jets=check_jets).curve
    degree = _int(_field(obj, "degree", "curve"), "degree")
    points = []
    for i, sp in enumerate(_field(obj, "singular_points", "curve")):
        where = f"singular_points[{i}]"
        loc = _field(sp, "location", where)
        if not (isinstance(loc, list) and len(loc) == 3):
            raise FormatError(f"{where}.location: expected three rationals")
        coords = tuple(parse_rational(c, f"{where}.location[{k}]") for k, c in enumerate(loc))
        try:
            t = singularity_params(_field(sp, "type", where))
        except (ValueError, KeyError, TypeError) as exc:
            raise FormatError(f"{where}.type: {exc}") from None
        frame = _field(sp, "frame", where)
        u = _poly(_field(frame, "u", f"{where}.frame"), XY, f"{where}.frame.u")
        v = _poly(_field(frame, "v", f"{where}.frame"), XY, f"{where}.frame.v")
        points.append(SingularPoint(ProjectivePoint(coords), t, LocalFrame(u, v)))
    poly = obj.get("polynomial")
    lines = obj.get("lines")
    return BranchCurve(
        degree, tuple(points),
        None if poly is None else _poly(poly, XYZ, "polynomial"),
        check_jets=check_jets,
        lines=None if lines is None else tuple(_poly(l, XYZ, f"lines[{i}]")
                                               for i, l in enumerate(lines)))


# reports -------------------------------------------------------------------

def report_to_json(report: IrregularityReport) -> dict:
    return {
        "n": report.n,
        "b": report.b,
        "q": report.q,
        "terms": [{"xi": rational(t.xi), "degree": t.degree, "degZ": t.colength,
                   "h0": t.h0, "h1": t.h1} for t in report.terms],
        "flags": {"irreducible": report.irreducible, "transversality": report.transversality},
    }


def report_from_json(obj: dict) -> IrregularityReport:
    terms = tuple(Term(parse_rational(t["xi"], "terms.xi"), t["degree"], t["degZ"], t["h0"], t["h1"])
                  for t in _field(obj, "terms", "report"))
    flags = obj.get("flags", {})
    report = IrregularityReport(obj["n"], obj["b"], terms, flags.get("irreducible", False),
                                flags.get("transversality", "assumed"))
    if report.q != obj.get("q", report.q):
        raise FormatError("report: q differs from the sum of the terms")
    return report
