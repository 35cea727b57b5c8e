import random
from fractions import Fraction
from math import gcd

import flint
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from multiplane.enriques import Cluster, ClusterError, build_tpq_tree, cluster_colength, unload
from multiplane.linsys import (
    BranchCurve,
    ConstructionError,
    FrameError,
    JetMismatch,
    LocalFrame,
    PolynomialError,
    ProjectivePoint,
    SingularPoint,
    cohomology,
    conditions_matrix,
    intersect,
    jet_check,
    line_arrangement,
    model_charts,
    oka_curve,
    parse_polynomial,
    realize_cluster,
    transversality_check,
)
from multiplane.linsys.curves import interpolating_curve
from multiplane.linsys.polys import (UV, XY, XYZ, dehomogenize, evaluate, homogenize, polynomial_from_json,
                                     polynomial_to_json)
from multiplane.linsys.series import Truncation, expand, invert_frame
from multiplane.multiplier import (SingularityType, jumping_numbers, multiplier_cluster,
                                   singularity_params)

NODE = SingularityType(1, 1, 2)


def P(text, ctx=XY):
    return parse_polynomial(text, ctx)


def reduced_point(x, y):
    """A point with the trivial one-vertex cluster of weight 1."""
    pt = SingularPoint(ProjectivePoint.affine(x, y), NODE,
                       LocalFrame(P(f"x - ({x})"), P(f"y - ({y})")))
    return pt, Cluster(build_tpq_tree(1, 1), (1,))


def sympy_rank(m):
    return sympy.Matrix([[sympy.Rational(int(c.p), int(c.q)) for c in row]
                         for row in m.rows]).rank() if m.rows else 0


def random_frame(rng, x0, y0):
    while True:
        a, b, c, d = (rng.randint(-4, 4) for _ in range(4))
        if a * d - b * c:
            break
    e, f = rng.randint(-3, 3), rng.randint(-3, 3)
    X, Y = f"(x - ({x0}))", f"(y - ({y0}))"
    u = P(f"{a}*{X} + {b}*{Y} + {e}*{X}^2")
    v = P(f"{c}*{X} + {d}*{Y} + {f}*{X}*{Y}")
    return LocalFrame(u, v)


def random_point(rng, t):
    x0 = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    y0 = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return SingularPoint(ProjectivePoint.affine(x0, y0), t, random_frame(rng, x0, y0))


# points and frames ------------------------------------------------------------------

def test_projective_point_normalized():
    assert ProjectivePoint((2, 4, 2)).coords == (1, 2, 1)
    assert ProjectivePoint((3, 6, 0)).coords == (Fraction(1, 2), 1, 0)
    assert not ProjectivePoint((1, 0, 0)).is_finite
    with pytest.raises(FrameError):
        ProjectivePoint((1, 0, 0)).xy()
    with pytest.raises(ValueError):
        ProjectivePoint((0, 0, 0))


def test_frame_checks():
    pt = ProjectivePoint.affine(1, 2)
    LocalFrame(P("x - 1"), P("y - 2 + (x-1)^2")).check_at(pt)
    with pytest.raises(FrameError):
        LocalFrame(P("x"), P("y - 2")).check_at(pt)
    with pytest.raises(FrameError):
        LocalFrame(P("x - 1"), P("2*x - 2 + (y-2)^2")).check_at(pt)


@given(st.integers(0, 2 ** 32))
@settings(max_examples=40)
def test_invert_frame(seed):
    rng = random.Random(seed)
    pt = random_point(rng, NODE)
    x0, y0 = pt.xy
    trunc = Truncation.total(6)
    X, Y = invert_frame(pt.frame.u, pt.frame.v, (x0, y0), trunc)
    # substituting back gives u and v up to the truncation
    assert expand(pt.frame.u, (x0, y0), X, Y, trunc) == P("u", UV)
    assert expand(pt.frame.v, (x0, y0), X, Y, trunc) == P("v", UV)


# charts ---------------------------------------------------------------------------------

@pytest.mark.parametrize("p,q", [(p, q) for p in range(1, 25) for q in range(p, 25)
                                 if gcd(p, q) == 1])
def test_chart_proximities_match_tree(p, q):
    tree = build_tpq_tree(p, q)
    charts = model_charts(p, q)
    assert len(charts) == len(tree)
    for v, chart in enumerate(charts):
        assert chart.proximate_to() == tuple(sorted(tree.proximate_to[v]))


@pytest.mark.parametrize("p,q,d", [(2, 3, 1), (3, 5, 1), (1, 3, 2), (2, 5, 1), (3, 7, 2),
                                   (4, 9, 1), (1, 1, 4)])
def test_chart_valuations_give_curve_coefficients(p, q, d):
    # the order of u^{dp} - v^{dq} along each exceptional curve
    t = SingularityType(p, q, d)
    for chart, c in zip(model_charts(p, q, d), t.curve_coefficients()):
        assert min(chart.valuation(d * p, 0), chart.valuation(0, d * q)) == c


def test_realize_examples():
    cusp = SingularPoint(ProjectivePoint.affine(0, 0), SingularityType(2, 3, 1),
                         LocalFrame(P("x"), P("y")))
    rc = realize_cluster(cusp, Cluster(build_tpq_tree(2, 3), (1, 0, 0)))
    assert rc.charts[0].matrix == ((1, 0), (0, 1))
    assert rc.conditions() == {(0, 0)}
    a5 = SingularPoint(ProjectivePoint.affine(0, 0), SingularityType(1, 3, 2),
                       LocalFrame(P("y"), P("x")))
    rc = realize_cluster(a5, multiplier_cluster(a5.type, Fraction(5, 6)))
    # second point on E_1 in the direction of u = 0: u = s t, v = t
    assert rc.charts[1].matrix == ((1, 1), (0, 1))
    assert rc.charts[1].axes == ("u=0", 0)
    assert rc.conditions() == {(0, 0), (0, 1)}


def test_realize_rejects():
    cusp = SingularPoint(ProjectivePoint.affine(0, 0), SingularityType(2, 3, 1),
                         LocalFrame(P("x"), P("y")))
    with pytest.raises(ClusterError):
        realize_cluster(cusp, Cluster(build_tpq_tree(1, 3), (1, 0, 0)))
    with pytest.raises(ClusterError):
        realize_cluster(cusp, Cluster(build_tpq_tree(2, 3), (1, 0, -1)))


@st.composite
def unloaded_clusters(draw):
    p = draw(st.integers(1, 5))
    q = draw(st.integers(p, 12).filter(lambda q: gcd(p, q) == 1))
    d = draw(st.integers(1, 3))
    tree = build_tpq_tree(p, q)
    w = draw(st.lists(st.integers(0, 4), min_size=len(tree), max_size=len(tree)))
    return SingularityType(p, q, d), unload(Cluster(tree, tuple(w)))


@given(unloaded_clusters())
@settings(max_examples=150)
def test_recursion_matches_staircase(tk):
    t, k = tk
    pt = SingularPoint(ProjectivePoint.affine(0, 0), t, LocalFrame(P("x"), P("y")))
    rc = realize_cluster(pt, k)
    assert rc.conditions() == rc.staircase()
    assert len(rc.conditions()) == cluster_colength(k)


# condition matrices ------------------------------------------------------------------------

def test_collinear_points():
    pts = [reduced_point(x, 2 * x + 1) for x in range(3)]
    m = conditions_matrix(pts, 1)
    assert m.rank() == 2 == sympy_rank(m)
    coh = cohomology(pts, 1)
    assert (coh.h0, coh.h1) == (1, 1)


def test_six_points_on_conic():
    pts = [reduced_point(t * t, t) for t in range(6)]
    m = conditions_matrix(pts, 2)
    assert m.rank() == 5 == sympy_rank(m)
    coh = cohomology(pts, 2)
    assert (coh.colength, coh.h0, coh.h1) == (6, 1, 1)


def test_empty_conditions():
    m = conditions_matrix([], 4)
    assert m.rows == () and m.rank() == 0
    for d in range(6):
        coh = cohomology([], d)
        assert (coh.h0, coh.h1) == ((d + 1) * (d + 2) // 2, 0)


def test_negative_twists():
    pts = [reduced_point(0, 0), reduced_point(1, 0)]
    assert (cohomology(pts, -1).h0, cohomology(pts, -1).h1) == (0, 2)
    assert cohomology(pts, -2).h1 == 2
    with pytest.raises(ValueError):
        cohomology(pts, -3)


@given(st.integers(0, 2 ** 32))
@settings(max_examples=30, deadline=None)
def test_rank_bounds_and_generic_equality(seed):
    rng = random.Random(seed)
    p, q = rng.choice([(2, 3), (1, 3), (2, 5), (3, 4), (1, 1)])
    t = SingularityType(p, q, rng.randint(1, 2))
    tree = build_tpq_tree(p, q)
    k = unload(Cluster(tree, tuple(rng.randint(0, 3) for _ in tree.parents)))
    pt = random_point(rng, t)
    for d in (0, 1, 3, sum(k.weights) + 3):
        m = conditions_matrix([(pt, k)], d)
        assert m.rank() <= min(len(m.rows), m.ncols, m.colength)
        coh = cohomology([(pt, k)], d)
        assert coh.h1 >= 0
        if coh.rank == coh.colength:
            assert coh.h1 == 0
    # a single cluster imposes independent conditions in large degree
    d = cluster_colength(k) + 1
    assert conditions_matrix([(pt, k)], d).rank() == cluster_colength(k)


def test_rank_matches_sympy_on_cusp_schemes():
    rng = random.Random(5)
    t = SingularityType(2, 5, 1)
    pts = [random_point(rng, t) for _ in range(3)]
    k = multiplier_cluster(t, Fraction(9, 10))
    for d in (2, 3, 4):
        m = conditions_matrix([(pt, k) for pt in pts], d)
        assert m.rank() == sympy_rank(m)


@given(st.integers(0, 2 ** 32))
@settings(max_examples=15, deadline=None)
def test_unloading_invariance(seed):
    rng = random.Random(seed)
    p, q = rng.choice([(2, 3), (2, 5), (3, 5)])
    tree = build_tpq_tree(p, q)
    k = Cluster(tree, tuple(rng.randint(-1, 3) for _ in tree.parents))
    pt = random_point(rng, SingularityType(p, q, 1))
    k_pos = Cluster(tree, tuple(max(w, 0) for w in k.weights))
    if k_pos != k:
        return
    d = sum(k.weights) + 2
    a = conditions_matrix([(pt, k)], d)
    b = conditions_matrix([(pt, unload(k))], d)
    assert a.rank() == b.rank() == a.stacked(b).rank()


@pytest.mark.parametrize("label", ["A_2", "A_5", "A_4", "A_9", "ordinary_4"])
def test_multiplier_schemes_nest(label):
    t = singularity_params(label)
    pt = random_point(random.Random(label), t)
    xis = [j.value for j in jumping_numbers(t)]
    d = 8
    for lo, hi in zip(xis, xis[1:]):
        a = conditions_matrix([(pt, multiplier_cluster(t, lo))], d)
        b = conditions_matrix([(pt, multiplier_cluster(t, hi))], d)
        assert a.stacked(b).rank() == b.rank() >= a.rank()


# jets ------------------------------------------------------------------------------------------

def test_jet_check_accepts():
    cusp = SingularPoint(ProjectivePoint.affine(1, 1), SingularityType(2, 3, 1),
                         LocalFrame(P("y - 1 - (x-1)^2"), P("x - 1")))
    jet_check(P("(y - 1 - (x-1)^2)^2 - (x-1)^3 + (x-1)^4*y"), cusp)
    tac = SingularPoint(ProjectivePoint.affine(0, 0), SingularityType(1, 2, 2),
                        LocalFrame(P("y"), P("x")))
    jet_check(P("y^2 - x^4"), tac)
    triple = SingularPoint(ProjectivePoint.affine(0, 0), SingularityType(1, 1, 3),
                           LocalFrame(P("x"), P("y")))
    jet_check(P("x*y*(x+y)"), triple)


@pytest.mark.parametrize("poly,pqd,frame", [
    ("y^2 - x^5", (2, 3, 1), ("y", "x")),       # an A_4, not a cusp
    ("y^2 - x^3", (2, 3, 1), ("x", "y")),       # frame swapped
    ("y^2 - x^4", (1, 3, 2), ("y", "x")),       # A_3 declared as A_5
    ("y^2 - x^6", (1, 2, 2), ("y", "x")),       # A_5 declared as A_3
    ("x^2*y", (1, 1, 3), ("x", "y")),           # non-reduced cone
    ("y^3 - x^4", (2, 3, 1), ("y", "x")),       # E_6 declared as cusp
])
def test_jet_check_rejects(poly, pqd, frame):
    pt = SingularPoint(ProjectivePoint.affine(0, 0), SingularityType(*pqd),
                       LocalFrame(P(frame[0]), P(frame[1])))
    with pytest.raises(JetMismatch):
        jet_check(P(poly), pt)


def test_branch_curve_checks():
    pt = SingularPoint(ProjectivePoint.affine(0, 0), SingularityType(2, 3, 1),
                       LocalFrame(P("y"), P("x")))
    BranchCurve(3, (pt,), P("y^2*z - x^3", XYZ))
    with pytest.raises(JetMismatch):
        BranchCurve(3, (pt,), P("y^2*z - x^3 - x^2*z", XYZ))
    BranchCurve(3, (pt,), P("y^2*z - x^3 - x^2*z", XYZ), check_jets=False)
    with pytest.raises(ValueError):
        BranchCurve(4, (pt,), P("y^2*z - x^3", XYZ))
    with pytest.raises(ValueError):
        BranchCurve(3, (pt, pt))


# constructions ------------------------------------------------------------------------------

def test_intersect_and_oka_zariski():
    conic = P("x*z - y^2", XYZ)
    pts = [ProjectivePoint((t * t, t, 1)) for t in range(6)]
    cubic = interpolating_curve(pts, 3, avoid=conic, rng=random.Random(1))
    assert sorted(intersect(conic, cubic), key=lambda p: p.coords) == \
        sorted(pts, key=lambda p: p.coords)
    curve = oka_curve(2, 3, conic, cubic)
    assert curve.degree == 6 and len(curve.singular_points) == 6
    assert all(pt.type == SingularityType(2, 3, 1) for pt in curve.singular_points)
    assert all(evaluate(conic, pt.location.coords) == 0 for pt in curve.singular_points)


def test_oka_2_5():
    conic = P("x*z - y^2", XYZ)
    pts = [ProjectivePoint((t * t, t, 1)) for t in range(10)]
    quintic = interpolating_curve(pts, 5, avoid=conic, rng=random.Random(2))
    curve = oka_curve(2, 5, conic, quintic)
    assert curve.degree == 10 and len(curve.singular_points) == 10
    assert {pt.type.label for pt in curve.singular_points} == {"A_4"}


def test_oka_rejects():
    conic = P("x*z - y^2", XYZ)
    with pytest.raises(ConstructionError):
        oka_curve(2, 4, conic, P("x^4 + z^4", XYZ))
    # the line x = 0 is tangent to the conic at (0:0:1)
    cubic_through_tangency = P("x*(x - z)*(x + z) + x*y*z", XYZ)
    with pytest.raises(ConstructionError):
        oka_curve(2, 3, conic, cubic_through_tangency)
    # irrational intersections
    with pytest.raises(ConstructionError):
        oka_curve(2, 3, P("x^2 + y^2 - 2*z^2", XYZ), P("x^3 - y*z^2", XYZ))


def test_line_arrangements():
    arr = line_arrangement([P("x", XYZ), P("y", XYZ), P("x + y", XYZ)])
    assert len(arr.curve.singular_points) == 1
    (pt,) = arr.curve.singular_points
    assert pt.type == SingularityType(1, 1, 3)
    assert [j.value for j in jumping_numbers(pt.type)] == [Fraction(2, 3)]
    assert arr.triple_counts == (1, 1, 1)
    general = line_arrangement([(1, 0, 1), (0, 1, 1), (1, 1, 3)])
    assert general.curve.singular_points == () and general.triple_counts == (0, 0, 0)
    with pytest.raises(ConstructionError):
        line_arrangement([(1, 0, 1), (2, 0, 2)])


def test_transversality():
    conic = BranchCurve(2, (), P("x*z - y^2", XYZ))
    assert transversality_check(conic, P("x + 2*y - 3*z", XYZ)) is True
    assert transversality_check(conic, P("x", XYZ)) is False
    assert transversality_check(BranchCurve(2, ()), P("x", XYZ)) is None
    cusp = SingularPoint(ProjectivePoint.affine(0, 0), SingularityType(2, 3, 1),
                         LocalFrame(P("y"), P("x")))
    cubic = BranchCurve(3, (cusp,), P("y^2*z - x^3", XYZ))
    assert transversality_check(cubic, P("x + y", XYZ)) is False
    assert transversality_check(cubic, P("x - z", XYZ)) is True


# polynomials ------------------------------------------------------------------------------------

def test_parser():
    f = P("x^2 - 1/3*y + 2")
    assert f(3, 3) == 10
    assert P("(x + y)**2") == P("x^2 + 2*x*y + y^2")
    assert P("-x/2")(2, 0) == -1
    for bad in ["x^y", "sin(x)", "2.5*x", "x/y", "w + 1", "x^-1", "x +"]:
        with pytest.raises(PolynomialError):
            P(bad)


@given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)),
                       st.fractions(max_denominator=50), max_size=6))
def test_polynomial_json_roundtrip(terms):
    f = XY.from_dict({m: flint.fmpq(c.numerator, c.denominator) for m, c in terms.items()})
    assert polynomial_from_json(polynomial_to_json(f)) == f
    assert dehomogenize(homogenize(f, 8)) == f
