"""End-to-end acceptance checks.

Each test prints one ``PASS``/``FAIL`` line with its runtime and budget,
then asserts.  Run with ``pytest tests/test_acceptance.py -v``.
"""
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from math import gcd

import pytest

from multiplane.benchmarks import (
    CONIC,
    artal_flex_curve,
    conic_points,
    nine_line_arrangement,
    oka_conic_curve,
    oka_elliptic_curve,
    osculating_cubics_curve,
)
from multiplane.covering import character_bundle, key_formula, normalize
from multiplane.enriques import (
    Cluster,
    build_tpq_tree,
    minimal_cluster,
    satisfies_star,
    semigroup_pair,
    unload,
    unloaded_clusters_with_last,
)
from multiplane.irregularity import irregularity, scheme, triple_point_bound, twist
from multiplane.linsys import (
    FrameError,
    interpolating_curve,
    jet_check,
    line_arrangement,
    oka_curve,
    parse_polynomial,
)
from multiplane.linsys.conditions import conditions_matrix
from multiplane.linsys.polys import XYZ
from multiplane.multiplier import (
    SingularityType,
    jumping_numbers,
    jumping_numbers_oracle,
    jumping_set,
    multiplier_cluster,
    tilde_pair,
)

from test_covering import one_multiple
from test_linsys import random_point


@contextmanager
def criterion(number, title, budget, capsys):
    """Time the block; print PASS only if it finished without error within ``budget`` seconds."""
    start = time.perf_counter()
    ok, note = False, ""
    try:
        yield
        ok = True
    except AssertionError as exc:
        note = f" ({exc})" if str(exc) else ""
        raise
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < budget
        verdict = "PASS" if ok and within else "FAIL"
        with capsys.disabled():
            print(f"\n{verdict} {number}: {title} [{elapsed:.1f} s, budget {budget} s]{note}")
        if ok:
            assert within, f"took {elapsed:.1f} s, budget {budget} s"


def qs(curve, ns):
    return {n: irregularity(curve, n).q for n in ns}


def test_1_zariski(capsys):
    with criterion(1, "six cusps on a conic: q = 1 at n = 6, 12; 0 at n = 2..5", 5, capsys):
        curve = oka_conic_curve(3)
        assert qs(curve, [2, 3, 4, 5, 6, 12]) == {2: 0, 3: 0, 4: 0, 5: 0, 6: 1, 12: 1}


@pytest.mark.parametrize("m,budget", [(1, 30), (2, 30), (3, 300)])
def test_2_oka_conic(m, budget, capsys):
    n = 4 * m + 2
    with criterion(2, f"f^2 + g^{2 * m + 1}, n = {n}: q = {m}", budget, capsys):
        curve = oka_conic_curve(2 * m + 1)
        assert len(curve.singular_points) == n
        assert irregularity(curve, n).q == m


def test_3_oka_elliptic(capsys):
    with criterion(3, "f_3^4 + f_4^3 on y^2 = x^3 + 17, n = 12: q = 3", 600, capsys):
        curve = oka_elliptic_curve()
        assert len(curve.singular_points) == 12
        rep = irregularity(curve, 12)
        assert rep.q == 3
        assert all(t.h1 == 1 for t in rep.terms)


def test_4_oka_2_15(capsys):
    with criterion(4, "f^2 + g^15, n = 40: xi in {7/10, 9/10}, degrees 18, 24, q = 2", 600,
                   capsys):
        g = parse_polynomial(CONIC, XYZ)
        f = interpolating_curve(conic_points(30), 15, avoid=g, rng=random.Random(0))
        curve = oka_curve(2, 15, g, f, check_jets=False)
        affine = curve.affine_polynomial()
        for pt in random.Random(1).sample(curve.singular_points, 3):
            jet_check(affine, pt)
        xis = jumping_set(curve, 40)
        assert xis == [Fraction(7, 10), Fraction(9, 10)]
        assert [twist(xi, 30) for xi in xis] == [18, 24]
        t = SingularityType(2, 15, 1)
        # Z^[3] and Z^[6]: curvilinear clusters with 3 and 6 free points
        for xi, alpha in zip(xis, (3, 6)):
            k = multiplier_cluster(t, xi)
            assert k.weights == (1,) * alpha + (0,) * (len(k.weights) - alpha)
            assert all(kk == k for _, kk in scheme(curve, xi))
        rep = irregularity(curve, 40)
        assert [(t.degree, t.h1) for t in rep.terms] == [(18, 1), (24, 1)]
        assert rep.q == 2


def random_arrangement(rng):
    """At most 8 distinct lines, every point of multiplicity 3 or more finite and triple."""
    while True:
        count = rng.choice([3, 4, 5, 6, 6, 7, 8])
        lines = set()
        while len(lines) < count:
            a, b, c = (rng.randint(-2, 2) for _ in range(3))
            if (a, b) == (0, 0):
                continue
            g = gcd(gcd(a, b), c)
            sign = -1 if (a, b, c) < (0, 0, 0) else 1
            lines.add((sign * a // g, sign * b // g, sign * c // g))
        try:
            arr = line_arrangement(sorted(lines))
        except FrameError:
            continue
        if all(len(idx) == 3 for idx in arr.multiple_points.values()):
            return arr


def test_5_line_arrangements(capsys):
    with criterion(5, "nine lines (s = 1, 2): q = 1 iff 3 | n; bound on 100 arrangements",
                   60, capsys):
        for s in (Fraction(1), Fraction(2)):
            arr = nine_line_arrangement(s)
            assert len(arr.multiple_points) == (9 if s == 1 else 10)
            assert qs(arr.curve, range(2, 13)) == {n: int(n % 3 == 0) for n in range(2, 13)}
        rng = random.Random(2024)
        tight = 0
        for _ in range(100):
            arr = random_arrangement(rng)
            n = rng.choice([3, 6, 4, 9])
            q = irregularity(arr.curve, n).q
            bound = triple_point_bound(arr, n)
            assert q <= bound
            tight += q == bound
        assert tight > 0


def test_6_artal(capsys):
    with criterion(6, "cubic plus three flex tangents: q = 1 at n = 3; non-collinear q = 0",
                   30, capsys):
        assert irregularity(artal_flex_curve(), 3).q == 1
        other = osculating_cubics_curve()
        assert qs(other, [3, 6]) == {3: 0, 6: 0}


def types_up_to(bound):
    return [SingularityType(p, q, d) for d in range(1, bound + 1) for p in range(1, bound + 1)
            for q in range(p, bound + 1) if gcd(p, q) == 1 and d * p * q <= bound]


def test_7_oracle_equivalence(capsys):
    with criterion(7, "closed forms agree with brute force for dpq <= 60", 60, capsys):
        for t in types_up_to(60):
            jn = jumping_numbers(t)
            assert [j.value for j in jn] == jumping_numbers_oracle(t), t
            for j in jn:
                k = multiplier_cluster(t, j.value)
                for a, b in j.pairs:
                    _, pair = tilde_pair(t.p, t.q, a, b)
                    assert k == minimal_cluster(t.p, t.q, *pair), (t, a, b)


def test_8_minimality(capsys):
    with criterion(8, "chain criterion holds exactly for minimal clusters, pq <= 40", 120, capsys):
        total = 0
        for p in range(1, 41):
            for q in range(p, 41):
                if gcd(p, q) != 1 or p * q > 40:
                    continue
                tree = build_tpq_tree(p, q)
                top = 20 if p == 1 else min(2 * p * q + p + q, 40)
                for last in range(top + 1):
                    found = list(unloaded_clusters_with_last(tree, last))
                    if not found:
                        assert semigroup_pair(p, q, last) is None
                        continue
                    # larger ideal = componentwise smaller exceptional coefficients
                    low = tuple(min(c) for c in zip(*(k.exceptional for k in found)))
                    assert any(tuple(k.exceptional) == low for k in found), (p, q, last)
                    mc = minimal_cluster(p, q, *semigroup_pair(p, q, last))
                    assert tuple(mc.exceptional) == low
                    for k in found:
                        total += 1
                        assert bool(satisfies_star(k)) == (tuple(k.exceptional) == low), \
                            (p, q, k.weights)
        assert total > 100_000


def test_9_normalization(capsys):
    with criterion(9, "200 random normalizations satisfy the closed form for every k", 10,
                   capsys):
        checked = 0
        seed = 0
        while checked < 200:
            seed += 1
            data, r = one_multiple(seed)
            g = data.branches[0].f
            if data.branch(g)["C"] != r:
                continue
            out = normalize(data)
            assert out.is_normal()
            for k in range(1, data.n):
                assert character_bundle(out, k) == key_formula(data, g, "C", k), (seed, k)
            checked += 1


def test_10_unloading_invariance(capsys):
    with criterion(10, "50 random clusters: same row space before and after unloading", 120,
                   capsys):
        rng = random.Random(10)
        changed = 0
        for _ in range(50):
            p, q = rng.choice([(2, 3), (2, 5), (3, 5)])
            tree = build_tpq_tree(p, q)
            k = Cluster(tree, tuple(rng.randint(0, 3) for _ in tree.parents))
            pt = random_point(rng, SingularityType(p, q, 1))
            d = sum(k.weights) + 2
            before = conditions_matrix([(pt, k)], d)
            after = conditions_matrix([(pt, unload(k))], d)
            r = before.rank()
            assert r == after.rank() == before.stacked(after).rank()
            changed += unload(k) != k
        assert changed >= 10
