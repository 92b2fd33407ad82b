"""Property-based checks over random exact inputs."""

import random
from fractions import Fraction

import hypothesis as hyp
import hypothesis.strategies as hys

from latbool.arrangement import exact_intersection
from latbool.decomposition import ConvexCell, reflex_vertical_decomposition
from latbool.exact_core import (
    COLLINEAR,
    Pt,
    Ring,
    orientation,
    pt,
    segment_intersection,
)
from latbool.fixtures import random_region
from latbool.oracle import brute_nvlp
from latbool.rounding import nvlp

rationals = hys.fractions(min_value=-50, max_value=50,
                          max_denominator=16)
points = hys.tuples(rationals, rationals).map(lambda t: pt(*t))


@hyp.given(points, points, points)
def test_orientation_antisymmetry(a, b, c):
    assert orientation(a, b, c) == -orientation(a, c, b)


@hyp.given(points, points, points,
           hys.integers(-100, 100), hys.integers(-100, 100))
def test_orientation_translation_invariant(a, b, c, dx, dy):
    shift = lambda p: pt(p.x + dx, p.y + dy)
    assert orientation(a, b, c) == orientation(shift(a), shift(b), shift(c))


@hyp.given(points, points, points, points)
def test_segment_intersection_symmetric(a, b, c, d):
    hyp.assume(a != b and c != d)
    h1 = segment_intersection((a, b), (c, d))
    h2 = segment_intersection((c, d), (a, b))
    n1 = set() if h1 is None else ({h1} if isinstance(h1, Pt) else set(h1))
    n2 = set() if h2 is None else ({h2} if isinstance(h2, Pt) else set(h2))
    assert n1 == n2


@hyp.given(points, points, points)
def test_intersection_point_is_on_both(a, b, c):
    hyp.assume(orientation(a, b, c) != COLLINEAR)
    # segments from a to b and from a to c always meet at a
    h = segment_intersection((a, b), (a, c))
    assert h == a


@hyp.given(hys.integers(0, 10 ** 6))
def test_nvlp_matches_brute_on_random_cells(seed):
    rng = random.Random(seed)
    ax, ay = rng.randint(0, 20), rng.randint(0, 20)
    bx, by = rng.randint(0, 20), rng.randint(0, 20)
    cx, cy = rng.randint(0, 20), rng.randint(0, 20)
    a, b, c = Pt(ax, ay), Pt(bx, by), Pt(cx, cy)
    hyp.assume(orientation(a, b, c) != COLLINEAR)
    if orientation(a, b, c) == -1:
        a, b = b, a
    # replace one vertex by a rational point on an edge: still convex
    t = Fraction(rng.randint(1, 7), 8)
    p = pt(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
    ring = Ring((p, b, c))
    if ring.is_degenerate:
        hyp.assume(False)
    cell = ConvexCell(ring, ring.pts)
    assert nvlp(p, cell) == brute_nvlp(p, ring)


@hyp.settings(max_examples=25, deadline=None)
@hyp.given(hys.integers(0, 10 ** 6))
def test_random_intersections_round_trip_membership(seed):
    rng = random.Random(seed)
    a = random_region(rng, span=12)
    b = random_region(rng, span=12)
    x = exact_intersection(a, b)
    if x.is_empty:
        return
    # decomposition partitions the area exactly
    d = reflex_vertical_decomposition(x)
    assert sum(c.ring.signed_area2 for c in d.cells) == \
        sum(r.signed_area2 for r in x.region.rings)
