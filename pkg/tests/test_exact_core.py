from fractions import Fraction

import pytest

from latbool.exact_core import (
    BOUNDARY,
    COLLINEAR,
    EXTERIOR,
    INTERIOR,
    LEFT,
    MarginError,
    PreconditionError,
    RIGHT,
    Pt,
    Region,
    Ring,
    UniverseBox,
    complement_in_universe,
    is_visible,
    orientation,
    point_in_region,
    pt,
    region_ok,
    segment_intersection,
    squared_distance,
    universe_for,
    validate_region,
    winding_number,
)

from conftest import square


def test_orientation_basis():
    assert orientation(Pt(0, 0), Pt(1, 0), Pt(0, 1)) == LEFT
    assert orientation(Pt(0, 0), Pt(1, 1), Pt(2, 2)) == COLLINEAR
    assert orientation(Pt(0, 0), Pt(0, 1), Pt(1, 1)) == RIGHT


def test_orientation_rational():
    a = pt(Fraction(1, 3), Fraction(1, 7))
    b = pt(Fraction(2, 3), Fraction(5, 7))
    c = pt(1, 0)
    assert orientation(a, b, c) == -orientation(a, c, b)


def test_segment_intersection_point():
    hit = segment_intersection((Pt(0, 0), Pt(5, 5)), (Pt(0, 5), Pt(5, 0)))
    assert hit == pt(Fraction(5, 2), Fraction(5, 2))


def test_segment_intersection_parallel_disjoint():
    assert segment_intersection((Pt(0, 0), Pt(1, 0)),
                                (Pt(0, 2), Pt(1, 2))) is None


def test_segment_intersection_collinear_overlap():
    hit = segment_intersection((Pt(0, 0), Pt(4, 0)), (Pt(2, 0), Pt(6, 0)))
    assert hit == (Pt(2, 0), Pt(4, 0))


def test_segment_intersection_endpoint_touch():
    hit = segment_intersection((Pt(0, 0), Pt(2, 0)), (Pt(2, 0), Pt(2, 5)))
    assert hit == Pt(2, 0)


def test_point_in_region(unit_square):
    assert point_in_region(pt(Fraction(1, 2), Fraction(1, 2)),
                           unit_square) == INTERIOR
    assert point_in_region(pt(1, Fraction(1, 2)), unit_square) == BOUNDARY
    assert point_in_region(Pt(2, 2), unit_square) == EXTERIOR


def test_point_in_region_with_hole():
    region = Region((square(0, 0, 6, 6), square(2, 2, 4, 4).reversed_()))
    assert point_in_region(Pt(1, 1), region) == INTERIOR
    assert point_in_region(Pt(3, 3), region) == EXTERIOR
    assert point_in_region(Pt(2, 3), region) == BOUNDARY


def test_winding_matches_parity_on_fixtures(hand_pairs):
    import random

    rng = random.Random(7)
    regions = [r for _, a, b in hand_pairs for r in (a, b)]
    dense = regions[:3]
    for region in regions:
        x0, y0, x1, y1 = region.bbox
        n = 1000 if region in dense else 60
        for _ in range(n):
            q = pt(Fraction(rng.randint(8 * int(x0), 8 * int(x1)), 8),
                   Fraction(rng.randint(8 * int(y0), 8 * int(y1)), 8))
            c = point_in_region(q, region)
            if c == BOUNDARY:
                continue
            assert (winding_number(q, region) != 0) == (c == INTERIOR)


def test_is_visible_convex(unit_square):
    assert is_visible(Pt(0, 0), Pt(1, 1), unit_square)
    assert is_visible(Pt(0, 0), Pt(0, 0), unit_square)


def test_is_visible_blocked_by_notch():
    # U-shape: prongs at x in [0,1] and [3,4], notch between
    u = Region((Ring((Pt(0, 0), Pt(4, 0), Pt(4, 3), Pt(3, 3), Pt(3, 1),
                      Pt(1, 1), Pt(1, 3), Pt(0, 3))),))
    assert region_ok(u)
    assert not is_visible(pt(Fraction(1, 2), 3), pt(Fraction(7, 2), 3), u)
    assert is_visible(Pt(0, 0), Pt(4, 0), u)


def test_is_visible_precondition(unit_square):
    with pytest.raises(PreconditionError):
        is_visible(Pt(0, 0), Pt(9, 9), unit_square)


def test_complement_trivial():
    box = UniverseBox(Pt(0, 0), Pt(10, 10))
    full = complement_in_universe(Region(()), box)
    assert full.canonical() == Region((box.ring(),)).canonical()
    assert complement_in_universe(full, box, margin=0).is_empty


def test_complement_annulus():
    box = UniverseBox(Pt(0, 0), Pt(10, 10))
    inner = Region((square(4, 4, 5, 5),))
    comp = complement_in_universe(inner, box)
    assert len(comp.rings) == 2
    assert point_in_region(pt(Fraction(9, 2), Fraction(9, 2)), comp) == EXTERIOR
    assert point_in_region(Pt(1, 1), comp) == INTERIOR


def test_complement_involution(hand_pairs):
    for _, a, b in hand_pairs:
        box = universe_for([a, b])
        for r in (a, b):
            twice = complement_in_universe(
                complement_in_universe(r, box), box, margin=0)
            assert twice.canonical() == r.canonical()


def test_complement_margin_error():
    box = UniverseBox(Pt(0, 0), Pt(4, 4))
    with pytest.raises(MarginError):
        complement_in_universe(Region((square(1, 1, 2, 2),)), box)


def test_squared_distance_cases():
    assert squared_distance(Pt(0, 1), (Pt(-1, 0), Pt(1, 0))) == 1
    assert squared_distance(Pt(2, 0), (Pt(-1, 0), Pt(1, 0))) == 1
    assert squared_distance(Pt(1, 1), (Pt(0, 0), Pt(2, 2))) == 0
    d = squared_distance(pt(Fraction(1, 2), 1), (Pt(0, 0), Pt(1, 0)))
    assert d == 1 and isinstance(d, int)


def test_validate_bowtie():
    bow = Region((Ring((Pt(0, 0), Pt(2, 2), Pt(2, 0), Pt(0, 2))),))
    kinds = {v.kind for v in validate_region(bow) if v.severity == "error"}
    assert "proper-crossing" in kinds


def test_validate_vertex_on_edge_ok():
    a = square(0, 0, 4, 4)
    tri = Ring((Pt(4, 1), Pt(6, 0), Pt(6, 2)))
    region = Region((a, tri)).canonical()
    assert region_ok(region)


def test_validate_hole_outside_parent():
    bad = Region((square(0, 0, 2, 2), square(5, 5, 6, 6).reversed_()))
    kinds = {v.kind for v in validate_region(bad) if v.severity == "error"}
    assert kinds  # orientation/nesting violation reported


def test_validate_degenerate_flagged_not_error():
    slit = Region((square(0, 0, 4, 4), Ring((Pt(10, 0), Pt(11, 0)))))
    vio = validate_region(slit)
    assert any(v.severity == "degenerate" for v in vio)
    assert region_ok(slit)


def test_ring_canonical_collapses_collinear():
    r = Ring((Pt(0, 0), Pt(1, 0), Pt(2, 0), Pt(2, 2), Pt(0, 2))).canonical()
    assert r.pts == (Pt(0, 0), Pt(2, 0), Pt(2, 2), Pt(0, 2))


def test_ring_canonical_keeps_reversal_spur():
    r = Ring((Pt(0, 0), Pt(4, 0), Pt(4, 2), Pt(6, 2), Pt(4, 2), Pt(4, 4),
              Pt(0, 4))).canonical()
    assert Pt(6, 2) in r.pts
    assert r.collapse_spurs().pts == Ring(
        (Pt(0, 0), Pt(4, 0), Pt(4, 4), Pt(0, 4))).canonical().pts
