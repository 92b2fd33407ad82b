"""Exact arithmetic primitives and the lattice-region data model.

Every coordinate is an arbitrary-precision integer or a reduced Fraction;
no float ever enters a predicate.  Closed-set semantics throughout: a point
"belongs" to a region when it lies in the interior or on the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Optional, Union

Scalar = Union[int, Fraction]

LEFT = 1
RIGHT = -1
COLLINEAR = 0

INTERIOR = "interior"
BOUNDARY = "boundary"
EXTERIOR = "exterior"


class PreconditionError(ValueError):
    """A documented operation precondition was violated."""


class MarginError(PreconditionError):
    """Region does not fit the universe box with the required margin."""


def _norm(v: Scalar) -> Scalar:
    """Canonicalize a scalar: integral Fractions become plain ints."""
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return int(v)
        return v
    if isinstance(v, int):
        return v
    raise TypeError(f"exact scalar required, got {type(v).__name__}")


class Pt(NamedTuple):
    """A plane point with exact coordinates (int when integral)."""

    x: Scalar
    y: Scalar

    @property
    def is_lattice(self) -> bool:
        return isinstance(self.x, int) and isinstance(self.y, int)


def pt(x: Scalar, y: Scalar) -> Pt:
    return Pt(_norm(x), _norm(y))


def lattice_pt(x: int, y: int) -> Pt:
    if not (isinstance(x, int) and isinstance(y, int)):
        raise TypeError("lattice point requires int coordinates")
    return Pt(x, y)


def cross(o: Pt, a: Pt, b: Pt) -> Scalar:
    """Exact 2x2 determinant of (a-o, b-o)."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def dot(o: Pt, a: Pt, b: Pt) -> Scalar:
    return (a.x - o.x) * (b.x - o.x) + (a.y - o.y) * (b.y - o.y)


def orientation(a: Pt, b: Pt, c: Pt) -> int:
    """Sign of the turn a->b->c: LEFT, RIGHT or COLLINEAR.  Never approximate."""
    d = cross(a, b, c)
    if d > 0:
        return LEFT
    if d < 0:
        return RIGHT
    return COLLINEAR


def _on_collinear_segment(a: Pt, b: Pt, p: Pt) -> bool:
    """For p collinear with a-b: is p within the closed segment?"""
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def point_on_segment(p: Pt, a: Pt, b: Pt) -> bool:
    if orientation(a, b, p) != COLLINEAR:
        return False
    return _on_collinear_segment(a, b, p)


def segment_intersection(
    s: tuple[Pt, Pt], t: tuple[Pt, Pt]
) -> Union[None, Pt, tuple[Pt, Pt]]:
    """Exact intersection of two non-degenerate closed segments.

    Returns None, a single Pt (includes endpoint touching), or the
    (Pt, Pt) overlap sub-segment for collinear overlapping input.
    """
    a, b = s
    c, d = t
    if a == b or c == d:
        raise PreconditionError("degenerate segment")

    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)

    if o1 == 0 and o2 == 0:
        # collinear: overlap interval by lexicographic order along the line
        lo1, hi1 = (a, b) if a <= b else (b, a)
        lo2, hi2 = (c, d) if c <= d else (d, c)
        lo = max(lo1, lo2)
        hi = min(hi1, hi2)
        if lo > hi:
            return None
        if lo == hi:
            return lo
        return (lo, hi)

    if o1 != o2 and o3 != o4:
        # includes proper crossings and endpoint-on-interior touches
        if o1 == 0 and _on_collinear_segment(a, b, c):
            return c
        if o2 == 0 and _on_collinear_segment(a, b, d):
            return d
        if o3 == 0 and _on_collinear_segment(c, d, a):
            return a
        if o4 == 0 and _on_collinear_segment(c, d, b):
            return b
        if o1 != 0 and o2 != 0 and o3 != 0 and o4 != 0:
            r = (b.x - a.x, b.y - a.y)
            sdir = (d.x - c.x, d.y - c.y)
            den = r[0] * sdir[1] - r[1] * sdir[0]
            u = ((c.x - a.x) * sdir[1] - (c.y - a.y) * sdir[0])
            x = a.x + Fraction(u, den) * r[0]
            y = a.y + Fraction(u, den) * r[1]
            return pt(x, y)
        return None

    # touch at an endpoint without sign change on one side
    if o1 == 0 and _on_collinear_segment(a, b, c):
        return c
    if o2 == 0 and _on_collinear_segment(a, b, d):
        return d
    if o3 == 0 and _on_collinear_segment(c, d, a):
        return a
    if o4 == 0 and _on_collinear_segment(c, d, b):
        return b
    return None


def hit_points(hit: Union[None, Pt, tuple[Pt, Pt]]) -> tuple[Pt, ...]:
    """Normalize a segment_intersection result to a tuple of points."""
    if hit is None:
        return ()
    if isinstance(hit, Pt):
        return (hit,)
    return hit


def segments_cross_properly(s: tuple[Pt, Pt], t: tuple[Pt, Pt]) -> bool:
    """True iff the segments intersect in one point interior to both."""
    a, b = s
    c, d = t
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    return o1 != 0 and o2 != 0 and o3 != 0 and o4 != 0 and o1 != o2 and o3 != o4


def squared_distance(p: Pt, seg: tuple[Pt, Pt]) -> Scalar:
    """Exact squared Euclidean distance from p to a closed segment.

    All sqrt(2) comparisons in the pipeline reduce to `squared_distance < 2`.
    """
    a, b = seg
    if a == b:
        raise PreconditionError("degenerate segment")
    abx, aby = b.x - a.x, b.y - a.y
    apx, apy = p.x - a.x, p.y - a.y
    ab2 = abx * abx + aby * aby
    t_num = apx * abx + apy * aby
    if t_num <= 0:
        return _norm(apx * apx + apy * apy)
    if t_num >= ab2:
        bpx, bpy = p.x - b.x, p.y - b.y
        return _norm(bpx * bpx + bpy * bpy)
    c = apx * aby - apy * abx
    return _norm(Fraction(c * c, ab2))


def squared_point_distance(p: Pt, q: Pt) -> Scalar:
    dx, dy = p.x - q.x, p.y - q.y
    return _norm(dx * dx + dy * dy)


# ---------------------------------------------------------------------------
# rings and regions


@dataclass(frozen=True)
class Ring:
    """A cyclic vertex list.  CCW rings bound filled area, CW rings holes.

    Degenerate (zero-area) rings are representable; they model unit-segment
    "pixels" and survive as flagged obstacles, never as ordinary area.
    """

    pts: tuple[Pt, ...]

    @cached_property
    def signed_area2(self) -> Scalar:
        a: Scalar = 0
        n = len(self.pts)
        for i in range(n):
            p, q = self.pts[i], self.pts[(i + 1) % n]
            a += p.x * q.y - q.x * p.y
        return _norm(a)

    @property
    def is_ccw(self) -> bool:
        return self.signed_area2 > 0

    @property
    def is_degenerate(self) -> bool:
        return self.signed_area2 == 0

    @cached_property
    def bbox(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        xs = [p.x for p in self.pts]
        ys = [p.y for p in self.pts]
        return (min(xs), min(ys), max(xs), max(ys))

    def edges(self) -> Iterator[tuple[Pt, Pt]]:
        n = len(self.pts)
        for i in range(n):
            yield self.pts[i], self.pts[(i + 1) % n]

    def reversed_(self) -> "Ring":
        return Ring(tuple(reversed(self.pts)))

    def canonical(self) -> "Ring":
        """Drop repeated/forward-collinear vertices, rotate to lex-min start.

        Exact reversals (out-and-back spurs) are preserved: they are genuine
        degenerate geometry, not representational noise.
        """
        pts = list(self.pts)
        # drop consecutive duplicates
        out: list[Pt] = []
        for p in pts:
            if not out or out[-1] != p:
                out.append(p)
        while len(out) > 1 and out[0] == out[-1]:
            out.pop()
        # collapse forward-collinear runs (keep reversals)
        changed = True
        while changed and len(out) >= 3:
            changed = False
            for i in range(len(out)):
                a = out[i - 1]
                b = out[i]
                c = out[(i + 1) % len(out)]
                if orientation(a, b, c) == COLLINEAR and dot(b, a, c) < 0:
                    # b is strictly between a and c going forward
                    del out[i]
                    changed = True
                    break
        if len(out) < 2:
            return Ring(tuple(out))
        start = min(range(len(out)), key=lambda i: tuple(out[i:] + out[:i]))
        return Ring(tuple(out[start:] + out[:start]))

    def collapse_spurs(self) -> "Ring":
        """Remove out-and-back reversal spurs (a->b->a patterns)."""
        out = list(self.pts)
        changed = True
        while changed and len(out) >= 2:
            changed = False
            for i in range(len(out)):
                a = out[i - 1]
                c = out[(i + 1) % len(out)]
                if a == c:
                    # drop the spur tip and one copy of the repeated vertex
                    j = (i + 1) % len(out)
                    for k in sorted({i, j}, reverse=True):
                        del out[k]
                    changed = True
                    break
        return Ring(tuple(out)).canonical()


@dataclass(frozen=True)
class Region:
    """A collection of oriented rings with nesting derived by containment."""

    rings: tuple[Ring, ...]

    @property
    def is_empty(self) -> bool:
        return not self.rings

    @cached_property
    def bbox(self) -> Optional[tuple[Scalar, Scalar, Scalar, Scalar]]:
        if not self.rings:
            return None
        boxes = [r.bbox for r in self.rings]
        return (min(b[0] for b in boxes), min(b[1] for b in boxes),
                max(b[2] for b in boxes), max(b[3] for b in boxes))

    def edges(self) -> Iterator[tuple[Pt, Pt]]:
        for r in self.rings:
            yield from r.edges()

    def edge_list(self) -> list[tuple[Pt, Pt]]:
        return list(self.edges())

    def vertex_positions(self) -> set[Pt]:
        return {p for r in self.rings for p in r.pts}

    def vertex_count(self) -> int:
        """Number of distinct vertices (the |P| of all size bounds)."""
        return len(self.vertex_positions())

    @cached_property
    def parents(self) -> tuple[Optional[int], ...]:
        """Index of the innermost ring strictly enclosing each ring."""
        n = len(self.rings)
        out: list[Optional[int]] = []
        for i in range(n):
            enclosing = [j for j in range(n)
                         if j != i and _ring_encloses(self.rings[j], self.rings[i])]
            if not enclosing:
                out.append(None)
            else:
                out.append(max(enclosing,
                               key=lambda j: _ring_nesting_depth(self, j)))
        return tuple(out)

    def canonical(self) -> "Region":
        rings = [r.canonical() for r in self.rings]
        rings = _retrace_rings([r for r in rings if len(r.pts) >= 2])
        rings.sort(key=lambda r: tuple(r.pts))
        return Region(tuple(rings))


def _next_out(v: Pt, back: tuple[Scalar, Scalar],
              outs: list[tuple[Pt, int]]) -> tuple[Pt, int]:
    """Outgoing edge continuing the face on the left of the arrival edge.

    Standard rotation rule: the largest counterclockwise angle, measured
    from the direction back to the previous vertex, keeps the traced face
    on the left.  An outgoing edge parallel to the way back (the doubled
    copy of a crack edge) ranks last; at a crack tip it is the only option
    and the trace correctly reverses.
    """
    rx, ry = back
    best: Optional[tuple[Pt, int]] = None
    best_cls: Optional[tuple[int, int]] = None  # (parallel?, angle half)
    for w, eid in outs:
        wx, wy = w.x - v.x, w.y - v.y
        c = rx * wy - ry * wx
        d = rx * wx + ry * wy
        if c == 0 and d > 0:
            cls = (1, 0)
        else:
            # half 0: angle in (0, pi]; half 1: angle in (pi, 2pi)
            cls = (0, 0 if (c > 0 or (c == 0 and d < 0)) else 1)
        if best is None:
            best, best_cls = (w, eid), cls
            continue
        assert best_cls is not None
        if cls[0] != best_cls[0]:
            if cls[0] < best_cls[0]:
                best, best_cls = (w, eid), cls
            continue
        if cls[0] == 1:
            continue
        if cls[1] != best_cls[1]:
            if cls[1] > best_cls[1]:
                best, best_cls = (w, eid), cls
            continue
        bx, by_ = best[0].x - v.x, best[0].y - v.y
        if bx * wy - by_ * wx > 0:  # same half: w is CCW of the current best
            best, best_cls = (w, eid), cls
    assert best is not None, "dangling vertex during boundary tracing"
    return best


def trace_cycles(directed: list[tuple[Pt, Pt]]) -> list[list[Pt]]:
    """Decompose interior-on-the-left directed edges into boundary cycles."""
    outs: dict[Pt, list[tuple[Pt, int]]] = {}
    for eid, (u, v) in enumerate(directed):
        outs.setdefault(u, []).append((v, eid))
    for v in outs:
        outs[v].sort(key=lambda t: (t[0], t[1]))
    used = [False] * len(directed)
    cycles: list[list[Pt]] = []
    order = sorted(range(len(directed)), key=lambda i: directed[i])
    for start in order:
        if used[start]:
            continue
        cycle: list[Pt] = []
        eid = start
        while not used[eid]:
            used[eid] = True
            u, v = directed[eid]
            cycle.append(u)
            back = (u.x - v.x, u.y - v.y)
            _, eid = _next_out(v, back, outs[v])
        assert eid == start, "boundary tracing did not close a cycle"
        cycles.append(cycle)
    return cycles


def _retrace_rings(rings: list[Ring]) -> list[Ring]:
    """Canonical ring structure: re-trace the directed edge set.

    Pinch vertices may be represented as one ring visiting twice or as two
    touching rings; the rotation rule picks one canonical decomposition.
    Falls back to the input when directed edges are not unique (then the
    region is invalid anyway and validation will say so).
    """
    directed: list[tuple[Pt, Pt]] = []
    for r in rings:
        for a, b in r.edges():
            if a != b:
                directed.append((a, b))
    if len(set(directed)) != len(directed):
        return rings
    try:
        cycles = trace_cycles(directed)
    except AssertionError:
        return rings
    out = [Ring(tuple(c)).canonical() for c in cycles]
    return [r for r in out if len(r.pts) >= 2]


def _ring_encloses(outer: Ring, inner: Ring) -> bool:
    """Does `outer` enclose `inner`'s area (boundaries not properly crossing)?

    Decided by the first boundary sample of `inner` that is off `outer`'s
    boundary; shared boundary pieces are skipped.
    """
    if outer.is_degenerate:
        return False
    for v in inner.pts:
        c = _point_in_ring(v, outer)
        if c != BOUNDARY:
            return c == INTERIOR
    for a, b in inner.edges():
        if a == b:
            continue
        m = pt(Fraction(a.x + b.x, 2), Fraction(a.y + b.y, 2))
        c = _point_in_ring(m, outer)
        if c != BOUNDARY:
            return c == INTERIOR
    return False


def _ring_nesting_depth(region: Region, idx: int) -> int:
    ring = region.rings[idx]
    depth = 0
    for j, other in enumerate(region.rings):
        if j == idx or other.is_degenerate:
            continue
        if _ring_encloses(other, ring):
            depth += 1
    return depth


def region_from_rings(rings: Iterable[Ring]) -> Region:
    return Region(tuple(rings)).canonical()


def _point_in_ring(p: Pt, ring: Ring) -> str:
    """Closed membership of p w.r.t. the area enclosed by one ring.

    Even-odd crossing parity with the half-open rule; doubled (crack)
    edges cancel, which is the intended reading for degenerate rings.
    """
    for a, b in ring.edges():
        if a == b:
            continue
        if point_on_segment(p, a, b):
            return BOUNDARY
    inside = False
    for a, b in ring.edges():
        if a == b:
            continue
        if a.y <= p.y < b.y:
            if cross(a, b, p) > 0:
                inside = not inside
        elif b.y <= p.y < a.y:
            if cross(b, a, p) > 0:
                inside = not inside
    return INTERIOR if inside else EXTERIOR


def _ring_probe_point(ring: Ring) -> Optional[Pt]:
    """A point of the closed area of the ring, strictly interior when the
    ring has area; for degenerate rings, a mid-edge point.

    Built from a mid-edge point and a vertical shot to the nearest other
    boundary hit: the half-way point lies strictly inside one adjacent face.
    """
    if len(ring.pts) < 2:
        return None
    a, b = ring.pts[0], ring.pts[1]
    if ring.is_degenerate:
        return pt(Fraction(a.x + b.x, 2), Fraction(a.y + b.y, 2))
    for a, b in ring.edges():
        if a.x == b.x:
            continue
        m = pt(Fraction(a.x + b.x, 2), Fraction(a.y + b.y, 2))
        others = [e for e in ring.edges() if e != (a, b)]
        above = [y for c, d in others for y in _vertical_line_hits(m.x, c, d)
                 if y > m.y]
        cand = (pt(m.x, Fraction(m.y + min(above), 2)) if above
                else pt(m.x, m.y + 1))
        if _point_in_ring(cand, ring) == INTERIOR:
            return cand
        below = [y for c, d in others for y in _vertical_line_hits(m.x, c, d)
                 if y < m.y]
        cand = (pt(m.x, Fraction(m.y + max(below), 2)) if below
                else pt(m.x, m.y - 1))
        if _point_in_ring(cand, ring) == INTERIOR:
            return cand
    return None


def region_interior_sample(region: Region, ring_idx: int) -> Optional[Pt]:
    """A point strictly interior to the region, adjacent to the given ring.

    Mid-edge vertical shooting against the whole boundary: the half-way
    point to the first hit lies inside one face of the region; a filled
    ring has the region's interior on one side of each edge.
    """
    ring = region.rings[ring_idx]
    all_edges = [(a, b) for a, b in region.edges() if a != b]
    for a, b in ring.edges():
        if a == b or a.x == b.x:
            continue
        m = pt(Fraction(a.x + b.x, 2), Fraction(a.y + b.y, 2))
        others = [e for e in all_edges if e != (a, b) and e != (b, a)]
        for side in (1, -1):
            hits = [y for c, d in others for y in _vertical_line_hits(m.x, c, d)
                    if side * (y - m.y) > 0]
            if hits:
                yy = min(hits) if side > 0 else max(hits)
                cand = pt(m.x, Fraction(m.y + yy, 2))
            else:
                cand = pt(m.x, m.y + side)
            if point_in_region(cand, region) == INTERIOR:
                return cand
    return None


def _vertical_line_hits(x: Scalar, a: Pt, b: Pt) -> list[Scalar]:
    """y-values where the closed segment a-b meets the vertical line X=x."""
    if a.x == b.x:
        if a.x == x:
            return [a.y, b.y]
        return []
    lo, hi = (a, b) if a.x < b.x else (b, a)
    if not (lo.x <= x <= hi.x):
        return []
    t = Fraction(x - lo.x, hi.x - lo.x)
    return [_norm(lo.y + t * (hi.y - lo.y))]


def point_in_region(p: Pt, region: Region) -> str:
    """Exact closed-set classification of p against a region.

    Even-odd parity over all ring edges; valid nested regions make this
    equivalent to the winding rule (the oracle cross-checks that).
    """
    for a, b in region.edges():
        if a == b:
            continue
        if point_on_segment(p, a, b):
            return BOUNDARY
    inside = False
    for a, b in region.edges():
        if a == b:
            continue
        if a.y <= p.y < b.y:
            if cross(a, b, p) > 0:
                inside = not inside
        elif b.y <= p.y < a.y:
            if cross(b, a, p) > 0:
                inside = not inside
    return INTERIOR if inside else EXTERIOR


def winding_number(p: Pt, region: Region) -> int:
    """Signed winding number; independent recomputation path for tests."""
    w = 0
    for a, b in region.edges():
        if a == b:
            continue
        if a.y <= p.y < b.y and cross(a, b, p) > 0:
            w += 1
        elif b.y <= p.y < a.y and cross(a, b, p) < 0:
            w -= 1
    return w


def is_visible(p: Pt, q: Pt, region: Region) -> bool:
    """True iff the closed segment pq lies inside the (closed) region.

    Grazing contact with the boundary does not block visibility.  The open
    segment is cut at every boundary event and each gap midpoint is
    classified exactly.
    """
    cp = point_in_region(p, region)
    cq = point_in_region(q, region)
    if cp == EXTERIOR or cq == EXTERIOR:
        raise PreconditionError("visibility endpoints must belong to the region")
    if p == q:
        return True
    events = _segment_events(p, q, region)
    for m in _gap_midpoints(p, q, events):
        if point_in_region(m, region) == EXTERIOR:
            return False
    return True


def boundary_gap_midpoints(p: Pt, q: Pt, region: Region) -> list[Pt]:
    """Midpoints of the maximal sub-segments of pq free of boundary events.

    Classifying these points classifies the whole open segment: between two
    consecutive boundary events the segment stays on one side.
    """
    return list(_gap_midpoints(p, q, _segment_events(p, q, region)))


def _segment_events(p: Pt, q: Pt, region: Region) -> list[Fraction]:
    """Parameters t in (0,1) where pq meets the region boundary."""
    ts: set[Fraction] = set()
    for a, b in region.edges():
        if a == b:
            continue
        hit = segment_intersection((p, q), (a, b))
        if hit is None:
            continue
        for h in hit_points(hit):
            t = _param_on_segment(p, q, h)
            if 0 < t < 1:
                ts.add(t)
    return sorted(ts)


def _param_on_segment(p: Pt, q: Pt, h: Pt) -> Fraction:
    if q.x != p.x:
        return Fraction(h.x - p.x, q.x - p.x)
    return Fraction(h.y - p.y, q.y - p.y)


def _gap_midpoints(p: Pt, q: Pt, events: list[Fraction]) -> Iterator[Pt]:
    ts = [Fraction(0)] + list(events) + [Fraction(1)]
    for t0, t1 in zip(ts, ts[1:]):
        tm = (t0 + t1) / 2
        yield pt(p.x + tm * (q.x - p.x), p.y + tm * (q.y - p.y))


# ---------------------------------------------------------------------------
# universe box and complement


class UniverseBox(NamedTuple):
    """Finite integer box standing in for the plane in complements."""

    min: Pt
    max: Pt

    def ring(self) -> Ring:
        (x0, y0), (x1, y1) = self.min, self.max
        return Ring((Pt(x0, y0), Pt(x1, y0), Pt(x1, y1), Pt(x0, y1)))

    def contains_with_margin(self, region: Region, margin: int = 3) -> bool:
        if region.is_empty:
            return True
        x0, y0, x1, y1 = region.bbox
        return (self.min.x + margin <= x0 and self.min.y + margin <= y0
                and x1 <= self.max.x - margin and y1 <= self.max.y - margin)


def universe_for(regions: Iterable[Region], margin: int = 3) -> UniverseBox:
    """Smallest integer box covering the operands with the given margin."""
    import math

    xs: list[Scalar] = []
    ys: list[Scalar] = []
    for r in regions:
        if r.bbox is not None:
            x0, y0, x1, y1 = r.bbox
            xs.extend([x0, x1])
            ys.extend([y0, y1])
    if not xs:
        return UniverseBox(Pt(-margin, -margin), Pt(margin, margin))
    return UniverseBox(
        Pt(math.floor(min(xs)) - margin, math.floor(min(ys)) - margin),
        Pt(math.ceil(max(xs)) + margin, math.ceil(max(ys)) + margin),
    )


def complement_in_universe(region: Region, box: UniverseBox, margin: int = 3) -> Region:
    """closure(box \\ region).  The box boundary becomes the outer ring.

    An involution: complementing twice gives back the canonical region.
    Identical rings of opposite orientation (the box ring reappearing)
    cancel instead of stacking.
    """
    if not box.contains_with_margin(region, margin):
        raise MarginError(f"region must keep a margin of {margin} inside the box")
    rings = [box.ring()] + [r.reversed_() for r in region.rings]
    canon = [r.canonical() for r in rings]
    # cancel exact filled/hole duplicates (zero area between them)
    out: list[Ring] = []
    for r in canon:
        rev = r.reversed_().canonical()
        if not r.is_degenerate:
            for i, existing in enumerate(out):
                if existing.pts == rev.pts:
                    del out[i]
                    break
            else:
                out.append(r)
        else:
            out.append(r)
    return Region(tuple(out)).canonical()


# ---------------------------------------------------------------------------
# validation


class Violation(NamedTuple):
    kind: str
    detail: str
    severity: str  # "error" | "degenerate"


def validate_region(region: Region) -> list[Violation]:
    """Check Ring/Region invariants exactly; returns the full violation list.

    Vertex-on-vertex and vertex-on-edge incidences are allowed; proper edge
    crossings and broken nesting are errors.  Zero-area rings and reversal
    spurs are flagged as `degenerate`, not invalid.
    """
    out: list[Violation] = []
    edges: list[tuple[int, int, Pt, Pt]] = []
    for ri, ring in enumerate(region.rings):
        if len(ring.pts) < 2:
            out.append(Violation("ring-size", f"ring {ri} has <2 vertices", "error"))
            continue
        for ei, (a, b) in enumerate(ring.edges()):
            if a == b:
                out.append(Violation(
                    "repeated-vertex", f"ring {ri} edge {ei} is a point", "error"))
            else:
                edges.append((ri, ei, a, b))
        if ring.is_degenerate:
            out.append(Violation(
                "degenerate", f"ring {ri} has zero area", "degenerate"))

    for i in range(len(edges)):
        ri, ei, a, b = edges[i]
        for j in range(i + 1, len(edges)):
            rj, ej, c, d = edges[j]
            if segments_cross_properly((a, b), (c, d)):
                out.append(Violation(
                    "proper-crossing",
                    f"ring {ri} edge {ei} crosses ring {rj} edge {ej}",
                    "error"))
            elif not (region.rings[ri].is_degenerate
                      or region.rings[rj].is_degenerate):
                hit = segment_intersection((a, b), (c, d))
                if hit is not None and not isinstance(hit, Pt):
                    # anti-parallel doubling is a zero-width pinch: parity
                    # stays consistent; same-direction doubling breaks it
                    anti = (b.x - a.x) * (d.x - c.x) + \
                        (b.y - a.y) * (d.y - c.y) < 0
                    out.append(Violation(
                        "edge-overlap",
                        f"ring {ri} edge {ei} overlaps ring {rj} edge {ej}",
                        "degenerate" if anti else "error"))

    if not any(v.severity == "error" for v in out):
        # orientation must match nesting depth: even depth CCW, odd CW
        for ri, ring in enumerate(region.rings):
            if ring.is_degenerate:
                continue
            depth = _ring_nesting_depth(region, ri)
            if depth % 2 == 0 and not ring.is_ccw:
                out.append(Violation(
                    "orientation", f"ring {ri} at depth {depth} must be CCW", "error"))
            if depth % 2 == 1 and ring.is_ccw:
                out.append(Violation(
                    "orientation", f"ring {ri} at depth {depth} must be CW", "error"))
            parent = region.parents[ri]
            if depth % 2 == 1 and parent is None:
                out.append(Violation(
                    "nesting", f"hole ring {ri} has no enclosing ring", "error"))
    return out


def region_ok(region: Region) -> bool:
    return not any(v.severity == "error" for v in validate_region(region))
