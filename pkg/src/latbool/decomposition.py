"""Reflex vertical decomposition.

Vertical walls are shot up and down from every reflex vertex (all lattice
points by the intersection structure); the induced subdivision is a
partition of the region into convex cells.  The decomposition also records,
for every boundary edge, the reflex vertices vertically visible from it in
projection order: exactly the vertices a rounded chain may visit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .arrangement import REFLEX, ExactRegion
from .exact_core import (
    EXTERIOR,
    trace_cycles,
    PreconditionError,
    Pt,
    Region,
    Ring,
    Scalar,
    boundary_gap_midpoints,
    point_in_region,
    pt,
    segments_cross_properly,
)

UP = "up"
DOWN = "down"


class Wall(NamedTuple):
    source: Pt
    direction: str
    hit: Pt

    @property
    def segment(self) -> tuple[Pt, Pt]:
        return (self.source, self.hit)


@dataclass(frozen=True)
class ConvexCell:
    """One convex face of the decomposition (CCW boundary)."""

    ring: Ring
    incident_vertices: tuple[Pt, ...]

    def contains(self, q: Pt) -> bool:
        for a, b in self.ring.edges():
            if a == b:
                continue
            if (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x) < 0:
                return False
        return True


@dataclass(frozen=True)
class Decomposition:
    source: ExactRegion
    cells: tuple[ConvexCell, ...]
    walls: tuple[Wall, ...]
    cell_index_of_vertex: dict
    visible_reflex: dict
    cell_of_edge_start: dict

    def cell_of_vertex(self, v: Pt) -> ConvexCell:
        idx = self.cell_index_of_vertex.get(v)
        if idx is None:
            raise PreconditionError(f"{v} is not a vertex of the decomposition")
        return self.cells[idx]

    def cell_at_edge_start(self, u: Pt, v: Pt) -> ConvexCell:
        """The cell adjacent to the corner at u along the directed edge u->v.

        This is the occurrence-accurate cell: on cracked regions different
        occurrences of one position can see different cells, and snapping
        must stay inside the occurrence's own side.
        """
        idx = self.cell_of_edge_start.get((u, v))
        if idx is None:
            return self.cell_of_vertex(u)
        return self.cells[idx]


def nvlp_cell_of(v: Pt, decomposition: Decomposition) -> ConvexCell:
    """An incident convex cell of v; any such cell yields the global NVLP."""
    return decomposition.cell_of_vertex(v)


# ---------------------------------------------------------------------------


def _dir_in_sector(delta: tuple[int, int], u: tuple[Scalar, Scalar],
                   w: tuple[Scalar, Scalar]) -> bool:
    """Is direction `delta` strictly inside the interior sector at a vertex?

    u is the incoming direction, w the outgoing one (interior on the left);
    the sector spans counterclockwise from w to -u.
    """
    ax, ay = w
    bx, by = -u[0], -u[1]
    dx, dy = delta
    c_ab = ax * by - ay * bx
    d_ab = ax * bx + ay * by
    c_ad = ax * dy - ay * dx
    d_ad = ax * dx + ay * dy
    c_db = dx * by - dy * bx
    if c_ab == 0 and d_ab > 0:
        # reversal vertex: everything except the spur direction is interior
        return not (c_ad == 0 and d_ad > 0)
    if c_ab == 0 and d_ab < 0:
        return c_ad > 0
    if c_ab > 0:
        return c_ad > 0 and c_db > 0
    return c_ad > 0 or c_db > 0


def _wall_hit(r: Pt, sign: int, edges: list[tuple[Pt, Pt]]) -> Optional[Pt]:
    """First boundary contact of the vertical ray from r (sign=+1 up).

    Contacts at edge endpoints count (walls stop at reflex vertices above
    them).  Returns None when the ray is blocked immediately.
    """
    best: Optional[Scalar] = None

    def consider(y: Scalar) -> None:
        nonlocal best
        if sign * (y - r.y) > 0 and (best is None or sign * (y - best) < 0):
            best = y

    blocked = False
    for a, b in edges:
        if a.x == b.x:
            if a.x != r.x:
                continue
            ylo, yhi = (a.y, b.y) if a.y <= b.y else (b.y, a.y)
            if ylo < r.y < yhi:
                blocked = True
                break
            consider(ylo if sign > 0 else yhi)
            consider(yhi if sign > 0 else ylo)
        else:
            lo, hi = (a, b) if a.x < b.x else (b, a)
            if not (lo.x <= r.x <= hi.x):
                continue
            y = lo.y + Fraction(r.x - lo.x, hi.x - lo.x) * (hi.y - lo.y)
            consider(y)
    if blocked or best is None:
        return None
    return pt(r.x, best)


def reflex_vertical_decomposition(region: ExactRegion) -> Decomposition:
    """Build walls, cells, the vertex->cell map and per-edge visibility lists."""
    if region.is_empty:
        return Decomposition(region, (), (), {}, {})
    for ring in region.rings:
        for v in ring:
            if v.convexity == REFLEX and not v.pos.is_lattice:
                raise PreconditionError(
                    f"reflex vertex {v.pos} is not a lattice point")

    edges = [(a, b) for ring in region.region.rings for a, b in ring.edges()
             if a != b]

    walls: list[Wall] = []
    seen_walls: set[tuple[Pt, Pt]] = set()
    for ring in region.rings:
        m = len(ring)
        for i, v in enumerate(ring):
            if v.convexity != REFLEX:
                continue
            prev = ring[i - 1].pos
            nxt = ring[(i + 1) % m].pos
            u = (v.pos.x - prev.x, v.pos.y - prev.y)
            w = (nxt.x - v.pos.x, nxt.y - v.pos.y)
            for sign, name in ((1, UP), (-1, DOWN)):
                if not _dir_in_sector((0, sign), u, w):
                    continue
                hit = _wall_hit(v.pos, sign, edges)
                if hit is None:
                    continue
                key = (v.pos, hit) if v.pos < hit else (hit, v.pos)
                if key in seen_walls:
                    continue
                seen_walls.add(key)
                walls.append(Wall(v.pos, name, hit))

    cells, cell_sets, edge_cell = _build_cells(region, walls)
    cell_index: dict[Pt, int] = {}
    positions = {v.pos for ring in region.rings for v in ring}
    order = sorted(
        range(len(cells)),
        key=lambda ci: (min(cells[ci].ring.pts), cells[ci].ring.pts))
    for p in positions:
        for ci in order:
            if p in cell_sets[ci]:
                cell_index[p] = ci
                break
        else:
            # vertex swallowed by collinear collapse: locate geometrically
            for ci in order:
                if cells[ci].contains(p):
                    cell_index[p] = ci
                    break

    visible = _visible_reflex_lists(region, edges)
    return Decomposition(region, tuple(cells), tuple(walls), cell_index,
                         visible, edge_cell)


def _build_cells(region: ExactRegion, walls: list[Wall]
                 ) -> tuple[list[ConvexCell], list[set[Pt]], dict]:
    wall_pts = [w.hit for w in walls] + [w.source for w in walls]
    directed: list[tuple[Pt, Pt]] = []
    first_piece: dict[tuple[Pt, Pt], tuple[Pt, Pt]] = {}
    for ring in region.region.rings:
        for a, b in ring.edges():
            if a == b:
                continue
            cuts = [p for p in wall_pts
                    if p != a and p != b and _on_open_segment(p, a, b)]
            chain = [a] + sorted(set(cuts), key=lambda p: _param(a, b, p)) + [b]
            first_piece[(a, b)] = (chain[0], chain[1])
            for u, v in zip(chain, chain[1:]):
                directed.append((u, v))
    for w in walls:
        directed.append((w.source, w.hit))
        directed.append((w.hit, w.source))

    cycles = trace_cycles(directed)
    cells: list[ConvexCell] = []
    cell_sets: list[set[Pt]] = []
    piece_cell: dict[tuple[Pt, Pt], int] = {}
    positions = {v.pos for ring in region.rings for v in ring}
    for cyc in cycles:
        ring = Ring(tuple(cyc)).canonical()
        if len(ring.pts) < 3 or ring.is_degenerate:
            continue
        assert ring.is_ccw, "decomposition cell traced clockwise"
        idx = len(cells)
        cells.append(ConvexCell(ring, tuple(sorted(set(cyc) & positions))))
        cell_sets.append(set(cyc))
        n = len(cyc)
        for i in range(n):
            piece_cell[(cyc[i], cyc[(i + 1) % n])] = idx
    edge_cell = {edge: piece_cell[piece]
                 for edge, piece in first_piece.items() if piece in piece_cell}
    return cells, cell_sets, edge_cell


def _on_open_segment(p: Pt, a: Pt, b: Pt) -> bool:
    if (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) != 0:
        return False
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y)
            and p != a and p != b)


def _param(a: Pt, b: Pt, p: Pt) -> Fraction:
    if b.x != a.x:
        return Fraction(p.x - a.x, b.x - a.x)
    return Fraction(p.y - a.y, b.y - a.y)


def _visible_reflex_lists(region: ExactRegion, edges: list[tuple[Pt, Pt]]
                          ) -> dict:
    """Per DIRECTED edge: vertically visible reflex vertices, interior side.

    The side filter (strictly left of the directed edge, or on it) matters
    where a crack edge carries faces on both sides: each direction owns the
    obstacles of its own face only.  In crack-free regions every visible
    reflex vertex is on the interior side anyway.
    """
    reflex_pos = sorted(region.reflex_positions())
    out: dict = {}
    reg = region.region
    for a, b in edges:
        if (a, b) in out:
            continue
        if a.x == b.x:
            out[(a, b)] = ()
            continue
        entries = []
        for r in reflex_pos:
            if r == a or r == b:
                continue
            # feet at the edge endpoints belong to the neighbor edges
            if not (min(a.x, b.x) < r.x < max(a.x, b.x)):
                continue
            side = (b.x - a.x) * (r.y - a.y) - (b.y - a.y) * (r.x - a.x)
            if side < 0:
                continue
            lo, hi = (a, b) if a.x < b.x else (b, a)
            fy = lo.y + Fraction(r.x - lo.x, hi.x - lo.x) * (hi.y - lo.y)
            foot = pt(r.x, fy)
            if foot != r and not _vertical_segment_inside(r, foot, reg, edges):
                continue
            t = _param(a, b, foot)
            dist = abs(r.y - fy)
            entries.append((t, dist, r))
        entries.sort()
        out[(a, b)] = tuple(r for _, _, r in entries)
    return out


def _vertical_segment_inside(r: Pt, foot: Pt, reg: Region,
                             edges: list[tuple[Pt, Pt]]) -> bool:
    """Exact: open vertical segment r-foot contained in the closed region.

    Transversal crossings of any boundary edge block visibility; this also
    makes zero-width cracks opaque, as they must be.
    """
    seg = (r, foot)
    for e in edges:
        if segments_cross_properly(seg, e):
            return False
    for m in boundary_gap_midpoints(r, foot, reg):
        if point_in_region(m, reg) == EXTERIOR:
            return False
    return True


def vertically_visible(r: Pt, edge: tuple[Pt, Pt], region: Region) -> bool:
    """Public exact test: is r vertically visible from the edge?"""
    a, b = edge
    if a.x == b.x:
        return False
    if not (min(a.x, b.x) <= r.x <= max(a.x, b.x)):
        return False
    lo, hi = (a, b) if a.x < b.x else (b, a)
    fy = lo.y + Fraction(r.x - lo.x, hi.x - lo.x) * (hi.y - lo.y)
    foot = pt(r.x, fy)
    if foot == r:
        return True
    edges = [(c, d) for c, d in region.edges() if c != d]
    return _vertical_segment_inside(r, foot, region, edges)
