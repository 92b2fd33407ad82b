"""Inner and outer rounding pipelines.

Inner: snap every non-representable vertex to its nearest visible lattice
point inside its convex cell, replace each edge by a chain through the
vertically visible reflex vertices, then run a convex-hull style cleanup
that removes every reflex turn not inherited from the exact region.

Outer: enclose every non-representable vertex in its grid pixel, round the
complement against the pixel set with the inner mode, complement back,
then drop extraneous reflex vertices and zero-area debris.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arrangement import (
    REFLEX,
    ExactRegion,
    exact_intersection,
    vertex_convexity,
)
from .decomposition import (
    ConvexCell,
    Decomposition,
    reflex_vertical_decomposition,
)
from .exact_core import (
    MarginError,
    PreconditionError,
    Pt,
    Region,
    Ring,
    Scalar,
    UniverseBox,
    complement_in_universe,
    pt,
    segments_cross_properly,
    squared_distance,
    squared_point_distance,
)


@dataclass
class RoundingReport:
    """Side channel for pipeline events worth surfacing."""

    dropped_components: int = 0
    removed_reflex: int = 0
    notes: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# NVLP by exact column scan


def nvlp(p: Pt, cell: ConvexCell) -> Optional[Pt]:
    """Nearest lattice point of the closed convex cell, exact.

    Scans integer columns of the cell; per column the admissible rows form
    a closed rational interval, so the nearest candidates are the clamped
    neighbors of p.y.  Ties break lexicographically (x, then y).  Returns
    None iff the column scan proves the cell lattice-point-free.
    """
    if not _on_cell(p, cell):
        raise PreconditionError(f"{p} is not on the cell")
    x0, _, x1, _ = cell.ring.bbox
    best: Optional[tuple[Scalar, int, int]] = None
    for gx in range(math.ceil(x0), math.floor(x1) + 1):
        interval = _column_interval(cell.ring, gx)
        if interval is None:
            continue
        ylo, yhi = interval
        lo = math.ceil(ylo)
        hi = math.floor(yhi)
        if lo > hi:
            continue
        for gy in _row_candidates(p.y, lo, hi):
            d = squared_point_distance(p, Pt(gx, gy))
            key = (d, gx, gy)
            if best is None or key < best:
                best = key
    if best is None:
        return None
    return Pt(best[1], best[2])


def _on_cell(p: Pt, cell: ConvexCell) -> bool:
    if p in cell.incident_vertices or p in cell.ring.pts:
        return True
    return cell.contains(p)


def _column_interval(ring: Ring, x: int) -> Optional[tuple[Scalar, Scalar]]:
    ys: list[Scalar] = []
    for a, b in ring.edges():
        if a.x == b.x:
            if a.x == x:
                ys.extend((a.y, b.y))
            continue
        lo, hi = (a, b) if a.x < b.x else (b, a)
        if lo.x <= x <= hi.x:
            ys.append(lo.y + Fraction(x - lo.x, hi.x - lo.x) * (hi.y - lo.y))
    if not ys:
        return None
    return min(ys), max(ys)


def _row_candidates(py: Scalar, lo: int, hi: int) -> list[int]:
    base = math.floor(py)
    out = {min(max(base, lo), hi), min(max(base + 1, lo), hi)}
    return sorted(out)


# ---------------------------------------------------------------------------
# chains


def build_chain(p: Pt, q: Pt, decomposition: Decomposition,
                vp: Optional[Pt], vq: Optional[Pt]) -> Optional[list[Pt]]:
    """Rounded counterpart of the edge pq: vp -> visible reflex -> vq.

    None when an endpoint has no nearest visible lattice point; the caller
    drops the whole incident component (it contains no lattice point).
    """
    if vp is None or vq is None:
        return None
    mids = decomposition.visible_reflex.get((p, q), ())
    chain = [vp]
    for r in mids:
        if chain[-1] != r:
            chain.append(r)
    if chain[-1] != vq:
        chain.append(vq)
    return chain


# ---------------------------------------------------------------------------
# convexity cleanup (the Graham-scan variant)


RANK_ORIGINAL = 0
RANK_SNAPPED = 1
RANK_INSERTED = 2


def convexify_cleanup(points: Sequence[Pt], protected: Sequence[bool],
                      rank: Optional[Sequence[int]] = None
                      ) -> tuple[list[Pt], list[bool]]:
    """Remove every unprotected reflex occurrence, cascading until stable.

    Protected occurrences are the ring positions where the exact region
    itself had a reflex vertex; everything else that turns reflex is
    scanned away, most-artificial first: chain insertions before snapped
    crossings before original vertices.  Insertions are redundant copies
    of vertices protected elsewhere, while an insertion spike can disguise
    a needed snap target as a removable reversal tip; taking insertions
    out first lets the real geometry settle.
    """
    pts = list(points)
    prot = list(protected)
    rk = (list(rank) if rank is not None
          else [RANK_ORIGINAL if p else RANK_INSERTED for p in prot])
    _dedupe(pts, prot, rk)
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        n = len(pts)
        candidates = [i for i in range(n)
                      if not prot[i]
                      and vertex_convexity(pts[i - 1], pts[i],
                                           pts[(i + 1) % n]) == REFLEX]
        if not candidates:
            break
        pick = max(candidates, key=lambda i: (rk[i], -i))
        del pts[pick], prot[pick], rk[pick]
        _dedupe(pts, prot, rk)
        changed = True
    return pts, prot


def _dedupe(pts: list[Pt], prot: list[bool], rk: list[int]) -> None:
    i = 0
    while len(pts) >= 2 and i < len(pts):
        j = (i + 1) % len(pts)
        if pts[i] == pts[j]:
            prot[i] = prot[i] or prot[j]
            rk[i] = min(rk[i], rk[j])
            del pts[j], prot[j], rk[j]
            i = 0
        else:
            i += 1


# ---------------------------------------------------------------------------
# inner rounding


def inner_round(region: ExactRegion,
                report: Optional[RoundingReport] = None) -> Region:
    """The inner lattice approximation: contained, lattice, within sqrt(2)."""
    if region.is_empty:
        return Region(())
    decomposition = reflex_vertical_decomposition(region)

    out_rings: list[Ring] = []
    for ring in region.rings:
        m = len(ring)
        # occurrence-accurate snap: the cell at the corner along the
        # outgoing edge (matters only across cracks; elsewhere every
        # incident cell gives the same answer by the locality property)
        snap: list[Optional[Pt]] = []
        for i, v in enumerate(ring):
            if v.pos.is_lattice:
                snap.append(v.pos)
            else:
                nxt = ring[(i + 1) % m]
                cell = decomposition.cell_at_edge_start(v.pos, nxt.pos)
                snap.append(nvlp(v.pos, cell))
        if any(s is None for s in snap):
            # lattice-point-free convex component: no rounded counterpart
            assert all(s is None for s in snap), \
                "mixed NVLP failures within one component"
            if report is not None:
                report.dropped_components += 1
            continue
        pts: list[Pt] = []
        prot: list[bool] = []
        rk: list[int] = []
        for i, v in enumerate(ring):
            nxt = ring[(i + 1) % m]
            chain = build_chain(v.pos, nxt.pos, decomposition,
                                snap[i], snap[(i + 1) % m])
            assert chain is not None
            pts.append(chain[0])
            prot.append(v.convexity == REFLEX)
            rk.append(RANK_ORIGINAL if v.pos.is_lattice else RANK_SNAPPED)
            for r in chain[1:-1]:
                pts.append(r)
                prot.append(False)
                rk.append(RANK_INSERTED)
        cleaned, _ = convexify_cleanup(pts, prot, rk)
        result = Ring(tuple(cleaned)).canonical()
        if len(set(result.pts)) < 3:
            if report is not None:
                report.dropped_components += 1
            continue
        out_rings.append(result)
    return Region(tuple(out_rings)).canonical()


# ---------------------------------------------------------------------------
# pixels


def pixel_set(region: ExactRegion) -> Region:
    """The set I: one grid pixel per non-representable vertex, merged.

    A vertex with exactly one integer coordinate contributes a degenerate
    pixel: the unit lattice segment through it, kept as a zero-area ring
    unless a full pixel already covers it.
    """
    cells: set[tuple[int, int]] = set()
    slits: set[tuple[Pt, Pt]] = set()
    for v in sorted(region.non_lattice_positions()):
        xi = isinstance(v.x, int)
        yi = isinstance(v.y, int)
        if not xi and not yi:
            cells.add((math.floor(v.x), math.floor(v.y)))
        elif xi:
            y0 = math.floor(v.y)
            slits.add((Pt(v.x, y0), Pt(v.x, y0 + 1)))
        else:
            x0 = math.floor(v.x)
            slits.add((Pt(x0, v.y), Pt(x0 + 1, v.y)))
    rings = _unit_cell_union_rings(cells)
    for a, b in sorted(slits):
        if _slit_covered(a, b, cells):
            continue
        rings.append(Ring((a, b)))
    return Region(tuple(rings)).canonical()


def _slit_covered(a: Pt, b: Pt, cells: set[tuple[int, int]]) -> bool:
    if a.x == b.x:  # vertical slit
        y = min(a.y, b.y)
        return (a.x - 1, y) in cells or (a.x, y) in cells
    x = min(a.x, b.x)
    return (x, a.y - 1) in cells or (x, a.y) in cells


def _unit_cell_union_rings(cells: set[tuple[int, int]]) -> list[Ring]:
    if not cells:
        return []
    from .exact_core import trace_cycles

    directed: list[tuple[Pt, Pt]] = []
    for (cx, cy) in cells:
        if (cx, cy - 1) not in cells:
            directed.append((Pt(cx, cy), Pt(cx + 1, cy)))
        if (cx, cy + 1) not in cells:
            directed.append((Pt(cx + 1, cy + 1), Pt(cx, cy + 1)))
        if (cx - 1, cy) not in cells:
            directed.append((Pt(cx, cy + 1), Pt(cx, cy)))
        if (cx + 1, cy) not in cells:
            directed.append((Pt(cx + 1, cy), Pt(cx + 1, cy + 1)))
    return [Ring(tuple(c)).canonical() for c in trace_cycles(directed)]


# ---------------------------------------------------------------------------
# outer rounding


def outer_round(region: ExactRegion, box: UniverseBox,
                report: Optional[RoundingReport] = None) -> Region:
    """The outer lattice approximation: covering, lattice, within sqrt(2).

    Pipeline: complement against the pixel set, inner-round, complement
    back, strip zero-width debris, drop removable extraneous reflex
    vertices, remove zero-area components.
    """
    if region.is_empty:
        return Region(())
    _check_outer_margin(region, box)
    pixels = pixel_set(region)
    comp = complement_in_universe(region.region, box, margin=0)
    pixels_comp = complement_in_universe(pixels, box, margin=0)
    middle = exact_intersection(comp, pixels_comp, check=False)
    middle_inner = inner_round(middle, report)
    raw = complement_in_universe(middle_inner, box, margin=0)
    despurred = Region(tuple(r.collapse_spurs() for r in raw.rings)).canonical()
    despurred = Region(tuple(r for r in despurred.rings if len(r.pts) >= 3))
    simplified = simplify_reflex(despurred, region, report)
    out = remove_zero_area(simplified)
    for ring in out.rings:
        for p in ring.pts:
            assert p.is_lattice, "outer rounding produced a non-lattice vertex"
    return out.canonical()


def _check_outer_margin(region: ExactRegion, box: UniverseBox,
                        margin: int = 3) -> None:
    """Complement-side inputs may legally fill the box; everything that the
    pixel construction can touch must keep the margin."""
    bbox = region.region.bbox
    if bbox is None:
        return
    x0, y0, x1, y1 = bbox
    if not (box.min.x <= x0 and box.min.y <= y0
            and x1 <= box.max.x and y1 <= box.max.y):
        raise MarginError("region exceeds the universe box")
    for v in region.non_lattice_positions():
        if not (box.min.x + margin <= v.x <= box.max.x - margin
                and box.min.y + margin <= v.y <= box.max.y - margin):
            raise MarginError(
                f"non-representable vertex {v} too close to the universe box")


# ---------------------------------------------------------------------------
# reflex simplification


def simplify_reflex(pbar: Region, exact: ExactRegion,
                    report: Optional[RoundingReport] = None) -> Region:
    """Remove extraneous reflex vertices of the outer rounding.

    A reflex occurrence with no counterpart vertex of the exact region is
    removed when it and both neighbors lie within sqrt(2) of one common
    exact edge (so the filled triangle keeps the Hausdorff bound) and the
    removal causes no topological change.  Greedy in boundary order,
    re-testing after each removal.
    """
    counterparts = {v.pos for ring in exact.rings for v in ring}
    exact_edges = [(a, b) for a, b in exact.region.edges() if a != b]
    rings = [list(r.pts) for r in pbar.rings]
    changed = True
    while changed:
        changed = False
        for ri, pts in enumerate(rings):
            n = len(pts)
            if n < 4:
                continue
            for i in range(n):
                r = pts[i]
                if r in counterparts:
                    continue
                prev = pts[i - 1]
                nxt = pts[(i + 1) % n]
                if vertex_convexity(prev, r, nxt) != REFLEX:
                    continue
                if prev == nxt:
                    continue
                if not _near_common_edge((prev, r, nxt), exact_edges):
                    continue
                if not _removal_topology_ok(rings, ri, i):
                    continue
                del pts[i]
                if report is not None:
                    report.removed_reflex += 1
                changed = True
                break
            if changed:
                break
    out = [Ring(tuple(p)).canonical() for p in rings]
    return Region(tuple(r for r in out if len(r.pts) >= 2)).canonical()


def _near_common_edge(triple: tuple[Pt, Pt, Pt],
                      exact_edges: list[tuple[Pt, Pt]]) -> bool:
    for e in exact_edges:
        if all(squared_distance(v, e) < 2 for v in triple):
            return True
    return False


def _removal_topology_ok(rings: list[list[Pt]], ri: int, i: int) -> bool:
    pts = rings[ri]
    n = len(pts)
    prev = pts[i - 1]
    r = pts[i]
    nxt = pts[(i + 1) % n]
    new_seg = (prev, nxt)
    skip = {((i - 1) % n, i), (i, (i + 1) % n)}
    for rj, other in enumerate(rings):
        m = len(other)
        for j in range(m):
            a, b = other[j], other[(j + 1) % m]
            if a == b:
                continue
            if rj == ri and (j, (j + 1) % m) in skip:
                continue
            if segments_cross_properly(new_seg, (a, b)):
                return False
    area2 = ((r.x - prev.x) * (nxt.y - prev.y)
             - (r.y - prev.y) * (nxt.x - prev.x))
    if area2 == 0:
        return True
    for rj, other in enumerate(rings):
        for j, w in enumerate(other):
            if rj == ri and j in {(i - 1) % n, i, (i + 1) % n}:
                continue
            if w in (prev, r, nxt):
                continue
            if _strictly_in_triangle(w, prev, r, nxt):
                return False
    return True


def _strictly_in_triangle(w: Pt, a: Pt, b: Pt, c: Pt) -> bool:
    d1 = (b.x - a.x) * (w.y - a.y) - (b.y - a.y) * (w.x - a.x)
    d2 = (c.x - b.x) * (w.y - b.y) - (c.y - b.y) * (w.x - b.x)
    d3 = (a.x - c.x) * (w.y - c.y) - (a.y - c.y) * (w.x - c.x)
    return (d1 > 0 and d2 > 0 and d3 > 0) or (d1 < 0 and d2 < 0 and d3 < 0)


# ---------------------------------------------------------------------------
# zero-area removal


def remove_zero_area(region: Region) -> Region:
    """Drop rings and ring pairs that enclose no interior."""
    rings = [r for r in region.rings if not r.is_degenerate]
    # exact filled/hole duplicates cancel pairwise
    out: list[Ring] = []
    for r in rings:
        rev = r.reversed_().canonical()
        for i, existing in enumerate(out):
            if existing.pts == rev.pts:
                del out[i]
                break
        else:
            out.append(r)
    return Region(tuple(out)).canonical()
