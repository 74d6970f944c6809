"""Arrangement of body boundaries inside a bounded polygonal window.

The plane inside the window is partitioned into cells of a vertical
decomposition: 0-cells (boundary vertices, crossing points and slab-line
crossings), open 1-cells (pieces of input edges and of the vertical slab
lines), and open trapezoidal 2-cells.  Every indicator function of an input
body is constant on each open cell, so one exact rational sample point per
cell witnesses all pointwise facts the certifiers need.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .geom import (
    ConvexBody,
    GeometryError,
    Point,
    contains,
    cross,
)


class WindowError(GeometryError):
    """Window does not contain the bounded bodies it must."""


@dataclass(frozen=True)
class Cell:
    """One cell of the decomposition.

    dim 0: a point; dim 1: an open segment (endpoints excluded); dim 2: an
    open convex face.  `sample` lies in the relative interior.  `hull` is the
    closure as a ConvexBody.  `incidence[i]` is True iff input body i
    contains the cell.
    """

    dim: int
    sample: Point
    hull: ConvexBody
    incidence: tuple[bool, ...]


@dataclass
class Arrangement:
    bodies: list[ConvexBody]
    window: ConvexBody
    cells: list[Cell]
    outside_sample: Point
    outside_incidence: tuple[bool, ...] = field(default=())

    @property
    def vertices(self) -> list[Point]:
        return [c.sample for c in self.cells if c.dim == 0]

    @property
    def edges(self) -> list[Cell]:
        return [c for c in self.cells if c.dim == 1]

    @property
    def faces(self) -> list[Cell]:
        return [c for c in self.cells if c.dim == 2]


def _seg_intersections(p1: Point, q1: Point, p2: Point, q2: Point) -> list[Point]:
    """Transversal intersection point of two closed segments, if any.

    Collinear overlaps contribute nothing here: the segments' own endpoints
    already enter the vertex set and splitting handles the overlap.
    """
    d1x, d1y = q1.x - p1.x, q1.y - p1.y
    d2x, d2y = q2.x - p2.x, q2.y - p2.y
    denom = cross(d1x, d1y, d2x, d2y)
    if denom == 0:
        return []
    rx, ry = p2.x - p1.x, p2.y - p1.y
    t = cross(rx, ry, d2x, d2y) / denom
    s = cross(rx, ry, d1x, d1y) / denom
    if 0 <= t <= 1 and 0 <= s <= 1:
        return [Point(p1.x + t * d1x, p1.y + t * d1y)]
    return []


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    if cross(b.x - a.x, b.y - a.y, p.x - a.x, p.y - a.y) != 0:
        return False
    return (
        min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def _line_x_crossing(a: Point, b: Point, x: Fraction) -> Optional[Point]:
    """Crossing of segment ab with the vertical line at x, if transversal."""
    if a.x == b.x:
        return None
    lo, hi = (a, b) if a.x < b.x else (b, a)
    if not (lo.x <= x <= hi.x):
        return None
    t = (x - lo.x) / (hi.x - lo.x)
    return Point(x, lo.y + t * (hi.y - lo.y))


def build_arrangement(bodies: list[ConvexBody], window: ConvexBody) -> Arrangement:
    """Vertical decomposition of all body boundaries clipped to the window.

    The window must be a bounded polygon containing every bounded nonempty
    body.  One representative sample for the unbounded face outside the
    window is attached.
    """
    if not bodies:
        raise GeometryError("arrangement needs at least one body")
    if window.kind != "polygon":
        raise GeometryError("window must be a bounded polygon")
    for body in bodies:
        if body.is_empty or body.is_full:
            continue
        for v in body.vertices:
            if not contains(window, v):
                raise WindowError(f"window does not contain body vertex {v}")

    segments: list[tuple[Point, Point]] = list(window.edges())
    points: set[Point] = set()
    for body in bodies:
        segments.extend(body.edges())
        if body.kind == "point":
            points.add(body.vertices[0])

    # vertex set: endpoints, pairwise transversal crossings, point bodies
    verts: set[Point] = set(points)
    for a, b in segments:
        verts.add(a)
        verts.add(b)
    for i in range(len(segments)):
        for j in range(i + 1, len(segments)):
            for p in _seg_intersections(*segments[i], *segments[j]):
                verts.add(p)

    xs = sorted({v.x for v in verts})

    # slab-line crossings become auxiliary 0-cells and split the edges
    aux: set[Point] = set()
    for a, b in segments:
        for x in xs:
            if min(a.x, b.x) < x < max(a.x, b.x):
                p = _line_x_crossing(a, b, x)
                if p is not None:
                    aux.add(p)
    nodes = verts | aux

    cells: list[Cell] = []
    nbodies = len(bodies)

    def add_cell(dim: int, sample: Point, hull: ConvexBody) -> None:
        inc = tuple(contains(body, sample) for body in bodies)
        cells.append(Cell(dim, sample, hull, inc))

    for p in sorted(nodes, key=lambda q: (q.x, q.y)):
        add_cell(0, p, ConvexBody.point(p))

    # 1-cells on input segments: split at every node lying on the segment
    seen_edges: set[tuple[Point, Point]] = set()
    for a, b in segments:
        stops = sorted(
            (p for p in nodes if _on_segment(p, a, b)), key=lambda q: (q.x, q.y)
        )
        for u, v in zip(stops, stops[1:]):
            key = (u, v)
            if key in seen_edges:
                continue
            seen_edges.add(key)
            mid = Point((u.x + v.x) / 2, (u.y + v.y) / 2)
            add_cell(1, mid, ConvexBody.segment(u, v))

    # per slab line: free vertical 1-cells between consecutive nodes on it
    nodes_by_x: dict[Fraction, list[Point]] = {}
    for p in nodes:
        nodes_by_x.setdefault(p.x, []).append(p)
    for x in xs:
        col = sorted(nodes_by_x.get(x, []), key=lambda q: q.y)
        for u, v in zip(col, col[1:]):
            if (u, v) in seen_edges:
                continue
            mid = Point(x, (u.y + v.y) / 2)
            if not contains(window, mid):
                continue
            seen_edges.add((u, v))
            add_cell(1, mid, ConvexBody.segment(u, v))

    # trapezoidal 2-cells: per slab, stack of segments crossing the midline
    for x0, x1 in zip(xs, xs[1:]):
        mid_x = (x0 + x1) / 2
        crossing = []
        for a, b in segments:
            p = _line_x_crossing(a, b, mid_x)
            if p is not None:
                crossing.append((p.y, a, b))
        crossing.sort(key=lambda item: item[0])
        for (ylo, alo, blo), (yhi, ahi, bhi) in zip(crossing, crossing[1:]):
            if ylo == yhi:
                continue
            sample = Point(mid_x, (ylo + yhi) / 2)
            if not contains(window, sample):
                continue
            corners = [
                _line_x_crossing(alo, blo, x0) or _endpoint_at(alo, blo, x0),
                _line_x_crossing(alo, blo, x1) or _endpoint_at(alo, blo, x1),
                _line_x_crossing(ahi, bhi, x0) or _endpoint_at(ahi, bhi, x0),
                _line_x_crossing(ahi, bhi, x1) or _endpoint_at(ahi, bhi, x1),
            ]
            hull = ConvexBody.from_hull([c for c in corners if c is not None])
            add_cell(2, sample, hull)

    wx = max(v.x for v in window.vertices) + 1
    wy = max(v.y for v in window.vertices) + 1
    outside = Point(wx, wy)
    arr = Arrangement(
        bodies=list(bodies),
        window=window,
        cells=cells,
        outside_sample=outside,
    )
    arr.outside_incidence = tuple(contains(body, outside) for body in bodies)
    return arr


def _endpoint_at(a: Point, b: Point, x: Fraction) -> Optional[Point]:
    if a.x == x:
        return a
    if b.x == x:
        return b
    return None


def sample_points(arr: Arrangement) -> list[Point]:
    """All cell samples plus the unbounded-face representative."""
    return [c.sample for c in arr.cells] + [arr.outside_sample]
