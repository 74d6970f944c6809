"""Exact rational planar geometry kernel.

Convex bodies in the plane with coordinates in Q, half-plane clipping,
intersections, normal cones, and membership predicates.  All arithmetic is
exact; no floats appear anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

Scalar = Fraction

EMPTY = "empty"
POINT = "point"
SEGMENT = "segment"
POLYGON = "polygon"
FULL = "full"


class GeometryError(ValueError):
    """Raised on malformed geometric input."""


def scalar(value) -> Fraction:
    """Coerce ints, strings ("p", "p/q", decimal) and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise GeometryError("floating-point coordinates are not accepted")
    return Fraction(value)


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __sub__(self, other: "Point") -> tuple[Fraction, Fraction]:
        return (self.x - other.x, self.y - other.y)

    def translated(self, dx, dy) -> "Point":
        return Point(self.x + dx, self.y + dy)


def pt(x, y) -> Point:
    return Point(scalar(x), scalar(y))


def cross(ax, ay, bx, by):
    return ax * by - ay * bx


def dot(ax, ay, bx, by):
    return ax * bx + ay * by


def orient(a: Point, b: Point, c: Point):
    """Sign of the area of triangle abc: >0 for a counterclockwise turn."""
    return cross(b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y)


@dataclass(frozen=True)
class Direction:
    """Nonzero direction, canonicalized to a primitive integer vector.

    Two directions are equal iff one is a positive rational multiple of the
    other; canonicalization makes that structural equality.
    """

    dx: int
    dy: int

    @staticmethod
    def of(dx, dy) -> "Direction":
        dx = scalar(dx)
        dy = scalar(dy)
        if dx == 0 and dy == 0:
            raise GeometryError("zero vector has no direction")
        m = dx.denominator * dy.denominator
        ix = int(dx * m)
        iy = int(dy * m)
        g = gcd(abs(ix), abs(iy))
        return Direction(ix // g, iy // g)

    def neg(self) -> "Direction":
        return Direction(-self.dx, -self.dy)

    def perp_ccw(self) -> "Direction":
        """This direction rotated by +90 degrees."""
        return Direction(-self.dy, self.dx)

    def cross(self, other: "Direction") -> int:
        return self.dx * other.dy - self.dy * other.dx

    def dot(self, other: "Direction") -> int:
        return self.dx * other.dx + self.dy * other.dy


def direction_between(a: Direction, b: Direction) -> Direction:
    """A direction strictly inside the ccw arc from a to b (arc < pi)."""
    if a.cross(b) <= 0:
        raise GeometryError("arc is not strictly convex")
    return Direction.of(a.dx + b.dx, a.dy + b.dy)


@dataclass(frozen=True)
class HalfPlane:
    """Closed half-plane {p : <normal, p> <= offset}."""

    normal: Direction
    offset: Fraction

    @staticmethod
    def of(nx, ny, offset) -> "HalfPlane":
        nx = scalar(nx)
        ny = scalar(ny)
        offset = scalar(offset)
        d = Direction.of(nx, ny)
        # rescale the offset by the same positive factor as the normal
        if nx != 0:
            s = Fraction(d.dx) / nx
        else:
            s = Fraction(d.dy) / ny
        return HalfPlane(d, offset * s)

    def value(self, p: Point) -> Fraction:
        """<normal, p> - offset: <= 0 inside, 0 on the boundary."""
        return self.normal.dx * p.x + self.normal.dy * p.y - self.offset

    def contains(self, p: Point) -> bool:
        return self.value(p) <= 0

    def complement(self) -> "HalfPlane":
        """The closed half-plane on the other side of the same boundary line."""
        return HalfPlane(self.normal.neg(), -self.offset)


def edge_halfplane(a: Point, b: Point) -> HalfPlane:
    """Half-plane bounded by line ab whose interior lies to the left of a->b.

    For a ccw polygon edge this is the inner side; its normal is the outer
    edge normal.
    """
    d = Direction.of(b.x - a.x, b.y - a.y)
    n = Direction(d.dy, -d.dx)  # outward (right-hand) normal
    return HalfPlane(n, n.dx * a.x + n.dy * a.y)


def _hull(points: Sequence[Point]) -> list[Point]:
    """Andrew's monotone chain with strict turns; returns ccw vertex list."""
    pts = sorted(set((p.x, p.y) for p in points))
    pts = [Point(x, y) for x, y in pts]
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


@dataclass(frozen=True)
class ConvexBody:
    """A closed convex subset of the plane in canonical form.

    kind is one of "empty", "point", "segment", "polygon", "full".  Polygon
    vertices are in strictly convex position, counterclockwise, starting at
    the lexicographically smallest vertex.  Segment endpoints are sorted
    lexicographically.  The full plane is the only unbounded body supported.
    """

    kind: str
    vertices: tuple[Point, ...] = ()

    # -- constructors ------------------------------------------------------

    @staticmethod
    def empty() -> "ConvexBody":
        return ConvexBody(EMPTY)

    @staticmethod
    def full() -> "ConvexBody":
        return ConvexBody(FULL)

    @staticmethod
    def point(p: Point) -> "ConvexBody":
        return ConvexBody(POINT, (p,))

    @staticmethod
    def segment(a: Point, b: Point) -> "ConvexBody":
        if a == b:
            raise GeometryError("degenerate segment; use a point body")
        lo, hi = sorted([a, b], key=lambda p: (p.x, p.y))
        return ConvexBody(SEGMENT, (lo, hi))

    @staticmethod
    def polygon(vertices: Sequence[Point]) -> "ConvexBody":
        body = ConvexBody.from_hull(vertices)
        if body.kind != POLYGON or len(body.vertices) != len(vertices):
            raise GeometryError("vertices are not in strictly convex position")
        return body

    @staticmethod
    def from_hull(points: Iterable[Point]) -> "ConvexBody":
        """Convex hull of a point set, degenerating the kind as needed."""
        hull = _hull(list(points))
        if not hull:
            return ConvexBody(EMPTY)
        if len(hull) == 1:
            return ConvexBody(POINT, tuple(hull))
        if len(hull) == 2:
            return ConvexBody.segment(hull[0], hull[1])
        return ConvexBody(POLYGON, tuple(hull))

    @staticmethod
    def box(x0, y0, x1, y1) -> "ConvexBody":
        x0, y0, x1, y1 = scalar(x0), scalar(y0), scalar(x1), scalar(y1)
        return ConvexBody.from_hull(
            [Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1)]
        )

    # -- basic queries -----------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return self.kind == EMPTY

    @property
    def is_full(self) -> bool:
        return self.kind == FULL

    @property
    def is_bounded(self) -> bool:
        return self.kind != FULL

    def edges(self) -> list[tuple[Point, Point]]:
        if self.kind == POLYGON:
            n = len(self.vertices)
            return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]
        if self.kind == SEGMENT:
            return [(self.vertices[0], self.vertices[1])]
        return []

    def half_planes(self) -> list[HalfPlane]:
        """Half-planes whose intersection is this body (bounded kinds only)."""
        if self.kind == EMPTY:
            raise GeometryError("empty body has no half-plane form")
        if self.kind == FULL:
            return []
        if self.kind == POINT:
            p = self.vertices[0]
            return [
                HalfPlane(Direction(1, 0), p.x),
                HalfPlane(Direction(-1, 0), -p.x),
                HalfPlane(Direction(0, 1), p.y),
                HalfPlane(Direction(0, -1), -p.y),
            ]
        if self.kind == SEGMENT:
            a, b = self.vertices
            along = Direction.of(b.x - a.x, b.y - a.y)
            n = along.perp_ccw()
            return [
                HalfPlane(n, n.dx * a.x + n.dy * a.y),
                HalfPlane(n.neg(), -(n.dx * a.x + n.dy * a.y)),
                HalfPlane(along, along.dx * b.x + along.dy * b.y),
                HalfPlane(along.neg(), -(along.dx * a.x + along.dy * a.y)),
            ]
        return [edge_halfplane(a, b) for a, b in self.edges()]


def contains(body: ConvexBody, p: Point) -> bool:
    """Closed membership p in body."""
    if body.kind == EMPTY:
        return False
    if body.kind == FULL:
        return True
    if body.kind == POINT:
        return body.vertices[0] == p
    if body.kind == SEGMENT:
        a, b = body.vertices
        if orient(a, b, p) != 0:
            return False
        return (
            min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y)
        )
    return all(h.value(p) <= 0 for h in body.half_planes())


def _clip_segment(a: Point, b: Point, h: HalfPlane) -> ConvexBody:
    fa = h.value(a)
    fb = h.value(b)
    if fa <= 0 and fb <= 0:
        return ConvexBody.segment(a, b)
    if fa > 0 and fb > 0:
        return ConvexBody.empty()
    t = fa / (fa - fb)
    m = Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
    keep = a if fa <= 0 else b
    if keep == m:
        return ConvexBody.point(m)
    return ConvexBody.segment(keep, m)


def clip(body: ConvexBody, h: HalfPlane) -> ConvexBody:
    """body intersected with a closed half-plane, in canonical form.

    The full plane is rejected: a half-plane is not a representable body.
    """
    if body.kind == EMPTY:
        return body
    if body.kind == FULL:
        raise GeometryError("cannot clip the full plane: result is unbounded")
    if body.kind == POINT:
        return body if h.contains(body.vertices[0]) else ConvexBody.empty()
    if body.kind == SEGMENT:
        return _clip_segment(body.vertices[0], body.vertices[1], h)
    out: list[Point] = []
    verts = body.vertices
    n = len(verts)
    for i in range(n):
        cur = verts[i]
        nxt = verts[(i + 1) % n]
        fc = h.value(cur)
        fn = h.value(nxt)
        if fc <= 0:
            out.append(cur)
        if (fc < 0 < fn) or (fn < 0 < fc):
            t = fc / (fc - fn)
            out.append(Point(cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)))
    return ConvexBody.from_hull(out)


def intersect(a: ConvexBody, b: ConvexBody) -> ConvexBody:
    """Exact intersection of two bodies in canonical form."""
    if a.kind == EMPTY or b.kind == EMPTY:
        return ConvexBody.empty()
    if a.kind == FULL:
        return b
    if b.kind == FULL:
        return a
    out = a
    for h in b.half_planes():
        out = clip(out, h)
        if out.kind == EMPTY:
            return out
    return out


@dataclass(frozen=True)
class Cone:
    """Closed convex cone at the origin: one of the planar normal-cone shapes.

    kind is "empty", "zero", "ray", "line", "sector" or "full".  A sector is
    swept counterclockwise from d1 to d2 with angular width in (0, pi]; the
    ccw sweep orientation disambiguates the width-pi case where d1 and d2 are
    antipodal.
    """

    kind: str
    d1: Optional[Direction] = None
    d2: Optional[Direction] = None

    @staticmethod
    def sector(d1: Direction, d2: Direction) -> "Cone":
        c = d1.cross(d2)
        if c < 0 or (c == 0 and d1.dot(d2) > 0):
            raise GeometryError("sector width must lie in (0, pi]")
        return Cone("sector", d1, d2)

    def boundary_directions(self) -> list[Direction]:
        if self.kind == "ray":
            return [self.d1]
        if self.kind == "line":
            return [self.d1, self.d1.neg()]
        if self.kind == "sector":
            return [self.d1, self.d2]
        return []


def cone_contains(c: Cone, u: Direction) -> bool:
    """Membership of a nonzero direction in a cone."""
    if c.kind in ("empty", "zero"):
        return False
    if c.kind == "full":
        return True
    if c.kind == "ray":
        return c.d1.cross(u) == 0 and c.d1.dot(u) > 0
    if c.kind == "line":
        return c.d1.cross(u) == 0
    return c.d1.cross(u) >= 0 and u.cross(c.d2) >= 0


def normal_cone(body: ConvexBody, p: Point) -> Cone:
    """Normal cone of a closed convex body at a point, classified exactly.

    Empty for points outside the body; {0} at interior points and for the
    full plane; otherwise a ray, line, sector or the full plane of
    directions depending on the local face.
    """
    if body.kind == EMPTY:
        raise GeometryError("normal cone of the empty body is undefined")
    if not contains(body, p):
        return Cone("empty")
    if body.kind == FULL:
        return Cone("zero")
    if body.kind == POINT:
        return Cone("full")
    if body.kind == SEGMENT:
        a, b = body.vertices
        if p == a:
            d = Direction.of(b.x - a.x, b.y - a.y)
            return Cone.sector(d.perp_ccw(), d.perp_ccw().neg())
        if p == b:
            d = Direction.of(a.x - b.x, a.y - b.y)
            return Cone.sector(d.perp_ccw(), d.perp_ccw().neg())
        d = Direction.of(b.x - a.x, b.y - a.y)
        return Cone("line", d.perp_ccw())
    verts = body.vertices
    n = len(verts)
    hps = body.half_planes()
    values = [h.value(p) for h in hps]
    on = [i for i, v in enumerate(values) if v == 0]
    if not on:
        return Cone("zero")
    if len(on) == 1:
        return Cone("ray", hps[on[0]].normal)
    # p is the shared vertex of two consecutive edges i -> i+1
    i, j = on
    if (i + 1) % n != j:
        i, j = j, i
    return Cone.sector(hps[i].normal, hps[j].normal)


# -- small helpers used by certifiers -------------------------------------


def bounding_box(bodies: Iterable[ConvexBody], inflate=Fraction(1)) -> ConvexBody:
    """Axis-aligned box around all bounded bodies, inflated on each side."""
    xs: list[Fraction] = []
    ys: list[Fraction] = []
    for body in bodies:
        for v in body.vertices:
            xs.append(v.x)
            ys.append(v.y)
    if not xs:
        return ConvexBody.box(-inflate, -inflate, inflate, inflate)
    return ConvexBody.box(
        min(xs) - inflate, min(ys) - inflate, max(xs) + inflate, max(ys) + inflate
    )


def _point_segment_dist2(p: Point, a: Point, b: Point) -> Fraction:
    abx, aby = b.x - a.x, b.y - a.y
    apx, apy = p.x - a.x, p.y - a.y
    denom = abx * abx + aby * aby
    t = (apx * abx + apy * aby) / denom
    t = max(Fraction(0), min(Fraction(1), t))
    dx = apx - t * abx
    dy = apy - t * aby
    return dx * dx + dy * dy


def distance2(body: ConvexBody, p: Point) -> Fraction:
    """Squared euclidean distance from p to a nonempty bounded body."""
    if body.kind == EMPTY:
        raise GeometryError("distance to the empty body is undefined")
    if body.kind == FULL:
        return Fraction(0)
    if contains(body, p):
        return Fraction(0)
    if body.kind == POINT:
        q = body.vertices[0]
        return (p.x - q.x) ** 2 + (p.y - q.y) ** 2
    return min(_point_segment_dist2(p, a, b) for a, b in body.edges())


def support_value(body: ConvexBody, u: Direction) -> Fraction:
    """max over the body of <u, .> (bounded nonempty bodies)."""
    if body.kind in (EMPTY, FULL):
        raise GeometryError("support value needs a nonempty bounded body")
    return max(u.dx * v.x + u.dy * v.y for v in body.vertices)
