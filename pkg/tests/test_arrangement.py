"""Arrangement tests.

The decisive oracle is the partition property: exact shoelace areas of the
2-cells must sum to the window area, and body membership must be constant
on every cell (checked at extra interior points, not just the stored
sample).
"""

import random
from fractions import Fraction as F

import pytest

from intval.arrangement import WindowError, build_arrangement, sample_points
from intval.geom import ConvexBody, Point, contains, pt

from genutil import rand_body


def area(body: ConvexBody) -> F:
    if body.kind != "polygon":
        return F(0)
    vs = body.vertices
    total = F(0)
    for i in range(len(vs)):
        a, b = vs[i], vs[(i + 1) % len(vs)]
        total += a.x * b.y - b.x * a.y
    return total / 2


def interior_probes(cell) -> list[Point]:
    """Extra points in the relative interior of a cell."""
    s = cell.sample
    if cell.dim == 0:
        return [s]
    out = []
    for v in cell.hull.vertices:
        # points strictly between the sample and each vertex
        out.append(pt(s.x + (v.x - s.x) * F(1, 3), s.y + (v.y - s.y) * F(1, 3)))
        out.append(pt(s.x + (v.x - s.x) * F(5, 7), s.y + (v.y - s.y) * F(5, 7)))
    return out + [s]


def test_single_square():
    sq = ConvexBody.box(1, 1, 3, 3)
    window = ConvexBody.box(0, 0, 4, 4)
    arr = build_arrangement([sq], window)
    assert sum(area(c.hull) for c in arr.faces) == area(window)
    assert {v for v in arr.vertices if contains(sq, v)} >= set(sq.vertices)
    inside = [c for c in arr.faces if c.incidence[0]]
    assert sum(area(c.hull) for c in inside) == area(sq)
    assert not contains(sq, arr.outside_sample)
    assert not contains(window, arr.outside_sample)


def test_point_and_segment_bodies():
    p = ConvexBody.point(pt(2, 2))
    s = ConvexBody.segment(pt(0, 0), pt(4, 4))
    window = ConvexBody.box(0, 0, 4, 4)
    arr = build_arrangement([p, s], window)
    assert pt(2, 2) in arr.vertices
    # the segment is covered by 1-cells whose incidence includes it
    seg_cells = [c for c in arr.edges if c.incidence[1]]
    assert seg_cells
    for c in seg_cells:
        for v in c.hull.vertices:
            assert contains(s, v)


def test_window_must_contain_bodies():
    with pytest.raises(WindowError):
        build_arrangement(
            [ConvexBody.box(0, 0, 9, 9)], ConvexBody.box(0, 0, 4, 4)
        )


def test_partition_and_constant_incidence():
    rng = random.Random(23)
    for _ in range(25):
        bodies = [rand_body(rng, -3, 3, 1) for _ in range(rng.randint(1, 4))]
        window = ConvexBody.box(-4, -4, 4, 4)
        arr = build_arrangement(bodies, window)
        # exact area partition of the window by the 2-cells
        assert sum(area(c.hull) for c in arr.faces) == area(window)
        # membership constant per cell
        for c in arr.cells:
            for q in interior_probes(c):
                for i, b in enumerate(bodies):
                    assert contains(b, q) == c.incidence[i]
        # every body vertex appears as a 0-cell
        verts = set(arr.vertices)
        for b in bodies:
            for v in b.vertices:
                assert v in verts
        assert len(sample_points(arr)) == len(arr.cells) + 1
