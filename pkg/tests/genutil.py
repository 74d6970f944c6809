"""Seeded random generators shared by the test modules.

Everything is generated on small integer or low-denominator rational grids
so that exact rational arithmetic stays fast and degenerate incidences
(shared vertices, collinear edges, touching boundaries) actually occur.
"""

from __future__ import annotations

import random
from fractions import Fraction

from intval.geom import ConvexBody, Point, pt
from intval.line import StepFunction, Valuation1D
from intval.valuation import Interval1, Representation


def rand_fraction(rng: random.Random, lo: int, hi: int, max_den: int = 4) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def rand_point(rng: random.Random, lo: int = -4, hi: int = 4, max_den: int = 2) -> Point:
    return pt(rand_fraction(rng, lo, hi, max_den), rand_fraction(rng, lo, hi, max_den))


def rand_body(rng: random.Random, lo: int = -4, hi: int = 4, max_den: int = 2) -> ConvexBody:
    """Random nonempty bounded body; point/segment/polygon all occur."""
    npts = rng.randint(1, 5)
    return ConvexBody.from_hull(
        [rand_point(rng, lo, hi, max_den) for _ in range(npts)]
    )


def rand_planar_rep(
    rng: random.Random, max_terms: int = 8, lo: int = -4, hi: int = 4
) -> Representation:
    nterms = rng.randint(1, max_terms)
    pairs = []
    for _ in range(nterms):
        w = rng.choice([-2, -1, 1, 1, 1, 2])
        pairs.append((w, rand_body(rng, lo, hi)))
    return Representation.planar(*pairs)


def _shifted(body: ConvexBody, dx: Fraction, dy: Fraction) -> ConvexBody:
    return ConvexBody.from_hull([v.translated(dx, dy) for v in body.vertices])


def _star_block(rng: random.Random) -> list[tuple[int, ConvexBody]]:
    """The three-segments-minus-center pattern: monotone by the normal-cone
    covering argument (the three endpoint half-plane cones tile the plane)."""
    O = pt(0, 0)
    dirs = [(2, 0), (0, 2), (-2, -2)]
    return [
        (1, ConvexBody.segment(O, pt(dx, dy))) for dx, dy in dirs
    ] + [(-1, ConvexBody.point(O))]


def _wedge_block(rng: random.Random) -> list[tuple[int, ConvexBody]]:
    """Two overlapping rectangles plus the reflex corner point, minus their
    intersection: monotone (the corner term repairs the reflex vertex)."""
    A = ConvexBody.box(0, 0, 2, 1)
    B = ConvexBody.box(0, 0, 1, 2)
    return [(1, A), (1, B), (1, ConvexBody.point(pt(1, 1))),
            (-1, ConvexBody.box(0, 0, 1, 1))]


def _union_block(rng: random.Random) -> list[tuple[int, ConvexBody]]:
    """chi of a convex union of two boxes via inclusion-exclusion."""
    x0, x1 = sorted(rng.sample(range(0, 4), 2))
    split = rng.randint(1, 3)
    A = ConvexBody.box(x0, 0, x1, split)
    B = ConvexBody.box(x0, split - 1, x1, split + 1)
    return [(1, A), (1, B), (-1, ConvexBody.box(x0, split - 1, x1, split))]


def _positive_block(rng: random.Random) -> list[tuple[int, ConvexBody]]:
    return [(rng.choice([1, 2]), rand_body(rng, -2, 2, 1))
            for _ in range(rng.randint(1, 2))]


def rand_monotone_rep(rng: random.Random, scale_two: bool = True) -> Representation:
    """Random certified-monotone representation: a concatenation of shifted
    monotone building blocks, optionally doubled (weights become +-2)."""
    blocks = [_star_block, _wedge_block, _union_block, _positive_block]
    pairs: list[tuple[Fraction, ConvexBody]] = []
    for _ in range(rng.randint(1, 2)):
        block = rng.choice(blocks)(rng)
        dx = Fraction(rng.randint(-3, 3))
        dy = Fraction(rng.randint(-3, 3))
        factor = rng.choice([1, 2]) if scale_two else 1
        pairs.extend(
            (w * factor, _shifted(body, dx, dy)) for w, body in block
        )
    return Representation.planar(*pairs)


def rand_interval1(rng: random.Random, lo: int = -6, hi: int = 6) -> Interval1:
    if rng.random() < 0.1:
        return Interval1()
    a = rand_fraction(rng, lo, hi, 2)
    b = a + rand_fraction(rng, 0, 4, 2)
    return Interval1(a, b)


def rand_line_rep(rng: random.Random, max_terms: int = 5) -> Representation:
    return Representation.line(
        *[(rng.choice([1, 1, 2]), rand_interval1(rng))
          for _ in range(rng.randint(1, max_terms))]
    )


def rand_monotone_1d(
    rng: random.Random, max_breaks: int = 12, max_den: int = 8
) -> Valuation1D:
    """Random integer-valued monotone 1D valuation: non-decreasing integer
    step functions with f <= g and f(0) = 0."""
    n = rng.randint(0, max_breaks)
    bps = sorted(
        {rand_fraction(rng, -10, 10, max_den) for _ in range(n)}
    )
    n = len(bps)

    def rand_nondecreasing() -> list[Fraction]:
        seq = [Fraction(rng.randint(-3, 3))]
        for _ in range(2 * n):
            seq.append(seq[-1] + rng.randint(0, 2))
        return seq

    fs = rand_nondecreasing()
    gs = rand_nondecreasing()
    bump = rng.randint(0, 2)
    gs = [max(a, b + bump) for a, b in zip(fs, gs)]

    def build(seq: list[Fraction]) -> StepFunction:
        between = tuple(seq[0::2])
        at = tuple(seq[1::2])
        return StepFunction(tuple(bps), at, between)

    f = build(fs)
    g = build(gs)
    shift = f.value(0)
    return Valuation1D(f.plus_const(-shift), g.plus_const(-shift))
