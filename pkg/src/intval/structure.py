"""Support structure and canonicalization of planar representations.

The support of a monotone valuation is polyconvex; covering it by closed
convex components turns the inclusion-exclusion identity

    phi = chi|_F + sum_r (-1)^(r-1) sum_{i1<...<ir}
          (phi - chi)|_{K_i1 ∩ ... ∩ K_ir}

into a recursion that rewrites any certified-monotone integer-weight
representation into one with all weights +-1.  A unit-grid tiling extends
the rewrite to representations that straddle several windows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .arrangement import Arrangement, Cell, build_arrangement
from .geom import (
    ConvexBody,
    GeometryError,
    Point,
    bounding_box,
    contains,
    cross,
    intersect,
)
from .valuation import (
    InputError,
    Representation,
    Term,
    Verdict,
    default_window,
    evaluate,
    singleton_value,
)


class StructureError(ValueError):
    """Canonicalization could not proceed."""


class CoverIncompleteError(StructureError):
    """Greedy convex cover stalled; carries the partial cover."""

    def __init__(self, message: str, cover: "ConvexComponentCover"):
        super().__init__(message)
        self.cover = cover


@dataclass(frozen=True)
class SupportRegion:
    """Arrangement cells tagged with singleton values and support membership."""

    arrangement: Arrangement
    values: tuple[Fraction, ...]
    in_support: tuple[bool, ...]
    closure_warnings: tuple[Point, ...] = ()

    def support_cells(self) -> list[int]:
        return [i for i, flag in enumerate(self.in_support) if flag]

    def is_empty(self) -> bool:
        return not any(self.in_support)


@dataclass(frozen=True)
class ConvexComponentCover:
    components: tuple[ConvexBody, ...]
    method: str
    complete: bool
    leftover_samples: tuple[Point, ...] = ()


def support(rep: Representation, window: ConvexBody) -> SupportRegion:
    """Exact cell-tagged support {x : phi({x}) >= 1} inside the window."""
    if rep.dim != 2:
        raise InputError("support extraction is planar")
    if window.kind != "polygon":
        raise InputError("window must be a bounded polygon")
    bodies = [b for b in rep.bodies()] or [window]
    arr = build_arrangement(list(bodies), window)
    values = tuple(singleton_value(rep, c.sample) for c in arr.cells)
    flags = tuple(v >= 1 for v in values)

    # closedness: a boundary cell of an in-support open cell should itself
    # be in support when the input is monotone
    warnings: list[Point] = []
    for i, c in enumerate(arr.cells):
        if flags[i] or c.dim == 2:
            continue
        for j, d in enumerate(arr.cells):
            if flags[j] and d.dim > c.dim and contains(d.hull, c.sample):
                warnings.append(c.sample)
                break
    return SupportRegion(arr, values, flags, tuple(warnings))


def _point_on_edge(p: Point, a: Point, b: Point) -> bool:
    if cross(b.x - a.x, b.y - a.y, p.x - a.x, p.y - a.y) != 0:
        return False
    return (
        min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def _within_one_edge(X: ConvexBody, face: ConvexBody) -> bool:
    """Is the (point or segment) body X contained in one closed edge of face?"""
    for a, b in face.edges():
        if all(_point_on_edge(v, a, b) for v in X.vertices):
            return True
    return False


def hull_in_support(H: ConvexBody, region: SupportRegion) -> bool:
    """Does H avoid the relative interior of every out-of-support cell?

    The cells partition the window, so H lies in the support closure iff it
    misses every open out-cell; a convex intersection with a cell's closure
    misses the open cell iff it sits inside the cell's boundary.
    """
    if H.is_empty:
        return True
    arr = region.arrangement
    for i, c in enumerate(arr.cells):
        if region.in_support[i]:
            continue
        if c.dim == 0:
            if contains(H, c.sample):
                return False
        else:
            X = intersect(H, c.hull)
            if X.is_empty:
                continue
            if c.dim == 1:
                # X misses the open cell only if it is one of the endpoints;
                # any segment intersection has interior points in the cell
                u, v = c.hull.vertices[0], c.hull.vertices[-1]
                if X.kind != "point" or X.vertices[0] not in (u, v):
                    return False
            else:
                if X.kind == "polygon" or not _within_one_edge(X, c.hull):
                    return False
    return True


def _merge_hull(cells: Sequence[Cell]) -> ConvexBody:
    pts = [v for c in cells for v in c.hull.vertices]
    return ConvexBody.from_hull(pts)


def convex_components(region: SupportRegion) -> ConvexComponentCover:
    """Greedy convex cover of the support.

    Seeds at an uncovered in-support cell and keeps merging in-support cells
    while the merged hull stays inside the support.  Stalling leaves the
    remaining cells reported, never guessed.
    """
    arr = region.arrangement
    todo = set(region.support_cells())
    order = sorted(todo, key=lambda i: (-arr.cells[i].dim,
                                        arr.cells[i].sample.x,
                                        arr.cells[i].sample.y))
    components: list[ConvexBody] = []
    leftovers: list[Point] = []
    covered: set[int] = set()
    for seed in order:
        if seed in covered:
            continue
        seed_cell = arr.cells[seed]
        if not hull_in_support(seed_cell.hull, region):
            leftovers.append(seed_cell.sample)
            covered.add(seed)
            continue
        members = [seed_cell]
        hull = seed_cell.hull
        grown = True
        while grown:
            grown = False
            for j in order:
                if j in covered or arr.cells[j] in members:
                    continue
                cand = _merge_hull(members + [arr.cells[j]])
                if hull_in_support(cand, region):
                    members.append(arr.cells[j])
                    hull = cand
                    grown = True
        components.append(hull)
        for j in todo:
            cj = arr.cells[j]
            if all(contains(hull, v) for v in cj.hull.vertices):
                covered.add(j)
    complete = not leftovers
    return ConvexComponentCover(
        tuple(components), "greedy", complete, tuple(leftovers)
    )


def _param_t(x: Point, y: Point, p: Point) -> Fraction:
    dx, dy = y.x - x.x, y.y - x.y
    return ((p.x - x.x) * dx + (p.y - x.y) * dy) / (dx * dx + dy * dy)


def invisibility_check(rep: Representation, P: Sequence[Point]) -> Verdict:
    """Is P an invisibility set: phi >= 1 on P, and every open connecting
    segment contains a point of singleton value 0?

    Along a fixed segment the singleton value is piecewise constant with
    breakpoints where the segment meets a body boundary, so testing the
    breakpoints and the midpoints of the pieces is exact.
    """
    if rep.dim != 2:
        raise InputError("invisibility sets are planar")
    if len(P) < 2:
        raise InputError("invisibility set needs at least two points")
    for x in P:
        if singleton_value(rep, x) < 1:
            return Verdict(False, witness={"point": x,
                                           "value": singleton_value(rep, x)})
    for x, y in combinations(P, 2):
        if x == y:
            return Verdict(False, witness={"pair": (x, y),
                                           "reason": "duplicate point"})
        seg = ConvexBody.segment(x, y)
        ts: set[Fraction] = {Fraction(0), Fraction(1)}
        for body in rep.bodies():
            piece = intersect(seg, body)
            if piece.is_empty:
                continue
            for v in piece.vertices:
                ts.add(_param_t(x, y, v))
        ordered = sorted(t for t in ts if 0 <= t <= 1)
        candidates = [t for t in ordered if 0 < t < 1]
        candidates += [
            (a + b) / 2 for a, b in zip(ordered, ordered[1:])
        ]
        found = None
        for t in candidates:
            z = Point(x.x + t * (y.x - x.x), x.y + t * (y.y - x.y))
            if singleton_value(rep, z) == 0:
                found = z
                break
        if found is None:
            return Verdict(False, witness={"pair": (x, y),
                                           "reason": "no zero point between"})
    return Verdict(True)


def invis_bound_probe(rep: Representation, P: Sequence[Point]) -> Verdict:
    """Probe phi(conv P) > n/2 for n = floor(log4 |P|)."""
    check = invisibility_check(rep, P)
    if not check:
        raise InputError(f"P is not an invisibility set: {check.witness}")
    n = 0
    while 4 ** (n + 1) <= len(P):
        n += 1
    hull = ConvexBody.from_hull(list(P))
    value = evaluate(rep, hull)
    holds = value > Fraction(n, 2)
    return Verdict(holds, witness=None if holds else {
        "n": n, "hull_value": value,
    }, details={"n": n, "hull_value": value})


def _restrict(rep: Representation, L: ConvexBody) -> Representation:
    """phi|_L = phi(. ∩ L): intersect every term body, drop empties."""
    terms = []
    for t in rep.terms:
        piece = intersect(t.body, L)
        if not piece.is_empty:
            terms.append(Term(t.weight, piece))
    return Representation(2, tuple(terms))


def _max_singleton(rep: Representation) -> Fraction:
    if not rep.terms:
        return Fraction(0)
    window = default_window(rep)
    arr = build_arrangement(list(rep.bodies()), window)
    values = [singleton_value(rep, c.sample) for c in arr.cells]
    values.append(singleton_value(rep, arr.outside_sample))
    return max(values)


def _nonempty_intersections(
    components: Sequence[ConvexBody],
) -> list[tuple[int, ConvexBody]]:
    """(subset size r, intersection) for every nonempty intersection of a
    nonempty subset of components; empty intersections prune their supersets."""
    level: list[tuple[tuple[int, ...], ConvexBody]] = [
        ((i,), C) for i, C in enumerate(components)
    ]
    out: list[tuple[int, ConvexBody]] = [(1, C) for _, C in level]
    r = 1
    while level:
        nxt: list[tuple[tuple[int, ...], ConvexBody]] = []
        for idxs, I in level:
            for j in range(idxs[-1] + 1, len(components)):
                J = intersect(I, components[j])
                if not J.is_empty:
                    nxt.append((idxs + (j,), J))
        r += 1
        out.extend((r, J) for _, J in nxt)
        level = nxt
    return out


def canonicalize(
    rep: Representation, window: Optional[ConvexBody] = None
) -> Representation:
    """Rewrite a certified-monotone integer-weight representation into an
    equal one whose weights are all +-1."""
    from .admissibility import certify_monotone

    if rep.dim != 2:
        raise InputError("canonicalize is planar")
    if not rep.integer_weights():
        raise InputError("canonicalize requires integer weights")
    if any(b.is_full for b in rep.bodies()):
        raise InputError("canonicalize requires bounded bodies")
    verdict = certify_monotone(rep)
    if not verdict:
        raise StructureError(
            f"input is not monotone: witness {verdict.witness}"
        )
    if window is None:
        window = default_window(rep)
    for b in rep.bodies():
        for v in b.vertices:
            if not contains(window, v):
                raise InputError("window does not contain all bodies")
    bound = evaluate(rep, window)
    return _canonicalize_rec(rep, window, bound)


def _canonicalize_rec(
    rep: Representation, window: ConvexBody, depth_bound: Fraction
) -> Representation:
    M = _max_singleton(rep)
    if M == 0:
        return Representation(2, ())
    if depth_bound < M:
        raise StructureError("recursion measure failed to decrease")
    region = support(rep, window)
    cover = convex_components(region)
    if not cover.complete:
        raise CoverIncompleteError(
            "greedy convex cover stalled on "
            f"{len(cover.leftover_samples)} cells", cover
        )
    pieces = _nonempty_intersections(cover.components)
    out_terms: list[Term] = []
    for r, I in pieces:
        sign = Fraction(1 if r % 2 == 1 else -1)
        # chi|_F contribution of this intersection
        out_terms.append(Term(sign, I))
        # recurse on (phi - chi)|_I, whose maximum drops below M
        sub = _restrict(rep, I).concat(
            Representation.planar((-1, I))
        )
        sub_canon = _canonicalize_rec(sub, window, M - 1)
        out_terms.extend(
            Term(sign * t.weight, t.body) for t in sub_canon.terms
        )
    return Representation(2, tuple(out_terms))


def _frange(lo: Fraction, hi: Fraction) -> list[int]:
    """Integers i with [i, i+1] meeting [lo, hi]."""
    import math

    start = math.floor(lo)
    stop = math.ceil(hi)
    return list(range(start, max(stop, start + 1)))


def tile_globalize(
    rep: Representation, offset: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
) -> Representation:
    """Canonicalize per unit grid cell and recombine by inclusion-exclusion.

    The closed unit squares Q_ij tile the plane; distinct squares intersect
    in shared edges or corners and intersections past the fourth order are
    empty, so the inclusion-exclusion over the finitely many squares meeting
    the bodies terminates.
    """
    if rep.dim != 2:
        raise InputError("tile_globalize is planar")
    if not rep.terms:
        return Representation(2, ())
    if any(b.is_full for b in rep.bodies()):
        raise InputError("tile_globalize requires bounded bodies")
    ox, oy = offset
    pts = [v for b in rep.bodies() for v in b.vertices]
    xs = _frange(min(p.x for p in pts) - ox, max(p.x for p in pts) - ox)
    ys = _frange(min(p.y for p in pts) - oy, max(p.y for p in pts) - oy)
    squares = [
        ConvexBody.box(i + ox, j + oy, i + 1 + ox, j + 1 + oy)
        for i in xs
        for j in ys
    ]
    # keep only squares actually meeting some body
    squares = [
        Q for Q in squares
        if any(not intersect(Q, b).is_empty for b in rep.bodies())
    ]
    out_terms: list[Term] = []
    for r, I in _nonempty_intersections(squares):
        sign = Fraction(1 if r % 2 == 1 else -1)
        piece = _restrict(rep, I)
        if not piece.terms:
            continue
        pw = bounding_box([b for b in piece.bodies()], Fraction(1))
        canon = canonicalize(piece, pw)
        out_terms.extend(Term(sign * t.weight, t.body) for t in canon.terms)
    return Representation(2, tuple(out_terms))
