"""Monotonicity certification for planar representations.

A representation with integer weights is monotone iff its negative family
is admissible with respect to its positive family: at every point, and for
every direction, the negative normal-cone indicator count is dominated by
the positive one.  The check reduces to finitely many critical points
(arrangement vertices and midpoints of edges on negative-body boundaries)
and finitely many critical directions per point (cone boundary directions
plus one direction inside each gap between them).  On failure a concrete
nested pair K within L with phi(K) > phi(L) is constructed following the
shrinking-neighbourhood argument.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arrangement import build_arrangement
from .geom import (
    Cone,
    ConvexBody,
    Direction,
    GeometryError,
    HalfPlane,
    Point,
    clip,
    cone_contains,
    contains,
    distance2,
    normal_cone,
    support_value,
)
from .valuation import (
    InputError,
    Representation,
    Verdict,
    default_window,
    evaluate,
    intersect,
    singleton_value,
)

AXES = (Direction(1, 0), Direction(0, 1), Direction(-1, 0), Direction(0, -1))


@dataclass
class AdmissibilityReport:
    admissible: bool
    failure_witness: Optional[dict] = None
    checked_points: list[Point] = field(default_factory=list)
    checked_directions_per_point: dict[Point, int] = field(default_factory=dict)


def _signed_families(rep: Representation) -> tuple[list[ConvexBody], list[ConvexBody]]:
    """Expand integer weights into multiset copies; (positives, negatives)."""
    if rep.dim != 2:
        raise InputError("admissibility is defined for planar representations")
    if not rep.integer_weights():
        raise InputError("admissibility requires integer weights")
    pos: list[ConvexBody] = []
    neg: list[ConvexBody] = []
    for t in rep.terms:
        copies = abs(int(t.weight))
        target = pos if t.weight > 0 else neg
        target.extend([t.body] * copies)
    return pos, neg


def _sorted_circular(dirs: set[Direction]) -> list[Direction]:
    def key(d: Direction):
        # quadrant-based exact angular order starting at direction (1, 0)
        if d.dy == 0:
            q = 0 if d.dx > 0 else 4
        elif d.dy > 0:
            q = 1 if d.dx > 0 else (2 if d.dx == 0 else 3)
        else:
            q = 5 if d.dx < 0 else (6 if d.dx == 0 else 7)
        return (q, Fraction(d.dy, d.dx) if d.dx != 0 else Fraction(0))

    return sorted(dirs, key=key)


def critical_directions(cones: list[Cone]) -> list[Direction]:
    """Boundary directions of all cones, symmetrized, plus one direction in
    each circular gap.  Cone indicator counts are constant between boundary
    directions, so this set decides the direction-wise inequality."""
    dirs: set[Direction] = set(AXES)
    for cone in cones:
        for d in cone.boundary_directions():
            dirs.add(d)
            dirs.add(d.neg())
            dirs.add(d.perp_ccw())
            dirs.add(d.perp_ccw().neg())
    ordered = _sorted_circular(dirs)
    out = list(ordered)
    n = len(ordered)
    for i in range(n):
        a = ordered[i]
        b = ordered[(i + 1) % n]
        if a.cross(b) > 0:
            out.append(Direction.of(a.dx + b.dx, a.dy + b.dy))
    return out


def check_admissible(rep: Representation) -> AdmissibilityReport:
    """Decide the normal-cone domination inequality for all (x, u)."""
    pos, neg = _signed_families(rep)
    window = default_window(rep)
    bodies = rep.bodies() or [window]
    arr = build_arrangement(list(bodies), window)

    report = AdmissibilityReport(admissible=True)

    # u = 0 reduces to nonnegativity of singleton values everywhere
    for x in list(p for c in arr.cells for p in [c.sample]) + [arr.outside_sample]:
        if singleton_value(rep, x) < 0:
            report.admissible = False
            report.failure_witness = {
                "point": x,
                "direction": None,
                "lhs_count": len([c for c in neg if contains(c, x)]),
                "rhs_count": len([c for c in pos if contains(c, x)]),
            }
            return report

    def nontrivial_neg_at(x: Point) -> bool:
        return any(
            contains(c, x) and normal_cone(c, x).kind not in ("zero",)
            for c in neg
        )

    critical: list[Point] = []
    for cell in arr.cells:
        if cell.dim == 0 and nontrivial_neg_at(cell.sample):
            critical.append(cell.sample)
        elif cell.dim == 1 and nontrivial_neg_at(cell.sample):
            critical.append(cell.sample)

    for x in critical:
        neg_cones = [normal_cone(c, x) for c in neg]
        pos_cones = [normal_cone(c, x) for c in pos]
        dirs = critical_directions(neg_cones + pos_cones)
        report.checked_points.append(x)
        report.checked_directions_per_point[x] = len(dirs)
        for u in dirs:
            lhs = sum(1 for c in neg_cones if cone_contains(c, u))
            if lhs == 0:
                continue
            rhs = sum(1 for c in pos_cones if cone_contains(c, u))
            if lhs > rhs:
                report.admissible = False
                report.failure_witness = {
                    "point": x,
                    "direction": u,
                    "lhs_count": lhs,
                    "rhs_count": rhs,
                }
                return report
    return report


def certify_monotone(rep: Representation) -> Verdict:
    """Monotone iff the negative family is admissible w.r.t. the positive."""
    report = check_admissible(rep)
    return Verdict(report.admissible, witness=report.failure_witness,
                   details={"report": report})


def _rational_sqrt_lower(q: Fraction) -> Fraction:
    """A positive rational r with r*r <= q, for q > 0."""
    r = q / (q + 1)
    assert r * r <= q
    return r


def _violation_pair(rep: Representation, x: Point, u: Optional[Direction]):
    """Construct K within L around a witness (x, u) with phi(K) > phi(L)."""
    if u is None:
        # singleton value below zero: the empty set inside {x} already violates
        K = ConvexBody.empty()
        L = ConvexBody.point(x)
        return K, L, evaluate(rep, K), evaluate(rep, L)
    bodies = rep.bodies()
    clearance = None
    for body in bodies:
        if contains(body, x) or body.is_full:
            continue
        d2 = distance2(body, x)
        clearance = d2 if clearance is None else min(clearance, d2)
    # L-infinity radius eps with eps*sqrt(2) below the point-to-set clearance
    if clearance is None:
        eps = Fraction(1)
    else:
        eps = min(Fraction(1), _rational_sqrt_lower(clearance / 8))
    L = ConvexBody.box(x.x - eps, x.y - eps, x.x + eps, x.y + eps)

    # smallest positive reach of an incident body into the open half-plane
    delta = None
    for body in bodies:
        if not contains(body, x):
            continue
        if body.is_full:
            margin = eps * max(abs(u.dx), abs(u.dy))
            delta = margin if delta is None else min(delta, margin)
            continue
        best = support_value(body, u) - (u.dx * x.x + u.dy * x.y)
        if best <= 0:
            continue
        vy = max(
            (v for v in body.vertices),
            key=lambda v: u.dx * v.x + u.dy * v.y - (u.dx * x.x + u.dy * x.y),
        )
        span = max(abs(vy.x - x.x), abs(vy.y - x.y))
        t = Fraction(1) if span <= eps else eps / span
        margin = t * best
        delta = margin if delta is None else min(delta, margin)
    if delta is None:
        delta = eps
    delta = delta / 2
    off = HalfPlane(u.neg(), -(u.dx * x.x + u.dy * x.y) - delta)
    K = clip(L, off)
    return K, L, evaluate(rep, K), evaluate(rep, L)


def _subset(K: ConvexBody, L: ConvexBody) -> bool:
    if K.is_empty:
        return True
    if L.is_full:
        return True
    if K.is_full:
        return False
    return all(contains(L, v) for v in K.vertices)


def falsify_monotone(
    rep: Representation, budget: int, seed: int = 0
) -> Optional[tuple[ConvexBody, ConvexBody, Fraction, Fraction]]:
    """Search for a nested pair witnessing non-monotonicity.

    Deterministic phase: if the admissibility check fails, build the pair
    from its witness.  Randomized phase: `budget` nested-pair probes with a
    seeded generator.  Returns None when no violation is found.
    """
    if budget < 1:
        raise InputError("budget must be at least 1")
    report = check_admissible(rep)
    if not report.admissible:
        w = report.failure_witness
        K, L, vK, vL = _violation_pair(rep, w["point"], w["direction"])
        assert _subset(K, L) and vK > vL
        return K, L, vK, vL

    rng = random.Random(seed)
    window = default_window(rep)
    xs = [v.x for v in window.vertices]
    ys = [v.y for v in window.vertices]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)

    def rand_coord(lo, hi) -> Fraction:
        return lo + Fraction(rng.randint(0, 64), 64) * (hi - lo)

    for _ in range(budget):
        pts = [
            Point(rand_coord(lo_x, hi_x), rand_coord(lo_y, hi_y))
            for _ in range(rng.randint(3, 6))
        ]
        L = ConvexBody.from_hull(pts)
        if L.is_empty:
            continue
        nx, ny = rng.randint(-8, 8), rng.randint(-8, 8)
        if nx == 0 and ny == 0:
            nx = 1
        u = Direction.of(nx, ny)
        t = rand_coord(
            min(u.dx * v.x + u.dy * v.y for v in L.vertices),
            max(u.dx * v.x + u.dy * v.y for v in L.vertices),
        )
        K = clip(L, HalfPlane(u, t))
        K_val = evaluate(rep, K)
        L_val = evaluate(rep, L)
        if K_val > L_val:
            return K, L, K_val, L_val
    return None


def sweep_probe(rep: Representation, M: ConvexBody, u: Direction) -> Verdict:
    """Exact non-decreasingness of t -> phi(halfplane(u, t) ∩ M).

    Event values of t are the support values of u over the vertices of each
    clipped term body; between events the value is constant.
    """
    if rep.dim != 2:
        raise InputError("sweep probe is planar")
    if M.is_empty or M.is_full:
        raise InputError("M must be bounded and nonempty")
    # B_n meets {<u, p> <= t} iff t reaches the minimum of <u, .> over B_n,
    # so phi(t) jumps exactly at these minima
    minima: list[tuple[Fraction, Fraction]] = []
    events: set[Fraction] = set()
    for t in rep.terms:
        B = intersect(M, t.body)
        if not B.is_empty:
            m = min(u.dx * v.x + u.dy * v.y for v in B.vertices)
            minima.append((t.weight, m))
            events.add(m)
    ordered = sorted(events)
    probes: list[Fraction] = []
    if not ordered:
        probes = [Fraction(0)]
    else:
        probes.append(ordered[0] - 1)
        for a, b in zip(ordered, ordered[1:]):
            probes.append(a)
            probes.append((a + b) / 2)
        probes.append(ordered[-1])
        probes.append(ordered[-1] + 1)

    def value_at(t: Fraction) -> Fraction:
        return sum((w for w, m in minima if m <= t), Fraction(0))

    prev = None
    prev_t = None
    for t in probes:
        val = value_at(t)
        if prev is not None and val < prev:
            return Verdict(
                False,
                witness={"t_before": prev_t, "t_after": t,
                         "value_before": prev, "value_after": val,
                         "direction": u, "M": M},
            )
        prev, prev_t = val, t
    return Verdict(True)
