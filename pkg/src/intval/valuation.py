"""Countably generated valuations with finite term lists.

A representation is a weighted family of nonempty convex bodies; it acts on
a query body K as the weighted sum of hit indicators of K against the
family.  Equality of representations is decided semantically on singletons
over a combined arrangement, which is sound and complete because
integer-valued sigma-continuous valuations agreeing on singletons agree
everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .arrangement import Arrangement, build_arrangement, sample_points
from .geom import (
    ConvexBody,
    GeometryError,
    HalfPlane,
    Point,
    bounding_box,
    contains,
    intersect,
    scalar,
)


class InputError(ValueError):
    """Malformed representation or query."""


@dataclass(frozen=True)
class Interval1:
    """Closed 1D body: a bounded interval [lo, hi] (a point if lo == hi) or
    the full line (lo is None and hi is None)."""

    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None

    def __post_init__(self):
        if (self.lo is None) != (self.hi is None):
            raise InputError("half-infinite 1D bodies are not supported")
        if self.lo is not None:
            object.__setattr__(self, "lo", scalar(self.lo))
            object.__setattr__(self, "hi", scalar(self.hi))
            if self.lo > self.hi:
                raise InputError("interval endpoints out of order")

    @property
    def is_full(self) -> bool:
        return self.lo is None

    def hits(self, a: Fraction, b: Fraction) -> bool:
        """Does [a, b] intersect this closed body?"""
        if self.is_full:
            return True
        return max(a, self.lo) <= min(b, self.hi)

    def contains(self, x: Fraction) -> bool:
        return self.is_full or self.lo <= x <= self.hi


Body = Union[ConvexBody, Interval1]


@dataclass(frozen=True)
class Term:
    weight: Fraction
    body: Body

    def __post_init__(self):
        if self.weight == 0:
            raise InputError("zero-weight term")
        if isinstance(self.body, ConvexBody) and self.body.is_empty:
            raise InputError("empty body in term")


@dataclass(frozen=True)
class Representation:
    dim: int
    terms: tuple[Term, ...]

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise InputError("dim must be 1 or 2")
        for t in self.terms:
            planar = isinstance(t.body, ConvexBody)
            if planar != (self.dim == 2):
                raise InputError("term body does not match representation dim")

    @staticmethod
    def planar(*pairs) -> "Representation":
        return Representation(
            2, tuple(Term(scalar(w), body) for w, body in pairs)
        )

    @staticmethod
    def line(*pairs) -> "Representation":
        return Representation(
            1, tuple(Term(scalar(w), body) for w, body in pairs)
        )

    def bodies(self) -> list[Body]:
        return [t.body for t in self.terms]

    def integer_weights(self) -> bool:
        return all(t.weight.denominator == 1 for t in self.terms)

    def concat(self, other: "Representation") -> "Representation":
        if self.dim != other.dim:
            raise InputError("dim mismatch")
        return Representation(self.dim, self.terms + other.terms)

    def scaled(self, factor) -> "Representation":
        factor = scalar(factor)
        if factor == 0:
            return Representation(self.dim, ())
        return Representation(
            self.dim, tuple(Term(t.weight * factor, t.body) for t in self.terms)
        )


def chi_representation(dim: int = 2) -> Representation:
    """The Euler characteristic: a single full-space term of weight one."""
    if dim == 2:
        return Representation.planar((1, ConvexBody.full()))
    return Representation.line((1, Interval1()))


@dataclass(frozen=True)
class Verdict:
    """Outcome of a certification: holds, or fails with re-checkable witness."""

    holds: bool
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds


def evaluate(rep: Representation, K: Body) -> Fraction:
    """Weighted sum of Euler characteristics of K against the term bodies."""
    total = Fraction(0)
    if rep.dim == 2:
        if not isinstance(K, ConvexBody):
            raise InputError("planar representation evaluated on non-planar body")
        if K.is_empty:
            return total
        for t in rep.terms:
            if not intersect(K, t.body).is_empty:
                total += t.weight
        return total
    if not isinstance(K, Interval1):
        raise InputError("1D representation evaluated on non-interval body")
    for t in rep.terms:
        if K.is_full or t.body.is_full or t.body.hits(K.lo, K.hi):
            total += t.weight
    return total


def singleton_value(rep: Representation, x) -> Fraction:
    """Value on the singleton {x}, computed from indicator sums."""
    total = Fraction(0)
    if rep.dim == 2:
        for t in rep.terms:
            if contains(t.body, x):
                total += t.weight
    else:
        x = scalar(x)
        for t in rep.terms:
            if t.body.contains(x):
                total += t.weight
    return total


def default_window(*reps: Representation, inflate=Fraction(1)) -> ConvexBody:
    bodies = [b for rep in reps for b in rep.bodies() if isinstance(b, ConvexBody)]
    return bounding_box([b for b in bodies if b.is_bounded], inflate)


def combined_arrangement(
    *reps: Representation, window: Optional[ConvexBody] = None
) -> tuple[Arrangement, list[list[tuple[int, Fraction]]]]:
    """Arrangement of all distinct bodies of the given planar representations.

    Returns the arrangement plus, per representation, the list of
    (body-index, weight) pairs referring into the arrangement's body list.
    """
    for rep in reps:
        if rep.dim != 2:
            raise InputError("combined arrangement needs planar representations")
    if window is None:
        window = default_window(*reps)
    index: dict[ConvexBody, int] = {}
    bodies: list[ConvexBody] = []
    refs: list[list[tuple[int, Fraction]]] = []
    for rep in reps:
        pairs = []
        for t in rep.terms:
            if t.body not in index:
                index[t.body] = len(bodies)
                bodies.append(t.body)
            pairs.append((index[t.body], t.weight))
        refs.append(pairs)
    if not bodies:
        bodies = [window]
        arr = build_arrangement(bodies, window)
        return arr, refs
    arr = build_arrangement(bodies, window)
    return arr, refs


def _value_from_incidence(pairs, incidence) -> Fraction:
    return sum((w for i, w in pairs if incidence[i]), Fraction(0))


def equal(
    repA: Representation,
    repB: Representation,
    window: Optional[ConvexBody] = None,
) -> Verdict:
    """Semantic equality of two representations.

    Planar case: singleton values are compared on every cell sample of the
    combined arrangement plus the unbounded-face representative.  1D case:
    compared at interval endpoints, midpoints between consecutive endpoints,
    and tail points.
    """
    if repA.dim != repB.dim:
        raise InputError("dim mismatch")
    if repA.dim == 1:
        return _equal_1d(repA, repB)
    if window is None:
        window = default_window(repA, repB)
    arr, (pa, pb) = combined_arrangement(repA, repB, window=window)
    for cell in arr.cells:
        va = _value_from_incidence(pa, cell.incidence)
        vb = _value_from_incidence(pb, cell.incidence)
        if va != vb:
            return Verdict(
                False,
                witness={"point": cell.sample, "value_a": va, "value_b": vb},
            )
    va = _value_from_incidence(pa, arr.outside_incidence)
    vb = _value_from_incidence(pb, arr.outside_incidence)
    if va != vb:
        return Verdict(
            False,
            witness={"point": arr.outside_sample, "value_a": va, "value_b": vb},
        )
    return Verdict(True)


def _equal_1d(repA: Representation, repB: Representation) -> Verdict:
    ends = sorted(
        {e for rep in (repA, repB) for b in rep.bodies() if not b.is_full
         for e in (b.lo, b.hi)}
    )
    probes: list[Fraction] = []
    if not ends:
        probes.append(Fraction(0))
    else:
        probes.append(ends[0] - 1)
        for a, b in zip(ends, ends[1:]):
            probes.append(a)
            probes.append((a + b) / 2)
        probes.append(ends[-1])
        probes.append(ends[-1] + 1)
    for x in probes:
        va = singleton_value(repA, x)
        vb = singleton_value(repB, x)
        if va != vb:
            return Verdict(False, witness={"point": x, "value_a": va, "value_b": vb})
    return Verdict(True)


def additivity_probe(rep: Representation, K: ConvexBody, h: HalfPlane) -> Verdict:
    """Exact check of the valuation identity along a half-plane split of K."""
    if rep.dim != 2:
        raise InputError("additivity probe is planar")
    if K.is_empty:
        raise InputError("K must be nonempty")
    from .geom import clip

    k_minus = clip(K, h)
    k_plus = clip(K, h.complement())
    k_line = clip(k_minus, h.complement()) if not k_minus.is_empty else k_minus
    lhs = evaluate(rep, K)
    rhs = (
        evaluate(rep, k_minus) + evaluate(rep, k_plus) - evaluate(rep, k_line)
    )
    if lhs == rhs:
        return Verdict(True, details={"value": lhs})
    return Verdict(
        False,
        witness={
            "K": K,
            "halfplane": h,
            "phi_K": lhs,
            "phi_minus": evaluate(rep, k_minus),
            "phi_plus": evaluate(rep, k_plus),
            "phi_boundary": evaluate(rep, k_line),
        },
    )


def shrink_probe(rep: Representation, x: Point, depth: int) -> Verdict:
    """Evaluate on nested boxes around x and check stabilization to phi({x})."""
    if depth < 1:
        raise InputError("depth must be at least 1")
    if rep.dim != 2:
        raise InputError("shrink probe is planar")
    target = singleton_value(rep, x)
    values = []
    for n in range(1, depth + 1):
        r = Fraction(1, 2**n)
        box = ConvexBody.box(x.x - r, x.y - r, x.x + r, x.y + r)
        values.append(evaluate(rep, box))
    stable_from = None
    for n in range(depth, 0, -1):
        if values[n - 1] == target:
            stable_from = n
        else:
            break
    if stable_from is None:
        return Verdict(
            False, witness={"point": x, "values": values, "singleton": target}
        )
    return Verdict(True, details={"stable_from": stable_from, "values": values})
