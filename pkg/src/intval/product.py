"""The valuation product.

For a countably generated phi = sum alpha_n chi(. ∩ C_n) and any
sigma-continuous valuation psi, the product is
(phi . psi)(K) = sum alpha_n psi(K ∩ C_n); when psi is itself countably
generated the product is again countably generated with the pairwise
intersections as bodies and the weight products as weights.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence, Union

from .geom import ConvexBody, intersect
from .valuation import (
    Body,
    InputError,
    Interval1,
    Representation,
    Term,
    Verdict,
    equal,
    evaluate,
)

# an oracle is a Representation or any evaluator K -> exact rational
ValuationOracle = Union[Representation, Callable[[Body], Fraction]]


def chi_oracle(K: Body) -> Fraction:
    """Euler characteristic of a convex body: 1 unless empty."""
    if isinstance(K, ConvexBody) and K.is_empty:
        return Fraction(0)
    return Fraction(1)


def as_oracle(psi: ValuationOracle) -> Callable[[Body], Fraction]:
    if isinstance(psi, Representation):
        return lambda K: evaluate(psi, K)
    return psi


def _intersect_1d(a: Interval1, b: Interval1) -> Interval1 | None:
    if a.is_full:
        return b
    if b.is_full:
        return a
    lo = max(a.lo, b.lo)
    hi = min(a.hi, b.hi)
    if lo > hi:
        return None
    return Interval1(lo, hi)


def product_cg(a: Representation, b: Representation) -> Representation:
    """Closed-form product of two countably generated representations."""
    if a.dim != b.dim:
        raise InputError("product requires matching dimensions")
    terms: list[Term] = []
    for ta in a.terms:
        for tb in b.terms:
            if a.dim == 2:
                body: Body | None = intersect(ta.body, tb.body)
                if body.is_empty:
                    body = None
            else:
                body = _intersect_1d(ta.body, tb.body)
            if body is not None:
                terms.append(Term(ta.weight * tb.weight, body))
    return Representation(a.dim, tuple(terms))


def product_eval(a: Representation, psi: ValuationOracle, K: Body) -> Fraction:
    """(a . psi)(K) = sum over terms of weight * psi(K ∩ body)."""
    oracle = as_oracle(psi)
    total = Fraction(0)
    for t in a.terms:
        if a.dim == 2:
            piece: Body | None = intersect(K, t.body)
            if piece.is_empty:
                piece = None
        else:
            piece = _intersect_1d(K, t.body)
        if piece is not None:
            total += t.weight * oracle(piece)
    return total


def representation_independence_probe(
    a1: Representation,
    a2: Representation,
    psi: ValuationOracle,
    probes: Sequence[Body],
) -> Verdict:
    """Groemer well-definedness: equal representations give equal products."""
    if not equal(a1, a2):
        raise InputError("representations are not equal")
    for K in probes:
        v1 = product_eval(a1, psi, K)
        v2 = product_eval(a2, psi, K)
        if v1 != v2:
            return Verdict(False, witness={"K": K, "value_1": v1, "value_2": v2})
    return Verdict(True)
