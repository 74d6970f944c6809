"""Support, convex covers, invisibility sets and canonicalization."""

import random
from fractions import Fraction as F

import pytest

from intval.geom import ConvexBody, contains, pt
from intval.structure import (
    CoverIncompleteError,
    StructureError,
    canonicalize,
    convex_components,
    hull_in_support,
    invis_bound_probe,
    invisibility_check,
    support,
    tile_globalize,
)
from intval.valuation import (
    InputError,
    Representation,
    default_window,
    equal,
    evaluate,
    singleton_value,
)

from genutil import rand_body, rand_monotone_rep


def star_rep():
    O = pt(0, 0)
    return Representation.planar(
        (1, ConvexBody.segment(O, pt(1, 0))),
        (1, ConvexBody.segment(O, pt(0, 1))),
        (1, ConvexBody.segment(O, pt(-1, -1))),
        (-1, ConvexBody.point(O)),
    )


def test_support_trivial():
    window = ConvexBody.box(-1, -1, 2, 2)
    assert support(Representation(2, ()), window).is_empty()
    cancel = Representation.planar(
        (1, ConvexBody.box(0, 0, 1, 1)), (-1, ConvexBody.box(0, 0, 1, 1))
    )
    assert support(cancel, window).is_empty()


def test_support_star():
    rep = star_rep()
    region = support(rep, default_window(rep))
    assert not region.closure_warnings
    arr = region.arrangement
    for i, c in enumerate(arr.cells):
        on_star = any(contains(b, c.sample) for b in rep.bodies()[:3])
        assert region.in_support[i] == on_star
    # O itself carries value 2
    for i, c in enumerate(arr.cells):
        if c.dim == 0 and c.sample == pt(0, 0):
            assert region.values[i] == 2


def test_support_closure_warning():
    # +square with one boundary edge cancelled: not closed, and not monotone
    rep = Representation.planar(
        (1, ConvexBody.box(0, 0, 2, 2)),
        (-1, ConvexBody.segment(pt(0, 0), pt(2, 0))),
    )
    region = support(rep, default_window(rep))
    assert region.closure_warnings
    cover = convex_components(region)
    assert not cover.complete
    assert cover.leftover_samples


def test_convex_components_disjoint_squares():
    rep = Representation.planar(
        (1, ConvexBody.box(0, 0, 1, 1)), (1, ConvexBody.box(3, 0, 4, 1))
    )
    cover = convex_components(support(rep, default_window(rep)))
    assert cover.complete
    assert len(cover.components) == 2
    assert {frozenset(c.vertices) for c in cover.components} == {
        frozenset(ConvexBody.box(0, 0, 1, 1).vertices),
        frozenset(ConvexBody.box(3, 0, 4, 1).vertices),
    }


def test_convex_components_l_shape():
    rep = Representation.planar(
        (1, ConvexBody.box(0, 0, 3, 1)),
        (1, ConvexBody.box(0, 0, 1, 3)),
        (-1, ConvexBody.box(0, 0, 1, 1)),
    )
    region = support(rep, default_window(rep))
    cover = convex_components(region)
    assert cover.complete
    assert len(cover.components) == 2
    for c in cover.components:
        assert hull_in_support(c, region)
    # union covers both rectangles' sample grid
    for x in range(4):
        for y in range(4):
            p = pt(x, y)
            if singleton_value(rep, p) >= 1:
                assert any(contains(c, p) for c in cover.components)


def test_convex_components_star():
    rep = star_rep()
    region = support(rep, default_window(rep))
    cover = convex_components(region)
    assert cover.complete
    assert len(cover.components) == 3
    assert all(c.kind == "segment" for c in cover.components)
    for c in cover.components:
        assert hull_in_support(c, region)


def test_invisibility_check():
    two = Representation.planar(
        (1, ConvexBody.box(0, 0, 1, 1)), (1, ConvexBody.box(3, 0, 4, 1))
    )
    assert invisibility_check(two, [pt(1, 0), pt(3, 0)]).holds
    assert not invisibility_check(two, [pt(0, 0), pt(1, 1)]).holds
    assert not invisibility_check(two, [pt(2, 0), pt(3, 0)]).holds
    with pytest.raises(InputError):
        invisibility_check(two, [pt(0, 0)])


def test_invis_bound_probe():
    pts4 = [pt(0, 0), pt(3, 0), pt(0, 3), pt(3, 3)]
    rep4 = Representation.planar(*[(1, ConvexBody.point(p)) for p in pts4])
    v = invis_bound_probe(rep4, pts4)
    assert v.holds and v.details == {"n": 1, "hull_value": F(4)}
    # |P| = 2: n = 0, phi(hull) >= 1 > 0
    rep2 = Representation.planar(
        (1, ConvexBody.point(pt(0, 0))), (1, ConvexBody.point(pt(2, 0)))
    )
    v = invis_bound_probe(rep2, [pt(0, 0), pt(2, 0)])
    assert v.holds and v.details["n"] == 0
    with pytest.raises(InputError):
        invis_bound_probe(rep2, [pt(0, 0), pt(1, 0)])


def test_canonicalize_fixed_cases():
    sq = Representation.planar((1, ConvexBody.box(0, 0, 2, 2)))
    c = canonicalize(sq)
    assert [(t.weight, t.body) for t in c.terms] == [
        (F(1), ConvexBody.box(0, 0, 2, 2))
    ]
    double = Representation.planar((2, ConvexBody.box(0, 0, 1, 1)))
    c = canonicalize(double)
    assert len(c.terms) == 2
    assert all(t.weight == 1 and t.body == ConvexBody.box(0, 0, 1, 1)
               for t in c.terms)
    assert equal(double, c).holds


def test_canonicalize_star():
    rep = star_rep()
    c = canonicalize(rep)
    assert all(abs(t.weight) == 1 for t in c.terms)
    assert equal(rep, c).holds


def test_canonicalize_rejects_bad_inputs():
    with pytest.raises(StructureError):
        canonicalize(
            Representation.planar(
                (1, ConvexBody.box(0, 0, 1, 1)),
                (-1, ConvexBody.point(pt(F(1, 2), F(1, 2)))),
            )
        )
    with pytest.raises(InputError):
        canonicalize(
            Representation.planar((F(1, 2), ConvexBody.box(0, 0, 1, 1)))
        )
    with pytest.raises(InputError):
        canonicalize(Representation.planar((1, ConvexBody.full())))
    with pytest.raises(InputError):
        canonicalize(
            Representation.planar((1, ConvexBody.box(0, 0, 4, 4))),
            window=ConvexBody.box(0, 0, 1, 1),
        )


def test_canonicalize_random_monotone():
    rng = random.Random(61)
    done = 0
    failures = 0
    while done < 12:
        rep = rand_monotone_rep(rng)
        try:
            c = canonicalize(rep)
        except CoverIncompleteError:
            failures += 1
            done += 1
            continue
        assert all(abs(t.weight) == 1 for t in c.terms)
        assert equal(rep, c).holds
        done += 1
    assert failures <= 2


def test_tile_globalize():
    assert tile_globalize(Representation(2, ())).terms == ()
    inside = Representation.planar(
        (2, ConvexBody.box(F(1, 4), F(1, 4), F(3, 4), F(3, 4)))
    )
    g = tile_globalize(inside)
    assert equal(inside, g).holds
    assert all(abs(t.weight) == 1 for t in g.terms)
    straddle = Representation.planar((1, ConvexBody.box(F(1, 2), 0, F(3, 2), 1)))
    g = tile_globalize(straddle)
    assert equal(straddle, g).holds
    # shifted grid exercises different straddling
    g = tile_globalize(straddle, offset=(F(1, 2), F(1, 2)))
    assert equal(straddle, g).holds
