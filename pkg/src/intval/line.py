"""Valuations on the line.

Every valuation on closed intervals factors as phi([a,b]) = g(b) - f(a)
for a unique pair of functions with f(0) = 0.  For integer-valued monotone
valuations, f and g are non-decreasing integer step functions and the
valuation decomposes into hit-indicators of real intervals plus one-point
"virtual" terms; the decomposition is computed by the bracket-matching
algorithm over the discontinuities of f and g.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .geom import scalar


class LineError(ValueError):
    """Malformed 1D input or violated decomposition hypothesis."""


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant function with explicit values at breakpoints.

    `between` has one more entry than `breakpoints`: the values on the open
    intervals around and between them (both tails included).  No continuity
    convention is assumed; all three values around a breakpoint are stored.
    """

    breakpoints: tuple[Fraction, ...]
    at: tuple[Fraction, ...]
    between: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.at) != len(self.breakpoints):
            raise LineError("one value per breakpoint required")
        if len(self.between) != len(self.breakpoints) + 1:
            raise LineError("need n+1 open-interval values")
        if any(a >= b for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise LineError("breakpoints must be strictly increasing")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(v) -> "StepFunction":
        return StepFunction((), (), (scalar(v),))

    @staticmethod
    def indicator_from(t, closed: bool) -> "StepFunction":
        """1{x >= t} if closed else 1{x > t}."""
        t = scalar(t)
        return StepFunction((t,), (Fraction(1 if closed else 0),),
                            (Fraction(0), Fraction(1)))

    # -- pointwise access --------------------------------------------------

    def value(self, x) -> Fraction:
        x = scalar(x)
        i = bisect_right(self.breakpoints, x)
        if i > 0 and self.breakpoints[i - 1] == x:
            return self.at[i - 1]
        return self.between[i]

    def left_limit(self, i: int) -> Fraction:
        return self.between[i]

    def right_limit(self, i: int) -> Fraction:
        return self.between[i + 1]

    def left_jump(self, i: int) -> Fraction:
        return self.at[i] - self.between[i]

    def right_jump(self, i: int) -> Fraction:
        return self.between[i + 1] - self.at[i]

    # -- structural predicates --------------------------------------------

    def is_integer_valued(self) -> bool:
        return all(v.denominator == 1 for v in self.at + self.between)

    def is_nondecreasing(self) -> bool:
        seq: list[Fraction] = [self.between[0]]
        for i in range(len(self.breakpoints)):
            seq.append(self.at[i])
            seq.append(self.between[i + 1])
        return all(a <= b for a, b in zip(seq, seq[1:]))

    def is_left_continuous(self) -> bool:
        return all(self.left_jump(i) == 0 for i in range(len(self.breakpoints)))

    def is_right_continuous(self) -> bool:
        return all(self.right_jump(i) == 0 for i in range(len(self.breakpoints)))

    # -- algebra -----------------------------------------------------------

    def normalized(self) -> "StepFunction":
        """Drop breakpoints at which the function is locally constant."""
        bps: list[Fraction] = []
        ats: list[Fraction] = []
        between: list[Fraction] = [self.between[0]]
        for i, b in enumerate(self.breakpoints):
            if self.between[i] == self.at[i] == self.between[i + 1]:
                continue
            bps.append(b)
            ats.append(self.at[i])
            between.append(self.between[i + 1])
        return StepFunction(tuple(bps), tuple(ats), tuple(between))

    def add(self, other: "StepFunction") -> "StepFunction":
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        if not bps:
            return StepFunction.constant(self.between[0] + other.between[0])
        # representative point in each open gap of the merged breakpoint set
        reps = [bps[0] - 1]
        reps += [(a + b) / 2 for a, b in zip(bps, bps[1:])]
        reps.append(bps[-1] + 1)
        ats = tuple(self.value(b) + other.value(b) for b in bps)
        between = tuple(self.value(r) + other.value(r) for r in reps)
        return StepFunction(tuple(bps), ats, between)

    def plus_const(self, c) -> "StepFunction":
        c = scalar(c)
        return StepFunction(
            self.breakpoints,
            tuple(v + c for v in self.at),
            tuple(v + c for v in self.between),
        )

    def shift_right(self, c) -> "StepFunction":
        """s'(x) = s(x - c)."""
        c = scalar(c)
        return StepFunction(
            tuple(b + c for b in self.breakpoints), self.at, self.between
        )

    def reflect_negate(self) -> "StepFunction":
        """s'(x) = -s(-x)."""
        n = len(self.breakpoints)
        return StepFunction(
            tuple(-b for b in reversed(self.breakpoints)),
            tuple(-v for v in reversed(self.at)),
            tuple(-v for v in reversed(self.between)),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepFunction):
            return NotImplemented
        a = self.normalized()
        b = other.normalized()
        return (
            a.breakpoints == b.breakpoints
            and a.at == b.at
            and a.between == b.between
        )

    def __hash__(self):
        a = self.normalized()
        return hash((a.breakpoints, a.at, a.between))


def step_sum(functions: Iterable[StepFunction]) -> StepFunction:
    total = StepFunction.constant(0)
    for sf in functions:
        total = total.add(sf)
    return total


@dataclass(frozen=True)
class Valuation1D:
    """phi([a,b]) = g(b) - f(a), normalized so that f(0) = 0."""

    f: StepFunction
    g: StepFunction

    def __post_init__(self):
        if self.f.value(0) != 0:
            raise LineError("normalization f(0) = 0 violated")


def eval1(v: Valuation1D, a, b) -> Fraction:
    a = scalar(a)
    b = scalar(b)
    if a > b:
        raise LineError("interval endpoints out of order")
    return v.g.value(b) - v.f.value(a)


def singleton1(v: Valuation1D, x) -> Fraction:
    return eval1(v, x, x)


REAL = "real"
VIRTUAL_R = "virtual_r"  # point r, term 1{r in (a, b]}, written [r, r)
VIRTUAL_S = "virtual_s"  # point s, term 1{s in [a, b)}, written (s, s]


@dataclass(frozen=True)
class IntervalTerm:
    """One term of the 1D normal form.

    Real terms are hit-indicators of an interval with the stated openness
    (infinite sides are open).  Virtual terms carry a single point.
    """

    kind: str
    lo: Optional[Fraction]
    hi: Optional[Fraction]
    lo_closed: bool
    hi_closed: bool

    @staticmethod
    def real(lo, hi, lo_closed: bool, hi_closed: bool) -> "IntervalTerm":
        lo = None if lo is None else scalar(lo)
        hi = None if hi is None else scalar(hi)
        if lo is None and lo_closed:
            raise LineError("infinite side must be open")
        if hi is None and hi_closed:
            raise LineError("infinite side must be open")
        if lo is not None and hi is not None:
            if lo > hi:
                raise LineError("endpoints out of order")
            if lo == hi and not (lo_closed and hi_closed):
                raise LineError("degenerate real interval must be closed")
        return IntervalTerm(REAL, lo, hi, lo_closed, hi_closed)

    @staticmethod
    def virtual_r(r) -> "IntervalTerm":
        r = scalar(r)
        return IntervalTerm(VIRTUAL_R, r, r, True, False)

    @staticmethod
    def virtual_s(s) -> "IntervalTerm":
        s = scalar(s)
        return IntervalTerm(VIRTUAL_S, s, s, False, True)

    def evaluate(self, a, b) -> Fraction:
        a = scalar(a)
        b = scalar(b)
        one = Fraction(1)
        zero = Fraction(0)
        if self.kind == VIRTUAL_R:
            return one if a < self.lo <= b else zero
        if self.kind == VIRTUAL_S:
            return one if a <= self.lo < b else zero
        # hit test: does [a, b] meet the real interval?
        if self.lo is not None:
            if b < self.lo or (b == self.lo and not self.lo_closed):
                return zero
        if self.hi is not None:
            if a > self.hi or (a == self.hi and not self.hi_closed):
                return zero
        return one

    def fg(self) -> tuple[StepFunction, StepFunction]:
        """The (f_n, g_n) pair of this single term."""
        if self.kind == VIRTUAL_R:
            sf = StepFunction.indicator_from(self.lo, True)
            return sf, sf
        if self.kind == VIRTUAL_S:
            sf = StepFunction.indicator_from(self.lo, False)
            return sf, sf
        g = (
            StepFunction.constant(1)
            if self.lo is None
            else StepFunction.indicator_from(self.lo, self.lo_closed)
        )
        f = (
            StepFunction.constant(0)
            if self.hi is None
            else StepFunction.indicator_from(self.hi, not self.hi_closed)
        )
        return f, g

    def __str__(self) -> str:
        lo = "-∞" if self.lo is None else str(self.lo)
        hi = "∞" if self.hi is None else str(self.hi)
        lb = "[" if self.lo_closed else "("
        rb = "]" if self.hi_closed else ")"
        return f"{lb}{lo},{hi}{rb}"


OPEN_SHAPES = ("[x", "(x")
CLOSE_SHAPES = ("x)", "x]")
SHAPE_ORDER = {"[x": 0, "(x": 1, "x)": 2, "x]": 3}


@dataclass(frozen=True)
class BracketToken:
    position: Fraction
    shape: str  # one of "[x", "(x", "x)", "x]"

    def __str__(self) -> str:
        if self.shape == "[x":
            return f"[{self.position}"
        if self.shape == "(x":
            return f"({self.position}"
        if self.shape == "x)":
            return f"{self.position})"
        return f"{self.position}]"


@dataclass(frozen=True)
class Decomposition:
    m: Fraction
    c: Fraction
    terms: tuple[IntervalTerm, ...]
    bracket_trace: tuple[BracketToken, ...]

    def trace_string(self) -> str:
        return " ".join(str(t) for t in self.bracket_trace)

    def intervals_string(self) -> str:
        return ", ".join(str(t) for t in self.terms)


@dataclass(frozen=True)
class Classification:
    integer_valued: bool
    monotone: bool
    sigma_continuous: bool


def classify(v: Valuation1D) -> Classification:
    """Theorem-level flags, decided exactly from the step-function data."""
    integer = v.f.is_integer_valued() and v.g.is_integer_valued()
    mono = v.f.is_nondecreasing() and v.g.is_nondecreasing()
    if mono:
        probes = _probe_grid(v)
        mono = all(v.f.value(x) <= v.g.value(x) for x in probes)
    sigma = v.f.is_left_continuous() and v.g.is_right_continuous()
    return Classification(integer, mono, sigma)


def _probe_grid(v: Valuation1D) -> list[Fraction]:
    bps = sorted(set(v.f.breakpoints) | set(v.g.breakpoints) | {Fraction(0)})
    probes = [bps[0] - 1]
    for a, b in zip(bps, bps[1:]):
        probes.append(a)
        probes.append((a + b) / 2)
    probes.append(bps[-1])
    probes.append(bps[-1] + 1)
    return probes


def probe_grid(v: Valuation1D) -> list[Fraction]:
    """Breakpoints, midpoints between them, and one point per tail."""
    return _probe_grid(v)


def fg_from_oracle(
    phi: Callable[[Fraction, Fraction], Fraction],
    endpoints: Sequence[Fraction],
) -> Valuation1D:
    """Recover (f, g) from a closed-interval oracle via the evaluation
    identities f(x) = phi([0,x]) - phi({x}) and g(x) = phi([0,x]) for x >= 0
    (mirrored through 0 for x < 0)."""

    def f_at(x: Fraction) -> Fraction:
        if x >= 0:
            return phi(Fraction(0), x) - phi(x, x)
        return phi(Fraction(0), Fraction(0)) - phi(x, Fraction(0))

    def g_at(x: Fraction) -> Fraction:
        if x >= 0:
            return phi(Fraction(0), x)
        return phi(x, x) + phi(Fraction(0), Fraction(0)) - phi(x, Fraction(0))

    bps = sorted({scalar(e) for e in endpoints})
    if not bps:
        const_f = f_at(Fraction(0))
        const_g = g_at(Fraction(0))
        return Valuation1D(
            StepFunction.constant(const_f), StepFunction.constant(const_g)
        )
    interior = [(a + b) / 2 for a, b in zip(bps, bps[1:])]
    between_pts = [bps[0] - 1] + interior + [bps[-1] + 1]
    f = StepFunction(
        tuple(bps),
        tuple(f_at(b) for b in bps),
        tuple(f_at(p) for p in between_pts),
    )
    g = StepFunction(
        tuple(bps),
        tuple(g_at(b) for b in bps),
        tuple(g_at(p) for p in between_pts),
    )
    return Valuation1D(f.normalized(), g.normalized())


def _tokens_nonnegative(f: StepFunction, g: StepFunction) -> list[BracketToken]:
    """Token stream of the discontinuities of (f, g) on [0, inf).

    Left discontinuities of g become "[x", right ones "(x"; left
    discontinuities of f become "x)", right ones "x]".  At x = 0 only right
    discontinuities belong to this half-line.
    """
    tokens: list[BracketToken] = []

    def emit(position: Fraction, shape: str, count: Fraction) -> None:
        if count < 0:
            raise LineError("decreasing step function in token stream")
        if count.denominator != 1:
            raise LineError("non-integer jump in token stream")
        tokens.extend(BracketToken(position, shape) for _ in range(int(count)))

    for i, b in enumerate(g.breakpoints):
        if b > 0:
            emit(b, "[x", g.left_jump(i))
        if b >= 0:
            emit(b, "(x", g.right_jump(i))
    for i, b in enumerate(f.breakpoints):
        if b > 0:
            emit(b, "x)", f.left_jump(i))
        if b >= 0:
            emit(b, "x]", f.right_jump(i))
    tokens.sort(key=lambda t: (t.position, SHAPE_ORDER[t.shape]))
    return tokens


def _match_tokens(
    tokens: list[BracketToken],
) -> list[IntervalTerm]:
    """Pair each opening bracket with the nearest closing one to its right,
    topping up with infinity when closings run out."""
    work = list(tokens)
    terms: list[IntervalTerm] = []
    while True:
        oi = next(
            (i for i, t in enumerate(work) if t.shape in OPEN_SHAPES), None
        )
        if oi is None:
            break
        ci = next(
            (i for i in range(oi + 1, len(work)) if work[i].shape in CLOSE_SHAPES),
            None,
        )
        opening = work[oi]
        lo_closed = opening.shape == "[x"
        if ci is None:
            terms.append(IntervalTerm.real(opening.position, None, lo_closed, False))
            del work[oi]
            continue
        closing = work[ci]
        hi_closed = closing.shape == "x]"
        p, q = opening.position, closing.position
        if p == q:
            if lo_closed and hi_closed:
                terms.append(IntervalTerm.real(p, q, True, True))
            elif lo_closed and not hi_closed:
                terms.append(IntervalTerm.virtual_r(p))
            elif not lo_closed and hi_closed:
                terms.append(IntervalTerm.virtual_s(p))
            else:
                raise LineError("impossible virtual interval (t, t)")
        else:
            terms.append(IntervalTerm.real(p, q, lo_closed, hi_closed))
        del work[ci]
        del work[oi]
    if work:
        raise LineError("unmatched closing brackets: hypothesis violated")
    return terms


_MIRROR_SHAPE = {"[x": "x]", "(x": "x)", "x)": "(x", "x]": "[x"}


def _reflect_token(t: BracketToken) -> BracketToken:
    return BracketToken(-t.position, _MIRROR_SHAPE[t.shape])


def _reflect_term(t: IntervalTerm) -> IntervalTerm:
    if t.kind == VIRTUAL_R:
        return IntervalTerm.virtual_s(-t.lo)
    if t.kind == VIRTUAL_S:
        return IntervalTerm.virtual_r(-t.lo)
    lo = None if t.hi is None else -t.hi
    hi = None if t.lo is None else -t.lo
    return IntervalTerm.real(lo, hi, t.hi_closed, t.lo_closed)


def decompose(v: Valuation1D) -> Decomposition:
    """Bracket-matching normal form of an integer-valued monotone valuation.

    Returns the minimum singleton value m, its (deterministic) minimizer c,
    the interval terms of the shifted, normalized valuation, and the exact
    token sequence that produced them.
    """
    flags = classify(v)
    if not (flags.integer_valued and flags.monotone):
        raise LineError(
            "Theorem 2(iv) hypothesis violated: requires integer-valued "
            f"({flags.integer_valued}) and monotone ({flags.monotone})"
        )
    probes = _probe_grid(v)
    values = {x: singleton1(v, x) for x in probes}
    m = min(values.values())
    bps = sorted(set(v.f.breakpoints) | set(v.g.breakpoints) | {Fraction(0)})
    c = None
    for b in bps:
        if values.get(b, singleton1(v, b)) == m:
            c = b
            break
    if c is None:
        # minimum attained only on open gaps or tails; prefer the origin
        if singleton1(v, 0) == m:
            c = Fraction(0)
        else:
            c = next(x for x in probes if values[x] == m)

    # normalized valuation: phi'([a,b]) = phi([a+c, b+c]) - m
    k = v.f.value(c)
    f1 = v.f.shift_right(-c).plus_const(-k).normalized()
    g1 = v.g.shift_right(-c).plus_const(-m - k).normalized()

    pos_tokens = _tokens_nonnegative(f1, g1)
    pos_terms = _match_tokens(pos_tokens)

    fr = g1.reflect_negate().normalized()
    gr = f1.reflect_negate().normalized()
    neg_tokens = _tokens_nonnegative(fr, gr)
    neg_terms = [_reflect_term(t) for t in _match_tokens(neg_tokens)]

    mirrored = [_reflect_token(t) for t in reversed(neg_tokens)]
    trace = tuple(mirrored + pos_tokens)
    terms = tuple(neg_terms + pos_terms)
    return Decomposition(m=m, c=c, terms=terms, bracket_trace=trace)


def reconstruct(
    terms: Sequence[IntervalTerm], m, c
) -> Valuation1D:
    """Valuation of the given interval terms, shifted right by c, plus the
    constant m; inverse of decompose up to valuation equality."""
    m = scalar(m)
    c = scalar(c)
    f = StepFunction.constant(0)
    g = StepFunction.constant(0)
    for t in terms:
        fn, gn = t.fg()
        f = f.add(fn)
        g = g.add(gn)
    f = f.shift_right(c)
    g = g.shift_right(c).plus_const(m)
    k = f.value(0)
    f = f.plus_const(-k).normalized()
    g = g.plus_const(-k).normalized()
    return Valuation1D(f, g)


def closed_form(v: Valuation1D) -> list[IntervalTerm]:
    """Closed-interval normal form for sigma-continuous monotone inputs."""
    flags = classify(v)
    failed = [
        name
        for name, ok in (
            ("integer_valued", flags.integer_valued),
            ("monotone", flags.monotone),
            ("sigma_continuous", flags.sigma_continuous),
        )
        if not ok
    ]
    if failed:
        raise LineError(f"closed form requires {', '.join(failed)}")
    dec = decompose(v)
    out: list[IntervalTerm] = []
    for t in dec.terms:
        closed_sides = (t.lo is None or t.lo_closed) and (
            t.hi is None or t.hi_closed
        )
        if t.kind != REAL or not closed_sides:
            raise LineError(
                "sigma-continuous decomposition emitted a non-closed term: "
                f"{t}"
            )
        out.append(IntervalTerm.real(
            None if t.lo is None else t.lo + dec.c,
            None if t.hi is None else t.hi + dec.c,
            t.lo_closed, t.hi_closed,
        ))
    if dec.m != 0:
        if dec.m < 0 or dec.m.denominator != 1:
            raise LineError("constant part must be a nonnegative integer")
        out.extend(
            IntervalTerm.real(None, None, False, False) for _ in range(int(dec.m))
        )
    return out


def valuation_equal(u: Valuation1D, v: Valuation1D) -> bool:
    """Agreement of eval1 on the combined probe grid (hence everywhere)."""
    grid = sorted(set(probe_grid(u)) | set(probe_grid(v)))
    for i, a in enumerate(grid):
        for b in grid[i:]:
            if eval1(u, a, b) != eval1(v, a, b):
                return False
    return True
