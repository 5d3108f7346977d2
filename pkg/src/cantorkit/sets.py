"""Finite presentations of Cantor sets and their exact depth-k interval covers.

Three ingredients are available to describe a set:

* a one-dimensional rotation-free IFS ``x -> rho*x + b`` with positive
  contraction ratios,
* a digit-set description: level-by-level bases ``N_j`` and admissible digit
  sets ``D_j`` (a finite prefix of levels followed by a repeating cycle, so
  fixed-base sets are the cycle-length-one case),
* an optional invertible affine post-map ``x -> t + lambda*x`` applied to the
  whole set.

All arithmetic is over ``fractions.Fraction``; nothing is ever rounded.
Depth-k covers are unions of *tight* cylinder intervals: for digit sets each
cylinder spans exactly the attainable completions of its digit prefix, so the
cover endpoints are genuine points of the set and covers shrink to the set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union


def frac(x) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to Fraction. Floats are rejected."""
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction, int or 'p/q' string")
    return Fraction(x)


# ---------------------------------------------------------------------------
# Intervals and unions of intervals
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Interval:
    """Closed interval [lo, hi] with rational endpoints; points allowed."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = frac(self.lo), frac(self.hi)
        if lo > hi:
            raise ValueError(f"malformed interval: lo {lo} > hi {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def touches(self, other: "Interval") -> bool:
        """True when the closed intervals share at least one point."""
        return self.lo <= other.hi and other.lo <= self.hi

    def intersection(self, other: "Interval") -> Union["Interval", None]:
        if not self.touches(other):
            return None
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def contains_point(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


class IntervalUnion:
    """Finite union of pairwise-disjoint closed intervals, sorted ascending.

    Touching or overlapping inputs are merged on construction, so consecutive
    members satisfy ``intervals[i].hi < intervals[i+1].lo`` and the stored
    list is the minimal representation of the union.
    """

    __slots__ = ("intervals",)

    def __init__(self, intervals: Iterable[Interval]):
        merged: list[Interval] = []
        for iv in sorted(intervals, key=lambda i: (i.lo, i.hi)):
            if merged and iv.lo <= merged[-1].hi:
                if iv.hi > merged[-1].hi:
                    merged[-1] = Interval(merged[-1].lo, iv.hi)
            else:
                merged.append(iv)
        self.intervals: tuple[Interval, ...] = tuple(merged)

    @property
    def total_length(self) -> Fraction:
        return sum((iv.length for iv in self.intervals), Fraction(0))

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def hull(self) -> Interval:
        if self.is_empty:
            raise ValueError("empty union has no hull")
        return Interval(self.intervals[0].lo, self.intervals[-1].hi)

    def max_component_length(self) -> Fraction:
        return max((iv.length for iv in self.intervals), default=Fraction(0))

    def contains_point(self, x: Fraction) -> bool:
        return any(iv.contains_point(x) for iv in self.intervals)

    def intersect(self, other: "IntervalUnion") -> "IntervalUnion":
        out: list[Interval] = []
        a, b = self.intervals, other.intervals
        i = j = 0
        while i < len(a) and j < len(b):
            cap = a[i].intersection(b[j])
            if cap is not None:
                out.append(cap)
            if a[i].hi < b[j].hi:
                i += 1
            else:
                j += 1
        return IntervalUnion(out)

    def contains(self, other: "IntervalUnion") -> bool:
        """True when every component of `other` lies inside a component of self."""
        i = 0
        for iv in other.intervals:
            while i < len(self.intervals) and self.intervals[i].hi < iv.lo:
                i += 1
            if i == len(self.intervals) or not self.intervals[i].contains(iv):
                return False
        return True

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __eq__(self, other):
        return isinstance(other, IntervalUnion) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        return "IntervalUnion(" + ", ".join(map(repr, self.intervals)) + ")"


def normalize_union(raw: Sequence[Interval]) -> IntervalUnion:
    """Minimal sorted disjoint representation of a union of closed intervals.

    Touching intervals merge; contained intervals are absorbed.  Raises
    ValueError for malformed inputs (constructed Intervals are always valid,
    so this only triggers on raw (lo, hi) pairs).
    """
    ivs = [iv if isinstance(iv, Interval) else Interval(*iv) for iv in raw]
    return IntervalUnion(ivs)


# ---------------------------------------------------------------------------
# Affine maps and generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineMap1D:
    """Invertible affine map x -> t + lam*x on the line (lam may be negative)."""

    t: Fraction
    lam: Fraction

    def __post_init__(self):
        t, lam = frac(self.t), frac(self.lam)
        if lam == 0:
            raise ValueError("affine map must have lambda != 0")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "lam", lam)

    def __call__(self, x: Fraction) -> Fraction:
        return self.t + self.lam * x

    def image(self, iv: Interval) -> Interval:
        a, b = self(iv.lo), self(iv.hi)
        return Interval(min(a, b), max(a, b))

    def compose(self, inner: "AffineMap1D") -> "AffineMap1D":
        """self after inner: x -> self(inner(x))."""
        return AffineMap1D(self.t + self.lam * inner.t, self.lam * inner.lam)

    def inverse(self) -> "AffineMap1D":
        return AffineMap1D(-self.t / self.lam, 1 / self.lam)


IDENTITY_MAP = AffineMap1D(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class IFS1D:
    """Rotation-free 1-D IFS: maps x -> rho*x + b with 0 < rho < 1.

    The fixed point of map i is b_i / (1 - rho_i), exactly.
    """

    maps: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        maps = tuple((frac(r), frac(b)) for r, b in self.maps)
        if len(maps) < 2:
            raise ValueError("an IFS needs at least 2 maps")
        for rho, _ in maps:
            if not (0 < rho < 1):
                raise ValueError(f"rho out of (0,1): {rho}")
        object.__setattr__(self, "maps", maps)

    def fixed_points(self) -> tuple[Fraction, ...]:
        return tuple(b / (1 - rho) for rho, b in self.maps)


@dataclass(frozen=True)
class DigitLevel:
    """One subdivision level: base N and admissible digits D subset {0..N-1}."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        digits = tuple(sorted(set(int(d) for d in self.digits)))
        if len(digits) < 2:
            raise ValueError("each level needs at least 2 digits")
        for d in digits:
            if not (0 <= d < self.base):
                raise ValueError(f"digit {d} out of range for base {self.base}")
        object.__setattr__(self, "digits", digits)


@dataclass(frozen=True)
class DigitLevels:
    """Digit-set generator: finite `prefix` of levels, then `cycle` repeated forever."""

    prefix: tuple[DigitLevel, ...]
    cycle: tuple[DigitLevel, ...]

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("the repeating cycle must contain at least one level")

    def level(self, j: int) -> DigitLevel:
        """Level consumed when refining from depth j to depth j+1 (0-based)."""
        if j < len(self.prefix):
            return self.prefix[j]
        return self.cycle[(j - len(self.prefix)) % len(self.cycle)]


Generator = Union[IFS1D, DigitLevels]


@dataclass(frozen=True)
class CantorPresentation:
    """A generator plus an optional affine post-map applied to the whole set."""

    generator: Generator
    post: Union[AffineMap1D, None] = None

    @property
    def post_map(self) -> AffineMap1D:
        return self.post if self.post is not None else IDENTITY_MAP

    def branch_count(self) -> int:
        if isinstance(self.generator, IFS1D):
            return len(self.generator.maps)
        return len(self.generator.level(0).digits)


# Convenience constructors -------------------------------------------------


def ifs_presentation(maps: Sequence[tuple], post: AffineMap1D | None = None) -> CantorPresentation:
    return CantorPresentation(IFS1D(tuple((frac(r), frac(b)) for r, b in maps)), post)


def digit_presentation(
    bases: Sequence[int],
    digit_sets: Sequence[Sequence[int]],
    cycle_length: int = 1,
    post: AffineMap1D | None = None,
) -> CantorPresentation:
    """Digit-set presentation from per-level bases and digit sets.

    The final `cycle_length` levels repeat forever; earlier levels form the
    finite prefix.  A single (base, digits) pair therefore gives the
    fixed-base self-similar set.
    """
    if len(bases) != len(digit_sets) or not bases:
        raise ValueError("bases and digit_sets must be nonempty and equally long")
    if not (1 <= cycle_length <= len(bases)):
        raise ValueError("cycle_length must cover between 1 and all levels")
    levels = tuple(DigitLevel(int(n), tuple(ds)) for n, ds in zip(bases, digit_sets))
    return CantorPresentation(
        DigitLevels(prefix=levels[:-cycle_length], cycle=levels[-cycle_length:]), post
    )


def omitted_digit_presentation(base: int, omit: int, post: AffineMap1D | None = None) -> CantorPresentation:
    """Base-N expansion set omitting one digit (kept digits {0..N-1} minus `omit`)."""
    if not (0 <= omit < base):
        raise ValueError(f"omitted digit {omit} out of range for base {base}")
    digits = tuple(d for d in range(base) if d != omit)
    return digit_presentation([base], [digits], post=post)


def middle_thirds() -> CantorPresentation:
    return ifs_presentation([(Fraction(1, 3), Fraction(0)), (Fraction(1, 3), Fraction(2, 3))])


# ---------------------------------------------------------------------------
# Tail sums for tight digit cylinders
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _cycle_tail(levels: DigitLevels, c: int, use_min: bool) -> Fraction:
    """Sum of the extreme-digit completion series starting at cycle offset c.

    Returns sum_{i>=1} a_i / (N_1 ... N_i) where (N_i, a_i) walk the cycle
    from offset c and a is the min (or max) digit of each level.  The series
    is geometric over one full period, so the value is an exact rational.
    """
    p = len(levels.cycle)
    num = Fraction(0)
    prod = Fraction(1)
    for i in range(p):
        lvl = levels.cycle[(c + i) % p]
        a = min(lvl.digits) if use_min else max(lvl.digits)
        prod *= lvl.base
        num += Fraction(a) / prod
    return num / (1 - 1 / prod)


@lru_cache(maxsize=None)
def _tail_sum(levels: DigitLevels, j: int, use_min: bool) -> Fraction:
    """Extreme completion after j consumed levels, relative to cylinder scale.

    m(j) = sum_{i>j} a_i / (N_{j+1} ... N_i); satisfies
    m(j) = (a_{j+1} + m(j+1)) / N_{j+1}.
    """
    if j >= len(levels.prefix):
        return _cycle_tail(levels, (j - len(levels.prefix)) % len(levels.cycle), use_min)
    lvl = levels.level(j)
    a = min(lvl.digits) if use_min else max(lvl.digits)
    return (Fraction(a) + _tail_sum(levels, j + 1, use_min)) / lvl.base


# ---------------------------------------------------------------------------
# Cylinder nodes
#
# A node is (depth, payload).  For IFS generators the payload is the composed
# affine map (a, b) sending the base hull onto the cylinder, with the post-map
# already folded in.  For digit generators it is the prefix sum s (before the
# post-map); the tight cylinder is s + w_j * [m(j), M(j)].
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _ifs_hull_pre(gen: IFS1D) -> Interval:
    fps = gen.fixed_points()
    return Interval(min(fps), max(fps))


@lru_cache(maxsize=None)
def _digit_width(levels: DigitLevels, j: int) -> Fraction:
    """1 / (N_1 ... N_j), the raw scale of a depth-j digit cylinder."""
    if j == 0:
        return Fraction(1)
    return _digit_width(levels, j - 1) / levels.level(j - 1).base


def cylinder_root(pres: CantorPresentation):
    if isinstance(pres.generator, IFS1D):
        post = pres.post_map
        return (0, (post.lam, post.t))
    return (0, Fraction(0))


def cylinder_children(pres: CantorPresentation, node):
    depth, payload = node
    gen = pres.generator
    if isinstance(gen, IFS1D):
        a, b = payload
        return [(depth + 1, (a * rho, a * bb + b)) for rho, bb in gen.maps]
    lvl = gen.level(depth)
    w_child = _digit_width(gen, depth + 1)
    return [(depth + 1, payload + d * w_child) for d in lvl.digits]


def cylinder_interval(pres: CantorPresentation, node) -> Interval:
    depth, payload = node
    gen = pres.generator
    if isinstance(gen, IFS1D):
        a, b = payload
        hull = _ifs_hull_pre(gen)
        x, y = a * hull.lo + b, a * hull.hi + b
        return Interval(min(x, y), max(x, y))
    w = _digit_width(gen, depth)
    lo = payload + w * _tail_sum(gen, depth, True)
    hi = payload + w * _tail_sum(gen, depth, False)
    return pres.post_map.image(Interval(lo, hi))


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def depth_cover(pres: CantorPresentation, k: int) -> IntervalUnion:
    """Exact union of the depth-k cylinder intervals, normalized.

    cover(0) is the convex hull; cover(k+1) is a subset of cover(k) for all k.
    The number of cylinders grows like (branch count)^k, so deep covers of
    wide generators are expensive; certificates elsewhere avoid enumerating
    them.
    """
    if k < 0:
        raise ValueError("depth must be nonnegative")
    nodes = [cylinder_root(pres)]
    for _ in range(k):
        nodes = [child for node in nodes for child in cylinder_children(pres, node)]
    return IntervalUnion(cylinder_interval(pres, node) for node in nodes)


def convex_hull(pres: CantorPresentation) -> Interval:
    """Convex hull of the presented set, exactly.

    IFS: the span of the fixed points (valid for positive rotation-free
    ratios).  Digit sets: the span between the all-minimal and all-maximal
    digit completions, which is [0, 1] whenever every level keeps 0 and N-1.
    The post-map is applied afterwards.
    """
    return cylinder_interval(pres, cylinder_root(pres))


def affine_image(pres: CantorPresentation, m: AffineMap1D) -> CantorPresentation:
    """Presentation whose depth-k covers are the pointwise images under m."""
    return CantorPresentation(pres.generator, m.compose(pres.post_map))


def max_cylinder_length(pres: CantorPresentation, k: int) -> Fraction:
    """Largest single (unmerged) cylinder length at depth k.

    Any gap not yet visible at depth k lies strictly inside one depth-k
    cylinder, so this bounds the length of every undiscovered gap.
    """
    gen = pres.generator
    scale = abs(pres.post_map.lam)
    if isinstance(gen, IFS1D):
        rho_max = max(r for r, _ in gen.maps)
        return scale * _ifs_hull_pre(gen).length * rho_max**k
    w = _digit_width(gen, k)
    return scale * w * (_tail_sum(gen, k, False) - _tail_sum(gen, k, True))


def digit_cover_mass(pres: CantorPresentation, k: int) -> Fraction:
    """total_length(depth_cover(pres, k)) for digit generators, in closed form.

    Distinct digit prefixes give cylinders with pairwise disjoint interiors,
    so the union's measure is (number of prefixes) x (cylinder length):
    prod_{j<=k} |D_j| / N_j times the tail span, times |lambda|.
    """
    gen = pres.generator
    if not isinstance(gen, DigitLevels):
        raise TypeError("closed-form cover mass applies to digit generators only")
    mass = Fraction(1)
    for j in range(k):
        lvl = gen.level(j)
        mass *= Fraction(len(lvl.digits), lvl.base)
    span = _tail_sum(gen, k, False) - _tail_sum(gen, k, True)
    return abs(pres.post_map.lam) * mass * span


def level_cycle_length(pres: CantorPresentation) -> int:
    """Period of the level structure (1 for IFS and fixed-base digit sets)."""
    if isinstance(pres.generator, IFS1D):
        return 1
    return len(pres.generator.cycle)


def branch_ratios(pres: CantorPresentation) -> Union[tuple[Fraction, ...], None]:
    """Contraction ratios of the first-level branches, when the presentation
    is self-similar (IFS, or digit sets whose every level is identical).
    Returns None otherwise."""
    gen = pres.generator
    if isinstance(gen, IFS1D):
        return tuple(r for r, _ in gen.maps)
    levels = set(gen.prefix) | set(gen.cycle)
    if len(levels) == 1:
        lvl = next(iter(levels))
        return tuple(Fraction(1, lvl.base) for _ in lvl.digits)
    return None


def example_digit_parameters(pres: CantorPresentation) -> Union[tuple[int, int], None]:
    """(N, j) when the generator is the fixed-base set omitting one interior digit.

    That family has Newhouse thickness min(j, N-j-1) in closed form; the
    omitted digit must be interior (1 <= j <= N-2) for the set to be the
    classical one-deleted-interval construction.
    """
    gen = pres.generator
    if not isinstance(gen, DigitLevels):
        return None
    levels = set(gen.prefix) | set(gen.cycle)
    if len(levels) != 1:
        return None
    lvl = next(iter(levels))
    omitted = sorted(set(range(lvl.base)) - set(lvl.digits))
    if len(omitted) != 1:
        return None
    j = omitted[0]
    if not (1 <= j <= lvl.base - 2):
        return None
    return lvl.base, j
