"""Gap/bridge extraction and Newhouse thickness from exact depth covers.

A bounded gap at working depth k is a bounded connected component of
hull \\ cover(k).  Because covers use tight cylinders, cover endpoints are
points of the set: once a gap appears it never widens, and deeper gaps are
born strictly inside existing cover components.  The gap list at depth k is
therefore a growing, stable family, and every recorded gap is a true gap of
the underlying set.

The bridge at a gap boundary point u is the maximal interval on the chosen
side of u containing no point of any recorded gap at least as long as the
gap at u, clipped to the hull.  Thickness at depth k is the minimum of
|bridge| / |gap| over all boundary points of depth-<=k gaps.

Finite depth only sees finitely many gaps, so every report says whether the
value is exact: either the generator is the fixed-base one-omitted-digit
family (closed form min{j, N-j-1}) or the gap/bridge pattern at depth k+1 is
the union of branchwise-scaled copies of the depth-k pattern (stabilization
certificate for self-similar presentations).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Union

from .errors import EmptyBridgeError
from .sets import (
    CantorPresentation,
    Interval,
    branch_ratios,
    convex_hull,
    depth_cover,
    example_digit_parameters,
    frac,
    level_cycle_length,
)


class _InfiniteThickness:
    """Sentinel for infinite thickness (the set contains an interval)."""

    __slots__ = ()

    def __repr__(self):
        return "INFINITE"


INFINITE = _InfiniteThickness()


def is_infinite(value) -> bool:
    return value is INFINITE


Side = Literal["left", "right"]


@dataclass(frozen=True)
class GapRecord:
    """A bounded gap (open interval) and the first depth at which it appears."""

    lo: Fraction
    hi: Fraction
    birth_depth: int

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __repr__(self):
        return f"Gap({self.lo}, {self.hi})@{self.birth_depth}"


@dataclass(frozen=True)
class BridgeRecord:
    """Maximal gap-free-at-scale interval on one side of a gap boundary point."""

    gap: GapRecord
    boundary_point: Fraction
    side: Side
    bridge: Interval

    @property
    def length(self) -> Fraction:
        return self.bridge.length

    @property
    def ratio(self) -> Fraction:
        """Thickness contribution |bridge| / |gap| at this boundary point."""
        return self.bridge.length / self.gap.length


@dataclass(frozen=True)
class ThicknessReport:
    tau: Union[Fraction, _InfiniteThickness]
    depth_used: int
    exact: bool
    witness: Union[tuple[GapRecord, BridgeRecord], None]
    certificate: Union[str, None] = None  # "digit-closed-form" | "stabilization"


@lru_cache(maxsize=None)
def extract_gaps(pres: CantorPresentation, k: int) -> tuple[GapRecord, ...]:
    """All bounded components of hull \\ cover(k), sorted, with birth depths."""
    if k < 0:
        raise ValueError("depth must be nonnegative")
    hull = convex_hull(pres)
    birth: dict[tuple[Fraction, Fraction], int] = {}
    components: list[tuple[Fraction, Fraction]] = []
    for d in range(1, k + 1):
        cover = depth_cover(pres, d)
        ivs = cover.intervals
        if ivs[0].lo != hull.lo or ivs[-1].hi != hull.hi:
            raise AssertionError("cover lost a hull endpoint; tight cylinders violated")
        components = [
            (ivs[i].hi, ivs[i + 1].lo) for i in range(len(ivs) - 1)
        ]
        for comp in components:
            birth.setdefault(comp, d)
    return tuple(GapRecord(lo, hi, birth[(lo, hi)]) for lo, hi in components)


def bridge_at(pres: CantorPresentation, gap: GapRecord, side: Side, k: int) -> BridgeRecord:
    """Bridge at the chosen boundary point of `gap`, relative to depth-k gaps.

    side="right" bridges rightwards from gap.hi, side="left" leftwards from
    gap.lo.  The bridge stops at the nearest gap of length >= |gap| on that
    side, or at the hull; smaller gaps are allowed inside it.
    """
    gaps = extract_gaps(pres, k)
    if gap not in gaps:
        raise ValueError(f"{gap!r} is not a depth-{k} gap of this presentation")
    hull = convex_hull(pres)
    if side == "right":
        u = gap.hi
        stop = hull.hi
        for g in gaps:
            if g.lo >= u and g.length >= gap.length:
                stop = g.lo
                break
        iv = Interval(u, stop)
    elif side == "left":
        u = gap.lo
        stop = hull.lo
        for g in reversed(gaps):
            if g.hi <= u and g.length >= gap.length:
                stop = g.hi
                break
        iv = Interval(stop, u)
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if iv.length == 0:
        raise EmptyBridgeError(
            f"zero-length bridge at {u} ({side} side): gap touches the hull boundary"
        )
    return BridgeRecord(gap, u, side, iv)


def _interval_component_detected(pres: CantorPresentation, k: int) -> bool:
    """True when some cover(k) component survives refinement unchanged.

    Stability is required across one full period of the level structure, so
    for self-similar presentations a stable component really is an interval
    of the set.
    """
    period = level_cycle_length(pres)
    comps = set(depth_cover(pres, k).intervals)
    for step in range(1, period + 1):
        comps &= set(depth_cover(pres, k + step).intervals)
        if not comps:
            return False
    return True


def _gap_triples(pres: CantorPresentation, k: int):
    """(|gap|, |left bridge|, |right bridge|, birth) for every depth-k gap."""
    out = []
    for g in extract_gaps(pres, k):
        bl = bridge_at(pres, g, "left", k)
        br = bridge_at(pres, g, "right", k)
        out.append((g.length, bl.length, br.length, g.birth_depth))
    return out


def _stabilization_certificate(pres: CantorPresentation, k: int) -> bool:
    """Depth-(k+1) gap/bridge pattern = branchwise-scaled depth-k pattern.

    Checks three things for a self-similar presentation:
    * bridges of the gaps already present at depth k are unchanged at k+1,
    * the (gap, bridges) triples born at k+1 are exactly the union over
      branches of the ratio-scaled triples born at k,
    * the minimum ratio is unchanged.
    When the pattern replicates this way, every deeper generation repeats a
    scaled copy of an already-seen ratio, so the depth-k minimum is the
    infimum over all gaps.
    """
    ratios = branch_ratios(pres)
    if ratios is None:
        return False
    now = _gap_triples(pres, k)
    nxt = _gap_triples(pres, k + 1)
    old_now = sorted(t[:3] for t in now)
    old_nxt = sorted(t[:3] for t in nxt if t[3] <= k)
    if old_now != old_nxt:
        return False
    born_now = [t[:3] for t in now if t[3] == k]
    born_nxt = sorted(t[:3] for t in nxt if t[3] == k + 1)
    predicted = sorted(
        (rho * u, rho * cl, rho * cr) for rho in ratios for (u, cl, cr) in born_now
    )
    if born_nxt != predicted:
        return False

    def min_ratio(triples):
        return min(min(cl, cr) / u for u, cl, cr in (t[:3] for t in triples))

    return min_ratio(now) == min_ratio(nxt)


def newhouse_thickness(pres: CantorPresentation, k: int) -> ThicknessReport:
    """Newhouse thickness from the gaps visible at depth k.

    Reports INFINITE when a cover component survives refinement unchanged
    (the set contains an interval).  Otherwise returns the minimum
    |bridge|/|gap| over all boundary points of depth-<=k gaps, with
    exact=True when the closed form or the stabilization certificate applies
    and the minimizing (gap, bridge) pair as witness.
    """
    if k < 1:
        raise ValueError("thickness needs depth k >= 1 (no gaps at depth 0)")
    if _interval_component_detected(pres, k):
        return ThicknessReport(INFINITE, k, True, None, certificate="interval-component")
    gaps = extract_gaps(pres, k)
    if not gaps:
        # No gap has appeared yet; the infimum over an empty family is
        # infinite but nothing is certified.
        return ThicknessReport(INFINITE, k, False, None)

    best: tuple[Fraction, GapRecord, BridgeRecord] | None = None
    for g in gaps:
        for side in ("left", "right"):
            b = bridge_at(pres, g, side, k)
            if best is None or b.ratio < best[0]:
                best = (b.ratio, g, b)
    assert best is not None
    tau, wit_gap, wit_bridge = best

    params = example_digit_parameters(pres)
    if params is not None:
        n_base, j = params
        closed = Fraction(min(j, n_base - 1 - j))
        if tau != closed:
            raise AssertionError(
                f"computed thickness {tau} disagrees with closed form {closed}"
            )
        return ThicknessReport(tau, k, True, (wit_gap, wit_bridge), "digit-closed-form")
    if _stabilization_certificate(pres, k):
        return ThicknessReport(tau, k, True, (wit_gap, wit_bridge), "stabilization")
    return ThicknessReport(tau, k, False, (wit_gap, wit_bridge))


# ---------------------------------------------------------------------------
# Feng-Wu thickness probes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FengWuProbe:
    """One evaluation of the ball-convexity thickness at (x, r).

    For critical probes (x a gap boundary point, r the gap length) the value
    is |C| / (2|U|) with C the bridge away from the gap.  When x +/- r lands
    at or beyond the bridge end the value is exact; when it lands strictly
    inside the bridge the true probe value is only bounded below by 1/2 and
    the recorded |C|/(2|U|) is informational (then |C| >= |U|, so the
    Newhouse ratio at x is >= 1).  Grid probes are evaluated against the
    depth-k cover and are upper bounds.
    """

    x: Fraction
    r: Fraction
    value: Fraction
    case: Literal["beyond_bridge", "in_bridge", "grid", "interval"]
    exact: bool
    gap: Union[GapRecord, None] = None
    bridge: Union[BridgeRecord, None] = None


@dataclass(frozen=True)
class FengWuReport:
    probes: tuple[FengWuProbe, ...]
    tau_fw_upper: Fraction
    witness: Union[FengWuProbe, None]
    depth_used: int
    newhouse_infinite: bool = False


def _critical_probe(pres: CantorPresentation, gap: GapRecord, side: Side, k: int) -> FengWuProbe:
    b = bridge_at(pres, gap, side, k)
    u = b.boundary_point
    r = gap.length
    if side == "right":
        beyond = u + r >= b.bridge.hi
    else:
        beyond = u - r <= b.bridge.lo
    value = b.length / (2 * r)
    if not beyond and b.length < r:
        raise AssertionError("in-bridge probe with |C| < |U|; bridge extraction broken")
    return FengWuProbe(
        x=u,
        r=r,
        value=value,
        case="beyond_bridge" if beyond else "in_bridge",
        exact=beyond,
        gap=gap,
        bridge=b,
    )


def _grid_probe(pres: CantorPresentation, x: Fraction, r: Fraction, k: int) -> FengWuProbe:
    if r <= 0:
        raise ValueError("probe radius must be positive")
    cover = depth_cover(pres, k)
    if not cover.contains_point(x):
        raise ValueError(f"probe point {x} is not in the depth-{k} cover")
    lo, hi = None, None
    for iv in cover:
        cap = iv.intersection(Interval(x - r, x + r))
        if cap is None:
            continue
        lo = cap.lo if lo is None else min(lo, cap.lo)
        hi = cap.hi if hi is None else max(hi, cap.hi)
    assert lo is not None and hi is not None
    return FengWuProbe(x=x, r=r, value=(hi - lo) / (2 * r), case="grid", exact=False)


def feng_wu_thickness(
    pres: CantorPresentation,
    k: int,
    extra_probes: tuple[tuple[Fraction, Fraction], ...] = (),
) -> FengWuReport:
    """Ball-convexity thickness evaluated at the critical probes.

    Critical probes are (u, |U|) for every boundary point u of every
    depth-<=k gap U; `extra_probes` adds user (x, r) pairs evaluated against
    the cover.  The reported aggregate is the minimum over probes whose value
    is a certified upper bound (beyond-bridge and grid probes), hence an
    upper estimate of the set's ball-convexity thickness.
    """
    if k < 1:
        raise ValueError("probes need depth k >= 1")
    if _interval_component_detected(pres, k):
        probes = [
            FengWuProbe(x=frac(x), r=frac(r), value=Fraction(1), case="interval", exact=True)
            for x, r in extra_probes
        ] or [
            FengWuProbe(
                x=convex_hull(pres).lo, r=convex_hull(pres).length, value=Fraction(1),
                case="interval", exact=True,
            )
        ]
        return FengWuReport(tuple(probes), Fraction(1), probes[0], k, newhouse_infinite=True)

    probes: list[FengWuProbe] = []
    for g in extract_gaps(pres, k):
        probes.append(_critical_probe(pres, g, "left", k))
        probes.append(_critical_probe(pres, g, "right", k))
    for x, r in extra_probes:
        probes.append(_grid_probe(pres, frac(x), frac(r), k))

    bounding = [p for p in probes if p.case in ("beyond_bridge", "grid")]
    if bounding:
        witness = min(bounding, key=lambda p: p.value)
        upper = witness.value
    else:
        # Every critical probe is in-bridge; tau_FW <= 1 is the only certified bound.
        witness = None
        upper = Fraction(1)
    return FengWuReport(tuple(probes), upper, witness, k)


from .sets import frac  # noqa: E402  (tiny helper, avoids a cycle at import time)
