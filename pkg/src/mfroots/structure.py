"""Structural analysis of strictly monotone usc multifunctions.

Jump growth under iteration is governed by pullbacks: a point becomes a
new jump of F² exactly when its (single) value sits on a jump of F.  The
intensity is the step at which the jump count stops growing; intensity-1
multifunctions admit a transition table between partition intervals, whose
cycles are the invariant intervals, and every interval is absorbed into an
invariant one after finitely many steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .core import ClosedInterval, Multifunction
from .errors import (
    InexactCutError,
    MfError,
    NoSingleTargetError,
    NotAJumpError,
    NotExclusiveError,
    NotIncreasingError,
    StructureError,
)
from .maps import INC, AffineMap
from .scalars import Scalar, as_scalar, format_scalar, is_exact


def jump_set(F: Multifunction) -> Tuple[Scalar, ...]:
    return F.jump_locations


@dataclass(frozen=True)
class Partition:
    """Maximal jump-free open intervals, in order; empty ones dropped."""

    intervals: Tuple[ClosedInterval, ...]  # open cores, stored by endpoints
    jumps: Tuple[Scalar, ...]

    def index_of(self, x: Scalar) -> Optional[int]:
        """Index of the open interval strictly containing x."""
        for i, iv in enumerate(self.intervals):
            if iv.lo < x < iv.hi:
                return i
        return None


def partition(F: Multifunction) -> Partition:
    # the branch cores are exactly the maximal jump-free open intervals
    return Partition(tuple(ClosedInterval(br.lo, br.hi) for br in F.branches),
                     F.jump_locations)


@dataclass(frozen=True)
class TransitionTable:
    delta: Dict[int, int]

    def walk(self, i: int, steps: int) -> int:
        for _ in range(steps):
            i = self.delta[i]
        return i


def transition_table(F: Multifunction) -> TransitionTable:
    """delta with F(I_i) ⊂ I_delta(i); fails with the straddled jump as
    witness, which certifies intensity > 1 on the branch part."""
    part = partition(F)
    delta: Dict[int, int] = {}
    for i, br in enumerate(F.branches):
        ends = (br.map(br.lo), br.map(br.hi))
        img_lo, img_hi = min(ends), max(ends)
        for c in F.jump_locations:
            if img_lo < c < img_hi:
                raise NoSingleTargetError(i, c)
        target = None
        for j, iv in enumerate(part.intervals):
            if iv.lo <= img_lo and img_hi <= iv.hi:
                target = j
                break
        if target is None:
            raise StructureError(
                f"image ({format_scalar(img_lo)}, {format_scalar(img_hi)}) of "
                f"interval {i} not contained in any partition interval")
        delta[i] = target
    return TransitionTable(delta)


@dataclass(frozen=True)
class IntensityResult:
    value: Optional[int]  # None = exceeded the cap (stands in for +∞)
    cap: int
    trace: Tuple[int, ...]  # #J(F^k) for k = 0..stabilization (or cap)

    @property
    def exceeded(self) -> bool:
        return self.value is None


def _pullback_jump_locations(F: Multifunction, targets) -> set:
    """Non-jump points x with F(x) a singleton lying in ``targets``."""
    hits = set()
    for s in targets:
        for br in F.branches:
            ends = (br.map(br.lo), br.map(br.hi))
            if min(ends) < s < max(ends):
                x = br.map.inverse(s)
                if br.lo < x < br.hi:
                    hits.add(x)
    for endpoint, included, br in (
            (F.domain.lo, F.includes_left_endpoint, F.branches[0] if F.branches else None),
            (F.domain.hi, F.includes_right_endpoint, F.branches[-1] if F.branches else None)):
        if included and br is not None and br.map(endpoint) in targets:
            hits.add(endpoint)
    return hits


def intensity(F: Multifunction, cap: int = 64) -> IntensityResult:
    """Least k with #J(F^k) = #J(F^{k+1}), via incremental jump pullback
    (never by recomposition)."""
    current = set(F.jump_locations)  # J(F^1)
    trace: List[int] = [0, len(current)]
    if trace[0] == trace[1]:
        return IntensityResult(0, cap, (0, 0))
    for k in range(1, cap + 1):
        nxt = set(F.jump_locations) | _pullback_jump_locations(F, current)
        trace.append(len(nxt))
        if len(nxt) == len(current):
            return IntensityResult(k, cap, tuple(trace))
        current = nxt
    return IntensityResult(None, cap, tuple(trace))


def _require_exclusive(F: Multifunction, cap: int = 64) -> None:
    z = intensity(F, cap)
    if z.exceeded or z.value not in (0, 1):
        raise NotExclusiveError(
            f"intensity is {'>' + str(cap) if z.exceeded else z.value}, need 1")


def invariant_intervals(F: Multifunction) -> Tuple[int, ...]:
    """Indices i with F(I_i) ⊂ I_i (the set Λ(F))."""
    if F.orientation is not INC:
        raise NotIncreasingError("invariant intervals need an increasing multifunction")
    _require_exclusive(F)
    table = transition_table(F)
    return tuple(i for i in sorted(table.delta) if table.delta[i] == i)


@dataclass(frozen=True)
class AbsorbingData:
    lambda_indices: Tuple[int, ...]
    kappa: Dict[int, int]
    target: Dict[int, int]
    ell: int


def absorbing_data(F: Multifunction) -> AbsorbingData:
    """Absorbing times into the invariant intervals; κ is 1 on invariant
    intervals by convention, ℓ is the maximum over the partition."""
    lam = invariant_intervals(F)
    if not lam:
        raise MfError("no invariant interval; increasing exclusive input expected")
    table = transition_table(F)
    lam_set = set(lam)
    kappa: Dict[int, int] = {}
    target: Dict[int, int] = {}
    for i in sorted(table.delta):
        seen = [i]
        j = table.delta[i]
        steps = 1
        while j not in lam_set:
            if j in seen:
                raise MfError(f"transition cycle without invariant interval at {i}")
            seen.append(j)
            j = table.delta[j]
            steps += 1
        if len(set(seen)) != len(seen):
            raise MfError(f"absorbing chain from {i} revisits an interval")
        kappa[i] = steps
        target[i] = j
    return AbsorbingData(lam, kappa, target, max(kappa.values()))


# ---------------------------------------------------------------------------
# fixed points and splitting
# ---------------------------------------------------------------------------

def _branch_fixed_points(F: Multifunction, samples: int = 256):
    """Interior branch fixed points; (point, exact_flag) pairs."""
    out = []
    for br in F.branches:
        if isinstance(br.map, AffineMap):
            if br.map.slope == 1:
                if br.map.intercept == 0:
                    raise MfError(
                        f"identity branch on ({format_scalar(br.lo)}, "
                        f"{format_scalar(br.hi)}) has a continuum of fixed points")
                continue
            x = br.map.fixed_point()
            if x is not None and br.lo < x < br.hi:
                out.append((x, True))
        else:
            lo, hi = br.lo, br.hi
            step = (hi - lo) / samples
            prev_x, prev_d = lo, br.map(lo) - lo
            for i in range(1, samples + 1):
                x = lo + step * i
                d = br.map(x) - x
                if prev_d == 0 and lo < prev_x < hi:
                    out.append((prev_x, False))
                elif prev_d < 0 < d or d < 0 < prev_d:
                    a_, b_ = prev_x, x
                    for _ in range(80):
                        m = (a_ + b_) / 2
                        dm = br.map(m) - m
                        if dm == 0:
                            break
                        if (dm < 0) == (prev_d < 0):
                            a_ = m
                        else:
                            b_ = m
                    out.append((float((a_ + b_) / 2), False))
                prev_x, prev_d = x, d
    return out


def inclusion_fixed_points(F: Multifunction):
    """Interior points c with c ∈ F(c); (point, exact) pairs, sorted."""
    pts = list(_branch_fixed_points(F))
    a, b = F.domain.lo, F.domain.hi
    for jp in F.jumps:
        if a < jp.location < b and jp.value.contains(jp.location):
            pts.append((jp.location, is_exact(jp.location)))
    pts.sort(key=lambda pe: pe[0])
    return [(p, e) for (p, e) in pts if a < p < b]


@dataclass(frozen=True)
class SplitResult:
    cuts: Tuple[Scalar, ...]
    pieces: Tuple[Multifunction, ...]


def split_at_inclusion_fixed_points(F: Multifunction,
                                    allow_inexact: bool = False) -> SplitResult:
    """Cut the domain at every interior c with c ∈ F(c); jump values at the
    cut are clipped to each side (degenerate clips stop being jumps)."""
    if F.orientation is not INC:
        raise NotIncreasingError("splitting applies to increasing multifunctions")
    found = inclusion_fixed_points(F)
    inexact = [p for p, e in found if not e]
    if inexact and not allow_inexact:
        raise InexactCutError(
            f"fixed point near {format_scalar(inexact[0])} located by bisection "
            "only; pass allow_inexact=True to cut there")
    cuts = tuple(p for p, _ in found)
    bounds = [F.domain.lo, *cuts, F.domain.hi]
    pieces = tuple(F.restricted(u, v) for u, v in zip(bounds, bounds[1:]))
    return SplitResult(cuts, pieces)


# ---------------------------------------------------------------------------
# hypothesis and jump classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HReport:
    holds: bool
    needs_reflection: bool
    witness: Optional[Scalar] = None


def _below_diagonal(F: Multifunction) -> Optional[Scalar]:
    """None when max F(x) < x on (a,b) and max F(b) <= b; else a witness."""
    a, b = F.domain.lo, F.domain.hi
    for br in F.branches:
        d_lo = br.map(br.lo) - br.lo
        d_hi = br.map(br.hi) - br.hi
        # interior fixed points were ruled out before this is called, so
        # nonpositive endpoint differences pin the whole open piece below
        # the diagonal (affine case); identity pieces are flagged.
        if d_lo > 0 or d_hi > 0 or (d_lo == 0 and d_hi == 0):
            return br.hi if d_hi >= 0 else br.lo
        if not isinstance(br.map, AffineMap):
            # affine sign control does not apply; spot check
            step = (br.hi - br.lo) / 33
            for i in range(1, 33):
                x = br.lo + step * i
                if br.map(x) >= x:
                    return x
    for jp in F.jumps:
        c = jp.location
        if c == a:
            return a  # a multivalued left endpoint already violates F(a) = {a}
        if c == b:
            if jp.value.max_value > b:
                return b
        elif not jp.value.max_value < c:
            return c
    return None


def hypothesis_H(F: Multifunction) -> HReport:
    """max F(x) < x inside and max F(b) <= b, directly or after reflection;
    interior inclusion-fixed-points are reported as violations."""
    if F.orientation is not INC:
        raise NotIncreasingError("hypothesis check applies to increasing multifunctions")
    fixed = inclusion_fixed_points(F)
    if fixed:
        return HReport(False, False, fixed[0][0])
    direct = _below_diagonal(F)
    if direct is None:
        return HReport(True, False, None)
    mirrored = _below_diagonal(F.reflected())
    if mirrored is None:
        return HReport(False, True, None)
    return HReport(False, False, direct)


@dataclass(frozen=True)
class JumpClass:
    kind: str  # "J1" | "J2" | "J3" | "J4"
    others: Tuple[Scalar, ...]  # jump locations other than c hit by F(c)
    ell: Optional[int]

    def __repr__(self):
        if self.kind == "J1":
            return "J1"
        if self.kind == "J2":
            return "J2"
        others = " ".join(format_scalar(x) for x in self.others)
        return f"{self.kind}(ell={self.ell}, others={{{others}}})"


def classify_jump(F: Multifunction, c: Scalar) -> JumpClass:
    """Classify by J(F) ∩ F(c): empty (J1), {c} (J2), other jumps only
    (J3, with their count ℓ), or other jumps plus c (J4)."""
    c = as_scalar(c)
    jp = F.jump_at(c)
    if jp is None:
        raise NotAJumpError(f"{format_scalar(c)} is not a jump")
    hit = tuple(d for d in F.jump_locations if jp.value.contains(d))
    self_hit = c in hit
    others = tuple(d for d in hit if d != c)
    if not hit:
        return JumpClass("J1", (), None)
    if self_hit and not others:
        return JumpClass("J2", (), None)
    if not self_hit:
        return JumpClass("J3", others, len(others))
    return JumpClass("J4", others, len(others))
