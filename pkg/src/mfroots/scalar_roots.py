"""Fundamental-domain constructions for single-valued monotone maps.

All constructions share one engine: pick a fundamental domain of the
orbit structure, seed it with a piecewise-linear map, and extend along
orbits by conjugation.  Exact affine closed forms are returned whenever
the required root of the slope stays rational; otherwise evaluation is
lazy with cost proportional to the orbit distance from the anchor, and
stays exact-rational pointwise when the underlying map is affine over
the rationals.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .errors import (
    BadSeedError,
    EvaluationRangeError,
    HasInteriorFixedPointError,
    IncompatiblePatternError,
    MfError,
    WrongSideError,
)
from .maps import (
    AffineMap,
    DEC,
    INC,
    GenericMap,
    Orientation,
    compose_maps,
    iterate_map,
)
from .scalars import Scalar, as_scalar, format_scalar, rational_nth_root

_MAX_ORBIT_STEPS = 200_000


@dataclass(frozen=True)
class ScalarRootSeed:
    """Free data of a fundamental-domain construction.

    anchor: where the fundamental domain is pinned (defaults to the outer
    end of the attraction basin); divisions: explicit subdivision points;
    image_anchor: where the anchor is sent (pairings/conjugacies);
    affine: (slope, intercept) requesting an explicit affine seed segment.
    Linear interpolation throughout.
    """

    anchor: Optional[Scalar] = None
    divisions: Optional[Tuple[Scalar, ...]] = None
    image_anchor: Optional[Scalar] = None
    affine: Optional[Tuple[Scalar, Scalar]] = None

    def normalized(self) -> "ScalarRootSeed":
        return ScalarRootSeed(
            None if self.anchor is None else as_scalar(self.anchor),
            None if self.divisions is None else tuple(as_scalar(d) for d in self.divisions),
            None if self.image_anchor is None else as_scalar(self.image_anchor),
            None if self.affine is None else (as_scalar(self.affine[0]),
                                              as_scalar(self.affine[1])),
        )

    @property
    def is_default(self) -> bool:
        return (self.anchor is None and self.divisions is None
                and self.image_anchor is None and self.affine is None)


DEFAULT_SEED = ScalarRootSeed()


def _affine_through(x1, y1, x2, y2) -> AffineMap:
    slope = Fraction(as_scalar(y2) - as_scalar(y1)) / Fraction(as_scalar(x2) - as_scalar(x1))
    return AffineMap(slope, Fraction(as_scalar(y1)) - slope * Fraction(as_scalar(x1)))


# ---------------------------------------------------------------------------
# map patterns relative to the diagonal
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MapPattern:
    kind: str  # "below" | "above" | "interior" | "identity"
    fixed: Optional[Scalar] = None  # interior fixed point
    attracting: Optional[bool] = None  # interior case: basin on both sides


def map_pattern(g, lo: Scalar, hi: Scalar, samples: int = 65) -> MapPattern:
    """Position of an increasing map relative to the diagonal on [lo, hi]."""
    if isinstance(g, AffineMap):
        s, t = g.slope, g.intercept
        if s == 1:
            if t == 0:
                return MapPattern("identity")
            return MapPattern("below" if t < 0 else "above")
        p = g.fixed_point()
        if lo < p < hi:
            return MapPattern("interior", p, attracting=s < 1)
        below = g((lo + hi) / 2) < (lo + hi) / 2
        return MapPattern("below" if below else "above")
    signs = []
    pts = [lo + (hi - lo) * Fraction(i, samples - 1) for i in range(samples)]
    for x in pts:
        d = g(x) - x
        signs.append(0 if d == 0 else (1 if d > 0 else -1))
    if all(s == 0 for s in signs):
        return MapPattern("identity")
    crossings = [i for i in range(len(signs) - 1)
                 if signs[i] * signs[i + 1] < 0]
    if not crossings:
        if any(s > 0 for s in signs) and any(s < 0 for s in signs):
            raise IncompatiblePatternError("diagonal pattern not resolvable by sampling")
        return MapPattern("below" if any(s < 0 for s in signs) else "above")
    if len(crossings) > 1:
        raise IncompatiblePatternError("multiple interior fixed points")
    i = crossings[0]
    a_, b_ = float(pts[i]), float(pts[i + 1])
    sign_left = signs[i]
    for _ in range(200):
        m = (a_ + b_) / 2
        d = g(m) - m
        if d == 0 or m in (a_, b_):
            a_ = b_ = m
            break
        if (1 if d > 0 else -1) == sign_left:
            a_ = m
        else:
            b_ = m
    return MapPattern("interior", (a_ + b_) / 2, attracting=sign_left > 0)


# ---------------------------------------------------------------------------
# fundamental-domain subdivisions
# ---------------------------------------------------------------------------

def _arith(top, bottom, count):
    """count-1 interior points descending from top toward bottom."""
    return tuple(top - (top - bottom) * Fraction(i, count) for i in range(1, count))


def _divisions(x0, gx0, n, custom=None, floor_last=None, pins=()):
    """Division points t_1 > ... > t_{n-1} of the fundamental domain
    [g(x0), x0]; arithmetic by default, respaced to honor constraints.

    floor_last: require t_{n-1} strictly above this value (keeps images of
    the respaced bottom piece under the cap g(x0)).
    pins: (slot, bound, sense) with sense "ge"/"le"; binding bounds are
    pinned exactly and the remaining slots re-spaced arithmetically.
    """
    if custom is not None:
        divs = tuple(as_scalar(d) for d in custom)
        if len(divs) != n - 1:
            raise BadSeedError(f"need {n - 1} divisions, got {len(divs)}")
        chain = (x0, *divs, gx0)
        if any(u <= v for u, v in zip(chain, chain[1:])):
            raise BadSeedError(f"divisions must decrease strictly inside ({gx0}, {x0})")
        return divs
    divs = _arith(x0, gx0, n)
    if floor_last is not None and n >= 2 and divs[-1] <= floor_last:
        if not gx0 < floor_last < x0:
            raise IncompatiblePatternError(
                f"cannot keep the root below the cap: bound {format_scalar(floor_last)} "
                f"outside ({format_scalar(gx0)}, {format_scalar(x0)})")
        divs = _arith(x0, floor_last, n)  # last division = bound + gap/n > bound
    pins = [(s, as_scalar(b), sense) for s, b, sense in pins if 1 <= s <= n - 1]
    if not pins:
        return divs
    pinned: dict = {}
    for _ in range(len(pins) + 1):
        violated = False
        for slot, bound, sense in pins:
            value = divs[slot - 1]
            bad = ((sense == "ge" and value < bound)
                   or (sense == "le" and value > bound)
                   or (sense == "gt" and value <= bound)
                   or (sense == "lt" and value >= bound))
            if bad:
                # strict senses re-pin a notch inside the bound
                target = bound
                if sense == "gt":
                    target = bound + (x0 - bound) / (2 * n)
                elif sense == "lt":
                    target = bound - (bound - gx0) / (2 * n)
                if not gx0 < target < x0:
                    raise IncompatiblePatternError(
                        f"division pin {format_scalar(target)} outside the "
                        f"fundamental domain ({format_scalar(gx0)}, {format_scalar(x0)})")
                pinned[slot] = target
                violated = True
        if not violated:
            return divs
        anchors = [(0, x0)] + sorted(pinned.items()) + [(n, gx0)]
        for (s1, v1), (s2, v2) in zip(anchors, anchors[1:]):
            if not (s1 < s2 and v1 > v2):
                raise IncompatiblePatternError(
                    "division pins conflict: "
                    + ", ".join(f"t_{s}={format_scalar(v)}" for s, v in pinned.items()))
        rebuilt = []
        for (s1, v1), (s2, v2) in zip(anchors, anchors[1:]):
            rebuilt.extend(_arith(v1, v2, s2 - s1))
            if s2 < n:
                rebuilt.append(v2)
        divs = tuple(rebuilt)
    raise IncompatiblePatternError("division pins do not stabilize")


class _SeedMap:
    """Piecewise monotone bijection given by ordered pieces (lo, hi, map)."""

    def __init__(self, pieces):
        self.pieces = pieces
        self.los = [p[0] for p in pieces]

    def __call__(self, x):
        i = bisect.bisect_right(self.los, x) - 1
        i = max(0, min(i, len(self.pieces) - 1))
        return self.pieces[i][2](x)

    def inverse(self, w):
        for lo, hi, m in self.pieces:
            ends = (m(lo), m(hi))
            if min(ends) <= w <= max(ends):
                return m.inverse(w)
        raise EvaluationRangeError(f"{format_scalar(w)} outside the seed image")


# ---------------------------------------------------------------------------
# the orbit root (down-attracting normal form)
# ---------------------------------------------------------------------------

class OrbitRoot:
    """n-th iterative root of g on [u, v] where g(x) < x on (u, v),
    g(u) = u, built from a seeded fundamental domain [g(x0), x0].

    phi maps [t_i, t_{i-1}] onto [t_{i+1}, t_i] by the seed pieces; the
    bottom piece is forced to g ∘ (chain)^{-1}; elsewhere evaluation
    normalizes into the fundamental domain along the g-orbit and maps back.
    """

    def __init__(self, g, u, v, n, anchor=None, divisions=None,
                 floor_last=None, pins=()):
        if n < 2:
            raise MfError("orbit root needs order >= 2")
        if g(u) != u:
            raise IncompatiblePatternError(
                f"attracting end {format_scalar(u)} must be fixed")
        self.g, self.u, self.v, self.n = g, u, v, n
        top_fixed = g(v) == v
        if top_fixed:
            # both ends fixed: the orbit extension is onto, pins are moot
            floor_last, pins = None, ()
        if anchor is None:
            anchor = (u + v) / 2 if top_fixed else v
        if not u < anchor <= v or g(anchor) == anchor:
            raise BadSeedError(f"anchor {format_scalar(anchor)} unusable")
        self.x0 = anchor
        self.gx0 = g(anchor)
        self.divs = _divisions(self.x0, self.gx0, n, divisions,
                               floor_last=floor_last, pins=pins)
        knots = (self.x0, *self.divs, self.gx0)  # t_0 > t_1 > ... > t_n
        pieces = []
        chain = AffineMap(Fraction(1), Fraction(0))
        for i in range(n - 1):
            seg = _affine_through(knots[i + 1], knots[i + 2], knots[i], knots[i + 1])
            pieces.append((knots[i + 1], knots[i], seg))
            chain = compose_maps(seg, chain)
        # bottom piece [t_n, t_{n-1}] -> g([t_1, t_0]) via the chain inverse
        bottom = compose_maps(g, chain.inverse_map()) if n >= 2 else g
        pieces.append((knots[n], knots[n - 1] if n >= 2 else knots[0], bottom))
        pieces.sort(key=lambda p: p[0])
        self.seed = _SeedMap(pieces)
        self.t1 = knots[1]
        self.g_t1 = g(self.t1)

    def _normalize(self, x, top, bottom):
        dived = climbed = 0
        y = x
        while y > top:
            y = self.g(y)
            dived += 1
            if dived > _MAX_ORBIT_STEPS:
                raise EvaluationRangeError("orbit normalization diverged")
        while y <= bottom:
            y = self.g.inverse(y)
            climbed += 1
            if climbed > _MAX_ORBIT_STEPS:
                raise EvaluationRangeError("orbit normalization diverged")
        return y, dived, climbed

    def _denormalize(self, z, dived, climbed):
        for _ in range(dived):
            z = self.g.inverse(z)
        for _ in range(climbed):
            z = self.g(z)
        return z

    def forward(self, x):
        if x == self.u:
            return self.u
        if x == self.v and self.g(self.v) == self.v:
            return self.v
        if not self.u <= x <= self.v:
            raise EvaluationRangeError(
                f"{format_scalar(x)} outside [{format_scalar(self.u)}, {format_scalar(self.v)}]")
        y, dived, climbed = self._normalize(x, self.x0, self.gx0)
        return self._denormalize(self.seed(y), dived, climbed)

    def inverse(self, w):
        if w == self.u:
            return self.u
        if w == self.v and self.g(self.v) == self.v:
            return self.v
        if not self.u <= w <= self.v:
            raise EvaluationRangeError(f"{format_scalar(w)} outside the root range")
        y, dived, climbed = self._normalize(w, self.t1, self.g_t1)
        x = self._denormalize(self.seed.inverse(y), dived, climbed)
        if x > self.v or x < self.u:
            raise EvaluationRangeError(
                f"{format_scalar(w)} has no root preimage inside the interval")
        return x

    def as_map(self) -> GenericMap:
        recipe = ("orbit_root", self.n, format_scalar(self.x0),
                  tuple(format_scalar(d) for d in self.divs))
        return GenericMap(INC, self.forward, self.inverse, recipe)


class _MirroredRoot:
    """Root of an up-attracting map obtained by reflecting a normal form."""

    def __init__(self, base: OrbitRoot, pivot):
        self.base, self.pivot = base, pivot

    def forward(self, x):
        return self.pivot - self.base.forward(self.pivot - x)

    def inverse(self, w):
        return self.pivot - self.base.inverse(self.pivot - w)

    def as_map(self) -> GenericMap:
        recipe = ("mirrored", format_scalar(self.pivot), self.base.as_map().recipe)
        return GenericMap(INC, self.forward, self.inverse, recipe)


class _GluedRoot:
    """Increasing root around an interior fixed point, glued from sides."""

    def __init__(self, q, left, right):
        self.q, self.left, self.right = q, left, right

    def forward(self, x):
        if x == self.q:
            return self.q
        return self.left(x) if x < self.q else self.right(x)

    def inverse(self, w):
        if w == self.q:
            return self.q
        return self.left.inverse(w) if w < self.q else self.right.inverse(w)

    def as_map(self) -> GenericMap:
        recipe = ("glued_root", format_scalar(self.q))
        return GenericMap(INC, self.forward, self.inverse, recipe)


def _affine_root_fast(g: AffineMap, n: int):
    """Closed-form n-th root of an increasing affine map, exact when the
    slope root is rational, float-backed otherwise."""
    s = g.slope
    if s <= 0:
        return None
    if s == 1:
        return AffineMap(Fraction(1), g.intercept / n)
    p = g.fixed_point()
    alpha = rational_nth_root(s, n)
    if alpha is not None:
        return AffineMap(alpha, p * (1 - alpha))
    alpha_f = float(s) ** (1.0 / n)
    p_f = float(p)

    def fwd(x, a=alpha_f, c=p_f):
        return c + a * (float(x) - c)

    def bwd(w, a=alpha_f, c=p_f):
        return c + (float(w) - c) / a

    return GenericMap(INC, fwd, bwd,
                      ("affine_real_root", format_scalar(s), format_scalar(p), n))


def _root_below(g, u, v, n, seed: ScalarRootSeed, floor_last=None, cover=None,
                confine=None):
    """Root on a below-diagonal piece [u, v] (attracting fixed end u)."""
    if cover is not None:
        power, need_lo, need_hi = cover
        if need_lo is not None and need_lo < u:
            raise IncompatiblePatternError(
                f"required range undercuts the attracting end {format_scalar(u)}")
    if confine is not None and confine[1] is not None and confine[1] > u:
        raise IncompatiblePatternError(
            "cannot keep iterated values above the attracting end")
    if isinstance(g, AffineMap) and seed.divisions is None and seed.anchor is None:
        fast = _affine_root_fast(g, n)
        if fast is not None and _cover_ok(fast, u, v, floor_last, cover, confine, g):
            return fast
    pins = []
    if cover is not None and cover[2] is not None:
        pins.append((cover[0], cover[2], "ge"))
    if confine is not None and confine[2] is not None:
        pins.append((confine[0], confine[2], "lt"))
    root = OrbitRoot(g, u, v, n, anchor=seed.anchor, divisions=seed.divisions,
                     floor_last=floor_last, pins=pins)
    return root.as_map()


def _cover_ok(phi, u, v, floor_last, cover, confine, g):
    """Check a candidate closed-form root against cap/coverage pins."""
    if floor_last is not None and not phi(floor_last) < g(v):
        return False
    if cover is not None:
        power, need_lo, need_hi = cover
        if need_hi is not None:
            w = v
            for _ in range(power):
                w = phi(w)
            if w < need_hi:
                return False
    if confine is not None:
        power, c_lo, c_hi = confine
        top, bottom = v, u
        for _ in range(power):
            top, bottom = phi(top), phi(bottom)
        if c_hi is not None and top > c_hi:
            return False
        if c_lo is not None and bottom < c_lo:
            return False
    return True


def _mirror_triple(triple, pivot):
    if triple is None:
        return None
    power, lo, hi = triple
    return (power, None if hi is None else pivot - hi,
            None if lo is None else pivot - lo)


def _root_above(g, w, p, n, seed: ScalarRootSeed, cover=None, confine=None):
    """Root on an above-diagonal piece [w, p] (attracting fixed end p),
    via reflection to the normal form."""
    pivot = w + p
    if isinstance(g, AffineMap):
        if seed.divisions is None and seed.anchor is None:
            fast = _affine_root_fast(g, n)
            if fast is not None and _cover_ok_above(fast, w, p, cover, confine):
                return fast
    g_tilde = _reflect_interval_map(g, w, p)
    mirrored_cover = _mirror_triple(cover, pivot)
    mirrored_confine = _mirror_triple(confine, pivot)
    if mirrored_cover is not None and mirrored_cover[1] is not None:
        if mirrored_cover[1] < pivot - p:
            raise IncompatiblePatternError(
                f"required range overshoots the attracting end {format_scalar(p)}")
    if mirrored_confine is not None and mirrored_confine[1] is not None:
        if mirrored_confine[1] > pivot - p:
            raise IncompatiblePatternError(
                "cannot keep iterated values below the attracting end")
    anchor = None if seed.anchor is None else pivot - seed.anchor
    pins = []
    if mirrored_cover is not None and mirrored_cover[2] is not None:
        pins.append((mirrored_cover[0], mirrored_cover[2], "ge"))
    if mirrored_confine is not None and mirrored_confine[2] is not None:
        pins.append((mirrored_confine[0], mirrored_confine[2], "lt"))
    base = OrbitRoot(g_tilde, pivot - p, pivot - w, n, anchor=anchor,
                     divisions=seed.divisions, pins=pins)
    return _MirroredRoot(base, pivot).as_map()


def _cover_ok_above(phi, w, p, cover, confine=None):
    if cover is not None:
        power, need_lo, need_hi = cover
        if need_lo is not None:
            z = w
            for _ in range(power):
                z = phi(z)
            if z > need_lo:
                return False
    if confine is not None:
        power, c_lo, c_hi = confine
        top, bottom = p, w
        for _ in range(power):
            top, bottom = phi(top), phi(bottom)
        if c_hi is not None and top > c_hi:
            return False
        if c_lo is not None and bottom < c_lo:
            return False
    return True


def _split_cover(triple, q, for_lower):
    """Restrict a coverage requirement to one side of the fixed point."""
    if triple is None:
        return None
    power, lo, hi = triple
    if for_lower:
        return None if lo is None or lo >= q else (power, lo, None)
    return None if hi is None or hi <= q else (power, None, hi)


def _split_confine(triple, q, for_lower):
    """Restrict a confinement requirement to one side of the fixed point;
    the bound toward the fixed point is automatic."""
    if triple is None:
        return None
    power, lo, hi = triple
    if for_lower:
        if lo is not None and lo >= q:
            raise IncompatiblePatternError(
                "confinement bound conflicts with the fixed point")
        return None if lo is None else (power, lo, None)
    if hi is not None and hi <= q:
        raise IncompatiblePatternError(
            "confinement bound conflicts with the fixed point")
    return None if hi is None else (power, None, hi)


def _increasing_root_auto(g, lo, hi, n, seed: ScalarRootSeed,
                          floor_last=None, cover=None, confine=None,
                          allow_interior=False):
    """Dispatch an increasing n-th root by diagonal pattern."""
    seed = seed.normalized()
    if n == 1:
        return g
    pat = map_pattern(g, lo, hi)
    if pat.kind == "identity":
        return AffineMap(Fraction(1), Fraction(0))
    if pat.kind == "below":
        return _root_below(g, lo, hi, n, seed, floor_last=floor_last,
                           cover=cover, confine=confine)
    if pat.kind == "above":
        return _root_above(g, lo, hi, n, seed, cover=cover, confine=confine)
    if not allow_interior:
        raise HasInteriorFixedPointError(pat.fixed)
    if not pat.attracting:
        if isinstance(g, AffineMap) and seed.is_default:
            fast = _affine_root_fast(g, n)
            if fast is not None:
                return fast
        raise IncompatiblePatternError(
            "interior repelling fixed point not supported by the orbit engine")
    q = pat.fixed
    if isinstance(g, AffineMap) and seed.is_default and cover is None and confine is None:
        fast = _affine_root_fast(g, n)
        if fast is not None:
            return fast
    if cover is not None:
        power, need_lo, need_hi = cover
        if not (need_lo is None or need_lo < q) or not (need_hi is None or need_hi > q):
            raise IncompatiblePatternError(
                "coverage requirement does not straddle the fixed point")
    left = _root_above(g, lo, q, n, seed,
                       cover=_split_cover(cover, q, True),
                       confine=_split_confine(confine, q, True))
    right = _root_below(g, q, hi, n, seed,
                        cover=_split_cover(cover, q, False),
                        confine=_split_confine(confine, q, False))
    glue = _GluedRoot(q, left, right)
    return glue.as_map()


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def increasing_nth_root(g, lo: Scalar, hi: Scalar, n: int,
                        seed: ScalarRootSeed = DEFAULT_SEED):
    """Increasing n-th iterative root of a fixed-point-free increasing
    self-map with g(x) < x on (lo, hi); the mirrored case must be served
    through reflection by the caller."""
    if n < 2:
        raise MfError("root order must be at least 2")
    lo, hi = as_scalar(lo), as_scalar(hi)
    pat = map_pattern(g, lo, hi)
    if pat.kind == "interior":
        raise HasInteriorFixedPointError(pat.fixed)
    if pat.kind == "above":
        raise WrongSideError("g(x) > x; reflect the problem first")
    if pat.kind == "identity":
        return AffineMap(Fraction(1), Fraction(0))
    return _root_below(g, lo, hi, n, seed.normalized())


class _OrbitConjugacy:
    """h with h∘g1 = g2∘h between two below-diagonal increasing maps."""

    def __init__(self, g1, u1, v1, g2, u2, v2, seg: AffineMap, x1, x2):
        self.g1, self.u1, self.v1 = g1, u1, v1
        self.g2, self.u2, self.v2 = g2, u2, v2
        self.seg, self.x1, self.x2 = seg, x1, x2
        self.g1x1 = g1(x1)
        self.g2x2 = g2(x2)

    def _orbit(self, x, g, top, bottom):
        dived = climbed = 0
        while x > top:
            x = g(x)
            dived += 1
            if dived > _MAX_ORBIT_STEPS:
                raise EvaluationRangeError("conjugacy orbit diverged")
        while x <= bottom:
            x = g.inverse(x)
            climbed += 1
            if climbed > _MAX_ORBIT_STEPS:
                raise EvaluationRangeError("conjugacy orbit diverged")
        return x, dived, climbed

    def forward(self, x):
        if x == self.u1:
            return self.u2
        y, dived, climbed = self._orbit(x, self.g1, self.x1, self.g1x1)
        z = self.seg(y)
        for _ in range(dived):
            z = self.g2.inverse(z)
        for _ in range(climbed):
            z = self.g2(z)
        return z

    def inverse(self, w):
        if w == self.u2:
            return self.u1
        y, dived, climbed = self._orbit(w, self.g2, self.x2, self.g2x2)
        z = self.seg.inverse(y)
        for _ in range(dived):
            z = self.g1.inverse(z)
        for _ in range(climbed):
            z = self.g1(z)
        return z

    def as_map(self) -> GenericMap:
        return GenericMap(INC, self.forward, self.inverse,
                          ("orbit_conjugacy", format_scalar(self.x1),
                           format_scalar(self.x2)))


class _GluedConjugacy:
    def __init__(self, q1, q2, left, right):
        self.q1, self.q2, self.left, self.right = q1, q2, left, right

    def forward(self, x):
        if x == self.q1:
            return self.q2
        return self.left(x) if x < self.q1 else self.right(x)

    def inverse(self, w):
        if w == self.q2:
            return self.q1
        return self.left.inverse(w) if w < self.q2 else self.right.inverse(w)

    def as_map(self) -> GenericMap:
        return GenericMap(INC, self.forward, self.inverse,
                          ("glued_conjugacy", format_scalar(self.q1),
                           format_scalar(self.q2)))


def _conj_below(g1, u1, v1, g2, u2, v2, seed: ScalarRootSeed):
    """Increasing conjugacy between two below-diagonal maps."""
    x1 = v1 if seed.anchor is None else seed.anchor
    x2 = v2 if seed.image_anchor is None else seed.image_anchor
    if not (u1 < x1 <= v1 and u2 < x2 <= v2):
        raise BadSeedError("conjugacy anchors outside the intervals")
    seg = _affine_through(g1(x1), g2(x2), x1, x2)
    return _OrbitConjugacy(g1, u1, v1, g2, u2, v2, seg, x1, x2).as_map()


def _reflect_interval_map(g, lo, hi):
    pivot = lo + hi
    if isinstance(g, AffineMap):
        return AffineMap(g.slope, pivot * (1 - g.slope) - g.intercept)
    r = AffineMap(Fraction(-1), Fraction(pivot))
    return compose_maps(r, g, r)


def _conj_increasing(g1, lo1, hi1, g2, lo2, hi2, seed: ScalarRootSeed):
    p1 = map_pattern(g1, lo1, hi1)
    p2 = map_pattern(g2, lo2, hi2)
    if p1.kind != p2.kind:
        raise IncompatiblePatternError(
            f"diagonal patterns differ: {p1.kind} vs {p2.kind}")
    if p1.kind == "identity":
        return _affine_through(lo1, lo2, hi1, hi2)
    if p1.kind == "below":
        return _conj_below(g1, lo1, hi1, g2, lo2, hi2, seed)
    if p1.kind == "above":
        # reflect both problems onto the below-diagonal normal form
        pivot1, pivot2 = lo1 + hi1, lo2 + hi2
        r1 = AffineMap(Fraction(-1), Fraction(pivot1))
        r2 = AffineMap(Fraction(-1), Fraction(pivot2))
        seed_r = ScalarRootSeed(
            None if seed.anchor is None else pivot1 - seed.anchor,
            seed.divisions,
            None if seed.image_anchor is None else pivot2 - seed.image_anchor,
            None)
        inner = _conj_below(_reflect_interval_map(g1, lo1, hi1), lo1, hi1,
                            _reflect_interval_map(g2, lo2, hi2), lo2, hi2,
                            seed_r)
        return compose_maps(r2, inner, r1)
    if p1.attracting != p2.attracting:
        raise IncompatiblePatternError("interior fixed-point types differ")
    q1, q2 = p1.fixed, p2.fixed
    left = _conj_increasing(g1, lo1, q1, g2, lo2, q2, seed)
    right = _conj_increasing(g1, q1, hi1, g2, q2, hi2, seed)
    return _GluedConjugacy(q1, q2, left, right).as_map()


def conjugacy(g1, lo1: Scalar, hi1: Scalar, g2, lo2: Scalar, hi2: Scalar,
              orientation: Orientation, seed: ScalarRootSeed = DEFAULT_SEED):
    """h on [lo1, hi1] with h∘g1 = g2∘h, increasing or decreasing.

    Affine seeds/candidates are verified by exact commutation and returned
    in closed form; otherwise a fundamental segment is extended along
    orbits (ends map to ends, fixed points to fixed points).
    """
    lo1, hi1 = as_scalar(lo1), as_scalar(hi1)
    lo2, hi2 = as_scalar(lo2), as_scalar(hi2)
    seed = seed.normalized()

    if isinstance(g1, AffineMap) and isinstance(g2, AffineMap):
        if seed.affine is not None:
            cand = AffineMap(Fraction(seed.affine[0]), Fraction(seed.affine[1]))
        elif orientation is INC:
            cand = _affine_through(lo1, lo2, hi1, hi2)
        else:
            cand = _affine_through(lo1, hi2, hi1, lo2)
        if compose_maps(cand, g1) == compose_maps(g2, cand):
            if cand.orientation is orientation:
                return cand
        if seed.affine is not None:
            raise BadSeedError("affine seed does not commute with the pair")

    if orientation is INC:
        return _conj_increasing(g1, lo1, hi1, g2, lo2, hi2, seed)

    # decreasing conjugacy: reflect the target and compose back
    pivot = lo2 + hi2
    r2 = AffineMap(Fraction(-1), Fraction(pivot))
    g2_tilde = _reflect_interval_map(g2, lo2, hi2)
    seed2 = ScalarRootSeed(
        seed.anchor, seed.divisions,
        None if seed.image_anchor is None else pivot - seed.image_anchor,
        None)
    inner = _conj_increasing(g1, lo1, hi1, g2_tilde, lo2, hi2, seed2)
    return compose_maps(r2, inner)


# ---------------------------------------------------------------------------
# decreasing square roots (pairings)
# ---------------------------------------------------------------------------

class _SelfPairRoot:
    """Decreasing square root of an increasing map with an interior
    attracting fixed point; one side seeded, the other forced by
    psi_left = psi_right^{-1} ∘ g."""

    def __init__(self, g, u, v, p, x0, y0):
        if y0 > g(u):
            raise BadSeedError(
                f"image anchor {format_scalar(y0)} must not exceed g({format_scalar(u)})")
        if not p < x0 <= v or not u <= y0 < p:
            raise BadSeedError("pairing anchors must sit on opposite sides of the fixed point")
        self.g, self.u, self.v, self.p = g, u, v, p
        self.x0, self.y0 = x0, y0
        self.gx0 = g(x0)
        self.seg = _affine_through(self.gx0, g(y0), x0, y0)  # decreasing

    def _norm_right(self, x):
        dived = climbed = 0
        while x > self.x0:
            x = self.g(x)
            dived += 1
            if dived > _MAX_ORBIT_STEPS:
                raise EvaluationRangeError("pairing orbit diverged")
        while x <= self.gx0:
            x = self.g.inverse(x)
            climbed += 1
            if climbed > _MAX_ORBIT_STEPS:
                raise EvaluationRangeError("pairing orbit diverged")
        return x, dived, climbed

    def _psi_right(self, x):
        y, dived, climbed = self._norm_right(x)
        z = self.seg(y)
        for _ in range(dived):
            z = self.g.inverse(z)
        for _ in range(climbed):
            z = self.g(z)
        return z

    def _psi_right_inv(self, w):
        g_y0 = self.g(self.y0)
        dived = climbed = 0
        while w >= g_y0:
            w = self.g.inverse(w)
            dived += 1
            if dived > _MAX_ORBIT_STEPS:
                raise EvaluationRangeError("pairing orbit diverged")
        while w < self.y0:
            w = self.g(w)
            climbed += 1
            if climbed > _MAX_ORBIT_STEPS:
                raise EvaluationRangeError("pairing orbit diverged")
        x = self.seg.inverse(w)
        for _ in range(dived):
            x = self.g(x)
        for _ in range(climbed):
            x = self.g.inverse(x)
        return x

    def forward(self, x):
        if x == self.p:
            return self.p
        if x > self.p:
            return self._psi_right(x)
        return self._psi_right_inv(self.g(x))

    def inverse(self, z):
        if z == self.p:
            return self.p
        if z < self.p:
            return self._psi_right_inv(z)
        return self.g.inverse(self._psi_right(z))

    def as_map(self) -> GenericMap:
        return GenericMap(DEC, self.forward, self.inverse,
                          ("self_pair_sqrt", format_scalar(self.x0),
                           format_scalar(self.y0)))


def decreasing_square_root_pair(g_src, lo_src: Scalar, hi_src: Scalar,
                                g_dst=None, lo_dst: Scalar = None,
                                hi_dst: Scalar = None,
                                seed: ScalarRootSeed = DEFAULT_SEED,
                                cover_top: Scalar = None):
    """(h, partner) with partner∘h = g_src and h∘partner = g_dst for the
    cross pairing; the self pairing (g_dst None) returns (psi, psi) with
    psi² = g_src around its interior fixed point.

    cover_top asks the self pairing's range to reach at least that value
    (needed when other intervals extend through psi's inverse)."""
    lo_src, hi_src = as_scalar(lo_src), as_scalar(hi_src)
    seed = seed.normalized()
    if g_dst is not None:
        pat1 = map_pattern(g_src, lo_src, hi_src)
        pat2 = map_pattern(g_dst, as_scalar(lo_dst), as_scalar(hi_dst))
        compatible = (
            (pat1.kind == "below" and pat2.kind == "above")
            or (pat1.kind == "above" and pat2.kind == "below")
            or (pat1.kind == "interior" and pat2.kind == "interior"
                and pat1.attracting == pat2.attracting)
            or pat1.kind == pat2.kind == "identity")
        if not compatible:
            raise IncompatiblePatternError(
                f"cross pairing needs mirrored patterns, got {pat1.kind}/{pat2.kind}")
        h = conjugacy(g_src, lo_src, hi_src, g_dst, lo_dst, hi_dst, DEC, seed)
        partner = compose_maps(g_src, h.inverse_map())
        return h, partner

    pat = map_pattern(g_src, lo_src, hi_src)
    if pat.kind != "interior" or not pat.attracting:
        raise IncompatiblePatternError(
            "self pairing needs an interior fixed point attracting from both sides")
    p = pat.fixed
    if isinstance(g_src, AffineMap) and seed.is_default:
        alpha = rational_nth_root(g_src.slope, 2)
        cand = None
        if alpha is not None:
            cand = AffineMap(-alpha, p * (1 + alpha))
        else:
            alpha_f = float(g_src.slope) ** 0.5
            p_f = float(p)
            cand = GenericMap(
                DEC,
                lambda x, a=alpha_f, c=p_f: c - a * (float(x) - c),
                lambda w, a=alpha_f, c=p_f: c - (float(w) - c) / a,
                ("affine_real_sqrt_dec", format_scalar(g_src.slope),
                 format_scalar(p)))
        self_maps = cand(lo_src) <= hi_src and cand(hi_src) >= lo_src
        covers = cover_top is None or cand(lo_src) >= cover_top
        if self_maps and covers:
            return cand, cand
    x0 = hi_src if seed.anchor is None else seed.anchor
    y0 = lo_src if seed.image_anchor is None else seed.image_anchor
    if cover_top is not None and seed.is_default and cover_top > p:
        # pin the seed so that psi(lo) reaches exactly cover_top: anchor at
        # the needed value, send it to g(lo)
        if not p < cover_top < hi_src:
            raise IncompatiblePatternError(
                f"coverage requirement {format_scalar(cover_top)} outside "
                "the pairing interval")
        x0, y0 = cover_top, g_src(lo_src)
    psi = _SelfPairRoot(g_src, lo_src, hi_src, p, x0, y0).as_map()
    return psi, psi


# ---------------------------------------------------------------------------
# decreasing odd roots
# ---------------------------------------------------------------------------

def _affine_odd_root_fast(g: AffineMap, k: int):
    s, t = g.slope, g.intercept
    if s >= 0:
        return None
    alpha = rational_nth_root(-s, k)
    if alpha is not None:
        a = -alpha
        return AffineMap(a, t * (a - 1) / (s - 1))
    a_f = -((-float(s)) ** (1.0 / k))
    b_f = float(t) * (a_f - 1.0) / (float(s) - 1.0)

    def fwd(x, a=a_f, b=b_f):
        return a * float(x) + b

    def bwd(w, a=a_f, b=b_f):
        return (float(w) - b) / a

    return GenericMap(DEC, fwd, bwd,
                      ("affine_real_odd_root", format_scalar(s),
                       format_scalar(t), k))


class _DecGlue:
    """Decreasing map glued across a fixed point from two side maps."""

    def __init__(self, p, left_map, right_map):
        self.p, self.left_map, self.right_map = p, left_map, right_map

    def forward(self, x):
        if x == self.p:
            return self.p
        return self.left_map(x) if x < self.p else self.right_map(x)

    def inverse(self, z):
        if z == self.p:
            return self.p
        return self.right_map.inverse(z) if z < self.p else self.left_map.inverse(z)

    def as_map(self) -> GenericMap:
        return GenericMap(DEC, self.forward, self.inverse,
                          ("dec_glue", format_scalar(self.p)))


def odd_swap_maps(A, lo_a: Scalar, hi_a: Scalar, B, lo_b: Scalar, hi_b: Scalar,
                  k: int, seed: ScalarRootSeed = DEFAULT_SEED,
                  cover_alpha=None, cover_beta=None):
    """Branch maps of an odd-order decreasing root on a swapped pair.

    A maps the alpha interval into the beta interval, B back; phi is an
    increasing k-th root of A∘B on beta whose m-th power covers the closed
    range of A, and the root branches are phi^{-m}∘A and A^{-1}∘phi^{m+1}
    with k = 2m+1.

    cover_alpha/cover_beta widen the coverage requirement on phi^m so that
    extensions can pull further values back through the root's square
    (alpha-side needs are transported through A).
    """
    if k < 3 or k % 2 == 0:
        raise MfError("odd swap needs odd order k >= 3")
    m = (k - 1) // 2
    lo_a, hi_a = as_scalar(lo_a), as_scalar(hi_a)
    G = compose_maps(A, B)
    ends = (A(lo_a), A(hi_a))
    need_lo, need_hi = min(ends), max(ends)
    if cover_beta is not None:
        need_lo = min(need_lo, as_scalar(cover_beta[0]))
        need_hi = max(need_hi, as_scalar(cover_beta[1]))
    if cover_alpha is not None:
        sent = (A(as_scalar(cover_alpha[0])), A(as_scalar(cover_alpha[1])))
        need_lo = min(need_lo, min(sent))
        need_hi = max(need_hi, max(sent))
    # phi^{m+1} feeds A's inverse, so it must stay inside A's closed range
    confine = (m + 1, min(ends), max(ends))
    phi = _increasing_root_auto(G, as_scalar(lo_b), as_scalar(hi_b), k, seed,
                                cover=(m, need_lo, need_hi),
                                confine=confine,
                                allow_interior=True)
    map_alpha = compose_maps(iterate_map(phi, m).inverse_map(), A)
    map_beta = compose_maps(A.inverse_map(), iterate_map(phi, m + 1))
    return map_alpha, map_beta, phi


def decreasing_odd_root(g, lo: Scalar, hi: Scalar, k: int,
                        seed: ScalarRootSeed = DEFAULT_SEED, cover=None):
    """Decreasing k-th iterative root (k odd >= 3) of a strictly
    decreasing self-map of [lo, hi].

    cover = (lo, hi) requires the root's (k-1)-th power to cover that value
    range (needed when other intervals extend through it)."""
    if k % 2 == 0:
        raise MfError("even order requested; decreasing maps have no even-order roots")
    if k < 3:
        raise MfError("order must be >= 3")
    lo, hi = as_scalar(lo), as_scalar(hi)
    if g(lo) < g(hi):
        raise MfError("decreasing map required")
    seed = seed.normalized()
    if isinstance(g, AffineMap) and seed.is_default:
        cand = _affine_odd_root_fast(g, k)
        if cand is not None and lo <= cand(lo) <= hi and lo <= cand(hi) <= hi:
            if cover is None:
                return cand
            z1, z2 = cand(lo), cand(hi)
            for _ in range(k - 2):
                z1, z2 = cand(z1), cand(z2)
            if min(z1, z2) <= cover[0] and cover[1] <= max(z1, z2):
                return cand
    # involution test: g² = id makes g its own odd root
    probes = [lo, (lo + hi) / 2, hi]
    if all(g(g(x)) == x for x in probes):
        return g
    # unique fixed point of a decreasing map
    if isinstance(g, AffineMap):
        p = g.fixed_point()
    else:
        a_, b_ = float(lo), float(hi)
        for _ in range(200):
            mid = (a_ + b_) / 2
            d = g(mid) - mid
            if d == 0 or mid in (a_, b_):
                a_ = b_ = mid
                break
            if d > 0:
                a_ = mid
            else:
                b_ = mid
        p = (a_ + b_) / 2
    if not lo < p < hi:
        raise IncompatiblePatternError("decreasing self-map must cross the diagonal inside")
    cover_alpha = cover_beta = None
    if cover is not None:
        clo, chi = as_scalar(cover[0]), as_scalar(cover[1])
        if clo < p:
            cover_beta = (clo, min(chi, p))
        if chi > p:
            cover_alpha = (max(clo, p), chi)
    # A = g on (p, hi] into the left side, B = g on [lo, p) back
    right, left, _phi = odd_swap_maps(g, p, hi, g, lo, p, k, seed,
                                      cover_alpha=cover_alpha,
                                      cover_beta=cover_beta)
    return _DecGlue(p, left, right).as_map()
