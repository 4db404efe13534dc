"""Strictly monotone usc multifunctions on a closed interval.

A multifunction is stored as ordered single-valued branches on the maximal
jump-free open subintervals plus set-valued jump points.  Domain endpoints
belong to the adjacent branch closure unless a jump sits there.  All
composition/iteration bookkeeping follows the jump-propagation law: x is a
jump of G∘F iff x is a jump of F or F(x) is a singleton lying on a jump
of G.
"""

from __future__ import annotations

import bisect
import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from .errors import (
    DomainMismatchError,
    NoSuchSideError,
    OutOfDomainError,
    RangeEscapeError,
    StructureError,
)
from .maps import (
    AffineMap,
    INC,
    MonotoneMap,
    Orientation,
    compose_maps,
    map_is_exact_rational,
    reflect_map,
)
from .scalars import Scalar, as_scalar, format_scalar, is_exact


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


LEFT = Side.LEFT
RIGHT = Side.RIGHT


# ---------------------------------------------------------------------------
# intervals and value sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class ClosedInterval:
    lo: Scalar
    hi: Scalar

    def __post_init__(self):
        object.__setattr__(self, "lo", as_scalar(self.lo))
        object.__setattr__(self, "hi", as_scalar(self.hi))
        if not self.lo <= self.hi:
            raise StructureError(f"interval needs lo <= hi, got {self}")

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def is_exact(self) -> bool:
        return is_exact(self.lo) and is_exact(self.hi)

    def contains(self, x: Scalar) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "ClosedInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def reflected(self, pivot_sum: Scalar) -> "ClosedInterval":
        return ClosedInterval(pivot_sum - self.hi, pivot_sum - self.lo)

    def __repr__(self):
        if self.is_point:
            return f"[{format_scalar(self.lo)}]"
        return f"[{format_scalar(self.lo)}, {format_scalar(self.hi)}]"


@dataclass(frozen=True)
class ValueSet:
    """Finite ordered union of pairwise disjoint closed intervals."""

    components: Tuple[ClosedInterval, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise StructureError("value set must be nonempty")
        for left, right in zip(comps, comps[1:]):
            if not left.hi < right.lo:
                raise StructureError(f"components must be strictly increasing: {comps}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_intervals(cls, intervals: Iterable[ClosedInterval]) -> "ValueSet":
        """Normalize arbitrary closed intervals: sort and merge overlaps
        (touching intervals merge; the union is exact, never the hull)."""
        items = sorted(intervals, key=lambda iv: (iv.lo, iv.hi))
        if not items:
            raise StructureError("value set must be nonempty")
        merged = [items[0]]
        for iv in items[1:]:
            last = merged[-1]
            if iv.lo <= last.hi:
                if iv.hi > last.hi:
                    merged[-1] = ClosedInterval(last.lo, iv.hi)
            else:
                merged.append(iv)
        return cls(tuple(merged))

    @classmethod
    def point(cls, x: Scalar) -> "ValueSet":
        return cls((ClosedInterval(x, x),))

    @classmethod
    def interval(cls, lo: Scalar, hi: Scalar) -> "ValueSet":
        return cls((ClosedInterval(lo, hi),))

    @property
    def min_value(self) -> Scalar:
        return self.components[0].lo

    @property
    def max_value(self) -> Scalar:
        return self.components[-1].hi

    @property
    def is_singleton(self) -> bool:
        return len(self.components) == 1 and self.components[0].is_point

    @property
    def has_multiple_points(self) -> bool:
        return not self.is_singleton

    @property
    def is_single_interval(self) -> bool:
        return len(self.components) == 1

    @property
    def is_exact(self) -> bool:
        return all(c.is_exact for c in self.components)

    def contains(self, x: Scalar) -> bool:
        idx = bisect.bisect_right([c.lo for c in self.components], x) - 1
        return idx >= 0 and self.components[idx].contains(x)

    def singleton_value(self) -> Scalar:
        if not self.is_singleton:
            raise StructureError(f"{self} is not a singleton")
        return self.components[0].lo

    def map_through(self, m) -> "ValueSet":
        """Image under a strictly monotone map, componentwise."""
        out = []
        for c in self.components:
            p, q = m(c.lo), m(c.hi)
            out.append(ClosedInterval(min(p, q), max(p, q)))
        return ValueSet.from_intervals(out)

    def reflected(self, pivot_sum: Scalar) -> "ValueSet":
        return ValueSet(tuple(c.reflected(pivot_sum) for c in reversed(self.components)))

    def union(self, other: "ValueSet") -> "ValueSet":
        return ValueSet.from_intervals(self.components + other.components)

    def coarsened(self, tol: float) -> "ValueSet":
        """Merge components separated by gaps below tol (numeric noise)."""
        merged = [self.components[0]]
        for c in self.components[1:]:
            last = merged[-1]
            if c.lo - last.hi <= tol:
                merged[-1] = ClosedInterval(last.lo, max(last.hi, c.hi))
            else:
                merged.append(c)
        return ValueSet(tuple(merged))

    def __repr__(self):
        return "{" + " ∪ ".join(repr(c) for c in self.components) + "}"


@dataclass(frozen=True)
class JumpPoint:
    location: Scalar
    value: ValueSet

    def __post_init__(self):
        object.__setattr__(self, "location", as_scalar(self.location))
        if self.value.is_singleton:
            raise StructureError(
                f"jump at {format_scalar(self.location)} must be genuinely set-valued"
            )


@dataclass(frozen=True)
class Branch:
    """Single-valued strictly monotone piece on the open core (lo, hi)."""

    lo: Scalar
    hi: Scalar
    map: MonotoneMap

    def __post_init__(self):
        object.__setattr__(self, "lo", as_scalar(self.lo))
        object.__setattr__(self, "hi", as_scalar(self.hi))
        if not self.lo < self.hi:
            raise StructureError("branch needs lo < hi")

    def limit(self, side_point: Scalar) -> Scalar:
        """One-sided endpoint limit via closure evaluation of the map."""
        return self.map(side_point)


# ---------------------------------------------------------------------------
# validation report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    kind: str
    where: Optional[Scalar]
    detail: str

    def __repr__(self):
        loc = "" if self.where is None else f" at {format_scalar(self.where)}"
        return f"{self.kind}{loc}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(repr(v) for v in self.violations)


@dataclass(frozen=True)
class EquivalenceReport:
    equal: bool
    exact: bool
    max_deviation: float
    worst_point: Optional[Scalar]
    reason: str

    def __repr__(self):
        status = "equal" if self.equal else "unequal"
        mode = "exact" if self.exact else "grid"
        return f"EquivalenceReport({status}, {mode}, maxdev={self.max_deviation:.3e}, {self.reason})"


# ---------------------------------------------------------------------------
# the multifunction
# ---------------------------------------------------------------------------

def _tol_close(x: Scalar, y: Scalar, tol: float) -> bool:
    if is_exact(x) and is_exact(y):
        return x == y
    return abs(x - y) <= tol


@dataclass(frozen=True)
class Multifunction:
    domain: ClosedInterval
    orientation: Orientation
    branches: Tuple[Branch, ...]
    jumps: Tuple[JumpPoint, ...]

    # -- construction -------------------------------------------------------

    def __post_init__(self):
        a, b = self.domain.lo, self.domain.hi
        if not a < b:
            raise StructureError("domain must be nondegenerate")
        locs = [j.location for j in self.jumps]
        if any(not a <= c <= b for c in locs):
            raise StructureError("jump outside domain")
        if any(x >= y for x, y in zip(locs, locs[1:])):
            raise StructureError("jumps must be strictly increasing")
        cuts = [a] + locs + [b]
        expected = [(u, v) for u, v in zip(cuts, cuts[1:]) if u < v]
        got = [(br.lo, br.hi) for br in self.branches]
        if expected != got:
            raise StructureError(
                f"branches {got} do not tile the jump-free gaps {expected}"
            )

    @classmethod
    def build(cls, lo, hi, pieces, jumps=()) -> "Multifunction":
        """Convenience constructor from affine piece and jump descriptions.

        pieces: iterable of (lo, hi, slope, intercept); jumps: iterable of
        (location, value) where value is (lo, hi) or a list of such pairs.
        """
        branches = [
            Branch(as_scalar(a), as_scalar(b),
                   AffineMap(Fraction(as_scalar(s)), Fraction(as_scalar(t))))
            for a, b, s, t in pieces
        ]
        jps = []
        for loc, val in jumps:
            if val and not isinstance(val[0], (tuple, list)):
                val = [val]
            comps = [ClosedInterval(as_scalar(p), as_scalar(q)) for p, q in val]
            jps.append(JumpPoint(as_scalar(loc), ValueSet.from_intervals(comps)))
        jps.sort(key=lambda j: j.location)
        branches.sort(key=lambda br: br.lo)
        orientation = branches[0].map.orientation if branches else INC
        return cls(ClosedInterval(as_scalar(lo), as_scalar(hi)), orientation,
                   tuple(branches), tuple(jps))

    # -- basic accessors ----------------------------------------------------

    @property
    def jump_locations(self) -> Tuple[Scalar, ...]:
        return tuple(j.location for j in self.jumps)

    @property
    def includes_left_endpoint(self) -> bool:
        """Domain endpoint a is covered by the first branch closure."""
        return not (self.jumps and self.jumps[0].location == self.domain.lo)

    @property
    def includes_right_endpoint(self) -> bool:
        return not (self.jumps and self.jumps[-1].location == self.domain.hi)

    @property
    def is_exact(self) -> bool:
        return (self.domain.is_exact
                and all(map_is_exact_rational(br.map) for br in self.branches)
                and all(is_exact(j.location) and j.value.is_exact for j in self.jumps))

    def jump_at(self, x: Scalar) -> Optional[JumpPoint]:
        locs = [j.location for j in self.jumps]
        i = bisect.bisect_left(locs, x)
        if i < len(locs) and locs[i] == x:
            return self.jumps[i]
        return None

    def branch_containing(self, x: Scalar, closure: bool = False) -> Optional[Branch]:
        """Branch whose open core contains x; with closure=True also match
        endpoint inclusion at a/b when no jump sits there."""
        los = [br.lo for br in self.branches]
        i = bisect.bisect_right(los, x) - 1
        if i >= 0:
            br = self.branches[i]
            if br.lo < x < br.hi:
                return br
        if closure:
            if (x == self.domain.lo and self.includes_left_endpoint
                    and self.branches):
                return self.branches[0]
            if (x == self.domain.hi and self.includes_right_endpoint
                    and self.branches):
                return self.branches[-1]
        return None

    # -- evaluation ---------------------------------------------------------

    def __call__(self, x: Scalar) -> ValueSet:
        x = as_scalar(x)
        if not self.domain.contains(x):
            raise OutOfDomainError(f"{format_scalar(x)} outside {self.domain}")
        jp = self.jump_at(x)
        if jp is not None:
            return jp.value
        br = self.branch_containing(x, closure=True)
        if br is None:
            raise StructureError(f"no piece covers {format_scalar(x)}")
        return ValueSet.point(br.map(x))

    def one_sided_limit(self, x: Scalar, side: Side) -> Scalar:
        x = as_scalar(x)
        if not self.domain.contains(x):
            raise OutOfDomainError(f"{format_scalar(x)} outside {self.domain}")
        if side is LEFT:
            if x == self.domain.lo:
                raise NoSuchSideError("no left limit at the left endpoint")
            for br in self.branches:
                if br.lo < x <= br.hi:
                    return br.limit(x)
        else:
            if x == self.domain.hi:
                raise NoSuchSideError("no right limit at the right endpoint")
            for br in self.branches:
                if br.lo <= x < br.hi:
                    return br.limit(x)
        raise StructureError(f"no adjacent branch at {format_scalar(x)}")

    def image(self, S: ValueSet) -> ValueSet:
        """Exact image of a value set.

        Branch contributions are taken as closed intervals between endpoint
        limits; for valid usc multifunctions the limits are attained through
        the adjacent jump values, so the closure is exact, and gaps appear
        exactly where finite-set jump values leave them.
        """
        a, b = self.domain.lo, self.domain.hi
        if S.min_value < a or S.max_value > b:
            raise OutOfDomainError(f"{S} escapes {self.domain}")
        pieces: List[ClosedInterval] = []
        for comp in S.components:
            p, q = comp.lo, comp.hi
            for jp in self.jumps:
                if p <= jp.location <= q:
                    pieces.extend(jp.value.components)
            for br in self.branches:
                u = max(br.lo, p)
                v = min(br.hi, q)
                interior_point = u == v and br.lo < u < br.hi
                if u < v or interior_point:
                    lo_img, hi_img = br.map(u), br.map(v)
                    pieces.append(ClosedInterval(min(lo_img, hi_img),
                                                 max(lo_img, hi_img)))
            if p == q and self.jump_at(p) is None:
                br = self.branch_containing(p, closure=True)
                if br is not None and not (br.lo < p < br.hi):
                    pieces.append(ClosedInterval(br.map(p), br.map(p)))
        return ValueSet.from_intervals(pieces)

    # -- algebra ------------------------------------------------------------

    def reflected(self) -> "Multifunction":
        """G(x) = (a+b) − F((a+b)−x); an involution preserving orientation."""
        s = self.domain.lo + self.domain.hi
        branches = tuple(
            Branch(s - br.hi, s - br.lo, reflect_map(br.map, s))
            for br in reversed(self.branches)
        )
        jumps = tuple(
            JumpPoint(s - jp.location, jp.value.reflected(s))
            for jp in reversed(self.jumps)
        )
        return Multifunction(self.domain, self.orientation, branches, jumps)

    def restricted(self, lo: Scalar, hi: Scalar) -> "Multifunction":
        """Restriction to [lo, hi] ⊂ [a, b]; jump values at the new
        endpoints are clipped, degenerate clips stop being jumps."""
        lo, hi = as_scalar(lo), as_scalar(hi)
        if not (self.domain.lo <= lo < hi <= self.domain.hi):
            raise OutOfDomainError("restriction interval escapes the domain")
        branches = []
        for br in self.branches:
            u, v = max(br.lo, lo), min(br.hi, hi)
            if u < v:
                branches.append(Branch(u, v, br.map))
        jumps = []
        for jp in self.jumps:
            if not lo <= jp.location <= hi:
                continue
            comps = [ClosedInterval(max(c.lo, lo), min(c.hi, hi))
                     for c in jp.value.components
                     if c.hi >= lo and c.lo <= hi]
            if not comps:
                raise OutOfDomainError(
                    f"value at {format_scalar(jp.location)} lies entirely "
                    "outside the restriction window")
            clipped = ValueSet.from_intervals(comps)
            if clipped.has_multiple_points:
                jumps.append(JumpPoint(jp.location, clipped))
            elif lo < jp.location < hi:
                # an interior jump clipped to one point can match at most
                # one adjacent limit, so the window breaks usc
                raise OutOfDomainError(
                    f"window reduces the interior value at "
                    f"{format_scalar(jp.location)} to a single point")
        return Multifunction(ClosedInterval(lo, hi), self.orientation,
                             tuple(branches), tuple(jumps))

    def __matmul__(self, inner: "Multifunction") -> "Multifunction":
        return compose(self, inner)

    # -- validation ---------------------------------------------------------

    def validate(self, tol: Optional[float] = None, samples: int = 64) -> ValidationReport:
        """Check the class membership invariants; empty report = valid."""
        if tol is None:
            tol = 0.0 if self.is_exact else 1e-9
        out: List[Violation] = []
        a, b = self.domain.lo, self.domain.hi
        inc = self.orientation is INC

        for br in self.branches:
            if br.map.orientation is not self.orientation:
                out.append(Violation("orientation", br.lo,
                                     "branch map orientation disagrees"))
            if not isinstance(br.map, AffineMap):
                # sampled strict-monotonicity spot check for generic maps
                step = (br.hi - br.lo) / (samples + 1)
                prev = None
                for i in range(1, samples + 1):
                    val = br.map(br.lo + step * i)
                    if prev is not None:
                        good = val > prev if inc else val < prev
                        if not good:
                            out.append(Violation("monotonicity", br.lo + step * i,
                                                 "branch not strictly monotone"))
                            break
                    prev = val

        for jp in self.jumps:
            c, V = jp.location, jp.value
            left = right = None
            for br in self.branches:
                if br.hi == c:
                    left = br.limit(c)
                if br.lo == c:
                    right = br.limit(c)
            lo_expected = left if inc else right
            hi_expected = right if inc else left
            if lo_expected is not None and not _tol_close(V.min_value, lo_expected, tol):
                out.append(Violation(
                    "usc", c,
                    f"min of jump value is {format_scalar(V.min_value)}, adjacent "
                    f"limit is {format_scalar(lo_expected)}"))
            if hi_expected is not None and not _tol_close(V.max_value, hi_expected, tol):
                out.append(Violation(
                    "usc", c,
                    f"max of jump value is {format_scalar(V.max_value)}, adjacent "
                    f"limit is {format_scalar(hi_expected)}"))

        # strict monotonicity across consecutive pieces
        prev_hi = None  # sup of values seen so far (inc) / inf (dec)
        prev_where = None
        for kind, obj in self._ordered_pieces():
            if kind == "branch":
                ends = (obj.limit(obj.lo), obj.limit(obj.hi))
                lo_val, hi_val = min(ends), max(ends)
                where = obj.lo
            else:
                lo_val, hi_val = obj.value.min_value, obj.value.max_value
                where = obj.location
            enter, leave = (lo_val, hi_val) if inc else (hi_val, lo_val)
            if prev_hi is not None:
                good = prev_hi <= enter if inc else prev_hi >= enter
                if not good and not _tol_close(prev_hi, enter, tol):
                    out.append(Violation(
                        "monotonicity", where,
                        f"values cross between pieces at {format_scalar(prev_where)} "
                        f"and {format_scalar(where)}"))
            prev_hi, prev_where = leave, where
            for v in (lo_val, hi_val):
                if not (a <= v <= b) and not (
                        _tol_close(v, a, tol) or _tol_close(v, b, tol)):
                    out.append(Violation("range", where,
                                         f"value {format_scalar(v)} escapes {self.domain}"))
        return ValidationReport(tuple(out))

    def _ordered_pieces(self):
        # a jump at c precedes the branch opening at c
        items = [(br.lo, 1, "branch", br) for br in self.branches]
        items += [(jp.location, 0, "jump", jp) for jp in self.jumps]
        items.sort(key=lambda kv: (kv[0], kv[1]))
        return [(kind, obj) for _, _, kind, obj in items]


# ---------------------------------------------------------------------------
# composition and iteration
# ---------------------------------------------------------------------------

def compose(G: Multifunction, F: Multifunction) -> Multifunction:
    """G∘F with structural jump propagation.

    New jump locations are the preimages of G's jumps through F's branches
    (plus F's own jumps); jump values go through set images, so usc and
    strict monotonicity are preserved whenever both inputs are valid and
    the range of F stays inside G's domain.
    """
    rng = F.image(ValueSet((F.domain,)))
    if rng.min_value < G.domain.lo or rng.max_value > G.domain.hi:
        raise RangeEscapeError(
            f"range {rng} of inner multifunction escapes {G.domain}")

    locations = set(F.jump_locations)
    for d in G.jump_locations:
        for br in F.branches:
            lo_img, hi_img = br.map(br.lo), br.map(br.hi)
            v_lo, v_hi = min(lo_img, hi_img), max(lo_img, hi_img)
            if v_lo < d < v_hi:
                x = br.map.inverse(d)
                if br.lo < x < br.hi:
                    locations.add(x)
            # closed endpoints at the domain ends can hit a jump of G too
        if F.includes_left_endpoint and F.branches:
            if F.branches[0].map(F.domain.lo) == d:
                locations.add(F.domain.lo)
        if F.includes_right_endpoint and F.branches:
            if F.branches[-1].map(F.domain.hi) == d:
                locations.add(F.domain.hi)

    jumps = []
    for loc in sorted(locations):
        value = G.image(F(loc))
        if value.has_multiple_points:
            jumps.append(JumpPoint(loc, value))

    a, b = F.domain.lo, F.domain.hi
    cuts = [a] + [j.location for j in jumps] + [b]
    branches = []
    for u, v in zip(cuts, cuts[1:]):
        if not u < v:
            continue
        inner = F.branch_containing((u + v) / 2)
        if inner is None:
            raise StructureError("composition lost a branch piece")
        mid_val = inner.map((u + v) / 2)
        outer = G.branch_containing(mid_val, closure=True)
        if outer is None:
            raise StructureError(
                f"branch value {format_scalar(mid_val)} sits on a jump of the outer map")
        branches.append(Branch(u, v, compose_maps(outer.map, inner.map)))

    return Multifunction(F.domain, G.orientation * F.orientation,
                         tuple(branches), tuple(jumps))


def iterate(F: Multifunction, n: int) -> Multifunction:
    """n-fold self-composition, n >= 1."""
    if n < 1:
        raise ValueError("iteration order must be >= 1")
    acc = F
    for _ in range(n - 1):
        acc = compose(acc, F)
    return acc


def reflect(F: Multifunction) -> Multifunction:
    return F.reflected()


def evaluate(F: Multifunction, x: Scalar) -> ValueSet:
    return F(x)


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EquivalenceConfig:
    grid: int = 1024
    tol: float = 1e-9


def _match_jumps(F, G, tol):
    fl, gl = F.jump_locations, G.jump_locations
    if len(fl) != len(gl):
        return False, f"jump counts differ: {len(fl)} vs {len(gl)}"
    for x, y in zip(fl, gl):
        if not _tol_close(x, y, tol):
            return False, f"jump locations differ: {format_scalar(x)} vs {format_scalar(y)}"
    for jf, jg in zip(F.jumps, G.jumps):
        vf, vg = jf.value, jg.value
        if not vf.is_exact:
            vf = vf.coarsened(tol)
        if not vg.is_exact:
            vg = vg.coarsened(tol)
        if len(vf.components) != len(vg.components):
            return False, (f"jump value component counts differ at "
                           f"{format_scalar(jf.location)}")
        for cf, cg in zip(vf.components, vg.components):
            if not (_tol_close(cf.lo, cg.lo, tol) and _tol_close(cf.hi, cg.hi, tol)):
                return False, f"jump values differ at {format_scalar(jf.location)}"
    return True, ""


def equivalent(F: Multifunction, G: Multifunction,
               cfg: EquivalenceConfig = EquivalenceConfig()) -> EquivalenceReport:
    """Exact structural equality when both sides are exact, grid comparison
    otherwise."""
    if F.domain != G.domain:
        raise DomainMismatchError(f"{F.domain} vs {G.domain}")
    if F.orientation is not G.orientation:
        return EquivalenceReport(False, F.is_exact and G.is_exact, float("inf"),
                                 None, "orientations differ")

    if F.is_exact and G.is_exact:
        if F.jumps != G.jumps:
            ok, why = _match_jumps(F, G, 0.0)
            return EquivalenceReport(False, True, float("inf"), None,
                                     why or "jump sets differ")
        for bf, bg in zip(F.branches, G.branches):
            if (bf.lo, bf.hi) != (bg.lo, bg.hi) or bf.map != bg.map:
                return EquivalenceReport(False, True, float("inf"), bf.lo,
                                         f"branch maps differ on ({format_scalar(bf.lo)},"
                                         f" {format_scalar(bf.hi)})")
        return EquivalenceReport(True, True, 0.0, None, "exact equality")

    ok, why = _match_jumps(F, G, cfg.tol)
    if not ok:
        return EquivalenceReport(False, False, float("inf"), None, why)

    boundary = sorted(set(F.jump_locations) | set(G.jump_locations)
                      | {F.domain.lo, F.domain.hi})
    max_dev, worst = 0.0, None
    for u, v in zip(boundary, boundary[1:]):
        if not u < v:
            continue
        width = v - u
        for i in range(cfg.grid):
            x = u + width * Fraction(2 * i + 1, 2 * cfg.grid)
            near_jump = any(abs(x - c) <= cfg.tol
                            for c in (*F.jump_locations, *G.jump_locations))
            if near_jump:
                continue
            fv, gv = F(x), G(x)
            if not (fv.is_singleton and gv.is_singleton):
                return EquivalenceReport(False, False, float("inf"), x,
                                         "unexpected multivalued point on grid")
            dev = abs(float(fv.singleton_value() - gv.singleton_value()))
            if dev > max_dev:
                max_dev, worst = dev, x
    equal = max_dev <= cfg.tol
    reason = "grid comparison" if equal else "branch deviation exceeds tolerance"
    return EquivalenceReport(equal, False, max_dev, worst, reason)
