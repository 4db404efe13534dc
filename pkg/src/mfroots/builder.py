"""Assembly of multifunction iterative roots and nonexistence certificates.

The increasing pipeline splits at inclusion fixed points, normalizes each
piece below the diagonal (reflecting when needed), takes a scalar root on
the absorbing interval and extends it to the other intervals by the
direct-routing formula; jump values come from orbit pullbacks (J1) or the
one-sided-limit interval at the right endpoint (J2).  Decreasing roots of
increasing targets pair invariant intervals through a reversing
conjugacy; decreasing targets of odd order run through the square.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .core import (
    Branch,
    ClosedInterval,
    EquivalenceConfig,
    JumpPoint,
    Multifunction,
    ValueSet,
    equivalent,
    iterate,
)
from .errors import (
    ConditionJStarViolatedError,
    EvaluationRangeError,
    IncompatiblePatternError,
    InvalidMultifunctionError,
    MfError,
    NonCompactJumpValueError,
    NotDecreasingError,
    NotExclusiveError,
    NotIncreasingError,
    UnsupportedCaseError,
)
from .maps import AffineMap, DEC, INC, compose_maps, iterate_map
from .scalar_roots import (
    DEFAULT_SEED,
    ScalarRootSeed,
    _increasing_root_auto,
    decreasing_odd_root,
    decreasing_square_root_pair,
    odd_swap_maps,
)
from .scalars import Scalar, as_scalar, format_scalar
from .structure import (
    classify_jump,
    hypothesis_H,
    intensity,
    invariant_intervals,
    split_at_inclusion_fixed_points,
    transition_table,
)

ANY = "any"


# ---------------------------------------------------------------------------
# result types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    """Machine-checkable record that a nonexistence/infeasibility rule
    applies; ``witnesses`` carries the arithmetic needed to re-check it."""

    rule: str
    claim: str
    inputs: Dict[str, str] = field(default_factory=dict)
    witnesses: Dict[str, object] = field(default_factory=dict)
    also: Tuple[str, ...] = ()

    _KEY_ORDER = ("m", "ell", "n", "jumps", "intensity", "jump", "interval",
                  "target", "absorbing", "endpoint", "image")

    def text(self) -> str:
        keys = [k for k in self._KEY_ORDER if k in self.witnesses]
        keys += sorted(k for k in self.witnesses if k not in keys)
        parts = [self.rule]
        parts += [f"{k}={_fmt(self.witnesses[k])}" for k in keys]
        return " ".join(parts)


def _fmt(v) -> str:
    if isinstance(v, (Fraction, float)):
        return format_scalar(v)
    return str(v)


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    exact: bool
    max_deviation: float
    worst_point: Optional[Scalar]
    detail: str

    def __repr__(self):
        status = "pass" if self.passed else "fail"
        mode = "exact" if self.exact else "grid"
        return f"VerificationReport({status}, {mode}, maxdev={self.max_deviation:.3e}, {self.detail})"


@dataclass(frozen=True)
class RootRecipe:
    """Reproducible description: rebuilding from the recipe yields the
    identical artifact."""

    pipeline: str  # "increasing" | "dec_square" | "dec_odd"
    order: int
    orientation: str
    payload: Dict[str, object]


@dataclass(frozen=True)
class RootArtifact:
    recipe: RootRecipe
    realized: Multifunction
    verification: VerificationReport


BuildOutcome = Union[RootArtifact, Certificate]


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def verify_root(f: Multifunction, F: Multifunction, n: int,
                cfg: EquivalenceConfig = EquivalenceConfig()) -> VerificationReport:
    """Check fⁿ = F in the identity sense (set-image composition)."""
    fn = iterate(f, n)
    eq = equivalent(fn, F, cfg)
    return VerificationReport(eq.equal, eq.exact, eq.max_deviation,
                              eq.worst_point, eq.reason)


def _require_valid(F: Multifunction) -> None:
    report = F.validate()
    if not report.ok:
        raise InvalidMultifunctionError(report)


def _require_exclusive(F: Multifunction) -> int:
    z = intensity(F)
    if z.exceeded or z.value not in (0, 1):
        raise NotExclusiveError(
            f"intensity {'> cap' if z.exceeded else z.value}, need 1")
    return z.value


# ---------------------------------------------------------------------------
# shared pullback helpers
# ---------------------------------------------------------------------------

def _piecewise_inverse(branches: Tuple[Branch, ...], w: Scalar) -> Scalar:
    for br in branches:
        ends = (br.map(br.lo), br.map(br.hi))
        if min(ends) <= w <= max(ends):
            return br.map.inverse(w)
    raise MfError(f"pullback value {format_scalar(w)} misses every branch range")


def _pullback_valueset(branches: Tuple[Branch, ...], V: ValueSet,
                       times: int) -> ValueSet:
    for _ in range(times):
        comps = []
        for c in V.components:
            p, q = _piecewise_inverse(branches, c.lo), _piecewise_inverse(branches, c.hi)
            comps.append(ClosedInterval(min(p, q), max(p, q)))
        V = ValueSet.from_intervals(comps)
    return V


def _seed_to_payload(seed: Optional[ScalarRootSeed]):
    if seed is None:
        return None
    s = seed.normalized()
    return {
        "anchor": None if s.anchor is None else format_scalar(s.anchor),
        "divisions": None if s.divisions is None else [format_scalar(d) for d in s.divisions],
        "image_anchor": None if s.image_anchor is None else format_scalar(s.image_anchor),
        "affine": None if s.affine is None else [format_scalar(s.affine[0]),
                                                 format_scalar(s.affine[1])],
    }


def seed_from_payload(data) -> Optional[ScalarRootSeed]:
    if data is None:
        return None
    return ScalarRootSeed(
        None if data.get("anchor") is None else as_scalar(data["anchor"]),
        None if data.get("divisions") is None else tuple(as_scalar(d) for d in data["divisions"]),
        None if data.get("image_anchor") is None else as_scalar(data["image_anchor"]),
        None if data.get("affine") is None else (as_scalar(data["affine"][0]),
                                                 as_scalar(data["affine"][1])),
    )


def _map_recipe(m) -> object:
    if isinstance(m, AffineMap):
        return ["affine", format_scalar(m.slope), format_scalar(m.intercept)]
    recipe = getattr(m, "recipe", ())
    return ["generic", repr(recipe)]


# ---------------------------------------------------------------------------
# the increasing pipeline
# ---------------------------------------------------------------------------

def _build_piece_increasing(W: Multifunction, n: int,
                            seed: Optional[ScalarRootSeed]):
    """Root of a normalized piece (hypothesis holds directly); returns a
    Multifunction or a Certificate."""
    a, b = W.domain.lo, W.domain.hi
    jump_locs = W.jump_locations
    m = len(jump_locs)

    for jp in W.jumps:
        cls = classify_jump(W, jp.location)
        if cls.kind == "J4":
            raise UnsupportedCaseError(
                f"jump {format_scalar(jp.location)} lies in case J4; "
                "no construction is known")
        if cls.kind == "J3":
            bound = m - cls.ell + 1
            if n > bound:
                return Certificate(
                    "J3OrderBound",
                    claim=(f"a jump in case J3 with m={m}, ell={cls.ell} rules out "
                           f"strictly increasing usc roots of order n > {bound}"),
                    inputs={"order": str(n)},
                    witnesses={"m": m, "ell": cls.ell, "n": n,
                               "jump": jp.location},
                )
            raise UnsupportedCaseError(
                f"jump {format_scalar(jp.location)} lies in case J3 with "
                f"n <= m - ell + 1 = {bound}; the construction is open")
        if cls.kind == "J2":
            if jp.location != b:
                raise UnsupportedCaseError(
                    f"J2 jump at {format_scalar(jp.location)} inside the piece; "
                    "splitting should have consumed it")
            if not jp.value.is_single_interval:
                raise NonCompactJumpValueError(jp.location)

    K = W.branches[0]
    if K.lo != a:
        raise UnsupportedCaseError("no absorbing interval at the left endpoint")
    others = W.branches[1:]

    if others or m:
        table = transition_table(W)
        for i in range(1, len(W.branches)):
            if table.delta[i] != 0:
                iv = W.branches[i]
                return Certificate(
                    "RoutingInfeasible",
                    claim=("the image of a partition interval is not contained in "
                           "the absorbing interval, so the direct-routing extension "
                           "formula does not apply"
                           + ("; no increasing usc root of this order exists "
                              "(every root chain has length at most the jump count)"
                              if n >= m else "")),
                    inputs={"order": str(n)},
                    witnesses={"interval": (iv.lo, iv.hi),
                               "target": table.delta[i],
                               "absorbing": (K.lo, K.hi),
                               "n": n, "m": m,
                               "sound_nonexistence": n >= m},
                )

    cap_bound = None
    if others:
        cap_bound = max(br.map(br.hi) for br in others)
    phi = _increasing_root_auto(K.map, K.lo, K.hi, n,
                                seed if seed is not None else DEFAULT_SEED,
                                floor_last=cap_bound)

    inv_K = K.map.inverse_map()
    root_branches = [Branch(K.lo, K.hi, phi)]
    for br in others:
        root_branches.append(Branch(br.lo, br.hi,
                                    compose_maps(inv_K, phi, br.map)))
    root_branches = tuple(root_branches)

    if not (jump_locs and jump_locs[-1] == b):
        fb = root_branches[-1].map(b)
        if fb in jump_locs:
            return Certificate(
                "EndpointInfeasible",
                claim=("the forced image of the right endpoint lands exactly on a "
                       "jump, which would create a jump of the iterate at the "
                       "endpoint; the construction with this seed fails"),
                inputs={"order": str(n)},
                witnesses={"endpoint": b, "image": fb,
                           "phi": _map_recipe(phi)},
            )

    root_jumps = []
    for jp in W.jumps:
        cls = classify_jump(W, jp.location)
        if cls.kind == "J1":
            value = _pullback_valueset(root_branches, jp.value, n - 1)
        else:  # J2 at b
            lim = root_branches[-1].map(b)
            value = ValueSet.interval(lim, b)
        root_jumps.append(JumpPoint(jp.location, value))

    return Multifunction(W.domain, INC, root_branches, tuple(root_jumps))


def _merge_piece_roots(domain: ClosedInterval,
                       roots: List[Multifunction]) -> Multifunction:
    from .maps import GluedMap

    branches: List[Branch] = []
    values: Dict[Scalar, ValueSet] = {}
    for piece in roots:
        branches.extend(piece.branches)
        for jp in piece.jumps:
            if jp.location in values:
                values[jp.location] = values[jp.location].union(jp.value)
            else:
                values[jp.location] = jp.value
    # fuse branches meeting at a cut point that is not a jump of the root
    fused: List[Branch] = []
    for br in branches:
        if fused and fused[-1].hi == br.lo and br.lo not in values:
            prev = fused.pop()
            if prev.map == br.map:
                fused.append(Branch(prev.lo, br.hi, prev.map))
            else:
                fused.append(Branch(prev.lo, br.hi,
                                    GluedMap((br.lo,), (prev.map, br.map))))
        else:
            fused.append(br)
    jumps = tuple(JumpPoint(loc, values[loc]) for loc in sorted(values))
    return Multifunction(domain, INC, tuple(fused), jumps)


def build_increasing_root(F: Multifunction, n: int,
                          seed: Optional[ScalarRootSeed] = None,
                          routing: Optional[Dict[int, int]] = None,
                          cfg: EquivalenceConfig = EquivalenceConfig()) -> BuildOutcome:
    """Strictly increasing order-n root of an increasing exclusive
    multifunction, or a certificate explaining why the construction (and,
    where the theory says so, any root) cannot exist."""
    if n < 2:
        raise MfError("root order must be >= 2")
    _require_valid(F)
    if F.orientation is not INC:
        raise NotIncreasingError("increasing pipeline needs an increasing target")
    _require_exclusive(F)
    if routing:
        raise UnsupportedCaseError(
            "only the canonical direct-to-absorbing routing is implemented")

    split = split_at_inclusion_fixed_points(F)
    piece_roots: List[Multifunction] = []
    piece_payload = []
    for piece in split.pieces:
        H = hypothesis_H(piece)
        if H.holds:
            work, reflected = piece, False
        elif H.needs_reflection:
            work, reflected = piece.reflected(), True
        else:
            raise UnsupportedCaseError(
                f"hypothesis fails at {format_scalar(H.witness)} even after "
                "reflection; the piece straddles the diagonal at a jump")
        outcome = _build_piece_increasing(work, n, seed)
        if isinstance(outcome, Certificate):
            return outcome
        root_piece = outcome.reflected() if reflected else outcome
        piece_roots.append(root_piece)
        piece_payload.append({
            "domain": [format_scalar(piece.domain.lo), format_scalar(piece.domain.hi)],
            "reflected": reflected,
            "phi": _map_recipe(outcome.branches[0].map),
        })

    realized = _merge_piece_roots(F.domain, piece_roots)
    report = realized.validate()
    if not report.ok:
        raise MfError(f"constructed root fails validation: {report.summary()}")
    verification = verify_root(realized, F, n, cfg)
    if not verification.passed:
        raise MfError(f"constructed root fails verification: {verification}")
    recipe = RootRecipe("increasing", n, "inc", {
        "seed": _seed_to_payload(seed),
        "cuts": [format_scalar(c) for c in split.cuts],
        "pieces": piece_payload,
    })
    return RootArtifact(recipe, realized, verification)


# ---------------------------------------------------------------------------
# decreasing square roots of increasing targets
# ---------------------------------------------------------------------------

def _probe_branch(br: Branch) -> None:
    """Touch both closure ends so partial orbit maps fail fast."""
    br.map(br.lo)
    br.map(br.hi)


def build_decreasing_square_root(F: Multifunction,
                                 pairing: Optional[List[Tuple[int, int]]] = None,
                                 seed: Optional[ScalarRootSeed] = None,
                                 cfg: EquivalenceConfig = EquivalenceConfig()) -> BuildOutcome:
    """Strictly decreasing f with f² = F for increasing exclusive F, built
    from a pairing of the invariant intervals."""
    _require_valid(F)
    if F.orientation is not INC:
        raise NotIncreasingError("decreasing square roots need an increasing target")
    _require_exclusive(F)
    seed = seed if seed is not None else DEFAULT_SEED

    lam = invariant_intervals(F)
    if pairing is None:
        if len(lam) == 2:
            pairing = [(lam[0], lam[1])]
        elif len(lam) == 1:
            pairing = [(lam[0], lam[0])]
        else:
            raise IncompatiblePatternError(
                f"{len(lam)} invariant intervals; an explicit pairing is required")
    pair_of: Dict[int, int] = {}
    for i, j in pairing:
        pair_of[i] = j
        pair_of[j] = i
    if set(pair_of) != set(lam):
        raise IncompatiblePatternError("pairing must cover the invariant intervals")

    branches = list(F.branches)
    table = transition_table(F)
    # values the extension must pull back through each invariant interval
    needed_top: Dict[int, Scalar] = {}
    for i in range(len(branches)):
        if i in pair_of:
            continue
        t = table.delta[i]
        if t not in pair_of:
            raise UnsupportedCaseError(
                f"interval {i} maps into a non-invariant interval; chain "
                "routing for decreasing roots is not constructed")
        sup = branches[i].map(branches[i].hi)
        if t not in needed_top or sup > needed_top[t]:
            needed_top[t] = sup

    root_maps: Dict[int, object] = {}
    for i, j in pairing:
        bi = branches[i]
        if i == j:
            psi, _ = decreasing_square_root_pair(bi.map, bi.lo, bi.hi, seed=seed,
                                                 cover_top=needed_top.get(i))
            root_maps[i] = psi
        else:
            bj = branches[j]
            h, partner = decreasing_square_root_pair(bi.map, bi.lo, bi.hi,
                                                     bj.map, bj.lo, bj.hi, seed=seed)
            root_maps[i] = h
            root_maps[j] = partner

    for i in range(len(branches)):
        if i in root_maps:
            continue
        i1 = pair_of[table.delta[i]]
        root_maps[i] = compose_maps(root_maps[i1].inverse_map(), branches[i].map)

    root_branches = tuple(Branch(br.lo, br.hi, root_maps[i])
                          for i, br in enumerate(branches))
    for br in root_branches:
        try:
            _probe_branch(br)
        except EvaluationRangeError as exc:
            raise IncompatiblePatternError(
                f"extension cannot cover the image on ({format_scalar(br.lo)}, "
                f"{format_scalar(br.hi)}): {exc}") from exc

    root_jumps = []
    for jp in F.jumps:
        cls = classify_jump(F, jp.location)
        c = jp.location
        if cls.kind in ("J3", "J4"):
            raise UnsupportedCaseError(
                f"jump {format_scalar(c)} in case {cls.kind}; decreasing "
                "roots there remain open")
        if cls.kind == "J1":
            value = _pullback_valueset(root_branches, jp.value, 1)
        else:  # J2
            if not jp.value.is_single_interval:
                raise NonCompactJumpValueError(c)
            left = [br for br in root_branches if br.hi == c]
            right = [br for br in root_branches if br.lo == c]
            if not left or not right:
                raise UnsupportedCaseError(
                    f"J2 jump at the boundary {format_scalar(c)} for a "
                    "decreasing root is not constructed")
            hi_lim = left[0].map(c)
            lo_lim = right[0].map(c)
            if not lo_lim < hi_lim:
                raise ConditionJStarViolatedError(
                    c, "one-sided limits of the root do not leave a gap")
            inside = [d for d in F.jump_locations if lo_lim <= d <= hi_lim]
            if inside != [c]:
                raise ConditionJStarViolatedError(
                    c, f"[{format_scalar(lo_lim)}, {format_scalar(hi_lim)}] "
                       f"covers jumps {inside}, need exactly the jump itself")
            value = ValueSet.interval(lo_lim, hi_lim)
        root_jumps.append(JumpPoint(c, value))

    realized = Multifunction(F.domain, DEC, root_branches, tuple(root_jumps))
    report = realized.validate()
    if not report.ok:
        raise MfError(f"constructed root fails validation: {report.summary()}")
    verification = verify_root(realized, F, 2, cfg)
    if not verification.passed:
        raise MfError(f"constructed root fails verification: {verification}")
    recipe = RootRecipe("dec_square", 2, "dec", {
        "seed": _seed_to_payload(seed if seed is not DEFAULT_SEED else None),
        "pairing": [[i, j] for i, j in pairing],
        "maps": {str(i): _map_recipe(m) for i, m in sorted(root_maps.items())},
    })
    return RootArtifact(recipe, realized, verification)


# ---------------------------------------------------------------------------
# decreasing odd roots of decreasing targets
# ---------------------------------------------------------------------------

def build_decreasing_odd_root(F: Multifunction, k: int,
                              seed: Optional[ScalarRootSeed] = None,
                              cfg: EquivalenceConfig = EquivalenceConfig()) -> BuildOutcome:
    """Strictly decreasing k-th root (k odd) of a decreasing exclusive
    multifunction, working on the invariant structure of F²."""
    _require_valid(F)
    if F.orientation is not DEC:
        raise NotDecreasingError("odd-root pipeline needs a decreasing target")
    if k % 2 == 0:
        return Certificate(
            "DecreasingNoEvenRoot",
            claim=("a strictly decreasing usc multifunction has no usc iterative "
                   "roots of even order: even iterates of monotone multifunctions "
                   "are increasing"),
            inputs={"order": str(k)},
            witnesses={"n": k},
        )
    if k < 3:
        raise MfError("odd root order must be >= 3")
    _require_exclusive(F)
    seed = seed if seed is not None else DEFAULT_SEED

    F2 = iterate(F, 2)
    lam2 = invariant_intervals(F2)
    table_F = transition_table(F)
    lam_set = set(lam2)
    for i in lam2:
        j = table_F.delta[i]
        if j not in lam_set or table_F.delta[j] != i:
            raise IncompatiblePatternError(
                "the target does not swap its square-invariant intervals pairwise")

    branches = list(F.branches)
    m = (k - 1) // 2
    # extension pullbacks run through the root square on the target
    # interval; record the value hull each target must cover
    hulls: Dict[int, Tuple[Scalar, Scalar]] = {}
    for i in range(len(branches)):
        if i in lam_set:
            continue
        t = table_F.delta[i]
        if t not in lam_set:
            raise UnsupportedCaseError(
                f"interval {i} maps into a non-invariant interval of F²; "
                "chain routing is not constructed")
        ends = (branches[i].map(branches[i].lo), branches[i].map(branches[i].hi))
        lo_v, hi_v = min(ends), max(ends)
        if t in hulls:
            hulls[t] = (min(hulls[t][0], lo_v), max(hulls[t][1], hi_v))
        else:
            hulls[t] = (lo_v, hi_v)

    root_maps: Dict[int, object] = {}
    squares: Dict[int, object] = {}
    done = set()
    for i in lam2:
        if i in done:
            continue
        j = table_F.delta[i]
        if i == j:
            bi = branches[i]
            root_maps[i] = decreasing_odd_root(bi.map, bi.lo, bi.hi, k, seed,
                                               cover=hulls.get(i))
            squares[i] = compose_maps(root_maps[i], root_maps[i])
            done.add(i)
        else:
            A, Bi = branches[i], branches[j]
            map_i, map_j, phi = odd_swap_maps(A.map, A.lo, A.hi,
                                              Bi.map, Bi.lo, Bi.hi, k, seed,
                                              cover_alpha=hulls.get(i),
                                              cover_beta=hulls.get(j))
            root_maps[i], root_maps[j] = map_i, map_j
            squares[i] = compose_maps(map_j, map_i)
            squares[j] = compose_maps(map_i, map_j)
            done.update((i, j))

    for i in range(len(branches)):
        if i in root_maps:
            continue
        t = table_F.delta[i]
        root_maps[i] = compose_maps(iterate_map(squares[t], m).inverse_map(),
                                    branches[i].map)

    root_branches = tuple(Branch(br.lo, br.hi, root_maps[i])
                          for i, br in enumerate(branches))
    for br in root_branches:
        try:
            _probe_branch(br)
        except EvaluationRangeError as exc:
            raise IncompatiblePatternError(
                f"extension cannot cover the image on ({format_scalar(br.lo)}, "
                f"{format_scalar(br.hi)}): {exc}") from exc

    root_jumps = []
    for jp in F.jumps:
        cls = classify_jump(F, jp.location)
        c = jp.location
        if cls.kind in ("J3", "J4"):
            raise UnsupportedCaseError(
                f"jump {format_scalar(c)} in case {cls.kind}; open for "
                "decreasing roots")
        if cls.kind == "J1":
            try:
                value = _pullback_valueset(root_branches, jp.value, k - 1)
            except (MfError, EvaluationRangeError) as exc:
                raise ConditionJStarViolatedError(c, str(exc)) from exc
        else:  # J2
            if not jp.value.is_single_interval:
                raise NonCompactJumpValueError(c)
            left = [br for br in root_branches if br.hi == c]
            right = [br for br in root_branches if br.lo == c]
            if not left or not right:
                raise UnsupportedCaseError(
                    f"J2 jump at the boundary {format_scalar(c)} is not constructed")
            hi_lim = left[0].map(c)
            lo_lim = right[0].map(c)
            if not lo_lim < hi_lim:
                raise ConditionJStarViolatedError(
                    c, "one-sided limits of the root do not leave a gap")
            inside = [d for d in F.jump_locations if lo_lim <= d <= hi_lim]
            if inside != [c]:
                raise ConditionJStarViolatedError(
                    c, f"[{format_scalar(lo_lim)}, {format_scalar(hi_lim)}] "
                       f"covers jumps {inside}, need exactly the jump itself")
            value = ValueSet.interval(lo_lim, hi_lim)
        root_jumps.append(JumpPoint(c, value))

    realized = Multifunction(F.domain, DEC, root_branches, tuple(root_jumps))
    report = realized.validate()
    if not report.ok:
        raise MfError(f"constructed root fails validation: {report.summary()}")
    verification = verify_root(realized, F, k, cfg)
    if not verification.passed:
        raise MfError(f"constructed root fails verification: {verification}")
    recipe = RootRecipe("dec_odd", k, "dec", {
        "seed": _seed_to_payload(seed if seed is not DEFAULT_SEED else None),
        "maps": {str(i): _map_recipe(mp) for i, mp in sorted(root_maps.items())},
    })
    return RootArtifact(recipe, realized, verification)


# ---------------------------------------------------------------------------
# nonexistence certificates
# ---------------------------------------------------------------------------

def certify_nonexistence(F: Multifunction, n: int,
                         root_orientation=ANY) -> Optional[Certificate]:
    """First matching nonexistence rule with witnesses, or None
    (inconclusive: existence is neither claimed nor denied)."""
    _require_valid(F)
    if isinstance(root_orientation, str):
        root_orientation = {"inc": INC, "dec": DEC, ANY: ANY}[root_orientation.lower()]
    rules: List[Tuple[str, str, Dict[str, object]]] = []
    z = intensity(F)
    zeta = None if z.exceeded else z.value
    jump_count = len(F.jump_locations)

    if F.orientation is DEC and n % 2 == 0:
        rules.append((
            "DecreasingNoEvenRoot",
            "even iterates of monotone multifunctions are increasing, so a "
            "decreasing target has no usc root of even order",
            {"n": n}))
    if F.orientation is INC and root_orientation is DEC and n % 2 == 1:
        rules.append((
            "IncreasingNoOddDecreasingRoot",
            "odd iterates of a decreasing multifunction are decreasing, so an "
            "increasing target has no decreasing root of odd order",
            {"n": n}))
    if zeta is None or (zeta is not None and zeta > 1):
        zeta_repr = f">{z.cap}" if z.exceeded else zeta
        if jump_count == 1 and n >= 2:
            rules.append((
                "UniqueJumpIntensity",
                "a multifunction with a unique jump and intensity above one has "
                "no usc iterative roots of any order at least two",
                {"jumps": 1, "intensity": zeta_repr, "n": n}))
        if n > jump_count:
            rules.append((
                "IntensityOrderBound",
                "with intensity above one, any usc root of order n forces a "
                "strictly increasing chain of jump counts of length n inside "
                "the jump set of the target",
                {"jumps": jump_count, "intensity": zeta_repr, "n": n}))
    if F.orientation is DEC and n == 2 and zeta == 1:
        rules.append((
            "DecreasingNoContinuousSquareRoot",
            "a strictly decreasing exclusive multifunction has no square "
            "iterative roots that are continuous off the jump set",
            {"n": n}))
    if (F.orientation is INC and zeta == 1
            and (root_orientation is INC or (root_orientation is ANY and n % 2 == 1))):
        H = hypothesis_H(F)
        if H.holds or H.needs_reflection:
            jumps_view = F if H.holds else F.reflected()
            m = len(jumps_view.jump_locations)
            for c in jumps_view.jump_locations:
                cls = classify_jump(jumps_view, c)
                if cls.kind == "J3" and n > m - cls.ell + 1:
                    rules.append((
                        "J3OrderBound",
                        "a jump whose value meets only other jumps bounds the "
                        "order of increasing usc roots by m - ell + 1",
                        {"m": m, "ell": cls.ell, "n": n, "jump": c}))
                    break

    if not rules:
        return None
    rule, claim, witnesses = rules[0]
    also = tuple(r for r, _, _ in rules[1:])
    return Certificate(rule, claim, inputs={"order": str(n)},
                       witnesses=witnesses, also=also)


def recheck_certificate(cert: Certificate, F: Multifunction,
                        samples: int = 10_000) -> bool:
    """Re-verify a certificate's arithmetic claim from its witnesses,
    using independent routes (iterate-and-count intensity, grid search)."""
    w = cert.witnesses
    rule = cert.rule
    if rule == "DecreasingNoEvenRoot":
        return F.orientation is DEC and w["n"] % 2 == 0
    if rule == "IncreasingNoOddDecreasingRoot":
        return F.orientation is INC and w["n"] % 2 == 1
    if rule in ("UniqueJumpIntensity", "IntensityOrderBound"):
        # oracle route: compose explicitly and compare jump counts
        from .core import compose
        grows = len(compose(F, F).jump_locations) > len(F.jump_locations)
        if rule == "UniqueJumpIntensity":
            return len(F.jump_locations) == 1 and grows and w["n"] >= 2
        return grows and w["n"] > len(F.jump_locations)
    if rule == "DecreasingNoContinuousSquareRoot":
        return (F.orientation is DEC and w["n"] == 2
                and intensity(F).value == 1)
    if rule == "J3OrderBound":
        cls = None
        for view in (F, F.reflected()):
            try:
                cls = classify_jump(view, w["jump"])
            except MfError:
                continue
            if cls.kind == "J3":
                m = len(view.jump_locations)
                return w["m"] == m and w["ell"] == cls.ell and w["n"] > m - cls.ell + 1
        return False
    if rule == "RoutingInfeasible":
        lo, hi = w["interval"]
        k_lo, k_hi = w["absorbing"]
        width = hi - lo
        for i in range(1, samples):
            x = lo + width * Fraction(i, samples)
            V = F(x)
            if not (k_lo < V.min_value and V.max_value < k_hi):
                return True
        return False
    if rule == "EndpointInfeasible":
        return w["image"] in F.jump_locations and w["endpoint"] == F.domain.hi
    raise MfError(f"unknown certificate rule {rule}")


# ---------------------------------------------------------------------------
# J3 chain diagnostics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class J3ChainReport:
    jump: Scalar
    S: Tuple[Tuple[Scalar, ...], ...]  # S_1..S_n
    pairwise_distinct: bool
    inclusions_ok: bool
    chain_intervals: Tuple[Tuple[int, ...], ...]
    reaches_absorbing: bool


def j3_chain_report(f: Multifunction, F: Multifunction, n: int) -> J3ChainReport:
    """Orbit-of-the-jump diagnostics for a verified root in case J3."""
    from .errors import NotAJumpError

    vr = verify_root(f, F, n)
    if not vr.passed:
        raise MfError("j3 chain diagnostics need a verified root")
    j3 = [c for c in F.jump_locations if classify_jump(F, c).kind == "J3"]
    if not j3:
        raise NotAJumpError("target has no jump in case J3")
    c = j3[-1]
    jump_locs = F.jump_locations
    part_intervals = [(br.lo, br.hi) for br in F.branches]

    orbit = []
    V = f(c)
    for _ in range(n):
        orbit.append(V)
        V = f.image(V)
    S = tuple(tuple(d for d in jump_locs if Vj.contains(d)) for Vj in orbit)

    pairwise = all(
        set(S[i]) - set(S[j]) for i in range(len(S)) for j in range(len(S))
        if i != j)

    f_of_J = f.image(ValueSet.from_intervals(
        [ClosedInterval(d, d) for d in jump_locs]))
    inclusions = True
    for j in range(len(S) - 1):
        if not S[j]:
            continue
        f_Sj = f.image(ValueSet.from_intervals(
            [ClosedInterval(d, d) for d in S[j]]))
        lhs = {d for d in jump_locs if f_Sj.contains(d)}
        rhs = {d for d in S[j + 1] if f_of_J.contains(d)}
        if lhs != rhs:
            inclusions = False

    chain = []
    for Vj in orbit:
        hit = tuple(i for i, (lo, hi) in enumerate(part_intervals)
                    if any(comp.lo < hi and comp.hi > lo
                           for comp in Vj.components))
        chain.append(hit)
    reaches = bool(chain) and chain[-1] == (0,)
    return J3ChainReport(c, S, pairwise, inclusions, tuple(chain), reaches)


# ---------------------------------------------------------------------------
# recipe replay
# ---------------------------------------------------------------------------

def rebuild_from_recipe(F: Multifunction, recipe: RootRecipe) -> RootArtifact:
    """Replay a recipe; the construction is deterministic, so the result
    is identical to the original artifact."""
    seed = seed_from_payload(recipe.payload.get("seed"))
    if recipe.pipeline == "increasing":
        outcome = build_increasing_root(F, recipe.order, seed=seed)
    elif recipe.pipeline == "dec_square":
        pairing = recipe.payload.get("pairing")
        pairing = None if pairing is None else [tuple(p) for p in pairing]
        outcome = build_decreasing_square_root(F, pairing=pairing, seed=seed)
    elif recipe.pipeline == "dec_odd":
        outcome = build_decreasing_odd_root(F, recipe.order, seed=seed)
    else:
        raise MfError(f"unknown pipeline {recipe.pipeline}")
    if not isinstance(outcome, RootArtifact):
        raise MfError("recipe replay produced a certificate, not a root")
    return outcome
