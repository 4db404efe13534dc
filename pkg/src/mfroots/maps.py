"""Single-valued strictly monotone maps on an interval.

Two kinds: exact affine maps over rationals, and generic lazily-evaluated
maps (products of root/conjugacy constructions, compositions, reflections).
Every map answers forward evaluation, inverse evaluation and orientation;
generic maps additionally promise pure evaluation (same input, same output).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Tuple

from .errors import StructureError
from .scalars import Scalar, format_scalar, is_exact


class Orientation(enum.Enum):
    INC = "inc"
    DEC = "dec"

    def __mul__(self, other: "Orientation") -> "Orientation":
        # Sign rule for composition: Dec∘Dec = Inc, mixed = Dec.
        return Orientation.INC if self is other else Orientation.DEC

    @property
    def reversed(self) -> "Orientation":
        return Orientation.DEC if self is Orientation.INC else Orientation.INC


INC = Orientation.INC
DEC = Orientation.DEC


@dataclass(frozen=True)
class AffineMap:
    """x ↦ slope·x + intercept with exact rational coefficients."""

    slope: Fraction
    intercept: Fraction

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "intercept", Fraction(self.intercept))
        if self.slope == 0:
            raise StructureError("affine map must have nonzero slope")

    @property
    def orientation(self) -> Orientation:
        return INC if self.slope > 0 else DEC

    @property
    def is_exact(self) -> bool:
        return True

    def __call__(self, x: Scalar) -> Scalar:
        return self.slope * x + self.intercept

    def inverse(self, y: Scalar) -> Scalar:
        return (y - self.intercept) / self.slope

    def inverse_map(self) -> "AffineMap":
        return AffineMap(1 / self.slope, -self.intercept / self.slope)

    def fixed_point(self) -> Optional[Fraction]:
        if self.slope == 1:
            return None
        return self.intercept / (1 - self.slope)

    def __repr__(self):
        return f"AffineMap({format_scalar(self.slope)}·x + {format_scalar(self.intercept)})"


@dataclass(frozen=True)
class GenericMap:
    """Lazily evaluated strictly monotone map.

    ``forward``/``backward`` must be pure and defined on the closure of the
    declared domain; ``recipe`` is an opaque, JSON-able description used for
    reproducible serialization of root recipes.
    """

    orientation: Orientation
    forward: Callable[[Scalar], Scalar]
    backward: Callable[[Scalar], Scalar]
    recipe: Tuple = ()

    @property
    def is_exact(self) -> bool:
        return False

    def __call__(self, x: Scalar) -> Scalar:
        return self.forward(x)

    def inverse(self, y: Scalar) -> Scalar:
        return self.backward(y)

    def inverse_map(self) -> "GenericMap":
        return GenericMap(self.orientation, self.backward, self.forward,
                          ("inverse", self.recipe))

    def __repr__(self):
        kind = self.recipe[0] if self.recipe else "opaque"
        return f"GenericMap({self.orientation.value}, {kind})"


MonotoneMap = object  # duck type: AffineMap | GenericMap | ComposedMap | GluedMap


class GluedMap:
    """Continuous strictly monotone map glued from pieces at interior
    knots; the adjacent pieces must agree at each knot."""

    def __init__(self, knots, pieces):
        assert len(pieces) == len(knots) + 1
        flat_knots: list = []
        flat_pieces: list = []
        for knot, piece in zip(list(knots) + [None], pieces):
            if isinstance(piece, GluedMap):
                flat_knots.extend(piece.knots)
                flat_pieces.extend(piece.pieces)
            else:
                flat_pieces.append(piece)
            if knot is not None:
                flat_knots.append(knot)
        self.knots = tuple(flat_knots)
        self.pieces = tuple(flat_pieces)
        self.orientation = self.pieces[0].orientation
        self.value_knots = tuple(piece(k)
                                 for k, piece in zip(self.knots, self.pieces))

    @property
    def is_exact(self) -> bool:
        return False  # piecewise: comparisons degrade to grids

    def _index(self, x, knots, ascending=True) -> int:
        i = 0
        for k in knots:
            if (x > k) if ascending else (x < k):
                i += 1
            else:
                break
        return i

    def __call__(self, x: Scalar) -> Scalar:
        return self.pieces[self._index(x, self.knots)](x)

    def inverse(self, w: Scalar) -> Scalar:
        ascending = self.orientation is INC
        i = self._index(w, self.value_knots, ascending)
        return self.pieces[i].inverse(w)

    def inverse_map(self) -> "GluedMap":
        inv_pieces = tuple(p.inverse_map() for p in self.pieces)
        if self.orientation is INC:
            return GluedMap(self.value_knots, inv_pieces)
        return GluedMap(tuple(reversed(self.value_knots)),
                        tuple(reversed(inv_pieces)))

    def __repr__(self):
        return f"GluedMap({len(self.pieces)} pieces)"


@dataclass(frozen=True)
class ComposedMap:
    """Right-to-left composition chain of monotone maps."""

    maps: Tuple  # applied right to left: maps[0] ∘ maps[1] ∘ ... ∘ maps[-1]

    @property
    def orientation(self) -> Orientation:
        o = INC
        for m in self.maps:
            o = o * m.orientation
        return o

    @property
    def is_exact(self) -> bool:
        return all(m.is_exact for m in self.maps)

    def __call__(self, x: Scalar) -> Scalar:
        for m in reversed(self.maps):
            x = m(x)
        return x

    def inverse(self, y: Scalar) -> Scalar:
        for m in self.maps:
            y = m.inverse(y)
        return y

    def inverse_map(self):
        return ComposedMap(tuple(m.inverse_map() for m in reversed(self.maps)))

    def __repr__(self):
        return "ComposedMap[" + " ∘ ".join(repr(m) for m in self.maps) + "]"


def compose_maps(*maps) -> MonotoneMap:
    """Compose maps (leftmost applied last), folding affine runs exactly."""
    flat = []
    for m in maps:
        if isinstance(m, ComposedMap):
            flat.extend(m.maps)
        else:
            flat.append(m)
    folded = []
    for m in flat:
        if folded and isinstance(folded[-1], AffineMap) and isinstance(m, AffineMap):
            outer = folded.pop()
            # (outer ∘ m)(x) = outer.slope·(m(x)) + outer.intercept
            folded.append(AffineMap(outer.slope * m.slope,
                                    outer.slope * m.intercept + outer.intercept))
        else:
            folded.append(m)
    if len(folded) == 1:
        return folded[0]
    return ComposedMap(tuple(folded))


def iterate_map(m, times: int) -> MonotoneMap:
    if times < 0:
        return iterate_map(m.inverse_map(), -times)
    if times == 0:
        return AffineMap(Fraction(1), Fraction(0))
    return compose_maps(*([m] * times))


def reflect_map(m, pivot_sum: Scalar) -> MonotoneMap:
    """Conjugate by the reflection r(x) = pivot_sum − x."""
    if isinstance(m, AffineMap) and is_exact(pivot_sum):
        # r ∘ m ∘ r is affine with the same slope.
        s, t = m.slope, m.intercept
        return AffineMap(s, pivot_sum * (1 - s) - t)
    refl = AffineMap(Fraction(-1), Fraction(pivot_sum))
    return compose_maps(refl, m, refl)


def map_is_exact_rational(m) -> bool:
    return isinstance(m, AffineMap) or (
        isinstance(m, ComposedMap) and all(isinstance(x, AffineMap) for x in m.maps)
    )
