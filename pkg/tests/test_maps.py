"""Monotone map layer: composition folding, iteration, gluing."""

from fractions import Fraction as Q

import pytest

from mfroots.errors import StructureError
from mfroots.maps import (
    AffineMap,
    ComposedMap,
    DEC,
    GluedMap,
    INC,
    compose_maps,
    iterate_map,
    reflect_map,
)


class TestAffine:
    def test_compose_folds_exactly(self):
        m = compose_maps(AffineMap(Q(1, 2), Q(1, 4)), AffineMap(Q(1, 3), Q(1, 6)))
        assert m == AffineMap(Q(1, 6), Q(1, 3))

    def test_inverse_map(self):
        m = AffineMap(Q(2, 3), Q(1, 5))
        inv = m.inverse_map()
        assert compose_maps(inv, m) == AffineMap(1, 0)

    def test_zero_slope_rejected(self):
        with pytest.raises(StructureError):
            AffineMap(0, 1)

    def test_iterate_map_negative_powers(self):
        m = AffineMap(Q(1, 4), Q(1, 8))
        assert iterate_map(m, 0) == AffineMap(1, 0)
        assert compose_maps(iterate_map(m, 2), iterate_map(m, -2)) == AffineMap(1, 0)

    def test_reflect_keeps_slope(self):
        m = AffineMap(Q(1, 4), Q(1, 8))
        r = reflect_map(m, Q(1))
        assert r.slope == Q(1, 4)
        # conjugation: r(x) = 1 - x on both sides
        x = Q(1, 3)
        assert r(x) == 1 - m(1 - x)

    def test_orientation_product(self):
        dec = AffineMap(-1, 1)
        inc = AffineMap(Q(1, 2), 0)
        assert compose_maps(dec, dec).orientation is INC
        assert ComposedMap((dec, inc)).orientation is DEC


class TestGlued:
    def test_increasing_glue_and_inverse(self):
        left = AffineMap(Q(1, 2), 0)                 # on [0, 1/2], value 1/4 at knot
        right = AffineMap(Q(3, 2), Q(-1, 2))         # agrees at 1/2
        g = GluedMap((Q(1, 2),), (left, right))
        assert g(Q(1, 4)) == Q(1, 8)
        assert g(Q(3, 4)) == Q(5, 8)
        for x in (Q(1, 8), Q(1, 2), Q(9, 10)):
            assert g.inverse(g(x)) == x
        inv = g.inverse_map()
        assert inv(g(Q(7, 10))) == Q(7, 10)

    def test_decreasing_glue_inverse_map(self):
        left = AffineMap(Q(-1, 2), Q(3, 4))          # value 1/2 at knot 1/2
        right = AffineMap(Q(-3, 2), Q(5, 4))
        g = GluedMap((Q(1, 2),), (left, right))
        assert g.orientation is DEC
        for x in (Q(1, 5), Q(1, 2), Q(4, 5)):
            assert g.inverse(g(x)) == x
        inv = g.inverse_map()
        for x in (Q(1, 10), Q(3, 5)):
            assert inv(g(x)) == x

    def test_nested_glue_flattens(self):
        a = AffineMap(Q(1, 2), 0)
        b = AffineMap(Q(3, 2), Q(-1, 2))
        inner = GluedMap((Q(1, 2),), (a, b))
        outer = GluedMap((Q(3, 4),), (inner, AffineMap(Q(1, 2), Q(1, 4))))
        assert len(outer.pieces) == 3
        assert outer(Q(1, 4)) == Q(1, 8)
