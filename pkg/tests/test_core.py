"""Evaluation, composition, iteration, reflection, validation."""

import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

import mfroots as mf
from mfroots.errors import (
    NoSuchSideError,
    OutOfDomainError,
    RangeEscapeError,
    StructureError,
)

from conftest import (
    absorbing_target,
    j3_target,
    j3_root,
    j4_target,
    j4_root,
    growth_target,
    noncompact_value,
    random_monotone_increasing,
    square_root_mf,
    square_target,
)


class TestEval:
    def test_jump_value(self):
        assert square_target()(Q(1, 2)) == mf.ValueSet.interval("1/4", "3/4")

    def test_finite_set_value(self):
        V = noncompact_value()(1)
        assert [(c.lo, c.hi) for c in V.components] == [(Q(3, 32), Q(3, 32)), (1, 1)]

    def test_branch_singleton(self):
        assert j3_target()(0).singleton_value() == 0

    def test_out_of_domain(self):
        with pytest.raises(OutOfDomainError):
            square_target()(2)


class TestOneSidedLimit:
    def test_left_limit_at_jump(self):
        assert square_target().one_sided_limit(Q(1, 2), mf.LEFT) == Q(1, 4)

    def test_right_limit(self):
        assert j3_target().one_sided_limit(Q(3, 4), mf.RIGHT) == Q(1, 3)

    def test_no_side_at_endpoint(self):
        with pytest.raises(NoSuchSideError):
            square_target().one_sided_limit(0, mf.LEFT)


class TestImage:
    def test_interval_through_root(self):
        img = square_root_mf().image(mf.ValueSet.interval("1/4", "1/2"))
        assert img == mf.ValueSet.interval("1/4", "3/4")

    def test_singleton_consistency(self):
        F = j3_target()
        for x in (0, Q(1, 3), Q(1, 2), Q(3, 4), 1):
            assert F.image(mf.ValueSet.point(x)) == F(x)

    def test_order_two_claim_on_j3(self):
        img = j3_root().image(mf.ValueSet.interval("7/10", "3/4"))
        assert img == mf.ValueSet.interval("2/5", "1/2")

    def test_gap_preserved(self):
        F = noncompact_value()
        img = F.image(mf.ValueSet.interval("3/4", 1))
        # branch sweeps into the lower component; the isolated top point stays
        assert len(img.components) == 2
        assert img.components[1] == mf.ClosedInterval(1, 1)


class TestCompose:
    def test_square_of_published_root(self):
        sq = mf.compose(square_root_mf(), square_root_mf())
        assert mf.equivalent(sq, square_target()).equal

    def test_identity_neutral(self):
        F = square_target()
        ident = mf.Multifunction.build(0, 1, pieces=[(0, 1, 1, 0)])
        assert mf.equivalent(mf.compose(F, ident), F).equal

    def test_pullback_creates_jump(self):
        F = growth_target()
        sq = mf.compose(F, F)
        assert sq.jump_locations == (Q(1, 2), Q(3, 4))

    def test_range_escape(self):
        F = square_target()
        G = F.restricted(0, Q(1, 2))
        with pytest.raises(RangeEscapeError):
            mf.compose(G, F)


class TestIterate:
    def test_first_iterate_is_self(self):
        F = j3_target()
        assert mf.equivalent(mf.iterate(F, 1), F).equal

    def test_j3_root_squares_to_target(self):
        assert mf.equivalent(mf.iterate(j3_root(), 2), j3_target()).equal

    def test_j4_root_squares_to_target(self):
        assert mf.equivalent(mf.iterate(j4_root(), 2), j4_target()).equal

    def test_jump_sets_grow(self):
        F = growth_target()
        previous = set()
        for n in range(1, 4):
            current = set(mf.iterate(F, n).jump_locations)
            assert previous <= current
            previous = current


class TestReflect:
    def test_involution(self):
        F = square_target()
        assert mf.equivalent(mf.reflect(mf.reflect(F)), F).equal

    def test_flips_diagonal_side(self):
        F = mf.Multifunction.build(0, 1, pieces=[(0, 1, "1/2", "1/2")])
        G = mf.reflect(F)
        br = G.branches[0].map
        assert br.slope == Q(1, 2) and br.intercept == 0

    def test_preserves_jump_count(self):
        assert len(mf.reflect(j3_target()).jumps) == 3


class TestValidate:
    def test_fixtures_valid(self):
        for F in (square_target(), square_root_mf(), j3_target(), j3_root(),
                  j4_target(), j4_root(), noncompact_value(), absorbing_target(),
                  growth_target()):
            assert F.validate().ok, F.validate().summary()

    def test_usc_violation(self):
        F = mf.Multifunction.build(0, 1,
            pieces=[(0, "1/2", "1/4", "1/32"), ("1/2", 1, "1/4", "5/8")],
            jumps=[("1/2", ("1/4", "3/4"))])
        report = F.validate()
        assert not report.ok
        assert any(v.kind == "usc" and v.where == Q(1, 2) for v in report.violations)

    def test_monotonicity_violation(self):
        # branch values after the jump fall below the jump maximum
        F = mf.Multifunction.build(0, 1,
            pieces=[(0, "1/2", "1/4", "1/8"), ("1/2", 1, "1/4", "1/32")],
            jumps=[("1/2", ("1/4", "3/4"))])
        report = F.validate()
        assert not report.ok
        assert any(v.kind in ("monotonicity", "usc") for v in report.violations)

    def test_tiling_enforced_structurally(self):
        with pytest.raises(StructureError):
            mf.Multifunction.build(0, 1,
                pieces=[(0, "1/2", "1/4", "1/8"), ("1/4", 1, "1/4", "5/8")])


class TestRestrict:
    def test_clip_keeps_multivalued_jump(self):
        F = square_target()
        R = F.restricted(Q(1, 6), Q(1, 2))
        assert R(Q(1, 2)) == mf.ValueSet.interval("1/4", "1/2")
        assert R.validate().ok

    def test_clip_drops_degenerate_jump(self):
        # clipping the straddling value to one point removes the jump
        F = square_target()
        R = F.restricted(Q(1, 2), Q(5, 6))
        L = F.restricted(0, Q(1, 2))
        assert L.jump_at(Q(1, 2)) is not None
        assert R.jump_at(Q(1, 2)) is not None
        # restrict tightly enough that only the point 3/4 survives: not a jump
        T = F.restricted(Q(3, 4), Q(9, 10))
        assert T.jumps == ()

    def test_clip_finite_set_value(self):
        F = noncompact_value()
        R = F.restricted(Q(1, 32), 1)
        V = R(1)
        assert len(V.components) == 2  # both point components survive

    def test_window_cutting_away_a_value_is_rejected(self):
        with pytest.raises(OutOfDomainError):
            noncompact_value().restricted(Q(1, 4), 1)

    def test_window_breaking_usc_is_rejected(self):
        # the interior jump value collapses to one point inside the window
        with pytest.raises(OutOfDomainError):
            noncompact_value().restricted(Q(1, 16), 1)


class TestEquivalent:
    def test_exact_equality(self):
        assert mf.equivalent(mf.iterate(square_root_mf(), 2), square_target()).exact

    def test_jump_mismatch_witnessed(self):
        rep = mf.equivalent(square_target(), j3_target())
        assert not rep.equal and "jump" in rep.reason

    def test_grid_for_generic(self):
        g = mf.AffineMap(Q(1, 3), 0)
        phi = mf.increasing_nth_root(g, 0, 1, 2)
        F = mf.Multifunction.build(0, 1, pieces=[(0, 1, "1/3", 0)])
        froot = mf.Multifunction(F.domain, mf.INC,
                                 (mf.Branch(0, 1, phi),), ())
        rep = mf.equivalent(mf.iterate(froot, 2), F,
                            mf.EquivalenceConfig(grid=1000, tol=1e-9))
        assert rep.equal and not rep.exact and rep.max_deviation <= 1e-9


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

@st.composite
def monotone_pairs(draw):
    seed = draw(st.integers(min_value=0, max_value=10_000))
    rng = random.Random(seed)
    return (random_monotone_increasing(rng, max_jumps=3),
            random_monotone_increasing(rng, max_jumps=3))


class TestCompositionProperties:
    @settings(max_examples=40, deadline=None)
    @given(monotone_pairs())
    def test_increasing_composition_is_increasing_and_valid(self, pair):
        F, G = pair
        C = mf.compose(G, F)
        assert C.orientation is mf.INC
        assert C.validate().ok, C.validate().summary()
        xs = [Q(i, 11) for i in range(12)]
        for x, y in zip(xs, xs[1:]):
            assert C(x).max_value < C(y).min_value

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=10_000),
           st.integers(min_value=1, max_value=3),
           st.integers(min_value=1, max_value=2))
    def test_iterate_additivity(self, seed, p, q):
        F = random_monotone_increasing(random.Random(seed), max_jumps=2)
        lhs = mf.iterate(F, p + q)
        rhs = mf.compose(mf.iterate(F, p), mf.iterate(F, q))
        assert mf.equivalent(lhs, rhs).equal

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=10_000),
           st.integers(min_value=1, max_value=3))
    def test_reflection_conjugates_iteration(self, seed, n):
        F = random_monotone_increasing(random.Random(seed), max_jumps=2)
        lhs = mf.iterate(mf.reflect(F), n)
        rhs = mf.reflect(mf.iterate(F, n))
        assert mf.equivalent(lhs, rhs).equal

    def test_orientation_sign_rule(self):
        Fd = mf.Multifunction.build(0, 1, pieces=[(0, 1, "-1/2", "3/4")])
        Fi = mf.Multifunction.build(0, 1, pieces=[(0, 1, "1/2", "1/8")])
        assert mf.compose(Fd, Fd).orientation is mf.INC
        assert mf.compose(Fd, Fi).orientation is mf.DEC
        assert mf.compose(Fi, Fd).orientation is mf.DEC
        assert mf.iterate(Fd, 3).orientation is mf.DEC
        assert mf.iterate(Fd, 4).orientation is mf.INC
