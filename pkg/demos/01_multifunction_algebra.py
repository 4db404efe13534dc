"""Multifunction algebra: evaluation, images, composition, reflection.

A strictly monotone usc multifunction is a set of single-valued affine
branches plus set-valued jump points.  This walkthrough builds the
square-root example target, checks the published root against it, and
shows how jumps propagate under composition.
"""

from fractions import Fraction as Q

import mfroots as mf

# the target: two rising branches bridged by an interval-valued jump
F = mf.Multifunction.build(0, 1,
    pieces=[(0, "1/2", "1/4", "1/8"), ("1/2", 1, "1/4", "5/8")],
    jumps=[("1/2", ("1/4", "3/4"))])

print("validation:", F.validate().summary())
print("F(1/4)  =", F(Q(1, 4)))
print("F(1/2)  =", F(Q(1, 2)))
print("left limit at the jump :", F.one_sided_limit(Q(1, 2), mf.LEFT))
print("right limit at the jump:", F.one_sided_limit(Q(1, 2), mf.RIGHT))

# images are exact unions, never hulls: a two-point jump value leaves a gap
G = mf.Multifunction.build(0, 1,
    pieces=[(0, "1/2", "1/16", 0), ("1/2", 1, "1/16", "1/32")],
    jumps=[("1/2", ("1/32", "1/16")), (1, [("3/32", "3/32"), (1, 1)])])
print("\ntwo-point jump value:", G(1))
print("image of [3/4, 1]   :", G.image(mf.ValueSet.interval("3/4", 1)))

# the published decreasing root of F
f = mf.Multifunction.build(0, 1,
    pieces=[(0, "1/2", -1, 1), ("1/2", 1, "-1/4", "3/8")],
    jumps=[("1/2", ("1/4", "1/2"))])

# composition follows the jump-propagation law: a point is a jump of the
# composite iff it is a jump of the inner map or its single value lies on
# a jump of the outer one
f2 = mf.iterate(f, 2)
print("\nf² jump set :", [str(c) for c in f2.jump_locations])
print("f² equals F :", mf.equivalent(f2, F))

# a jump location can be pulled back into a branch: composing this target
# with itself creates a second jump at the preimage of 1/2
H = mf.Multifunction.build(0, 1,
    pieces=[(0, "1/2", "1/4", "1/4"), ("1/2", 1, "1/4", "5/16")],
    jumps=[("1/2", ("3/8", "7/16"))])
H2 = mf.compose(H, H)
print("\nH  jumps:", [str(c) for c in H.jump_locations])
print("H² jumps:", [str(c) for c in H2.jump_locations])

# reflection conjugates the dynamics and is an involution
R = mf.reflect(F)
print("\nreflected jump:", R.jumps[0])
print("reflect twice restores F:", mf.equivalent(mf.reflect(R), F).equal)
