"""Structural analysis: intensity, transition tables, absorbing intervals.

Iterating a multifunction can only create jumps at preimages of existing
jumps, so the jump count grows until it stabilizes; the step at which it
stops is the intensity.  Intensity-1 ("exclusive") multifunctions admit a
transition table between partition intervals whose self-loops are the
invariant intervals, and every interval is absorbed into one of them.
"""

from fractions import Fraction as Q

import mfroots as mf

F = mf.Multifunction.build(0, 1,
    pieces=[(0, "1/2", "1/4", 0), ("1/2", "3/4", "1/4", "1/16"),
            ("3/4", 1, "1/4", "11/32")],
    jumps=[("1/2", ("1/8", "3/16")),
           ("3/4", [("1/4", "1/4"), ("17/32", "17/32")])])

print("jumps     :", [str(c) for c in mf.jump_set(F)])
print("partition :", mf.partition(F).intervals)
print("delta     :", mf.transition_table(F).delta)
print("intensity :", mf.intensity(F))
ad = mf.absorbing_data(F)
print("invariant :", ad.lambda_indices, " kappa:", ad.kappa, " ell:", ad.ell)
print("hypothesis:", mf.hypothesis_H(F))
for c in mf.jump_set(F):
    print(f"class[{c}] :", mf.classify_jump(F, c))

# a branch crossing a jump location raises the intensity: the transition
# table refuses with the straddled jump as witness
W = mf.Multifunction.build(0, 1,
    pieces=[(0, "1/2", "1/4", "1/4"), ("1/2", 1, "1/4", "5/16")],
    jumps=[("1/2", ("3/8", "7/16"))])
print("\ncrossing example intensity:", mf.intensity(W))
try:
    mf.transition_table(W)
except mf.errors.NoSingleTargetError as exc:
    print("transition table refused:", exc)

# an expanding branch can feed the jump an endless preimage cascade; the
# cap stands in for unbounded growth
E = mf.Multifunction.build(0, 1,
    pieces=[(0, "1/4", 2, 0), ("1/4", 1, "1/16", "35/64")],
    jumps=[("1/4", ("1/2", "9/16"))])
z = mf.intensity(E, cap=12)
print("\nunbounded growth trace:", z.trace, "(exceeded cap:", z.exceeded, ")")

# interior points with c ∈ F(c) cut the domain; roots are then built on
# each closed piece separately
S = mf.Multifunction.build(0, 1,
    pieces=[(0, "1/2", "1/4", "1/8"), ("1/2", 1, "1/4", "5/8")],
    jumps=[("1/2", ("1/4", "3/4"))])
split = mf.split_at_inclusion_fixed_points(S)
print("\ncut points:", [str(c) for c in split.cuts])
for piece in split.pieces:
    print("  piece", piece.domain, "value at boundary jump:",
          piece(Q(1, 2)) if piece.domain.contains(Q(1, 2)) else "-")
