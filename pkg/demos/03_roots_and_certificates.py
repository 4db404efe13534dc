"""Iterative roots: construction, verification, nonexistence certificates.

Increasing roots of increasing exclusive targets are scalar roots on the
absorbing interval extended to the other intervals by the direct-routing
formula; decreasing square roots pair invariant intervals through a
reversing conjugacy; decreasing targets of odd order run through their
square.  Where the theory rules roots out, builders return certificates
with re-checkable witnesses instead.
"""

import mfroots as mf
from mfroots.builder import (
    Certificate,
    build_decreasing_odd_root,
    build_decreasing_square_root,
    build_increasing_root,
    certify_nonexistence,
    j3_chain_report,
    recheck_certificate,
    verify_root,
)
from mfroots.scalar_roots import ScalarRootSeed

# -- increasing roots -------------------------------------------------------

F = mf.Multifunction.build(0, 1,
    pieces=[(0, "1/2", "1/4", 0), ("1/2", 1, "1/16", "5/32")],
    jumps=[("1/2", ("1/8", "3/16"))])
art = build_increasing_root(F, 2)
print("order-2 root:", art.verification)
for br in art.realized.branches:
    print("   ", br.lo, "..", br.hi, ":", br.map)
print("    jump:", art.realized.jumps[0])

art5 = build_increasing_root(F, 5)
print("order-5 root:", art5.verification)

# -- the decreasing square root of the two-invariant-interval target --------

T = mf.Multifunction.build(0, 1,
    pieces=[(0, "1/2", "1/4", "1/8"), ("1/2", 1, "1/4", "5/8")],
    jumps=[("1/2", ("1/4", "3/4"))])
seeded = build_decreasing_square_root(T, seed=ScalarRootSeed(affine=(-1, 1)))
print("\ndecreasing square root (seeded):", seeded.verification)
for br in seeded.realized.branches:
    print("   ", br.lo, "..", br.hi, ":", br.map)
print("    jump:", seeded.realized.jumps[0])

# -- a decreasing cube root of a decreasing target --------------------------

D = mf.Multifunction.build(0, 1,
    pieces=[(0, "3/4", "-1/8", "9/20"), ("3/4", 1, "-1/8", "69/160")],
    jumps=[("3/4", ("27/80", "57/160"))])
cube = build_decreasing_odd_root(D, 3)
print("\ndecreasing cube root:", cube.verification)
for br in cube.realized.branches:
    print("   ", br.lo, "..", br.hi, ":", br.map)

# even orders are impossible for decreasing targets: a certificate instead
even = build_decreasing_odd_root(D, 2)
print("order 2 outcome:", even.text())

# -- bounds and nonexistence ------------------------------------------------

J3 = mf.Multifunction.build(0, 1,
    pieces=[(0, "1/2", "1/4", 0), ("1/2", "3/4", "1/6", "1/12"),
            ("3/4", 1, "4/15", "2/15")],
    jumps=[("1/2", ("1/8", "1/6")), ("3/4", ("5/24", "1/3")),
           (1, ("2/5", "1/2"))])
cert = build_increasing_root(J3, 4)
assert isinstance(cert, Certificate)
print("\norder-4 build outcome:", cert.text())
print("arithmetic re-check  :", recheck_certificate(cert, J3))

# the same target does have an order-2 root; its jump-orbit diagnostics
root2 = mf.Multifunction.build(0, 1,
    pieces=[(0, "1/2", "1/2", 0), ("1/2", "3/4", "1/3", "1/6"),
            ("3/4", 1, "4/5", "-1/10")],
    jumps=[("1/2", ("1/4", "1/3")), ("3/4", ("5/12", "1/2")),
           (1, ("7/10", "3/4"))])
print("verify order 2:", verify_root(root2, J3, 2))
print("jump-orbit chain:", j3_chain_report(root2, J3, 2))

# intensity above one kills all roots once the order exceeds the jump count
W = mf.Multifunction.build(0, 1,
    pieces=[(0, "1/2", "1/4", "1/4"), ("1/2", 1, "1/4", "5/16")],
    jumps=[("1/2", ("3/8", "7/16"))])
print("\nunique-jump certificate:", certify_nonexistence(W, 2).text())
print("inconclusive case      :", certify_nonexistence(J3, 2, "inc"))
