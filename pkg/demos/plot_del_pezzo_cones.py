"""
Cones over del Pezzo surfaces
=============================

Line bundle cohomology on a blow-up of the plane in p general points is
computed by lattice arithmetic alone.  We use it to test when a collection of
line bundles gives a tilting object on the cone over the surface.
"""

from nccr import delpezzo as dp

###############################################################################
# The cubic surface: 27 lines and the anticanonical cone.

s = dp.make_surface("dP6")
print(len(s.minus_one_classes), "(-1)-classes")
print(dp.cone_properties(s, -s.canonical))

###############################################################################
# On five points the collection (O, O(E_1), ..., O(E_5), O(H), O(2H)) is
# strong, yet it fails the vanishing needed on the cone: twisting by -K
# produces H - E_2 - E_3 - E_4 - E_5, which has a nonzero H^1.

d5 = dp.make_surface(5)
coll = dp.naive_collection(d5)
print("strong:", dp.strong_collection_check(d5, coll).ok)
check = dp.tilting_cone_check(d5, -d5.canonical, coll)
print("tilting on the cone:", check.ok)
D = d5.divisor(1, 0, -1, -1, -1, -1)
print(d5.format(D), dp.line_bundle_cohomology(d5, D))

###############################################################################
# On the quadric with L = O(1, 1) the pair (O, O(1, 0)) passes both checks;
# this cone is the conifold again.

Q = dp.make_surface("P1xP1")
L = Q.divisor(1, 1)
pair = [Q.zero(), Q.divisor(1, 0)]
print(dp.tilting_cone_check(Q, L, pair).ok, dp.crepancy_cone_check(Q, L, pair).ok)
