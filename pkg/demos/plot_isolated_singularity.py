"""
Milnor and Tyurina numbers of a space curve singularity
========================================================

The germ f = xy - (z - t^2)(z - t^3)(z - t^4) has an isolated singularity at
the origin of 4-space.  Comparing the two local invariants decides whether f
becomes weighted homogeneous after a coordinate change.
"""

from nccr.poly import PolynomialRing
from nccr.singularity import milnor_number, report, tyurina_number

R = PolynomialRing(["x", "y", "z", "t"])
f = R("x*y-(z-t^2)*(z-t^3)*(z-t^4)")

###############################################################################
# Both numbers are lengths of local algebras, computed from standard bases in
# the local (negative degree) order.

mu, info = milnor_number(f, with_info=True)
tau = tyurina_number(f)
print(f"mu = {mu}, tau = {tau}")
print("certificate:", info)

###############################################################################
# mu != tau, so no choice of coordinates makes f quasi-homogeneous.

print("quasi-homogeneous:", report(f).quasi_homogeneous)

###############################################################################
# For contrast, a weighted homogeneous germ has mu == tau.

g = R("x^2+y^3+z^5+t^2")
print(report(g))
