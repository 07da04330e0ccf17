"""
The conifold as a torus quotient
================================

The one-dimensional torus acting on k^4 with weights (1, 1, -1, -1) has the
conifold uv = xy as its quotient.  Its modules of covariants S_0 and S_1 give a
two-vertex quiver whose path algebra with relations is End_R(S_0 + S_1).
"""

from nccr import torus

ws = torus.validate_weights([1, 1, -1, -1])
print("N =", ws.n_cap)

###############################################################################
# Invariant ring: Hilbert basis of the invariant monoid and its toric ideal.

hb = torus.invariant_hilbert_basis(ws)
print("Hilbert basis:", [ws.monomial_str(e) for e in hb])
yr, relations = torus.toric_presentation(ws)
print("relations:", [str(p) for p in relations.generators])

###############################################################################
# Covariants of weight a are Cohen-Macaulay exactly for -2 < a < 2.

for a in range(-3, 4):
    print(f"S_{a}: CM = {torus.cm_check_covariant(ws, a)}")

###############################################################################
# Arrows of the quiver are the covariant generators that do not factor
# through another vertex.

q = torus.nccr_quiver(ws)
for (m, n), arrows in sorted(q.arrows.items()):
    print(f"{m} -> {n}:", [ws.monomial_str(e) for e in arrows])

###############################################################################
# Hom_R(S_a, S_b) agrees with S_{b-a} in every degree checked.

print("End ring check to degree 6:", torus.end_ring_check(ws, D=6))
