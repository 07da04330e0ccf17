import math
import random

import pytest

from nccr.errors import CapExceeded, NotAGroebnerBasis, RingMismatch
from nccr.groebner import _core
from nccr.groebner.ideals import (contains, groebner_basis, ideal, local_standard_basis,
                                  normal_form, quotient_dimension, spolys_reduce_to_zero)
from nccr.poly import GREVLEX, LEX, LOCAL, PolynomialRing
from oracles import in_span_of_multiples, monomials, random_polynomial as _random_poly

XY = PolynomialRing(["x", "y"])
X = PolynomialRing(["x"])
Y4 = PolynomialRing(["Y11", "Y12", "Y21", "Y22"])


def gb(ring, gens, order=GREVLEX):
    return groebner_basis(ideal(ring, gens, order), order)


def minimal_leads(basis):
    leads = basis.lead_monomials()
    return sorted(l for l in leads if not any(m != l and _core.divides(m, l) for m in leads))


def test_monomial_ideal_is_already_reduced():
    B = gb(XY, ["x^2", "y^2"])
    assert set(B.generators) == {XY("x^2"), XY("y^2")}
    assert B.groebner_flag


def test_single_binomial_is_its_own_basis():
    B = gb(Y4, ["Y11*Y22 - Y12*Y21"])
    assert len(B) == 1 and B.generators[0] == Y4("Y11*Y22 - Y12*Y21").monic()
    assert spolys_reduce_to_zero(B)


def test_basis_and_membership():
    B = gb(XY, ["x^2+y", "y^2"])
    assert set(B.generators) == {XY("x^2+y"), XY("y^2")}
    assert contains(B, XY("x^4"))
    # oracle: x^4 = (x^2 - y)(x^2 + y) + y^2 lies in the degree <= 4 span
    assert XY("(x^2-y)*(x^2+y) + y^2") == XY("x^4")


def test_normal_forms():
    assert normal_form(XY("x^2*y^2"), gb(XY, ["x^2", "y^2"])).is_zero()
    assert normal_form(X("x+1"), gb(X, ["x"])) == X("1")
    f = XY("x^3*y - 2*x + y^5")
    assert normal_form(f, gb(XY, [f])).is_zero()


def test_normal_form_needs_certified_basis():
    with pytest.raises(NotAGroebnerBasis):
        normal_form(XY("x"), ideal(XY, ["x"]))
    with pytest.raises(RingMismatch):
        normal_form(X("x"), gb(XY, ["x"]))


def test_normal_form_is_idempotent_and_differs_by_ideal_element():
    B = gb(XY, ["x^2+y", "x*y^2 - 1"])
    p = XY("x^5*y + 3*x^2*y^3 - y")
    r = normal_form(p, B)
    assert normal_form(r, B) == r
    assert contains(B, p - r)
    leads = B.lead_monomials()
    assert not any(_core.divides(l, e) for e in r.terms for l in leads)


def test_local_basis_removes_unit_factors():
    B = local_standard_basis(ideal(X, ["x^2 + x^3"], LOCAL))
    assert minimal_leads(B) == [(2,)]
    assert quotient_dimension(B) == 2
    B = local_standard_basis(ideal(X, ["x - x^2"], LOCAL))
    assert minimal_leads(B) == [(1,)]


def test_local_basis_of_homogeneous_ideal_keeps_generators():
    B = local_standard_basis(ideal(XY, ["x^2", "y^2"], LOCAL))
    assert minimal_leads(B) == [(0, 2), (2, 0)]
    assert set(B.generators[:2]) == {XY("x^2"), XY("y^2")}


def test_quotient_dimensions():
    assert quotient_dimension(gb(XY, ["x^2", "y^2"])) == 4
    assert quotient_dimension(gb(XY, ["x", "y"])) == 1
    assert quotient_dimension(gb(XY, ["x"])) == math.inf
    assert quotient_dimension(gb(XY, ["x+1", "y"])) == 1
    assert quotient_dimension(local_standard_basis(ideal(XY, ["x+1", "y"], LOCAL))) == 0


def test_jacobian_of_compound_du_val_germ_has_length_twelve():
    R = PolynomialRing(["x", "y", "z", "t"])
    f = R("x*y - (z-t^2)*(z-t^3)*(z-t^4)")
    J = ideal(R, [f.diff(i) for i in range(4)], LOCAL)
    assert quotient_dimension(local_standard_basis(J)) == 12


def test_arity_cap():
    ring = PolynomialRing([f"v{i}" for i in range(13)])
    with pytest.raises(CapExceeded):
        gb(ring, ["v0"])


def test_basis_size_cap():
    with pytest.raises(CapExceeded):
        groebner_basis(ideal(XY, ["x^3 - y^2", "x^2*y - 1"]), cap=_core.caps(basis_size=1))


# -- properties ---------------------------------------------------------------

CORPUS_RINGS = [PolynomialRing(["a", "b"]), PolynomialRing(["a", "b", "c"]), PolynomialRing(["a", "b", "c", "d"])]


@pytest.mark.parametrize("seed", range(12))
def test_buchberger_certificate_on_random_ideals(seed):
    rng = random.Random(seed)
    ring = CORPUS_RINGS[seed % 3]
    gens = [_random_poly(rng, ring, rng.randint(1, 3), 3, False) for _ in range(3)]
    gens = [g for g in gens if g] or [ring("a")]
    for order in (GREVLEX, LEX):
        B = gb(ring, gens, order)
        assert spolys_reduce_to_zero(B)
        for g in gens:
            assert contains(B, g)
        # reduced: no lead divides another term of another element
        leads = B.lead_monomials()
        for i, g in enumerate(B.generators):
            for j, l in enumerate(leads):
                if i != j:
                    assert not any(_core.divides(l, e) for e in g.terms)


@pytest.mark.parametrize("seed", range(25))
def test_membership_agrees_with_linear_algebra(seed):
    rng = random.Random(100 + seed)
    ring = CORPUS_RINGS[seed % 3]
    gens = [_random_poly(rng, ring, rng.randint(1, 3), 3, True) for _ in range(rng.randint(1, 3))]
    gens = [g for g in gens if g]
    if not gens:
        return
    B = gb(ring, gens)
    d = rng.randint(max(g.degree() for g in gens), 5)
    # a mix of guaranteed members and random elements
    candidates = [_random_poly(rng, ring, d, 4, True)]
    member = ring.zero()
    for g in gens:
        if d >= g.degree():
            member = member + g * _random_poly(rng, ring, d - g.degree(), 2, True)
    candidates.append(member)
    candidates.append(member + ring.monomial(monomials(ring.ngens, d)[0]))
    for p in candidates:
        if p.is_zero():
            continue
        assert contains(B, p) == in_span_of_multiples(gens, p, d)


ZERO_DIM_CORPUS = [
    ["a^2 - b", "b^2 - a"],
    ["a^3", "b^2 - a*b", "a*b^2"],
    ["a^2 + b^2 - 1", "a - b"],
    ["a*b - 1", "a^2 + b^2 - 4"],
]


@pytest.mark.parametrize("gens", ZERO_DIM_CORPUS)
def test_quotient_dimension_independent_of_global_order(gens):
    ring = PolynomialRing(["a", "b"])
    assert quotient_dimension(gb(ring, gens, GREVLEX)) == quotient_dimension(gb(ring, gens, LEX))
