import math
import random
from fractions import Fraction

import pytest

from nccr.errors import NonIsolated, NotVanishingAtOrigin
from nccr.poly import PolynomialRing
from nccr.singularity import milnor_number, quasi_homogeneity_test, report, tyurina_number

XY = PolynomialRing(["x", "y"])
XYZT = PolynomialRing(["x", "y", "z", "t"])
F = "x*y - (z-t^2)*(z-t^3)*(z-t^4)"


def test_morse_point():
    assert milnor_number(XY("x^2 + y^2")) == 1
    assert tyurina_number(XY("x^2 + y^2")) == 1


def test_fermat_cubic():
    f = XY("x^3 + y^3")
    assert milnor_number(f) == 4 and tyurina_number(f) == 4
    assert quasi_homogeneity_test(f).quasi_homogeneous is True


def test_compound_du_val_germ():
    rep = quasi_homogeneity_test(XYZT(F))
    assert (rep.milnor, rep.tyurina, rep.quasi_homogeneous) == (12, 11, False)


def test_cusp_is_quasi_homogeneous():
    assert quasi_homogeneity_test(XY("x^2 + y^3")).quasi_homogeneous is True


def test_errors():
    with pytest.raises(NotVanishingAtOrigin):
        milnor_number(XY("x^2 + 1"))
    with pytest.raises(NonIsolated):
        quasi_homogeneity_test(XY("x^2"))
    rep = report(XY("x^2*y"))
    assert rep.milnor == math.inf and rep.quasi_homogeneous == "undetermined"


CORPUS = [
    (XY, "x^2 + y^3"), (XY, "x^3 + y^4"), (XY, "x^2*y + y^4"), (XY, "x^4 + y^4 + x^2*y^2"),
    (XY, "x^5 + y^5 + x^2*y^2"), (XY, "x^4 + y^5 + x^2*y^3"), (XY, "y^2 - x^3 + x^2*y^2"),
    (XYZT, F),
]


@pytest.mark.parametrize("ring,text", CORPUS)
def test_tyurina_at_most_milnor(ring, text):
    f = ring(text)
    assert tyurina_number(f) <= milnor_number(f)


@pytest.mark.parametrize("text,weights", [("x^2 + y^3", (3, 2)), ("x^3 + y^4", (4, 3)),
                                          ("x^2*y + y^4", (3, 2)), ("x^3 + x*y^5", (5, 2))])
def test_weighted_homogeneous_germs_have_equal_numbers(text, weights):
    f = XY(text)
    assert len({sum(w * e for w, e in zip(weights, m)) for m in f.terms}) == 1
    assert milnor_number(f) == tyurina_number(f)


def test_non_quasi_homogeneous_plane_germ():
    # x^4 + y^5 + x^2*y^3 is the classical example with mu = 12, tau = 11
    f = XY("x^4 + y^5 + x^2*y^3")
    assert (milnor_number(f), tyurina_number(f)) == (12, 11)


@pytest.mark.parametrize("seed", range(5))
def test_milnor_number_invariant_under_linear_changes(seed):
    rng = random.Random(seed)
    while True:
        M = [[Fraction(rng.randint(-2, 2)) for _ in range(4)] for _ in range(4)]
        if _det(M) != 0:
            break
    gens = XYZT.gens()
    images = [sum((M[i][j] * gens[j] for j in range(4)), XYZT.zero()) for i in range(4)]
    g = XYZT(F).substitute(images)
    assert milnor_number(g) == 12


def test_quadratic_part_splits_off():
    ZT = PolynomialRing(["z", "t"])
    assert milnor_number(ZT("(z-t^2)*(z-t^3)*(z-t^4)")) == milnor_number(XYZT(F))


def _det(M):
    import itertools
    total = 0
    for perm in itertools.permutations(range(len(M))):
        sign = 1
        for i in range(len(perm)):
            for j in range(i + 1, len(perm)):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Fraction(sign)
        for i, p in enumerate(perm):
            term *= M[i][p]
        total += term
    return total
