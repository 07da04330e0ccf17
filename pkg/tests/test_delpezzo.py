import itertools
import random
from fractions import Fraction

import pytest

from nccr import delpezzo as dp
from nccr.errors import (LatticeMismatch, NonIntegralResult, NotAmple, NotNumericallyExceptional,
                         TooManyPoints, ZeroRank)
from oracles import chi_line_bundle_blowup, h0_points

P2 = dp.make_surface("P2")
Q = dp.make_surface("P1xP1")
SURFACES = [dp.make_surface(p) for p in range(9)] + [Q]


def test_surfaces():
    assert (P2.picard_rank, P2.square(P2.canonical)) == (1, 9)
    d6 = dp.make_surface("dP6")
    assert (d6.picard_rank, d6.square(d6.canonical)) == (7, 3)
    assert tuple(Q.canonical) == (-2, -2) and Q.square(Q.canonical) == 8
    with pytest.raises(TooManyPoints):
        dp.make_surface("dP9")


def test_minus_one_class_counts():
    assert [len(dp.minus_one_classes(s)) for s in SURFACES] == [0, 1, 3, 6, 10, 16, 27, 56, 240, 0]
    for s in SURFACES:
        for c in s.minus_one_classes:
            assert s.square(c) == -1 and s.dot(c, s.canonical) == -1


@pytest.mark.parametrize("p", range(1, 6))
def test_minus_one_classes_match_exhaustive_search(p):
    s = dp.make_surface(p)
    found = set()
    for d in range(0, 4):
        for m in itertools.product(range(-1, d + 1), repeat=p):
            c = s.divisor(d, *(-x for x in m))
            if s.square(c) == -1 and s.dot(c, s.canonical) == -1:
                found.add(c)
    assert found == set(s.minus_one_classes)


def test_cubic_surface_lines_by_orbit():
    s = dp.make_surface(6)
    E = [s.E(i) for i in range(1, 7)]
    lines = set(E)
    lines |= {s.H - E[i] - E[j] for i, j in itertools.combinations(range(6), 2)}
    lines |= {2 * s.H - sum((E[j] for j in range(6) if j != i), s.zero()) for i in range(6)}
    assert lines == set(s.minus_one_classes)


def test_euler_form_examples():
    for s in SURFACES:
        O = dp.line_bundle(s, s.zero())
        assert dp.euler_form(s, O, O) == 1
    assert dp.euler_form(P2, dp.line_bundle(P2, P2.zero()), dp.line_bundle(P2, P2.H)) == 3
    d2 = dp.make_surface(2)
    assert dp.euler_form(d2, dp.line_bundle(d2, d2.E(1)), dp.line_bundle(d2, d2.E(2))) == 0


def test_euler_form_errors():
    with pytest.raises(NonIntegralResult):
        dp.NumericalClass(1, P2.zero(), Fraction(1, 3))
    bad = dp.NumericalClass(1, P2.zero(), Fraction(1, 2))   # ch2 of parity inconsistent with c1
    with pytest.raises(NonIntegralResult):
        dp.euler_form(P2, bad, dp.line_bundle(P2, P2.zero()))
    with pytest.raises(LatticeMismatch):
        dp.euler_form(P2, dp.line_bundle(P2, P2.zero()), dp.line_bundle(Q, Q.zero()))


def test_slopes():
    for s in SURFACES:
        assert dp.slope(s, dp.line_bundle(s, s.zero())) == 0
        assert dp.slope(s, dp.line_bundle(s, -s.canonical)) == s.square(s.canonical)
    for p in range(1, 9):
        s = dp.make_surface(p)
        assert dp.slope(s, dp.line_bundle(s, s.E(1))) == 1
    with pytest.raises(ZeroRank):
        dp.slope(P2, dp.NumericalClass(0, P2.H, Fraction(0)))


def test_left_mutation_on_projective_plane():
    M = dp.mutate(P2, dp.line_bundle(P2, P2.zero()), dp.line_bundle(P2, P2.H), "left")
    assert (M.rank, tuple(M.c1), M.ch2) == (2, (-1,), Fraction(-1, 2))
    assert dp.euler_form(P2, M, M) == 1


def _random_class(rng, s, rank=None):
    r = rank if rank is not None else rng.randint(1, 3)
    c1 = s.divisor(*(rng.randint(-3, 3) for _ in range(s.picard_rank)))
    c2 = rng.randint(-4, 4)
    return dp.NumericalClass(r, c1, Fraction(s.square(c1), 2) - c2)


def _exceptional_steps(s):
    steps = list(s.minus_one_classes)
    if s.kind == "quadric":
        steps += [s.basis("f1"), s.basis("f2")]
    else:
        steps += [s.H, 2 * s.H] + [s.H - s.E(i) for i in range(1, s.points + 1)]
    return steps


def test_mutations_on_random_exceptional_pairs():
    rng = random.Random(7)
    for _ in range(100):
        s = rng.choice(SURFACES)
        D = s.divisor(*(rng.randint(-2, 2) for _ in range(s.picard_rank)))
        C = rng.choice(_exceptional_steps(s))
        E, F = dp.line_bundle(s, D), dp.line_bundle(s, D + C)
        assert dp.euler_form(s, F, E) == 0           # numerically exceptional pair
        L = dp.mutate(s, E, F, "left")
        assert dp.euler_form(s, L, L) == 1
        assert dp.euler_form(s, E, L) == 0           # (L, E) is again exceptional
        assert dp.mutate(s, L, E, "right") == F
        R = dp.mutate(s, E, F, "right")
        assert dp.euler_form(s, R, R) == 1 and dp.mutate(s, F, R, "left") == E


def test_euler_form_is_bilinear():
    rng = random.Random(3)
    for _ in range(50):
        s = rng.choice(SURFACES)
        A, B, C = (_random_class(rng, s) for _ in range(3))
        assert dp.euler_form(s, A + B, C) == dp.euler_form(s, A, C) + dp.euler_form(s, B, C)
        assert dp.euler_form(s, A, B + C) == dp.euler_form(s, A, B) + dp.euler_form(s, A, C)


def test_serre_identity_on_random_pairs():
    rng = random.Random(11)
    for _ in range(50):
        s = rng.choice(SURFACES)
        E, F = _random_class(rng, s), _random_class(rng, s)
        assert dp.euler_form(s, F, E) == dp.euler_form(s, E, dp.helix_twist(s, F, -1))


def test_helix_twist():
    O = dp.line_bundle(P2, P2.zero())
    assert dp.helix_twist(P2, O, 1) == dp.line_bundle(P2, 3 * P2.H)
    rng = random.Random(2)
    for _ in range(20):
        s = rng.choice(SURFACES)
        E = _random_class(rng, s)
        j = rng.randint(-3, 3)
        assert dp.helix_twist(s, E, 0) == E
        assert dp.slope(s, dp.helix_twist(s, E, j)) == dp.slope(s, E) + j * s.square(s.canonical)


def test_line_bundle_cohomology_examples():
    assert dp.line_bundle_cohomology(P2, P2.H) == (3, 0, 0)
    d5 = dp.make_surface(5)
    assert dp.line_bundle_cohomology(d5, d5.divisor(1, 0, -1, -1, -1, -1)) == (0, 1, 0)
    d6 = dp.make_surface(6)
    assert dp.line_bundle_cohomology(d6, -d6.canonical) == (4, 0, 0)
    assert dp.line_bundle_cohomology(P2, -3 * P2.H) == (0, 0, 1)
    assert dp.line_bundle_cohomology(Q, Q.divisor(-2, 0)) == (0, 1, 0)


def _corpus_classes(s, rng, count):
    out = []
    for _ in range(count):
        out.append(s.divisor(*(rng.randint(-4, 6) for _ in range(s.picard_rank))))
    return out


@pytest.mark.parametrize("s", SURFACES, ids=lambda s: s.name)
def test_riemann_roch_closure_and_serre_duality(s):
    rng = random.Random(s.picard_rank)
    for D in _corpus_classes(s, rng, 60):
        t = dp.line_bundle_cohomology(s, D)
        assert min(t) >= 0
        assert t.h0 - t.h1 + t.h2 == dp.riemann_roch(s, D)
        assert dp.line_bundle_cohomology(s, s.canonical - D) == (t.h2, t.h1, t.h0)
        if s.kind == "blowup":
            d, ms = D.coefficients[0], [-x for x in D.coefficients[1:]]
            assert dp.riemann_roch(s, D) == chi_line_bundle_blowup(d, ms)


@pytest.mark.parametrize("s", SURFACES[2:9], ids=lambda s: s.name)
def test_peeling_invariance(s):
    rng = random.Random(50 + s.points)
    for D in _corpus_classes(s, rng, 40):
        for C in s.minus_one_classes:
            if s.dot(D, C) < 0:
                assert dp.h0(s, D) == dp.h0(s, D - C)


def _oracle_sample():
    rng = random.Random(2024)
    cases = []
    for p in range(7):
        for _ in range(36):
            d = rng.randint(0, 8)
            ms = [rng.randint(-1, min(d, 4)) for _ in range(p)]
            cases.append((p, d, ms))
    return cases


ORACLE_CASES = _oracle_sample()


def test_oracle_sample_size():
    assert len(ORACLE_CASES) >= 200


@pytest.mark.parametrize("p,d,ms", ORACLE_CASES)
def test_h0_matches_explicit_points(p, d, ms):
    s = dp.make_surface(p)
    assert dp.h0(s, s.divisor(d, *(-m for m in ms))) == h0_points(d, ms)


def test_quadric_h0_is_product_of_binomials():
    for a in range(-2, 5):
        for b in range(-2, 5):
            expected = (a + 1) * (b + 1) if a >= 0 and b >= 0 else 0
            assert dp.h0(Q, Q.divisor(a, b)) == expected


# -- collections and cones ---------------------------------------------------------

def test_strong_collections():
    ok = dp.strong_collection_check(P2, [P2.zero(), P2.H, 2 * P2.H])
    assert ok == (True, None)
    rev = dp.strong_collection_check(P2, [2 * P2.H, P2.H, P2.zero()])
    assert not rev.ok and rev.witness[0] == "backward" and rev.witness[3] == 0
    d5 = dp.make_surface(5)
    assert dp.strong_collection_check(d5, dp.naive_collection(d5)).ok


def test_exceptional_curves_before_structure_sheaf_break_exceptionality():
    # Hom(O, O(E1)) is nonzero, so O(E1) cannot precede O
    d5 = dp.make_surface(5)
    coll = [d5.E(i) for i in range(1, 6)] + [d5.zero(), d5.H, 2 * d5.H]
    r = dp.strong_collection_check(d5, coll)
    assert not r.ok and r.witness == ("backward", 0, 5, 0, 1)


def test_tilting_on_quadric_and_plane():
    coll = [Q.zero(), Q.divisor(1, 0)]
    assert dp.tilting_cone_check(Q, Q.divisor(1, 1), coll).ok
    assert dp.tilting_cone_check(P2, P2.H, [P2.zero(), P2.H, 2 * P2.H]).ok


@pytest.mark.parametrize("p", [5, 6, 7, 8])
def test_naive_collection_fails_tilting_condition(p):
    s = dp.make_surface(p)
    coll = dp.naive_collection(s)
    r = dp.tilting_cone_check(s, -s.canonical, coll)
    assert not r.ok
    for a, b, j, i, dim in r.witnesses:
        D = coll[b] - coll[a] + j * (-s.canonical)
        assert dp.line_bundle_cohomology(s, D)[i] == dim > 0
    assert any(i == 1 for _, _, _, i, _ in r.witnesses)


def test_dp5_witness_pair():
    s = dp.make_surface(5)
    r = dp.tilting_cone_check(s, -s.canonical, dp.naive_collection(s))
    # pair (O(2H), O(E1)) at j = 1 gives H - E2 - E3 - E4 - E5
    assert (7, 1, 1, 1, 1) in r.witnesses


@pytest.mark.parametrize("p", [0, 1, 2, 3])
def test_naive_collection_passes_for_few_points(p):
    s = dp.make_surface(p)
    assert dp.tilting_cone_check(s, -s.canonical, dp.naive_collection(s)).ok


def test_crepancy_condition():
    coll = [Q.zero(), Q.divisor(1, 0)]
    assert dp.crepancy_cone_check(Q, Q.divisor(1, 1), coll).ok
    r = dp.crepancy_cone_check(P2, P2.H, [P2.zero(), P2.H, 2 * P2.H])
    assert not r.ok and (0, 2, -1, 0, 3) in r.witnesses
    for s in SURFACES[:9]:
        r = dp.crepancy_cone_check(s, -s.canonical, dp.naive_collection(s))
        assert r.ok and r.bound == 0 and r.witnesses == []


def test_ampleness_required():
    with pytest.raises(NotAmple):
        dp.tilting_cone_check(Q, Q.divisor(1, 0), [Q.zero()])
    d2 = dp.make_surface(2)
    with pytest.raises(NotAmple):
        dp.cone_properties(d2, d2.H)


@pytest.mark.parametrize("s,L", [(Q, (1, 1)), (P2, (1,)), (P2, (2,)), (dp.make_surface(3), (3, -1, -1, -1)),
                                 (dp.make_surface(6), (3, -1, -1, -1, -1, -1, -1)), (Q, (2, 1))],
                         ids=["Q11", "P2H", "P22H", "dP3", "dP6", "Q21"])
def test_cone_verdicts_stable_past_the_bound(s, L):
    L = s.divisor(*L)
    coll = dp.naive_collection(s)
    for fn in (dp.tilting_cone_check, dp.crepancy_cone_check):
        a, b = fn(s, L, coll), fn(s, L, coll, extra=3)
        assert a.ok == b.ok and a.witnesses == b.witnesses


def test_cone_local_cohomology():
    d6 = dp.make_surface(6)
    L = -d6.canonical
    for i in (0, 1):
        assert all(v == 0 for v in dp.cone_local_cohomology(d6, L, i, range(-5, 6)).values())
    assert all(v == 0 for v in dp.cone_local_cohomology(d6, L, 2, range(0, 6)).values())
    top = dp.cone_local_cohomology(P2, P2.H, 2, range(-6, 4))
    assert {u for u, v in top.items() if v} == {-6, -5, -4, -3}
    for i in (0, 1):
        assert not any(dp.cone_local_cohomology(P2, P2.H, i, range(-6, 4)).values())


def test_cone_properties():
    d6 = dp.make_surface(6)
    r = dp.cone_properties(d6, -d6.canonical)
    assert (r.cm, r.rational, r.gorenstein_index, r.blowup_crepant, r.terminal) == (True, True, 1, True, False)
    r = dp.cone_properties(Q, Q.divisor(1, 1))
    assert (r.gorenstein_index, r.blowup_crepant, r.terminal) == (2, False, True)
    assert dp.cone_properties(P2, P2.H).gorenstein_index == 3
    assert dp.cone_properties(Q, Q.divisor(2, 1)).gorenstein_index is None


def test_cone_with_non_proportional_canonical_class_has_no_index():
    # K = -3H is not an integer multiple of 4H
    r = dp.cone_properties(P2, 4 * P2.H)
    assert r.cm and r.rational and r.gorenstein_index is None


def test_slope_report_on_projective_plane():
    coll = [dp.line_bundle(P2, k * P2.H) for k in range(3)]
    r = dp.ko_slope_report(P2, coll)
    assert r.slopes[3:6] == (0, 3, 6)
    assert r.monotone and r.serre_identities
    assert r.vanishing == {"no_forward_ext2": True, "no_backward_hom": True, "all_ext1_vanish": True}


def test_slope_report_detects_non_monotone_helix():
    d1 = dp.make_surface(1)
    coll = [dp.line_bundle(d1, d1.zero()), dp.line_bundle(d1, d1.divisor(4, -3))]
    r = dp.ko_slope_report(d1, coll)
    assert not r.monotone and r.serre_identities


def test_slope_report_rejects_non_exceptional_input():
    with pytest.raises(NotNumericallyExceptional):
        dp.ko_slope_report(P2, [dp.line_bundle(P2, 2 * P2.H), dp.line_bundle(P2, P2.zero())])
