"""Gröbner and standard bases of polynomial ideals."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from ..errors import CapExceeded, NotAGroebnerBasis, RingMismatch
from ..poly import GREVLEX, LOCAL, Polynomial, PolynomialRing, TermOrder
from . import _core


@dataclass(frozen=True)
class IdealBasis:
    ring: PolynomialRing
    generators: tuple
    order: TermOrder = GREVLEX
    groebner_flag: bool = False
    # certificates recorded by the engine (basis size, caps used)
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.ring != self.ring:
                raise RingMismatch(f"generator {g} is not in {self.ring}")

    def lead_monomials(self):
        return [g.lead_monomial(self.order) for g in self.generators if g]

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def ideal(ring, generators, order=GREVLEX):
    gens = [ring(g) for g in generators]
    return IdealBasis(ring, tuple(gens), order, False)


def _to_vec(p):
    return {(0, e): c for e, c in p.terms.items()}


def _from_vec(ring, vec):
    return Polynomial(ring, {e: c for (_, e), c in vec.items()})


def _order_tools(ring, order):
    key = _core.memo_key(lambda t: order.key(t[1]))
    if order.weights is not None:
        w = order.weights
    else:
        w = (1,) * ring.ngens
    return key, _core.term_degree(w)


def _check_caps(ring, polys, cap):
    if ring.ngens > cap["arity"]:
        raise CapExceeded(f"arity {ring.ngens} exceeds cap {cap['arity']}")
    for p in polys:
        if p and p.degree() > cap["degree"]:
            raise CapExceeded(f"degree {p.degree()} exceeds cap {cap['degree']}")


def groebner_basis(ideal: IdealBasis, order: TermOrder | None = None, cap=None) -> IdealBasis:
    """Reduced Gröbner basis (monic, sorted by ascending leading term)."""
    order = order or ideal.order
    if not order.is_global:
        raise ValueError("groebner_basis needs a global order; use local_standard_basis")
    cap = cap or _core.DEFAULT_CAPS
    ring = ideal.ring
    _check_caps(ring, ideal.generators, cap)
    key, degree = _order_tools(ring, order)
    basis, _ = _core.buchberger([_to_vec(g) for g in ideal.generators if g], key, degree,
                                rank_one=True, cap=cap)
    red = _core.interreduce(basis)
    gens = tuple(_from_vec(ring, v) for v in red.elems)
    _check_caps(ring, gens, cap)
    return IdealBasis(ring, gens, order, True, {"size": len(gens)})


def _require_groebner(p, basis):
    if not basis.groebner_flag:
        raise NotAGroebnerBasis("normal_form needs a certified Gröbner or standard basis")
    if p.ring != basis.ring:
        raise RingMismatch(f"{p.ring} is not {basis.ring}")


def normal_form(p: Polynomial, basis: IdealBasis) -> Polynomial:
    """Remainder of ``p``; for local orders this is Mora's weak normal form."""
    _require_groebner(p, basis)
    key, degree = _order_tools(basis.ring, basis.order)
    vecs = [_to_vec(g) for g in basis.generators if g]
    if basis.order.is_global:
        b = _core.Basis(key)
        for v in vecs:
            b.add(v)
        return _from_vec(basis.ring, b.reduce(_to_vec(p)))
    return _from_vec(basis.ring, _core.mora_reduce(_to_vec(p), vecs, key, degree))


def contains(basis: IdealBasis, p: Polynomial) -> bool:
    return normal_form(p, basis).is_zero()


def _monomials_of_degree(n, d):
    for c in itertools.combinations(range(d + n - 1), n - 1):
        prev = -1
        e = []
        for x in c:
            e.append(x - prev - 1)
            prev = x
        e.append(d + n - 2 - prev)
        yield tuple(e)


def _truncated_local(vecs, key, degree, n, cap):
    """Standard basis of I + m^D for growing D, certified when m^(D-1) lies in the
    leading ideal (then m^(D-1) is inside I locally, by Nakayama)."""
    D = 4
    while D <= cap["degree"] and math.comb(n + D, n) <= _TRUNCATION_BUDGET:
        basis, _ = _core.buchberger(vecs, key, degree, rank_one=True, cap=cap, trunc=D)
        leads = [l[1] for l in basis.leads]
        if any(sum(l) == 0 for l in leads):
            return basis, D
        if all(any(_core.divides(l, m) for l in leads) for m in _monomials_of_degree(n, D - 1)):
            return basis, D
        D += D // 2 + 1
    return None, None


_TRUNCATION_BUDGET = 200_000


def local_standard_basis(ideal: IdealBasis, order: TermOrder = LOCAL, cap=None) -> IdealBasis:
    """Standard basis in the localisation at the origin.

    Zero-dimensional germs are handled modulo a certified power of the maximal
    ideal; anything else falls back to Mora's tangent cone algorithm.
    """
    if order.is_global:
        raise ValueError("local_standard_basis needs a local order")
    cap = cap or _core.DEFAULT_CAPS
    ring = ideal.ring
    _check_caps(ring, ideal.generators, cap)
    key, degree = _order_tools(ring, order)
    vecs = [_to_vec(g) for g in ideal.generators if g]
    if not vecs:
        return IdealBasis(ring, (), order, True, {"size": 0, "method": "empty"})
    basis, D = _truncated_local(vecs, key, degree, ring.ngens, cap)
    if basis is not None:
        G = list(basis.elems)
        leads = list(basis.leads)
        info = {"method": "truncated", "truncation": D}
    else:
        G, leads = _core.mora_standard_basis(vecs, key, degree, cap)
        info = {"method": "mora"}
    # drop elements whose leading monomial is divisible by another kept one
    keep = []
    for i in sorted(range(len(G)), key=lambda i: (sum(leads[i][1]), i)):
        if any(_core.divides(leads[k][1], leads[i][1]) for k in keep):
            continue
        keep.append(i)
    keep.sort(key=lambda i: key(leads[i]), reverse=True)
    gens = [_from_vec(ring, G[i]) for i in keep]
    if D is not None:
        # the truncated elements differ from elements of I by terms in m^D, which lie in I
        kept_leads = [leads[i][1] for i in keep]
        for m in _monomials_of_degree(ring.ngens, D):
            if not any(_core.divides(l, m) for l in kept_leads):
                gens.append(ring.monomial(m))
    info["size"] = len(gens)
    return IdealBasis(ring, tuple(gens), order, True, info)


def staircase_bounds(leads, n):
    """Pure-power exponents bounding the staircase, or None if unbounded."""
    bounds = []
    for i in range(n):
        powers = [e[i] for e in leads if all(e[j] == 0 for j in range(n) if j != i)]
        if not powers:
            return None
        bounds.append(min(powers))
    return bounds


def standard_monomials(basis: IdealBasis):
    """Monomials outside the leading ideal; ``None`` when there are infinitely many."""
    leads = basis.lead_monomials()
    n = basis.ring.ngens
    if any(sum(e) == 0 for e in leads):
        return []
    bounds = staircase_bounds(leads, n)
    if bounds is None:
        return None
    out = []
    for e in itertools.product(*(range(b) for b in bounds)):
        if not any(_core.divides(l, e) for l in leads):
            out.append(e)
    return out


def quotient_dimension(basis: IdealBasis):
    """Number of standard monomials, or ``math.inf`` when the staircase is unbounded."""
    if not basis.groebner_flag:
        raise NotAGroebnerBasis("quotient_dimension needs a certified basis")
    mons = standard_monomials(basis)
    return math.inf if mons is None else len(mons)


def spolys_reduce_to_zero(basis: IdealBasis) -> bool:
    """Independent Buchberger certificate: every S-polynomial has remainder zero."""
    key, degree = _order_tools(basis.ring, basis.order)
    vecs = [_to_vec(g) for g in basis.generators if g]
    leads = [_core.lead(v, key) for v in vecs]
    b = _core.Basis(key)
    for v in vecs:
        b.add(v)
    for i, j in itertools.combinations(range(len(vecs)), 2):
        s = _core.spoly(_core.monic(vecs[i], key), leads[i], _core.monic(vecs[j], key), leads[j])
        if basis.order.is_global:
            r = b.reduce(s)
        else:
            r = _core.mora_reduce(s, vecs, key, degree)
        if r:
            return False
    return True
