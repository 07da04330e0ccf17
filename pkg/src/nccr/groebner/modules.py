"""Graded modules over a polynomial ring: presentations, syzygies, minimal free
resolutions, Hom and depth.

Everything here assumes a positive grading of the ambient ring (the ring's
weights, or standard degree when it has none) and homogeneous presentations.
Module elements are sparse vectors ``{(component, exponents): Fraction}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

from ..errors import CapExceeded, NotHomogeneous, RingMismatch
from ..poly import Polynomial, PolynomialRing
from . import _core


def var_degrees(ring: PolynomialRing):
    w = ring.weights if ring.weights is not None else (1,) * ring.ngens
    if any(x <= 0 for x in w):
        raise NotHomogeneous(f"module computations need a positive grading, got {w}")
    return tuple(w)


def vector_degree(vec, wdeg, shifts):
    degs = {sum(a * b for a, b in zip(wdeg, e)) + shifts[c] for c, e in vec}
    if len(degs) != 1:
        raise NotHomogeneous(f"inhomogeneous vector with degrees {sorted(degs)}")
    return degs.pop()


def mul_poly_vec(p, vec):
    """Product of a polynomial term dict ``{exps: coeff}`` with a vector."""
    out = {}
    for e1, c1 in p.items():
        for (c, e2), c2 in vec.items():
            t = (c, _core.mono_add(e1, e2))
            v = out.get(t, 0) + c1 * c2
            if v:
                out[t] = v
            else:
                out.pop(t, None)
    return out


def component(vec, c):
    return {e: v for (k, e), v in vec.items() if k == c}


@dataclass(frozen=True)
class ModulePresentation:
    """coker of ``relations`` inside the graded free module with generator ``degrees``."""

    ring: PolynomialRing
    degrees: tuple
    relations: tuple = ()
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        rels = tuple({t: Fraction(v) for t, v in r.items() if v} for r in self.relations)
        object.__setattr__(self, "relations", tuple(r for r in rels if r))
        w = var_degrees(self.ring)
        for r in self.relations:
            for c, e in r:
                if not 0 <= c < len(self.degrees) or len(e) != self.ring.ngens:
                    raise ValueError(f"relation term {(c, e)} does not fit the presentation")
            vector_degree(r, w, self.degrees)

    @property
    def rank(self):
        return len(self.degrees)

    def relation_degrees(self):
        w = var_degrees(self.ring)
        return [vector_degree(r, w, self.degrees) for r in self.relations]

    def matrix(self):
        """Relation columns as lists of Polynomials (one entry per generator)."""
        return [[Polynomial(self.ring, component(r, c)) for c in range(self.rank)]
                for r in self.relations]

    def __str__(self):
        cols = ["(" + ", ".join(str(p) for p in col) + ")" for col in self.matrix()]
        return f"coker[{self.rank} gens, degrees {list(self.degrees)}; relations {', '.join(cols)}]"


def free_module(ring, degrees):
    return ModulePresentation(ring, tuple(degrees), ())


def from_columns(ring, degrees, columns):
    """Build a presentation from relation columns given as polynomials or strings."""
    rels = []
    for col in columns:
        if len(col) != len(degrees):
            raise ValueError("each relation column needs one entry per generator")
        vec = {}
        for c, p in enumerate(col):
            p = ring(p)
            for e, v in p.terms.items():
                vec[(c, e)] = v
        rels.append(vec)
    return ModulePresentation(ring, tuple(degrees), tuple(rels))


def cyclic_module(ring, generators, degree=0):
    """R/I as a module presented by the ideal generators."""
    rels = []
    for g in generators:
        g = ring(g)
        rels.append({(0, e): v for e, v in g.terms.items()})
    return ModulePresentation(ring, (degree,), tuple(rels))


# -- core algorithms ----------------------------------------------------------

def _top(ring, shifts):
    return _core.top_key(var_degrees(ring), tuple(shifts))


def _check_arity(ring, cap):
    if ring.ngens > cap["arity"]:
        raise CapExceeded(f"arity {ring.ngens} exceeds cap {cap['arity']}")


def minimal_generators(ring, shifts, vectors, cap=None):
    """Minimal homogeneous generating subset of ``vectors`` plus a Gröbner basis
    (degree-compatible position-last order) of the submodule they generate."""
    cap = cap or _core.DEFAULT_CAPS
    w = var_degrees(ring)
    key = _top(ring, shifts)
    degree = _core.term_degree(w, tuple(shifts))
    vecs = [v for v in vectors if v]
    basis, minimal = _core.buchberger(vecs, key, degree, detect_minimal=True, cap=cap)
    return [vecs[i] for i in sorted(minimal)], basis


def syzygies(ring, shifts, columns, column_degrees=None, cap=None):
    """Minimal generators of the syzygy module of ``columns``.

    Computed by elimination: the vectors ``column_j + e_j`` are completed
    under an order ranking the original components above the new ones; the
    basis elements living purely on the ``e`` block generate the syzygies.
    Returns ``(syzygy_vectors, column_degrees)``.
    """
    cap = cap or _core.DEFAULT_CAPS
    _check_arity(ring, cap)
    w = var_degrees(ring)
    r = len(shifts)
    if column_degrees is None:
        column_degrees = [vector_degree(c, w, shifts) for c in columns]
    column_degrees = list(column_degrees)
    s = len(columns)
    if s == 0:
        return [], []
    all_shifts = tuple(shifts) + tuple(column_degrees)

    def key(t):
        c, e = t
        d = sum(a * b for a, b in zip(w, e)) + all_shifts[c]
        return (c < r, d, _core.revlex(e), -c)

    key = _core.memo_key(key)
    degree = _core.term_degree(w, all_shifts)
    zero = (0,) * ring.ngens
    gens = []
    for j, col in enumerate(columns):
        v = dict(col)
        v[(r + j, zero)] = Fraction(1)
        gens.append(v)
    basis, _ = _core.buchberger(gens, key, degree, cap=cap)
    syz = []
    for vec, lt in zip(basis.elems, basis.leads):
        if lt[0] >= r:
            syz.append({(c - r, e): v for (c, e), v in vec.items()})
    minimal, _ = minimal_generators(ring, column_degrees, syz, cap)
    minimal.sort(key=lambda v: (vector_degree(v, w, column_degrees),
                                sorted(_top(ring, column_degrees)(t) for t in v)))
    return minimal, column_degrees


def prune(pres: ModulePresentation, cap=None) -> ModulePresentation:
    """Minimal presentation: eliminate unit entries (lowest row, then lowest
    column pivot), then keep a minimal generating set of the relations."""
    ring = pres.ring
    n = ring.ngens
    zero = (0,) * n
    degrees = list(pres.degrees)
    rels = [dict(r) for r in pres.relations if r]
    while True:
        pivot = None
        for c in range(len(degrees)):
            for j, r in enumerate(rels):
                if (c, zero) in r:
                    pivot = (c, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        c, j = pivot
        v = rels.pop(j)
        a = v[(c, zero)]
        new = []
        for r in rels:
            p = component(r, c)
            if p:
                r = dict(r)
                _sub = mul_poly_vec({e: -x / a for e, x in p.items()}, v)
                for t, x in _sub.items():
                    y = r.get(t, 0) + x
                    if y:
                        r[t] = y
                    else:
                        r.pop(t, None)
            new.append({(k - (k > c), e): x for (k, e), x in r.items()})
        rels = [r for r in new if r]
        degrees.pop(c)
    minimal, _ = minimal_generators(ring, degrees, rels, cap)
    w = var_degrees(ring)
    minimal.sort(key=lambda v: vector_degree(v, w, degrees))
    return ModulePresentation(ring, tuple(degrees), tuple(minimal))


@lru_cache(maxsize=None)
def monomials_of_weighted_degree(weights, d):
    """All exponent vectors with sum(weights*e) == d (weights positive)."""
    if d < 0:
        return ()
    n = len(weights)
    out = []

    def rec(i, remaining, acc):
        if i == n - 1:
            if remaining % weights[i] == 0:
                out.append(tuple(acc) + (remaining // weights[i],))
            return
        for k in range(remaining // weights[i] + 1):
            acc.append(k)
            rec(i + 1, remaining - k * weights[i], acc)
            acc.pop()

    if n == 0:
        return ((),) if d == 0 else ()
    rec(0, d, [])
    return tuple(out)


class HilbertData(NamedTuple):
    leads: dict      # component -> list of leading exponents
    shifts: tuple
    weights: tuple


def _hilbert_data(pres, cap=None):
    _, basis = minimal_generators(pres.ring, pres.degrees, list(pres.relations), cap)
    leads = {c: [] for c in range(pres.rank)}
    for c, e in basis.leads:
        leads[c].append(e)
    return HilbertData(leads, pres.degrees, var_degrees(pres.ring))


def hilbert_function(pres: ModulePresentation, degrees: Sequence[int], cap=None):
    """Graded dimensions of the cokernel, by counting standard terms."""
    data = _hilbert_data(pres, cap)
    out = {}
    for d in degrees:
        total = 0
        for c in range(pres.rank):
            for e in monomials_of_weighted_degree(data.weights, d - data.shifts[c]):
                if not any(_core.divides(l, e) for l in data.leads[c]):
                    total += 1
        out[d] = total
    return out


# -- resolutions ------------------------------------------------------------------

@dataclass(frozen=True)
class FreeResolutionData:
    """F_0 <- F_1 <- ... ; ``differentials[i]`` lists the columns of F_{i+1} -> F_i."""

    ring: PolynomialRing
    degrees: tuple          # degrees[i] = generator degrees of F_i
    differentials: tuple
    minimal_flag: bool = True

    @property
    def length(self):
        return len(self.degrees) - 1 if self.degrees and self.degrees[-1] else max(len(self.degrees) - 2, 0)

    @property
    def ranks(self):
        return [len(d) for d in self.degrees]

    def betti_numbers(self):
        """``[(homological degree, rank, sorted internal degrees), ...]``"""
        return [(i, len(d), sorted(d)) for i, d in enumerate(self.degrees)]

    def graded_betti(self):
        table = {}
        for i, ds in enumerate(self.degrees):
            for d in ds:
                table[(i, d)] = table.get((i, d), 0) + 1
        return table

    def k_polynomial(self):
        """Numerator of the Hilbert series over prod(1 - t^deg(var)), as {exponent: coeff}."""
        poly = {}
        for i, ds in enumerate(self.degrees):
            for d in ds:
                poly[d] = poly.get(d, 0) + (-1) ** i
        return {d: c for d, c in sorted(poly.items()) if c}

    def composes_to_zero(self):
        for i in range(1, len(self.differentials)):
            prev = self.differentials[i - 1]
            for col in self.differentials[i]:
                total = {}
                for c in {k for k, _ in col}:
                    part = mul_poly_vec(component(col, c), prev[c])
                    for t, v in part.items():
                        x = total.get(t, 0) + v
                        if x:
                            total[t] = x
                        else:
                            total.pop(t, None)
                if total:
                    return False
        return True

    def has_unit_entries(self):
        zero = (0,) * self.ring.ngens
        return any(e == zero for d in self.differentials for col in d for _, e in col)

    def matrices(self):
        """Differentials as lists of polynomial columns."""
        out = []
        for i, cols in enumerate(self.differentials):
            rank = len(self.degrees[i])
            out.append([[Polynomial(self.ring, component(col, c)) for c in range(rank)]
                        for col in cols])
        return out


def free_resolution(pres: ModulePresentation, cap=None) -> FreeResolutionData:
    """Minimal graded free resolution by iterated minimal syzygies."""
    cap = cap or _core.DEFAULT_CAPS
    _check_arity(pres.ring, cap)
    w = var_degrees(pres.ring)
    p = prune(pres, cap)
    degrees = [p.degrees]
    diffs = []
    cols = list(p.relations)
    shifts = p.degrees
    while cols:
        if len(diffs) > pres.ring.ngens:
            raise CapExceeded("resolution longer than the number of variables")
        col_degs = tuple(vector_degree(c, w, shifts) for c in cols)
        diffs.append(tuple(cols))
        degrees.append(col_degs)
        cols, _ = syzygies(pres.ring, shifts, cols, col_degs, cap)
        shifts = col_degs
    if not p.degrees:
        degrees = [()]
    return FreeResolutionData(pres.ring, tuple(degrees), tuple(diffs), True)


def projective_dimension(res: FreeResolutionData):
    if not res.degrees[0]:
        return -1
    return len(res.degrees) - 1


def _order_at_one(poly):
    """Multiplicity of t = 1 as a root of a Laurent polynomial ``{exp: coeff}``."""
    if not poly:
        return None
    lo = min(poly)
    coeffs = [0] * (max(poly) - lo + 1)
    for d, c in poly.items():
        coeffs[d - lo] = c
    order = 0
    while sum(coeffs) == 0:
        # synthetic division by (t - 1), coefficients from the top
        out = []
        acc = 0
        for c in reversed(coeffs):
            acc += c
            out.append(acc)
        out.pop()
        coeffs = list(reversed(out))
        order += 1
    return order


def krull_dimension(pres_or_res, cap=None):
    """Pole order at t=1 of the Hilbert series; -1 for the zero module."""
    res = pres_or_res if isinstance(pres_or_res, FreeResolutionData) else free_resolution(pres_or_res, cap)
    k = res.k_polynomial()
    if not k:
        return -1
    return res.ring.ngens - _order_at_one(k)


class DepthReport(NamedTuple):
    depth: int
    cm: bool
    projective_dimension: int
    dimension: int


def depth_and_cm(pres: ModulePresentation, module_dimension: int | None = None, cap=None) -> DepthReport:
    """Graded Auslander-Buchsbaum: depth = number of variables - projective dimension."""
    res = free_resolution(pres, cap)
    pd = projective_dimension(res)
    depth = pres.ring.ngens - pd
    dim = krull_dimension(res) if module_dimension is None else module_dimension
    return DepthReport(depth, depth == dim, pd, dim)


# -- Hom ------------------------------------------------------------------------

def hom_module(m: ModulePresentation, n: ModulePresentation, cap=None) -> ModulePresentation:
    """Presentation of Hom(m, n) as the kernel of Hom(F0, n) -> Hom(F1, n)."""
    if m.ring != n.ring:
        raise RingMismatch(f"{m.ring} is not {n.ring}")
    ring = m.ring
    cap = cap or _core.DEFAULT_CAPS
    w = var_degrees(ring)
    zero = (0,) * ring.ngens
    g0, gN = m.rank, n.rank
    phi = list(m.relations)
    psi = list(n.relations)
    b = m.relation_degrees()
    dpsi = n.relation_degrees()
    hom0 = tuple(n.degrees[k] - m.degrees[i] for i in range(g0) for k in range(gN))
    if not hom0:
        return ModulePresentation(ring, (), ())

    if phi:
        hom1 = tuple(n.degrees[k] - b[j] for j in range(len(phi)) for k in range(gN))
        columns, col_degs = [], []
        for i in range(g0):
            for k in range(gN):
                vec = {}
                for j, col in enumerate(phi):
                    for e, v in component(col, i).items():
                        vec[(j * gN + k, e)] = vec.get((j * gN + k, e), 0) + v
                columns.append({t: v for t, v in vec.items() if v})
                col_degs.append(n.degrees[k] - m.degrees[i])
        for j in range(len(phi)):
            for l, col in enumerate(psi):
                columns.append({(j * gN + k, e): v for (k, e), v in col.items()})
                col_degs.append(dpsi[l] - b[j])
        syz, _ = syzygies(ring, hom1, columns, col_degs, cap)
        K = []
        for s in syz:
            a = {(c, e): v for (c, e), v in s.items() if c < g0 * gN}
            if a:
                K.append(a)
        K, _ = minimal_generators(ring, hom0, K, cap)
    else:
        K = [{(c, zero): Fraction(1)} for c in range(g0 * gN)]

    k_degs = [vector_degree(v, w, hom0) for v in K]
    columns = list(K)
    col_degs = list(k_degs)
    for i in range(g0):
        for l, col in enumerate(psi):
            columns.append({(i * gN + k, e): v for (k, e), v in col.items()})
            col_degs.append(dpsi[l] - m.degrees[i])
    syz, _ = syzygies(ring, hom0, columns, col_degs, cap)
    rels = []
    for s in syz:
        a = {(c, e): v for (c, e), v in s.items() if c < len(K)}
        if a:
            rels.append(a)
    hom = ModulePresentation(ring, tuple(k_degs), tuple(rels))
    pruned = prune(hom, cap)
    return ModulePresentation(ring, pruned.degrees, pruned.relations,
                              {"hom_generators": [dict(v) for v in K]})


def graded_dimensions(pres: ModulePresentation, max_degree: int, min_degree: int | None = None, cap=None):
    """Hilbert function of the module on [min_degree, max_degree] (default from the lowest generator)."""
    if min_degree is None:
        min_degree = min(pres.degrees, default=0)
    return hilbert_function(pres, range(min_degree, max_degree + 1), cap)
