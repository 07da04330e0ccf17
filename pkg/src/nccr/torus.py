"""Invariants and covariants of a one-dimensional torus acting linearly on affine space.

The torus acts on ``S = k[x_1..x_n]`` with integer weights ``a``.  ``R = S_0``
is the invariant ring and ``S_a`` the module of covariants of weight ``a``.
Monomials are exponent tuples; ``R`` is presented as ``k[Y]/J`` with one
``Y`` per Hilbert-basis monomial, and every ``S_a`` as a graded ``k[Y]``-module
(``deg Y_k`` = total degree of its monomial, so internal degrees agree with
total degree in ``S``).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from .errors import (CapExceeded, GcdNotOne, NotCohenMacaulay, SumNotZero,
                     TooFewNegative, TooFewPositive, TruncationInsufficient,
                     TruncationTooLarge)
from .groebner import _core
from .groebner.ideals import IdealBasis
from .groebner.modules import (ModulePresentation, component, cyclic_module,
                               depth_and_cm, free_resolution, hilbert_function,
                               hom_module, krull_dimension, minimal_generators,
                               vector_degree)
from .poly import LEX, Polynomial, PolynomialRing

DEFAULT_TRUNCATION = 8


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple
    n_plus: int
    n_minus: int
    n_cap: int
    positive_vars: tuple
    negative_vars: tuple
    zero_vars: tuple
    sum_zero: bool

    @property
    def arity(self):
        return len(self.weights)

    @property
    def max_positive(self):
        return max(self.weights)

    @property
    def max_negative(self):
        return -min(self.weights)

    @cached_property
    def names(self):
        """x1.. for positive weights, y1.. for negative, z1.. for zero, in index order."""
        counters = {"x": 0, "y": 0, "z": 0}
        out = []
        for w in self.weights:
            p = "x" if w > 0 else "y" if w < 0 else "z"
            counters[p] += 1
            out.append(f"{p}{counters[p]}")
        return tuple(out)

    @cached_property
    def ring(self):
        return PolynomialRing(self.names, self.weights)

    def weight(self, exps):
        return sum(a * e for a, e in zip(self.weights, exps))

    def monomial_str(self, exps):
        parts = []
        for name, e in zip(self.names, exps):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"


def validate_weights(a) -> WeightSystem:
    a = tuple(int(x) for x in a)
    pos = tuple(i for i, x in enumerate(a) if x > 0)
    neg = tuple(i for i, x in enumerate(a) if x < 0)
    if len(pos) < 2:
        raise TooFewPositive(f"need at least two strictly positive weights, got {len(pos)} in {a}")
    if len(neg) < 2:
        raise TooFewNegative(f"need at least two strictly negative weights, got {len(neg)} in {a}")
    g = math.gcd(*a)
    if g != 1:
        raise GcdNotOne(f"weights {a} have common divisor {g}")
    n_plus = sum(a[i] for i in pos)
    n_minus = -sum(a[i] for i in neg)
    return WeightSystem(a, n_plus, n_minus, min(n_plus, n_minus), pos, neg,
                        tuple(i for i, x in enumerate(a) if x == 0), sum(a) == 0)


@lru_cache(maxsize=None)
def _count(weights, a, d):
    """Monomials of total degree d and weight a in variables with these weights."""
    if not weights:
        return 1 if a == 0 and d == 0 else 0
    if d == 0:
        return 1 if a == 0 else 0
    w, rest = weights[0], weights[1:]
    if rest:
        lo, hi = min(rest), max(rest)
    total = 0
    for k in range(d + 1):
        r, b = d - k, a - w * k
        if rest and not lo * r <= b <= hi * r:
            continue
        total += _count(rest, b, r)
    return total


def weight_space_dim(ws: WeightSystem, a: int, d: int) -> int:
    if d < 0:
        return 0
    return _count(ws.weights, a, d)


@dataclass(frozen=True)
class HilbertSeriesTruncation:
    coefficients: tuple
    truncation: int


def hilbert_series(ws: WeightSystem, a: int, D: int, cap=None) -> HilbertSeriesTruncation:
    cap = cap or _core.DEFAULT_CAPS
    if D > cap["degree"]:
        raise TruncationTooLarge(f"truncation {D} exceeds cap {cap['degree']}")
    return HilbertSeriesTruncation(tuple(weight_space_dim(ws, a, d) for d in range(D + 1)), D)


# -- minimal monomials ------------------------------------------------------

def degree_bound(ws: WeightSystem, a: int = 0) -> int:
    """Total degree bound for minimal weight-a monomials.

    Any weight-a monomial can be written as a sequence of variables whose
    partial weight sums stay in a window of width max_positive + max_negative
    + |a|; a longer sequence repeats a partial sum, exposing a nonconstant
    invariant factor whose removal leaves a weight-a monomial.
    """
    return ws.max_positive + ws.max_negative + abs(a)


def _monomials(ws, a, d):
    """Exponent vectors of total degree d and weight a over the nonzero-weight variables."""
    idx = [i for i, w in enumerate(ws.weights) if w != 0]
    w = [ws.weights[i] for i in idx]
    n = ws.arity
    out = []
    acc = [0] * len(idx)

    def rec(j, rem_d, rem_a):
        if j == len(idx) - 1:
            if rem_a == w[j] * rem_d:
                acc[j] = rem_d
                e = [0] * n
                for i, x in zip(idx, acc):
                    e[i] = x
                out.append(tuple(e))
            return
        rest = w[j + 1:]
        lo, hi = min(rest), max(rest)
        for k in range(rem_d, -1, -1):
            r, b = rem_d - k, rem_a - w[j] * k
            if lo * r <= b <= hi * r:
                acc[j] = k
                rec(j + 1, r, b)
        acc[j] = 0

    rec(0, d, a)
    return out


def minimal_monomials(ws: WeightSystem, a: int, bound: int | None = None):
    """Weight-a monomials minimal under divisibility (excluding 1).

    For a = 0 this is the Hilbert basis of the invariant monoid; otherwise the
    minimal generators of S_a as an R-module.
    """
    bound = degree_bound(ws, a) if bound is None else bound
    found = []
    if a == 0:
        for i in ws.zero_vars:
            e = [0] * ws.arity
            e[i] = 1
            found.append(tuple(e))
    start = 1 if a == 0 else 0
    for d in range(start, bound + 1):
        for e in _monomials(ws, a, d):
            if not any(_core.divides(f, e) for f in found):
                found.append(e)
    return sorted(found, key=_monomial_sort_key)


def _monomial_sort_key(e):
    return (sum(e), tuple(-x for x in e))


def invariant_hilbert_basis(ws: WeightSystem, cap=None):
    cap = cap or _core.DEFAULT_CAPS
    hb = minimal_monomials(ws, 0)
    if len(hb) > cap["arity"]:
        raise CapExceeded(f"Hilbert basis has {len(hb)} elements, over the arity cap {cap['arity']}")
    return hb


def covariant_generators(ws: WeightSystem, a: int):
    if a == 0:
        return [(0,) * ws.arity]
    return minimal_monomials(ws, a)


def monoid_closure_check(ws: WeightSystem, hb, a: int = 0, gens=None, bound: int | None = None):
    """Every weight-a monomial of degree <= bound is a generator times a product of ``hb``."""
    gens = [(0,) * ws.arity] if gens is None else gens
    bound = 2 * degree_bound(ws, a) if bound is None else bound
    reachable = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for e in frontier:
            for h in hb:
                f = _core.mono_add(e, h)
                if sum(f) <= bound and f not in reachable:
                    reachable.add(f)
                    nxt.append(f)
        frontier = nxt
    return all(e in reachable for d in range(bound + 1) for e in _monomials(ws, a, d)
               if not any(e[i] for i in ws.zero_vars))


# -- presentations over k[Y] --------------------------------------------------

def y_ring(ws: WeightSystem, hb) -> PolynomialRing:
    """Y_ij when every generator is x_i*y_j, else Y1..Ym; deg Y = total degree."""
    pos = {v: k + 1 for k, v in enumerate(ws.positive_vars)}
    neg = {v: k + 1 for k, v in enumerate(ws.negative_vars)}
    names = []
    for h in hb:
        support = [i for i, x in enumerate(h) if x]
        if (sum(h) == 2 and len(support) == 2 and support[0] in pos and support[1] in neg
                and len(pos) < 10 and len(neg) < 10):
            names.append(f"Y{pos[support[0]]}{neg[support[1]]}")
        else:
            names = None
            break
    if names is None or len(set(names)) != len(names):
        names = [f"Y{k + 1}" for k in range(len(hb))]
    return PolynomialRing(names, [sum(h) for h in hb])


def monomial_kernel(ws: WeightSystem, hb, gens, cap=None):
    """Minimal generators of the kernel of k[Y]^s -> S, e_i -> x^gens[i], Y_k -> x^hb[k].

    Elimination in k[x, Y] over the components (e0, e_1..e_s) of the vectors
    ``x^g_i e0 - e_i`` and ``(Y_k - x^h_k) e0``; basis elements off e0 and free
    of x generate the kernel.
    """
    cap = cap or _core.DEFAULT_CAPS
    n, m = ws.arity, len(hb)
    ydeg = tuple(sum(h) for h in hb)
    shifts = (0,) + tuple(sum(g) for g in gens)

    def key(t):
        c, e = t
        ex, ey = e[:n], e[n:]
        dx = sum(ex)
        dy = sum(d * k for d, k in zip(ydeg, ey))
        return (c == 0, dx + dy + shifts[c], dx, _core.revlex(ex), _core.revlex(ey), -c)

    key = _core.memo_key(key)

    def degree(t):
        c, e = t
        return sum(e[:n]) + sum(d * k for d, k in zip(ydeg, e[n:])) + shifts[c]

    zy = (0,) * m
    vecs = []
    for i, g in enumerate(gens):
        vecs.append({(0, tuple(g) + zy): Fraction(1), (i + 1, (0,) * (n + m)): Fraction(-1)})
    for k, h in enumerate(hb):
        unit = tuple(1 if j == k else 0 for j in range(m))
        vecs.append({(0, (0,) * n + unit): Fraction(1), (0, tuple(h) + zy): Fraction(-1)})
    basis, _ = _core.buchberger(vecs, key, degree, cap=cap)
    kernel = []
    for vec, (c, e) in zip(basis.elems, basis.leads):
        if c >= 1 and not any(e[:n]):
            kernel.append(_positive_lead({(k - 1, f[n:]): v for (k, f), v in vec.items()}))
    yr = y_ring(ws, hb)
    minimal, _ = minimal_generators(yr, shifts[1:], kernel, cap)
    top = _core.top_key(ydeg, shifts[1:])
    minimal.sort(key=lambda v: (vector_degree(v, ydeg, shifts[1:]), sorted((top(t) for t in v), reverse=True)))
    return yr, minimal


def _positive_lead(vec):
    # sign convention: the lex-largest term of the first component is positive
    c = min(k for k, _ in vec)
    t = max((t for t in vec if t[0] == c), key=lambda t: t[1])
    return vec if vec[t] > 0 else {u: -v for u, v in vec.items()}


def _normalize_binomial(p: Polynomial) -> Polynomial:
    lt = max(p.terms, key=LEX.key)
    return p / p.terms[lt]


def toric_presentation(ws: WeightSystem, cap=None):
    """(k[Y], J) with k[Y]/J the invariant ring."""
    hb = invariant_hilbert_basis(ws, cap)
    yr, kernel = monomial_kernel(ws, hb, [(0,) * ws.arity], cap)
    gens = [_normalize_binomial(Polynomial(yr, component(v, 0))) for v in kernel]
    return yr, IdealBasis(yr, tuple(gens), info={"hilbert_basis": hb})


@dataclass(frozen=True)
class CovariantModule:
    weight: int
    generators: tuple
    presentation: ModulePresentation
    hilbert_basis: tuple
    info: dict = field(default_factory=dict, compare=False)

    def graded_dims(self, D=DEFAULT_TRUNCATION, cap=None):
        return hilbert_function(self.presentation, range(D + 1), cap)

    def hilbert(self, D=DEFAULT_TRUNCATION, cap=None) -> HilbertSeriesTruncation:
        dims = self.graded_dims(D, cap)
        return HilbertSeriesTruncation(tuple(dims[d] for d in range(D + 1)), D)


def _presentation_from_monomials(ws, hb, gens, cap=None):
    yr, kernel = monomial_kernel(ws, hb, gens, cap)
    return ModulePresentation(yr, tuple(sum(g) for g in gens), tuple(kernel))


def covariant_presentation(ws: WeightSystem, a: int, cap=None) -> CovariantModule:
    hb = invariant_hilbert_basis(ws, cap)
    gens = covariant_generators(ws, a)
    pres = _presentation_from_monomials(ws, hb, gens, cap)
    return CovariantModule(a, tuple(gens), pres, tuple(hb),
                           {"degree_bound": degree_bound(ws, a)})


def cm_check_covariant(ws: WeightSystem, a: int, cap=None, *, with_report=False):
    """S_a is Cohen-Macaulay iff its depth over k[Y] equals dim R = n - 1."""
    mod = covariant_presentation(ws, a, cap)
    report = depth_and_cm(mod.presentation, ws.arity - 1, cap)
    return (report.cm, report) if with_report else report.cm


# -- Gorenstein property ----------------------------------------------------------

def _poly_divide_one_minus(coeffs, d):
    """Divide sum coeffs[i] t^i by (1 - t^d); None if it does not divide."""
    c = list(coeffs)
    q = [0] * max(len(c) - d, 0)
    for i in range(len(q)):
        q[i] = c[i]
        c[i] -= q[i]
        c[i + d] += q[i]
    if any(c):
        return None
    return q


@dataclass(frozen=True)
class GorensteinReport:
    gorenstein: bool
    k_polynomial: dict             # numerator over prod(1 - t^deg Y)
    numerator: tuple               # reduced numerator coefficients, from t^0
    denominator_degrees: tuple     # exponents d of the remaining factors (1 - t^d)
    codimension: int


def gorenstein_check(ws: WeightSystem, cap=None, *, truncation: int | None = None,
                     with_report=False):
    """Stanley's criterion: a graded CM domain is Gorenstein iff its Hilbert
    series numerator is palindromic."""
    if not ws.sum_zero:
        raise SumNotZero(f"weights {ws.weights} do not sum to zero")
    report = hilbert_numerator_report(ws, cap, truncation=truncation)
    return report if with_report else report.gorenstein


def _symmetric(coeffs, sign):
    lo = next(i for i, c in enumerate(coeffs) if c)
    hi = max(i for i, c in enumerate(coeffs) if c)
    core = coeffs[lo:hi + 1]
    return core == [sign * c for c in reversed(core)]


def hilbert_numerator_report(ws: WeightSystem, cap=None, *, truncation: int | None = None) -> GorensteinReport:
    """Hilbert series of R over k[Y] and the symmetry verdict, for any weight system.

    With denominator prod(1 - t^deg Y) the numerator must be symmetric up to
    the sign (-1)^codim; the reported reduced numerator cancels as many
    factors (1 - t^d) as divide it exactly, at most codim of them.
    """
    yr, J = toric_presentation(ws, cap)
    res = free_resolution(cyclic_module(yr, list(J.generators)), cap)
    dim = ws.arity - 1
    pd = len(res.degrees) - 1
    if yr.ngens - pd != dim:
        raise NotCohenMacaulay(f"invariant ring has depth {yr.ngens - pd} < dimension {dim}")
    kpoly = res.k_polynomial()
    coeffs = [kpoly.get(i, 0) for i in range(max(kpoly) + 1)]
    codim = yr.ngens - dim
    gorenstein = _symmetric(coeffs, (-1) ** codim)
    remaining = sorted(yr.weights, reverse=True)
    for _ in range(codim):
        for d in sorted(set(remaining), reverse=True):
            q = _poly_divide_one_minus(coeffs, d)
            if q is not None:
                coeffs = q
                remaining.remove(d)
                break
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if truncation is not None:
        _check_series_fit(ws, coeffs, remaining, truncation)
    return GorensteinReport(gorenstein, kpoly, tuple(coeffs), tuple(sorted(remaining)), codim)


def _check_series_fit(ws, numerator, denominators, D):
    """Expand numerator / prod(1 - t^d) to degree D and compare with lattice counts."""
    if D < len(numerator) - 1:
        raise TruncationInsufficient(f"truncation {D} is below the numerator degree {len(numerator) - 1}")
    series = list(numerator[:D + 1]) + [0] * (D + 1 - len(numerator[:D + 1]))
    for d in denominators:
        for i in range(d, D + 1):
            series[i] += series[i - d]
    expected = [weight_space_dim(ws, 0, i) for i in range(D + 1)]
    if series != expected:
        raise TruncationInsufficient(f"series {series} disagrees with lattice counts {expected}")


# -- local cohomology and Koszul bookkeeping ---------------------------------------

def local_cohomology_weight_bound(ws: WeightSystem, sign: str) -> int:
    """Top weight of H^k_{I}(S), I generated by the k variables of the given sign.

    Its monomial support has exponent <= -1 on those variables and >= 0
    elsewhere; weights are negated on the negative side so that the answer
    is a maximum in both cases.
    """
    s = {"+": 1, "-": -1}[sign]
    total = 0
    for w in ws.weights:
        b = s * w
        total += -b if b > 0 else 0
    return total


def local_cohomology_support_max(ws: WeightSystem, sign: str, box: int = 3):
    """Brute-force maximum over the box |m_i| <= box of the same support set."""
    s = {"+": 1, "-": -1}[sign]
    ranges = []
    for w in ws.weights:
        ranges.append(range(-box, 0) if s * w > 0 else range(0, box + 1))
    return max(sum(s * w * m for w, m in zip(ws.weights, ms)) for ms in itertools.product(*ranges))


def koszul_identity_check(ws: WeightSystem, a: int, D: int) -> bool:
    """Alternating sums over subsets of positive variables match the weight-a
    dimensions of S modulo the positive variables, for every degree <= D."""
    pos = ws.positive_vars
    rest = tuple(w for i, w in enumerate(ws.weights) if i not in pos)
    for d in range(D + 1):
        lhs = 0
        for r in range(len(pos) + 1):
            for T in itertools.combinations(pos, r):
                lhs += (-1) ** r * weight_space_dim(ws, a - sum(ws.weights[i] for i in T), d - r)
        rhs = _count(rest, a, d)
        if lhs != rhs:
            return False
    return True


# -- the quiver of End_R(S_0 + ... + S_{N-1}) ------------------------------------

@dataclass(frozen=True)
class QuiverAlgebraDescriptor:
    weights: WeightSystem
    vertex_count: int
    hom_blocks: dict       # (m, n) -> CovariantModule of weight n - m
    arrows: dict           # (m, n) -> list of monomials

    def graded_dims(self, m, n, d, cap=None):
        return hilbert_function(self.hom_blocks[(m, n)].presentation, [d], cap)[d]

    def arrow_count(self):
        return sum(len(v) for v in self.arrows.values())


def _is_arrow(ws, e, m, n, N):
    """x^e in rad(m, n) not factoring through any vertex."""
    for f in itertools.product(*(range(x + 1) for x in e)):
        if sum(f) == 0 or f == tuple(e):
            continue
        k = m + ws.weight(f)
        if 0 <= k < N:
            return False
    return True


def nccr_quiver(ws: WeightSystem, cap=None) -> QuiverAlgebraDescriptor:
    if not ws.sum_zero:
        raise SumNotZero(f"weights {ws.weights} do not sum to zero")
    N = ws.n_cap
    modules = {}
    blocks, arrows = {}, {}
    for m in range(N):
        for n in range(N):
            w = n - m
            if w not in modules:
                modules[w] = covariant_presentation(ws, w, cap)
            blocks[(m, n)] = modules[w]
            cands = modules[0].hilbert_basis if w == 0 else modules[w].generators
            arrows[(m, n)] = [e for e in cands if _is_arrow(ws, e, m, n, N)]
    return QuiverAlgebraDescriptor(ws, N, blocks, arrows)


def end_ring_check(ws: WeightSystem, D: int = DEFAULT_TRUNCATION, cap=None) -> bool:
    """Hom_R(S_a, S_b) has the graded dimensions of S_{b-a} for 0 <= a, b < N."""
    if not ws.sum_zero:
        raise SumNotZero(f"weights {ws.weights} do not sum to zero")
    N = ws.n_cap
    mods = {a: covariant_presentation(ws, a, cap) for a in range(N)}
    for a in range(N):
        for b in range(N):
            hom = hom_module(mods[a].presentation, mods[b].presentation, cap)
            lo = min((0,) + hom.degrees)
            dims = hilbert_function(hom, range(lo, D + 1), cap)
            if any(dims[d] != weight_space_dim(ws, b - a, d) for d in dims):
                return False
    return True


def product_generators(ws: WeightSystem, a: int, b: int):
    """Monomial generators of the image of S_a (x) S_b in S_{a+b}, minimalized."""
    prods = {_core.mono_add(g, h) for g in covariant_generators(ws, a) for h in covariant_generators(ws, b)}
    out = [e for e in prods if not any(f != e and _core.divides(f, e) for f in prods)]
    return sorted(out, key=_monomial_sort_key)


def bidual_product_check(ws: WeightSystem, a: int, b: int, D: int = DEFAULT_TRUNCATION, cap=None) -> bool:
    """(S_a S_b)** has the graded dimensions of S_{a+b} up to degree D."""
    if not ws.sum_zero:
        raise SumNotZero(f"weights {ws.weights} do not sum to zero")
    hb = invariant_hilbert_basis(ws, cap)
    image = _presentation_from_monomials(ws, hb, product_generators(ws, a, b), cap)
    R = _presentation_from_monomials(ws, hb, [(0,) * ws.arity], cap)
    dual = hom_module(image, R, cap)
    bidual = hom_module(dual, R, cap)
    lo = min((0,) + bidual.degrees)
    dims = hilbert_function(bidual, range(lo, D + 1), cap)
    return all(dims[d] == weight_space_dim(ws, a + b, d) for d in dims)


def invariant_ring_dimension(ws: WeightSystem, cap=None):
    """Krull dimension of R from the pole order of its Hilbert series."""
    yr, J = toric_presentation(ws, cap)
    return krull_dimension(cyclic_module(yr, list(J.generators)), cap)
