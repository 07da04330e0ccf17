"""Sparse vector engine shared by ideal and module standard-basis code.

A vector is a dict mapping ``(component, exponents)`` to a nonzero Fraction;
ideals are the rank-one case with component 0 everywhere.  Term orders are
plain key functions on ``(component, exponents)``: the leading term is the
one with the largest key.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache

from ..errors import CapExceeded

DEFAULT_CAPS = {"arity": 12, "basis_size": 10000, "degree": 64}


def caps(**overrides):
    out = dict(DEFAULT_CAPS)
    out.update(overrides)
    return out


def revlex(e):
    return tuple(-x for x in reversed(e))


def divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def memo_key(key):
    return lru_cache(maxsize=None)(key)


def top_key(weights, shifts=None):
    """Degree (with component shifts), then reverse lex, then lower component first."""
    def key(t):
        c, e = t
        d = sum(w * x for w, x in zip(weights, e))
        if shifts is not None:
            d += shifts[c]
        return (d, revlex(e), -c)
    return memo_key(key)


def term_degree(weights, shifts=None):
    def deg(t):
        c, e = t
        d = sum(w * x for w, x in zip(weights, e))
        return d + shifts[c] if shifts is not None else d
    return deg


def lead(vec, key):
    return max(vec, key=key)


def add_multiple(h, coeff, mono, g, trunc=None):
    """h += coeff * x^mono * g, in place; terms of total degree >= trunc are dropped."""
    for (c, e), v in g.items():
        t = (c, mono_add(e, mono))
        if trunc is not None and sum(t[1]) >= trunc:
            continue
        nv = h.get(t, 0) + coeff * v
        if nv:
            h[t] = nv
        else:
            h.pop(t, None)


def scale(vec, coeff, mono=None):
    if mono is None:
        return {t: coeff * v for t, v in vec.items()}
    return {(c, mono_add(e, mono)): coeff * v for (c, e), v in vec.items()}


def monic(vec, key):
    lt = lead(vec, key)
    lc = vec[lt]
    if lc == 1:
        return dict(vec)
    return {t: v / lc for t, v in vec.items()}


def is_homogeneous(vec, degree):
    return len({degree(t) for t in vec}) <= 1


class Basis:
    """A growing generating set with cached leading terms, indexed by component."""

    def __init__(self, key, trunc=None):
        self.key = key
        self.trunc = trunc
        self.elems = []
        self.leads = []
        self.by_comp = defaultdict(list)

    def __len__(self):
        return len(self.elems)

    def add(self, vec):
        vec = monic(vec, self.key)
        lt = lead(vec, self.key)
        self.elems.append(vec)
        self.leads.append(lt)
        self.by_comp[lt[0]].append(len(self.elems) - 1)
        return len(self.elems) - 1

    def find_reducer(self, t):
        c, e = t
        for i in self.by_comp.get(c, ()):
            le = self.leads[i][1]
            if divides(le, e):
                return i
        return None

    def reduce(self, vec, full=True):
        """Normal form of ``vec`` (full reduction, or only until the lead is irreducible)."""
        trunc = self.trunc
        if trunc is None:
            h = dict(vec)
        else:
            h = {t: v for t, v in vec.items() if sum(t[1]) < trunc}
        rem = {}
        key = self.key
        while h:
            t = max(h, key=key)
            i = self.find_reducer(t)
            if i is None:
                rem[t] = h.pop(t)
                if not full:
                    rem.update(h)
                    return rem
                continue
            coeff = -h[t]
            add_multiple(h, coeff, mono_sub(t[1], self.leads[i][1]), self.elems[i], trunc)
        return rem


def spoly(f, lf, g, lg):
    l = mono_lcm(lf[1], lg[1])
    h = scale(f, Fraction(1), mono_sub(l, lf[1]))
    add_multiple(h, Fraction(-1), mono_sub(l, lg[1]), g)
    return h


def buchberger(gens, key, degree, *, rank_one=False, detect_minimal=False,
               cap=None, on_new=None, trunc=None):
    """Buchberger completion with the normal selection strategy.

    Input generators are fed in degree order alongside the S-pairs, so for
    homogeneous input a generator is flagged minimal exactly when it does not
    reduce to zero modulo the truncated basis of everything before it.
    With ``trunc`` set, all computation happens modulo monomials of total
    degree >= trunc.  Returns ``(basis, minimal_indices)``.
    """
    cap = cap or DEFAULT_CAPS
    basis = Basis(key, trunc)
    heap = []
    seq = 0
    pending = set()
    for idx, g in enumerate(gens):
        if not g:
            continue
        d = max(degree(t) for t in g)
        heapq.heappush(heap, (d, 1, seq, idx))
        seq += 1
    minimal = []

    def add(vec):
        nonlocal seq
        j = basis.add(vec)
        if len(basis) > cap["basis_size"]:
            raise CapExceeded(f"standard basis exceeds {cap['basis_size']} elements")
        lj = basis.leads[j]
        for i in range(j):
            li = basis.leads[i]
            if li[0] != lj[0]:
                continue
            l = mono_lcm(li[1], lj[1])
            d = degree((lj[0], l))
            pending.add((i, j))
            heapq.heappush(heap, (d, 0, seq, (i, j)))
            seq += 1
        if on_new is not None:
            on_new(basis, j)

    def chain_criterion(i, j, l, c):
        for k in basis.by_comp[c]:
            if k == i or k == j:
                continue
            if divides(basis.leads[k][1], l):
                if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                    return True
        return False

    while heap:
        d, kind, _, payload = heapq.heappop(heap)
        if kind == 1:
            r = basis.reduce(gens[payload])
            if r:
                minimal.append(payload)
                add(r)
            continue
        if payload not in pending:
            continue
        i, j = payload
        li, lj = basis.leads[i], basis.leads[j]
        if rank_one and coprime(li[1], lj[1]):
            pending.discard(payload)
            continue
        l = mono_lcm(li[1], lj[1])
        if chain_criterion(i, j, l, li[0]):
            pending.discard(payload)
            continue
        pending.discard(payload)
        s = spoly(basis.elems[i], li, basis.elems[j], lj)
        r = basis.reduce(s)
        if r:
            add(r)
    return basis, (minimal if detect_minimal else None)


def interreduce(basis: Basis):
    """Reduced basis: drop redundant leading terms, tail-reduce, make monic."""
    key = basis.key
    keep = []
    order = sorted(range(len(basis)), key=lambda i: key(basis.leads[i]))
    for i in order:
        c, e = basis.leads[i]
        if any(basis.leads[k][0] == c and divides(basis.leads[k][1], e) for k in keep):
            continue
        keep = [k for k in keep
                if not (basis.leads[k][0] == c and divides(e, basis.leads[k][1]))]
        keep.append(i)
    out = Basis(key)
    kept = [basis.elems[i] for i in keep]
    for idx, vec in enumerate(kept):
        others = Basis(key)
        for jdx, w in enumerate(kept):
            if jdx != idx:
                others.add(w)
        lt = lead(vec, key)
        tail = dict(vec)
        lc = tail.pop(lt)
        red = others.reduce(tail)
        red[lt] = lc
        out.add(red)
    # stable order: ascending leading term
    idx = sorted(range(len(out)), key=lambda i: key(out.leads[i]))
    final = Basis(key)
    for i in idx:
        final.add(out.elems[i])
    return final


# -- local (Mora) -----------------------------------------------------------

def ecart(vec, lt, degree):
    return max(degree(t) for t in vec) - degree(lt)


def mora_reduce(vec, basis_elems, key, degree):
    """Mora's weak normal form with ecart-minimising reducer selection."""
    T = [(g, lead(g, key)) for g in basis_elems]
    T = [(g, lt, ecart(g, lt, degree)) for g, lt in T]
    h = dict(vec)
    while h:
        lt = max(h, key=key)
        cands = [(ec, n, g, lg) for n, (g, lg, ec) in enumerate(T)
                 if lg[0] == lt[0] and divides(lg[1], lt[1])]
        if not cands:
            return h
        ec, _, g, lg = min(cands, key=lambda x: (x[0], x[1]))
        eh = ecart(h, lt, degree)
        if ec > eh:
            T.append((dict(h), lt, eh))
        coeff = -h[lt] / g[lg]
        add_multiple(h, coeff, mono_sub(lt[1], lg[1]), g)
    return h


def mora_standard_basis(gens, key, degree, cap=None):
    """Standard basis for a local order (1 larger than every variable)."""
    cap = cap or DEFAULT_CAPS
    G = []
    leads = []
    pairs = []
    for g in gens:
        if g:
            g = monic(g, key)
            G.append(g)
            leads.append(lead(g, key))
    for j in range(len(G)):
        for i in range(j):
            if leads[i][0] == leads[j][0]:
                pairs.append((i, j))
    while pairs:
        pairs.sort(key=lambda p: degree((leads[p[0]][0], mono_lcm(leads[p[0]][1], leads[p[1]][1]))))
        i, j = pairs.pop(0)
        s = spoly(G[i], leads[i], G[j], leads[j])
        r = mora_reduce(s, G, key, degree)
        if r:
            r = monic(r, key)
            G.append(r)
            leads.append(lead(r, key))
            if len(G) > cap["basis_size"]:
                raise CapExceeded(f"standard basis exceeds {cap['basis_size']} elements")
            n = len(G) - 1
            for k in range(n):
                if leads[k][0] == leads[n][0]:
                    pairs.append((k, n))
    return G, leads
