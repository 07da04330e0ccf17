"""Picard lattices of del Pezzo surfaces, line-bundle cohomology and
numerical exceptional collections.

Surfaces are P2 blown up in p <= 8 general points (basis H, E1..Ep) or the
quadric P1xP1 (basis f1, f2).  Everything is numerical: divisor classes are
integer vectors and sheaves are represented by (rank, c1, ch2).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import NamedTuple, Sequence

from .errors import (LatticeMismatch, NonIntegralResult, NotAmple,
                     NotNumericallyExceptional, TooManyPoints, ZeroRank)


@dataclass(frozen=True)
class DivisorClass:
    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def _other(self, other):
        if len(other.coefficients) != len(self.coefficients):
            raise LatticeMismatch(f"classes of rank {len(self)} and {len(other)}")
        return other.coefficients

    def __add__(self, other):
        return DivisorClass(tuple(a + b for a, b in zip(self.coefficients, self._other(other))))

    def __sub__(self, other):
        return DivisorClass(tuple(a - b for a, b in zip(self.coefficients, self._other(other))))

    def __neg__(self):
        return DivisorClass(tuple(-a for a in self.coefficients))

    def __mul__(self, k: int):
        return DivisorClass(tuple(k * a for a in self.coefficients))

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.coefficients)


@dataclass(frozen=True)
class SurfaceLattice:
    kind: str                 # "blowup" or "quadric"
    points: int               # blown-up points; 0 for the quadric
    intersection_form: tuple
    canonical: DivisorClass
    basis_names: tuple

    @property
    def picard_rank(self):
        return len(self.basis_names)

    @property
    def name(self):
        if self.kind == "quadric":
            return "P1xP1"
        return "P2" if self.points == 0 else f"dP{self.points}"

    def dot(self, a: DivisorClass, b: DivisorClass) -> int:
        for c in (a, b):
            if len(c) != self.picard_rank:
                raise LatticeMismatch(f"class {tuple(c)} does not live on {self.name}")
        x, y = a.coefficients, b.coefficients
        if self.kind == "quadric":
            return x[0] * y[1] + x[1] * y[0]
        return x[0] * y[0] - sum(u * v for u, v in zip(x[1:], y[1:]))

    def square(self, a):
        return self.dot(a, a)

    def divisor(self, *coeffs) -> DivisorClass:
        if len(coeffs) == 1 and not isinstance(coeffs[0], int):
            coeffs = tuple(coeffs[0])
        if len(coeffs) != self.picard_rank:
            raise LatticeMismatch(f"{self.name} classes have {self.picard_rank} coordinates, got {len(coeffs)}")
        return DivisorClass(coeffs)

    def zero(self):
        return DivisorClass((0,) * self.picard_rank)

    def basis(self, name: str) -> DivisorClass:
        i = self.basis_names.index(name)
        return DivisorClass(tuple(int(j == i) for j in range(self.picard_rank)))

    @property
    def H(self):
        return self.basis("H")

    def E(self, i):
        return self.basis(f"E{i}")

    def format(self, d: DivisorClass) -> str:
        parts = []
        for c, name in zip(d.coefficients, self.basis_names):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}{name}")
        if not parts:
            return "0"
        s = "".join(parts)
        return s[1:] if s[0] == "+" else s

    @cached_property
    def minus_one_classes(self):
        return tuple(minus_one_classes(self))

    @cached_property
    def mori_generators(self):
        """Classes generating the closed cone of curves."""
        if self.kind == "quadric":
            return (self.basis("f1"), self.basis("f2"))
        if self.points == 0:
            return (self.H,)
        if self.points == 1:
            return (self.E(1), self.H - self.E(1))
        return self.minus_one_classes


def make_surface(kind) -> SurfaceLattice:
    """``"P2"``, ``"dP0"``..``"dP8"``, ``"P1xP1"`` or an integer number of points."""
    if isinstance(kind, str):
        s = kind.strip()
        if s.upper() in ("P1XP1", "P1×P1", "QUADRIC"):
            q = ((0, 1), (1, 0))
            return SurfaceLattice("quadric", 0, q, DivisorClass((-2, -2)), ("f1", "f2"))
        if s.upper() == "P2":
            p = 0
        else:
            m = re.fullmatch(r"dP\s*(-?\d+)", s, re.IGNORECASE)
            if not m:
                raise ValueError(f"unknown surface {kind!r}; expected P2, dP0..dP8 or P1xP1")
            p = int(m.group(1))
    else:
        p = int(kind)
    if p > 8:
        raise TooManyPoints(f"at most 8 blown-up points keep -K ample, got {p}")
    if p < 0:
        raise ValueError(f"number of points must be non-negative, got {p}")
    r = p + 1
    q = tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(r)) for i in range(r))
    K = DivisorClass((-3,) + (1,) * p)
    return SurfaceLattice("blowup", p, q, K, ("H",) + tuple(f"E{i}" for i in range(1, p + 1)))


def _vectors_with(n, total, sq):
    """Integer vectors of length n with sum ``total`` and sum of squares ``sq``, non-increasing."""
    out = []

    def rec(prefix, k, rem_sum, rem_sq, cap):
        if k == 0:
            if rem_sum == 0 and rem_sq == 0:
                out.append(tuple(prefix))
            return
        # Cauchy-Schwarz on the remaining k entries
        if rem_sum * rem_sum > k * rem_sq:
            return
        x = cap
        while x * x > rem_sq:
            x -= 1
        while x * x <= rem_sq:
            if x * k < rem_sum:
                break
            prefix.append(x)
            rec(prefix, k - 1, rem_sum - x, rem_sq - x * x, x)
            prefix.pop()
            x -= 1

    rec([], n, total, sq, int(sq ** 0.5) + 1)
    return out


def minus_one_classes(s: SurfaceLattice):
    """All classes with C^2 = -1 and C.K = -1."""
    if s.kind == "quadric":
        # (a,b): 2ab = -1 has no integer solution
        return []
    p = s.points
    if p == 0:
        return []
    out = set()
    # dH - sum m_i E_i: sum m = 3d - 1, sum m^2 = d^2 + 1; Cauchy-Schwarz keeps -1 <= d <= 7
    for d in range(-1, 8):
        for v in _vectors_with(p, 3 * d - 1, d * d + 1):
            for perm in set(itertools.permutations(v)):
                out.add(DivisorClass((d,) + tuple(-m for m in perm)))
    return sorted(out, key=lambda c: (c.coefficients[0], tuple(-x for x in c.coefficients[1:])))


# -- sheaves up to numerical equivalence ------------------------------------------------

@dataclass(frozen=True)
class NumericalClass:
    rank: int
    c1: DivisorClass
    ch2: Fraction

    def __post_init__(self):
        ch2 = Fraction(self.ch2)
        if ch2.denominator not in (1, 2):
            raise NonIntegralResult(f"ch2 = {ch2} must have denominator dividing 2")
        object.__setattr__(self, "ch2", ch2)
        object.__setattr__(self, "rank", int(self.rank))

    def __add__(self, other):
        return NumericalClass(self.rank + other.rank, self.c1 + other.c1, self.ch2 + other.ch2)

    def __sub__(self, other):
        return NumericalClass(self.rank - other.rank, self.c1 - other.c1, self.ch2 - other.ch2)

    def __mul__(self, k: int):
        return NumericalClass(k * self.rank, k * self.c1, k * self.ch2)

    __rmul__ = __mul__


def line_bundle(s: SurfaceLattice, d: DivisorClass) -> NumericalClass:
    return NumericalClass(1, d, Fraction(s.square(d), 2))


def euler_form(s: SurfaceLattice, e: NumericalClass, f: NumericalClass) -> int:
    K = s.canonical
    val = (e.rank * f.rank + e.rank * f.ch2 + f.rank * e.ch2 - s.dot(e.c1, f.c1)
           - Fraction(s.dot(K, e.rank * f.c1 - f.rank * e.c1), 2))
    if val.denominator != 1:
        raise NonIntegralResult(f"Euler form {val} is not an integer; malformed ch2")
    return int(val)


def slope(s: SurfaceLattice, e: NumericalClass) -> Fraction:
    if e.rank == 0:
        raise ZeroRank("slope needs nonzero rank")
    return Fraction(-s.dot(e.c1, s.canonical), e.rank)


def mutate(s: SurfaceLattice, e: NumericalClass, f: NumericalClass, direction: str) -> NumericalClass:
    """Left: chi(E,F)[E] - [F].  Right: chi(E,F)[F] - [E]."""
    x = euler_form(s, e, f)
    if direction == "left":
        return x * e - f
    if direction == "right":
        return x * f - e
    raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")


def helix_twist(s: SurfaceLattice, e: NumericalClass, j: int) -> NumericalClass:
    """E tensor O(-jK)."""
    t = (-j) * s.canonical
    return NumericalClass(e.rank, e.c1 + e.rank * t,
                          e.ch2 + s.dot(e.c1, t) + Fraction(e.rank * s.square(t), 2))


# -- line bundle cohomology ---------------------------------------------------

class CohomologyTriple(NamedTuple):
    h0: int
    h1: int
    h2: int


def riemann_roch(s: SurfaceLattice, d: DivisorClass) -> int:
    val = Fraction(s.square(d) - s.dot(d, s.canonical), 2) + 1
    if val.denominator != 1:
        raise NonIntegralResult(f"chi({tuple(d)}) = {val}")
    return int(val)


def is_nef(s: SurfaceLattice, d: DivisorClass) -> bool:
    return all(s.dot(d, c) >= 0 for c in s.mori_generators)


def is_ample(s: SurfaceLattice, d: DivisorClass) -> bool:
    return s.square(d) > 0 and all(s.dot(d, c) > 0 for c in s.mori_generators)


@lru_cache(maxsize=1 << 16)
def h0(s: SurfaceLattice, d: DivisorClass) -> int:
    """Global sections by peeling fixed (-1)-curves, then Riemann-Roch on nef classes."""
    minus_k = -s.canonical
    while True:
        if s.dot(d, minus_k) < 0:
            return 0
        for c in s.minus_one_classes:
            if s.dot(d, c) < 0:
                d = d - c
                break
        else:
            break
    return riemann_roch(s, d) if is_nef(s, d) else 0


def line_bundle_cohomology(s: SurfaceLattice, d: DivisorClass) -> CohomologyTriple:
    a = h0(s, d)
    c = h0(s, s.canonical - d)
    return CohomologyTriple(a, a + c - riemann_roch(s, d), c)


# -- collections and cone conditions ---------------------------------------------------

class StrongCheck(NamedTuple):
    ok: bool
    witness: tuple | None   # (direction, i, j, cohomological degree, dimension)


def strong_collection_check(s: SurfaceLattice, collection: Sequence[DivisorClass]) -> StrongCheck:
    """Forward: no higher Ext^k(O(D_i), O(D_j)), i <= j.  Backward: no Ext at all for i < j."""
    n = len(collection)
    for i in range(n):
        for j in range(i, n):
            t = line_bundle_cohomology(s, collection[j] - collection[i])
            for k in (1, 2):
                if t[k]:
                    return StrongCheck(False, ("forward", i, j, k, t[k]))
            if i < j:
                t = line_bundle_cohomology(s, collection[i] - collection[j])
                for k in (0, 1, 2):
                    if t[k]:
                        return StrongCheck(False, ("backward", i, j, k, t[k]))
    return StrongCheck(True, None)


def naive_collection(s: SurfaceLattice):
    """O, O(E1..Ep), O(H), O(2H) on blow-ups; O, O(f1), O(f2), O(f1+f2) on the quadric."""
    if s.kind == "quadric":
        f1, f2 = s.basis("f1"), s.basis("f2")
        return [s.zero(), f1, f2, f1 + f2]
    return [s.zero()] + [s.E(i) for i in range(1, s.points + 1)] + [s.H, 2 * s.H]


def _require_ample(s, L):
    if not is_ample(s, L):
        raise NotAmple(f"{s.format(L)} is not ample on {s.name}")


def _smallest_ample_shift(s, base, L):
    """Smallest j >= 0 with base + jL ample."""
    j = 0
    while not is_ample(s, base + j * L):
        j += 1
    return j


def differences(collection):
    return [(a, b, collection[b] - collection[a])
            for a in range(len(collection)) for b in range(len(collection))]


class ConeCheck(NamedTuple):
    ok: bool
    witnesses: list     # (a, b, j, i, dimension)
    bound: int          # sweep limit |j|


def tilting_cone_bound(s, L, collection):
    """Beyond this j every D + jL has D - K + jL ample, so higher cohomology vanishes."""
    return max(_smallest_ample_shift(s, D - s.canonical, L) for _, _, D in differences(collection))


def tilting_cone_check(s: SurfaceLattice, L: DivisorClass, collection, *, extra: int = 0) -> ConeCheck:
    """H^i(O(D_b - D_a + jL)) = 0 for i > 0 and j >= 0."""
    _require_ample(s, L)
    bound = tilting_cone_bound(s, L, collection)
    witnesses = []
    for j in range(bound + extra + 1):
        for a, b, D in differences(collection):
            t = line_bundle_cohomology(s, D + j * L)
            for i in (1, 2):
                if t[i]:
                    witnesses.append((a, b, j, i, t[i]))
    return ConeCheck(not witnesses, witnesses, bound)


def crepancy_cone_bound(s, L, collection):
    """Below -bound, Serre duality and Kawamata-Viehweg kill H^0 and H^1."""
    return max(max(_smallest_ample_shift(s, -D, L), 1) for _, _, D in differences(collection))


def crepancy_cone_check(s: SurfaceLattice, L: DivisorClass, collection, *, extra: int = 0) -> ConeCheck:
    """H^i(O(D_b - D_a + jL)) = 0 for i in {0, 1} and j <= -1."""
    _require_ample(s, L)
    if (s.canonical + L).is_zero():
        return ConeCheck(True, [], 0)
    bound = crepancy_cone_bound(s, L, collection)
    witnesses = []
    for j in range(-1, -bound - extra - 1, -1):
        for a, b, D in differences(collection):
            t = line_bundle_cohomology(s, D + j * L)
            for i in (0, 1):
                if t[i]:
                    witnesses.append((a, b, j, i, t[i]))
    return ConeCheck(not witnesses, witnesses, bound)


def cone_local_cohomology(s: SurfaceLattice, L: DivisorClass, i: int, u_range) -> dict:
    """Graded dimensions of H^{i+1}_m(R)_u for the section ring R of L.

    For i >= 1 this is h^i(uL).  For i = 0 it is the cokernel of R_u -> H^0(uL),
    which is zero for u >= 0 and h^0(uL) below.
    """
    _require_ample(s, L)
    out = {}
    for u in u_range:
        t = line_bundle_cohomology(s, u * L)
        if i == 0:
            out[u] = t.h0 if u < 0 else 0
        elif i in (1, 2):
            out[u] = t[i]
        else:
            out[u] = 0
    return out


def gorenstein_index(s: SurfaceLattice, L: DivisorClass):
    """m with K = -mL, or None."""
    m = None
    for k, l in zip(s.canonical.coefficients, L.coefficients):
        if l == 0:
            if k != 0:
                return None
            continue
        if k % l:
            return None
        if m is None:
            m = -k // l
        elif m != -k // l:
            return None
    return m


@dataclass(frozen=True)
class ConeReport:
    cm: bool
    rational: bool
    gorenstein_index: int | None
    blowup_crepant: bool
    terminal: bool
    witnesses: list = field(default_factory=list)   # (i, j) with H^i(jL) != 0 spoiling the verdicts
    bound: int = 0


def cone_properties(s: SurfaceLattice, L: DivisorClass) -> ConeReport:
    _require_ample(s, L)
    # h^1(jL) = h^2(jL) = 0 once jL - K is ample; Serre duality covers j < 0
    bound = max(_smallest_ample_shift(s, -s.canonical, L), _smallest_ample_shift(s, s.canonical, L)) + 1
    witnesses = []
    for j in range(-bound, bound + 1):
        t = line_bundle_cohomology(s, j * L)
        if t.h1:
            witnesses.append((1, j))
        if j >= 0 and t.h2:
            witnesses.append((2, j))
    cm = not any(i == 1 for i, _ in witnesses)
    rational = not witnesses
    m = gorenstein_index(s, L)
    return ConeReport(cm, rational, m, m == 1, m is not None and m >= 2, witnesses, bound)


# -- helix slopes ---------------------------------------------------------------

@dataclass(frozen=True)
class SlopeReport:
    window: tuple              # helix indices u
    slopes: tuple
    monotone: bool
    serre_identities: bool
    mutation_convention: str
    vanishing: dict | None     # line-bundle collections only


def _numerically_exceptional(s, coll):
    n = len(coll)
    for i in range(n):
        if euler_form(s, coll[i], coll[i]) != 1:
            return f"chi(E{i}, E{i}) = {euler_form(s, coll[i], coll[i])}"
        for j in range(i + 1, n):
            x = euler_form(s, coll[j], coll[i])
            if x:
                return f"chi(E{j}, E{i}) = {x}"
    return None


def ko_slope_report(s: SurfaceLattice, collection: Sequence[NumericalClass]) -> SlopeReport:
    """Slopes and Serre bookkeeping of the helix E_{i+jn} = E_i(-jK) over u in [-n, 2n)."""
    why = _numerically_exceptional(s, collection)
    if why:
        raise NotNumericallyExceptional(why)
    n = len(collection)

    @lru_cache(maxsize=None)
    def E(u):
        j, i = divmod(u, n)
        return helix_twist(s, collection[i], j)

    window = tuple(range(-n, 2 * n))
    slopes = tuple(slope(s, E(u)) for u in window)
    monotone = all(a <= b for a, b in zip(slopes, slopes[1:]))
    serre = all(euler_form(s, E(u), E(v)) == euler_form(s, E(v), E(u - n))
                for u in window for v in window if u - n >= window[0])
    vanishing = None
    if all(e.rank == 1 and e.ch2 == Fraction(s.square(e.c1), 2) for e in collection):
        fwd_ext2 = back_hom = ext1 = True
        for u in window:
            for v in window:
                t = line_bundle_cohomology(s, E(v).c1 - E(u).c1)
                if u <= v and t.h2:
                    fwd_ext2 = False
                if u > v and t.h0:
                    back_hom = False
                if t.h1:
                    ext1 = False
        vanishing = {"no_forward_ext2": fwd_ext2, "no_backward_hom": back_hom, "all_ext1_vanish": ext1}
    return SlopeReport(window, slopes, monotone, serre, "left: chi(E,F)[E]-[F]", vanishing)
