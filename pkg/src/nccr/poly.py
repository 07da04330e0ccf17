"""Exact multivariate polynomials over the rationals.

Polynomials are immutable maps from exponent tuples to ``Fraction``
coefficients.  A :class:`PolynomialRing` carries the variable names and an
optional integer grading (the weights), and knows how to parse and print
its elements.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import (
    NoGrading,
    NonIntegerExponent,
    PolynomialSyntaxError,
    RingMismatch,
    UnknownVariable,
)

Monomial = tuple  # tuple[int, ...] of exponents

NEG_INF = -math.inf


def _revlex(exps):
    return tuple(-e for e in reversed(exps))


@dataclass(frozen=True)
class TermOrder:
    """A monomial order given by a sort key; the leading term has the largest key.

    ``kind`` is one of ``grevlex``, ``lex``, ``wgrevlex`` (weighted degree,
    then reverse lex), ``negdegrevlex`` and ``negwdegrevlex`` (the local
    orders, where 1 is larger than every variable).
    """

    kind: str = "grevlex"
    weights: tuple | None = None

    _KINDS = ("grevlex", "lex", "wgrevlex", "negdegrevlex", "negwdegrevlex")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind in ("wgrevlex", "negwdegrevlex"):
            if not self.weights or any(w <= 0 for w in self.weights):
                raise ValueError("weighted orders need positive weights")

    @property
    def is_global(self):
        return not self.kind.startswith("neg")

    def key(self, exps):
        k = self.kind
        if k == "grevlex":
            return (sum(exps), _revlex(exps))
        if k == "lex":
            return exps
        if k == "wgrevlex":
            return (sum(w * e for w, e in zip(self.weights, exps)), _revlex(exps))
        if k == "negdegrevlex":
            return (-sum(exps), _revlex(exps))
        return (-sum(w * e for w, e in zip(self.weights, exps)), _revlex(exps))


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")
LOCAL = TermOrder("negdegrevlex")


class PolynomialRing:
    """Q[x_1..x_n], optionally Z-graded by integer ``weights``."""

    def __init__(self, names: Sequence[str], weights: Sequence[int] | None = None,
                 ambient_kind: str = "polynomial"):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise ValueError(f"invalid variable name {name!r}")
        if weights is not None:
            weights = tuple(int(w) for w in weights)
            if len(weights) != len(names):
                raise ValueError("weights length must equal the number of variables")
        self.names = names
        self.weights = weights
        self.ambient_kind = ambient_kind
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def ngens(self):
        return len(self.names)

    def __repr__(self):
        w = f", weights={self.weights}" if self.weights else ""
        return f"PolynomialRing({', '.join(self.names)}{w})"

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing) and self.names == other.names
                and self.weights == other.weights)

    def __hash__(self):
        return hash((self.names, self.weights))

    def index(self, name):
        return self._index[name]

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = Fraction(c)
        return Polynomial(self, {(0,) * self.ngens: c} if c else {})

    def monomial(self, exps, coeff=1):
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.ngens or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps} for {self}")
        coeff = Fraction(coeff)
        return Polynomial(self, {exps: coeff} if coeff else {})

    def gens(self):
        return tuple(self.monomial(tuple(int(i == j) for j in range(self.ngens)))
                     for i in range(self.ngens))

    def from_terms(self, terms: Mapping[tuple, object]):
        return Polynomial(self, {tuple(e): Fraction(c) for e, c in terms.items()})

    def parse(self, text):
        return parse_polynomial(text, self)

    def __call__(self, value):
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatch(f"{value.ring} is not {self}")
            return value
        if isinstance(value, str):
            return parse_polynomial(value, self)
        return self.constant(value)

    def degree_of(self, exps):
        return sum(exps)

    def weight_of_monomial(self, exps):
        if self.weights is None:
            raise NoGrading(f"{self} has no grading")
        return sum(w * e for w, e in zip(self.weights, exps))


class Polynomial:
    """An immutable polynomial; ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: dict):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"cannot combine elements of {self.ring} and {other.ring}")
            return other
        if isinstance(other, (int, Rational)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            return NotImplemented
        c = Fraction(c)
        return Polynomial(self.ring, {e: v / c for e, v in self.terms.items()})

    # -- comparisons ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # -- structure --------------------------------------------------------
    def degree(self):
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def weight_of(self):
        """The common weight of all terms, or ``None`` if the terms disagree.

        The zero polynomial is reported as ``None`` as well.
        """
        if self.ring.weights is None:
            raise NoGrading(f"{self.ring} has no grading")
        ws = {self.ring.weight_of_monomial(e) for e in self.terms}
        return ws.pop() if len(ws) == 1 else None

    def lead_term(self, order: TermOrder = GREVLEX):
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def lead_monomial(self, order: TermOrder = GREVLEX):
        return max(self.terms, key=order.key)

    def sorted_terms(self, order: TermOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.ngens, Fraction(0))

    def monic(self, order: TermOrder = GREVLEX):
        if not self.terms:
            return self
        return self / self.lead_term(order)[1]

    def diff(self, var):
        i = var if isinstance(var, int) else self.ring.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[ne] = c * e[i]
        return Polynomial(self.ring, terms)

    def evaluate(self, point: Sequence):
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def substitute(self, images: Sequence[Polynomial]):
        """Ring map sending variable i to ``images[i]`` (all in one target ring)."""
        target = images[0].ring
        result = target.zero()
        for e, c in self.terms.items():
            t = target.constant(c)
            for img, k in zip(images, e):
                if k:
                    t = t * img ** k
            result = result + t
        return result

    # -- printing ---------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _format_monomial(names, exps):
    parts = []
    for n, k in zip(names, exps):
        if k == 1:
            parts.append(n)
        elif k > 1:
            parts.append(f"{n}^{k}")
    return "*".join(parts)


def format_polynomial(p: Polynomial, order: TermOrder = GREVLEX):
    """Canonical text: terms in descending order, signs folded into coefficients."""
    if not p.terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms(order)):
        mono = _format_monomial(p.ring.names, e)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# -- parsing -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+\s*/\s*\d+|\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("id", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch.isspace():
                pos = m.end()
                continue
            if ch not in "+-*^()":
                raise PolynomialSyntaxError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise PolynomialSyntaxError(f"expected {value!r}", tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            raise PolynomialSyntaxError("empty expression", 0)
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolynomialSyntaxError(f"unexpected token {tok[1]!r}", tok[2])
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num" or "/" in tok[1]:
                raise NonIntegerExponent("exponent must be a non-negative integer literal", tok[2])
            return base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "num":
            if "/" in value:
                num, den = (int(s) for s in value.split("/"))
                if den == 0:
                    raise PolynomialSyntaxError("zero denominator", pos)
                return self.ring.constant(Fraction(num, den))
            return self.ring.constant(int(value))
        if kind == "id":
            if value not in self.ring._index:
                raise UnknownVariable(value, pos)
            i = self.ring._index[value]
            return self.ring.monomial(tuple(int(j == i) for j in range(self.ring.ngens)))
        if kind == "op" and value == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise PolynomialSyntaxError(f"unexpected token {value!r}" if value else "unexpected end", pos)


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    """Parse ``text`` (integers, ``a/b``, identifiers, ``+ - * ^``, parentheses)."""
    return _Parser(text, ring).parse()


def poly_arith(op: str, p: Polynomial, q) -> Polynomial:
    """Dispatch ``add``/``subtract``/``multiply``/``power`` on canonical polynomials."""
    if op == "add":
        return p + q
    if op == "subtract":
        return p - q
    if op == "multiply":
        return p * q
    if op == "power":
        return p ** q
    raise ValueError(f"unknown operation {op!r}")


def weight_of(p: Polynomial):
    return p.weight_of()


def jacobian(f: Polynomial) -> list[Polynomial]:
    return [f.diff(i) for i in range(f.ring.ngens)]


def polynomials(ring: PolynomialRing, texts: Iterable[str]) -> list[Polynomial]:
    return [parse_polynomial(t, ring) for t in texts]
