"""Monomials, term orders and polynomials over an exact field.

A monomial is a tuple of non-negative exponents.  A polynomial keeps its
terms in a dict ``{exponents: coefficient}``; sorted views are produced on
demand for a given :class:`TermOrder`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from operator import add, sub
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .arith import DEFAULT_PRIME, Field, FieldElement, PrimeField

Exp = Tuple[int, ...]


def mono_mul(a: Exp, b: Exp) -> Exp:
    return tuple(map(add, a, b))


def mono_div(a: Exp, b: Exp) -> Exp:
    return tuple(map(sub, a, b))


def mono_divides(a: Exp, b: Exp) -> bool:
    """True if x^a divides x^b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_lcm(a: Exp, b: Exp) -> Exp:
    return tuple(map(max, a, b))


def mono_gcd(a: Exp, b: Exp) -> Exp:
    return tuple(map(min, a, b))


def monomials_of_degree(n: int, d: int):
    """All exponent vectors of length ``n`` and total degree ``d``."""
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - a):
            yield (a,) + rest


# --- term orders -----------------------------------------------------------


def _key_lex(e):
    return e


def _key_glex(e):
    return (sum(e),) + e


def _key_grevlex(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


def _key_negrevlex(e):
    return (-sum(e),) + tuple(-x for x in reversed(e))


_KEYS = {
    "lex": _key_lex,
    "glex": _key_glex,
    "grevlex": _key_grevlex,
    "negrevlex": _key_negrevlex,
}
_ALIASES = {"dp": "grevlex", "Dp": "glex", "lp": "lex", "ds": "negrevlex", "local": "negrevlex"}


@dataclass(frozen=True)
class TermOrder:
    """A monomial order given by a sort key (bigger key = bigger monomial).

    ``negrevlex`` is the local order: lower total degree is larger, ties
    are broken reverse-lexicographically, and 1 is the largest monomial.
    ``perm`` lists variable indices in decreasing priority.
    """

    kind: str = "grevlex"
    perm: Optional[Tuple[int, ...]] = None
    key: Callable[[Exp], tuple] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        if kind not in _KEYS:
            raise ValueError(f"unknown term order {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        base = _KEYS[kind]
        if self.perm is None:
            object.__setattr__(self, "key", base)
        else:
            perm = tuple(self.perm)
            object.__setattr__(self, "perm", perm)
            object.__setattr__(self, "key", lambda e: base(tuple(e[i] for i in perm)))

    @property
    def is_global(self) -> bool:
        return self.kind != "negrevlex"

    @property
    def is_graded(self) -> bool:
        return self.kind in ("glex", "grevlex")


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")
GLEX = TermOrder("glex")
LOCAL = TermOrder("negrevlex")


def as_order(order) -> TermOrder:
    if order is None:
        return GREVLEX
    if isinstance(order, TermOrder):
        return order
    return TermOrder(order)


# --- rings and polynomials -------------------------------------------------


class PolynomialRing:
    """k[x_1..x_n] with named variables and a default (global) term order."""

    def __init__(self, field: Field | None = None, names: Sequence[str] = ("x", "y"), order=GREVLEX):
        self.field = field if field is not None else PrimeField(DEFAULT_PRIME)
        names = tuple(n.strip() for n in names)
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct: {names}")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", n):
                raise ValueError(f"bad variable name {n!r}")
        self.names = names
        self.n = len(names)
        self.order = as_order(order)
        self.zero_exp: Exp = (0,) * self.n

    @property
    def p(self):
        return self.field.p

    def gens(self) -> List["Polynomial"]:
        out = []
        for i in range(self.n):
            e = [0] * self.n
            e[i] = 1
            out.append(Polynomial(self, {tuple(e): 1}))
        return out

    def var(self, name: str) -> "Polynomial":
        return self.gens()[self.names.index(name)]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.normalize(c)
        return Polynomial(self, {self.zero_exp: c} if c else {})

    def monomial(self, exp: Exp, c=1) -> "Polynomial":
        c = self.field.normalize(c)
        return Polynomial(self, {tuple(exp): c} if c else {})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __call__(self, text_or_terms) -> "Polynomial":
        if isinstance(text_or_terms, str):
            return self.parse(text_or_terms)
        return Polynomial(self, dict(text_or_terms))

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and self.field == other.field
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"{self.field!r}[{','.join(self.names)}]"


class RingMismatch(ValueError):
    pass


class Polynomial:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PolynomialRing, coeffs: Dict[Exp, object]):
        self.ring = ring
        self.coeffs = coeffs  # owned; never mutated after construction

    # construction helpers
    @classmethod
    def from_terms(cls, ring, terms: Iterable[Tuple[Exp, object]]) -> "Polynomial":
        p = ring.p
        d: Dict[Exp, object] = {}
        for e, c in terms:
            v = d.get(e, 0) + ring.field.normalize(c)
            if p:
                v %= p
            if v:
                d[e] = v
            else:
                d.pop(e, None)
        return cls(ring, d)

    def _check(self, other):
        if not isinstance(other, Polynomial):
            return self.ring.constant(other.value if isinstance(other, FieldElement) else other)
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.ring.p
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = d.get(e, 0) + c
            if p:
                v %= p
            if v:
                d[e] = v
            else:
                d.pop(e, None)
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {e: (-c) % p if p else -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        p = self.ring.p
        d: Dict[Exp, object] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = mono_mul(e1, e2)
                v = d.get(e, 0) + c1 * c2
                if p:
                    v %= p
                if v:
                    d[e] = v
                else:
                    d.pop(e, None)
        return Polynomial(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.coeffs == other.coeffs
        try:
            return self == self._check(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def scale(self, c) -> "Polynomial":
        c = self.ring.field.normalize(c)
        p = self.ring.p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: (v * c) % p if p else v * c for e, v in self.coeffs.items()})

    def mul_monomial(self, exp: Exp, c=1) -> "Polynomial":
        c = self.ring.field.normalize(c)
        p = self.ring.p
        return Polynomial(
            self.ring, {mono_mul(e, exp): (v * c) % p if p else v * c for e, v in self.coeffs.items()}
        )

    # structure
    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def low_degree(self) -> int:
        """Order of f at the origin (lowest total degree of a term)."""
        if not self.coeffs:
            raise ValueError("zero polynomial has no order")
        return min(sum(e) for e in self.coeffs)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.coeffs}) <= 1

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial(self.ring, {e: c for e, c in self.coeffs.items() if sum(e) == d})

    def terms(self, order=None) -> List[Tuple[Exp, object]]:
        """Terms sorted strictly descending under ``order``."""
        key = as_order(order or self.ring.order).key
        return sorted(self.coeffs.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order=None) -> Tuple[Exp, object]:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading term")
        key = as_order(order or self.ring.order).key
        e = max(self.coeffs, key=key)
        return e, self.coeffs[e]

    def leading_monomial(self, order=None) -> Exp:
        return self.leading_term(order)[0]

    def initial_form(self) -> "Polynomial":
        """Homogeneous component of lowest total degree."""
        return self.homogeneous_component(self.low_degree())

    def constant_term(self):
        return self.coeffs.get(self.ring.zero_exp, 0)

    def monic(self, order=None) -> "Polynomial":
        if not self.coeffs:
            return self
        _, c = self.leading_term(order)
        return self.scale(self.ring.field.inv(c))

    def __repr__(self):
        return format_polynomial(self)

    __str__ = __repr__


# --- text form ---------------------------------------------------------------


def format_polynomial(f: Polynomial, order=None) -> str:
    if not f.coeffs:
        return "0"
    names = f.ring.names
    out = []
    for e, c in f.terms(order):
        c = f.ring.field.signed(c)
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
        )
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class ParseError(ValueError):
    def __init__(self, msg, line=1, col=1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, ring, line, col0):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.line = line
        self.col0 = col0

    def err(self, msg, tok=None):
        tok = tok or self.toks[self.i]
        raise ParseError(msg, self.line, self.col0 + tok[2] + 1)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.i -= 1
            self.err(f"expected {op!r}")

    def parse(self):
        f = self.expr()
        if self.peek()[0] != "end":
            self.err(f"unexpected token {self.peek()[1]!r}")
        return f

    def expr(self):
        f = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            f = f * self.factor()
        return f

    def factor(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            f = self.factor()
            return -f if t[1] == "-" else f
        f = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            k = self.take()
            if k[0] != "num":
                self.i -= 1
                self.err("expected a non-negative integer exponent")
            f = f ** k[1]
        return f

    def atom(self):
        t = self.take()
        if t[0] == "num":
            c = Fraction(t[1])
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num":
                    self.i -= 1
                    self.err("expected an integer denominator")
                if d[1] == 0:
                    self.err("division by zero", d)
                c = c / d[1]
            try:
                return self.ring.constant(c)
            except ZeroDivisionError:
                self.err(f"denominator not invertible in {self.ring.field!r}", t)
        if t[0] == "name":
            if t[1] not in self.ring.names:
                self.i -= 1
                self.err(f"unknown variable {t[1]!r}")
            return self.ring.var(t[1])
        if t[0] == "op" and t[1] == "(":
            f = self.expr()
            self.expect_op(")")
            return f
        self.i -= 1
        self.err("unexpected end of input" if t[0] == "end" else f"unexpected token {t[1]!r}")


def parse_polynomial(text: str, ring: PolynomialRing, line: int = 1, col: int = 0) -> Polynomial:
    """Parse ``x^2*y - 3*z + 1``; coefficients are integers or ``a/b``."""
    return _Parser(text, ring, line, col).parse()
