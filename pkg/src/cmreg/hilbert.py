"""Hilbert series of monomial ideals and modules, Hilbert polynomials.

Power series numerators are Laurent polynomials in ``t`` stored as
``{exponent: coefficient}`` dicts, so that modules with generators in
negative degrees need no special casing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .arith import binomial
from .poly import Exp, mono_divides

TPoly = Dict[int, int]


# --- Laurent polynomials in t ----------------------------------------------


def tp_clean(a: TPoly) -> TPoly:
    return {k: v for k, v in a.items() if v}


def tp_add(a: TPoly, b: TPoly, scale: int = 1, shift: int = 0) -> TPoly:
    out = dict(a)
    for k, v in b.items():
        out[k + shift] = out.get(k + shift, 0) + scale * v
    return tp_clean(out)


def tp_mul(a: TPoly, b: TPoly) -> TPoly:
    out: TPoly = {}
    for i, u in a.items():
        for j, v in b.items():
            out[i + j] = out.get(i + j, 0) + u * v
    return tp_clean(out)


def tp_eval(a: TPoly, x) -> object:
    return sum(v * x**k for k, v in a.items())


def tp_to_list(a: TPoly) -> List[int]:
    """Coefficient list for a polynomial (no negative exponents)."""
    if not a:
        return []
    if min(a) < 0:
        raise ValueError("negative exponents")
    return [a.get(k, 0) for k in range(max(a) + 1)]


def div_one_minus_t(a: TPoly) -> TPoly:
    """Exact division by (1 - t); raises if (1 - t) does not divide."""
    if not a:
        return {}
    lo, hi = min(a), max(a)
    out: TPoly = {}
    acc = 0
    for k in range(lo, hi):
        acc += a.get(k, 0)
        if acc:
            out[k] = acc
    if acc + a.get(hi, 0) != 0:
        raise ArithmeticError("(1 - t) does not divide the numerator")
    return out


def one_minus_t_power(k: int) -> TPoly:
    return {i: (-1) ** i * binomial(k, i) for i in range(k + 1)}


def reduce_series(num: TPoly, n: int) -> Tuple[TPoly, int]:
    """Write num/(1-t)^n as Q/(1-t)^d with Q(1) != 0; zero series gives d = -1."""
    num = tp_clean(num)
    if not num:
        return {}, -1
    d = n
    while d > 0 and tp_eval(num, 1) == 0:
        num = div_one_minus_t(num)
        d -= 1
    if tp_eval(num, 1) == 0:
        raise ArithmeticError("Hilbert series with a pole of negative order")
    return num, d


def series_coefficient(num: TPoly, n: int, j: int) -> int:
    """Coefficient of t^j in num(t)/(1-t)^n."""
    if n == 0:
        return num.get(j, 0)
    return sum(v * binomial(j - k + n - 1, n - 1) for k, v in num.items() if k <= j)


def lowest_degree(num: TPoly) -> Optional[int]:
    """Lowest degree with a nonzero graded piece (the numerator's lowest term)."""
    num = tp_clean(num)
    return min(num) if num else None


# --- monomial ideals ---------------------------------------------------------


def minimalize(gens: Iterable[Exp]) -> List[Exp]:
    """Minimal monomial generators."""
    out: List[Exp] = []
    for g in sorted(set(gens), key=sum):
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return out


def hilbert_numerator(gens: Iterable[Exp], n: int) -> TPoly:
    """N(t) with  sum_j dim (S/J)_j t^j = N(t)/(1-t)^n  for a monomial ideal J."""
    return dict(_numerator(tuple(sorted(minimalize(gens))), n))


@lru_cache(maxsize=4096)
def _numerator(gens: Tuple[Exp, ...], n: int) -> Tuple[Tuple[int, int], ...]:
    if not gens:
        return ((0, 1),)
    if any(sum(g) == 0 for g in gens):
        return ()
    # pairwise coprime generators form a regular sequence
    support = [0] * n
    shared = False
    for g in gens:
        for v, a in enumerate(g):
            if a:
                support[v] += 1
                if support[v] > 1:
                    shared = True
    if not shared:
        num: TPoly = {0: 1}
        for g in gens:
            num = tp_mul(num, {0: 1, sum(g): -1})
        return tuple(sorted(num.items()))
    v = max(range(n), key=lambda i: support[i])
    e = min(g[v] for g in gens if g[v])
    pivot = tuple(e if i == v else 0 for i in range(n))
    left = minimalize(list(gens) + [pivot])
    right = minimalize(
        tuple(max(0, a - e) if i == v else a for i, a in enumerate(g)) for g in gens
    )
    num = tp_add(
        dict(_numerator(tuple(sorted(left)), n)),
        dict(_numerator(tuple(sorted(right)), n)),
        shift=e,
    )
    return tuple(sorted(num.items()))


def module_numerator(lead_terms: Iterable[Tuple[int, Exp]], degrees: Sequence[int], n: int) -> TPoly:
    """Numerator for F/N where F has basis degrees ``degrees`` and in(N) has the given leads."""
    per_comp: Dict[int, List[Exp]] = {c: [] for c in range(len(degrees))}
    for c, e in lead_terms:
        per_comp[c].append(e)
    num: TPoly = {}
    for c, d in enumerate(degrees):
        num = tp_add(num, hilbert_numerator(per_comp[c], n), shift=d)
    return num


def monomial_dimension(gens: Iterable[Exp], n: int) -> int:
    """Krull dimension of S/J: the largest set of variables no generator lives on."""
    gens = minimalize(gens)
    if any(sum(g) == 0 for g in gens):
        return -1
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
    best = 0
    for mask in range(1 << n):
        size = bin(mask).count("1")
        if size <= best:
            continue
        U = {i for i in range(n) if mask >> i & 1}
        if all(not s <= U for s in supports):
            best = size
    return best


# --- Hilbert functions and polynomials ----------------------------------------


def hilbert_polynomial_value(Q: TPoly, d: int, x: int) -> int:
    """p(x) for the series Q(t)/(1-t)^d (zero polynomial when d <= 0)."""
    if d <= 0:
        return 0
    return sum(v * binomial(x - k + d - 1, d - 1) for k, v in Q.items())


def samuel_polynomial_value(Q: TPoly, d: int, x: int) -> int:
    """P(x) for the cumulative series Q(t)/(1-t)^(d+1)."""
    return sum(v * binomial(x - k + d, d) for k, v in Q.items())


def interpolate(points: Sequence[Tuple[int, int]]) -> List[Fraction]:
    """Coefficients (constant term first) of the polynomial through ``points``."""
    m = len(points)
    coeffs = [Fraction(0)] * m
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(m):
            coeffs[k] += yi * basis[k] / denom
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def format_xpoly(coeffs: Sequence[Fraction], var: str = "X") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        body = str(mag) if (not mono or mag != 1) else ""
        body = f"{body}*{mono}" if body and mono else (body or mono)
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    return first + "".join(f" {s} {b}" for s, b in terms[1:])


@dataclass
class HilbertData:
    """Hilbert data of G = S/J and Hilbert-Samuel data of the local ring.

    ``e_coeffs[i]`` follows P(X) = sum (-1)^i e_i C(X+d-i, d-i).
    """

    nvars: int
    numerator: TPoly
    reduced: TPoly
    dim: int
    values: List[int] = field(default_factory=list)
    samuel: List[int] = field(default_factory=list)
    e_coeffs: List[int] = field(default_factory=list)

    @property
    def multiplicity(self) -> int:
        return self.e_coeffs[0] if self.e_coeffs else 0

    def h(self, j: int) -> int:
        return series_coefficient(self.numerator, self.nvars, j)

    def p(self, x: int) -> int:
        return hilbert_polynomial_value(self.reduced, self.dim, x)

    def samuel_poly(self, x: int) -> int:
        return samuel_polynomial_value(self.reduced, self.dim, x)

    def samuel_from_coeffs(self, x: int) -> int:
        d = self.dim
        return sum((-1) ** i * e * binomial(x + d - i, d - i) for i, e in enumerate(self.e_coeffs))

    def hilbert_polynomial(self) -> List[Fraction]:
        if self.dim <= 0:
            return []
        return interpolate([(x, self.p(x)) for x in range(self.dim)])

    def samuel_polynomial(self) -> List[Fraction]:
        return interpolate([(x, self.samuel_poly(x)) for x in range(self.dim + 1)])

    def postulation_start(self) -> int:
        """h(n) = p(n) is guaranteed for n >= this value."""
        return max(self.reduced, default=0) - self.dim + 1


def hilbert_data_from_numerator(num: TPoly, n: int, horizon: int) -> HilbertData:
    Q, d = reduce_series(num, n)
    if d < 0:
        raise ValueError("zero ring has no Hilbert-Samuel data")
    values = [series_coefficient(num, n, j) for j in range(horizon + 1)]
    samuel = []
    acc = 0
    for v in values:
        acc += v
        samuel.append(acc)
    e_coeffs = [sum(v * binomial(k, i) for k, v in Q.items()) for i in range(d + 1)]
    data = HilbertData(n, num, Q, d, values, samuel, e_coeffs)
    # sign convention check: P(x) from e_i must match the cumulative series
    start = max(max(Q, default=0), 0) + 1
    for x in range(start, start + 5):
        actual = sum(series_coefficient(num, n, j) for j in range(x + 1))
        if data.samuel_from_coeffs(x) != actual:
            raise ArithmeticError(
                f"Hilbert-Samuel coefficient convention mismatch at n={x}: "
                f"{data.samuel_from_coeffs(x)} != {actual}"
            )
    return data
