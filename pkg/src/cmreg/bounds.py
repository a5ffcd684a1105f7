"""Bound formulas for Hilbert-Samuel data and regularity, as exact integers.

Notation: d = dim A, e = e(A), I = D(A) - e(A) for an extended degree D.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .arith import binomial

VARIANTS = ("main", "cm", "srinivas-trivedi", "trivedi")


def _need(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def hs_upper_bound(n: int, d: int, e: int, I: int) -> int:
    """l(A/m^{n+1}) <= e C(n+d-1, d) + I C(n+d-2, d-1) + C(n+d-1, d-1)."""
    _need(d >= 1, "the Hilbert-Samuel bound needs d >= 1")
    _need(n >= 0 and e >= 1 and I >= 0, "need n >= 0, e >= 1, I >= 0")
    return e * binomial(n + d - 1, d) + I * binomial(n + d - 2, d - 1) + binomial(n + d - 1, d - 1)


def hs_upper_bound_weak(n: int, d: int, D: int) -> int:
    """The coarser form D C(n+d-1, d) + C(n+d-1, d-1)."""
    _need(d >= 1, "the Hilbert-Samuel bound needs d >= 1")
    _need(n >= 0 and D >= 1, "need n >= 0, D >= 1")
    return D * binomial(n + d - 1, d) + binomial(n + d - 1, d - 1)


def reg_upper_bound(d: int, e: int, I: int) -> int:
    """Bound on reg(G): e + I - 1 for d = 1, else e^{k-1}[e^2 + eI + 2I - e]^k - I with k = (d-1)!."""
    _need(d >= 1, "the regularity bound needs d >= 1")
    _need(e >= 1 and I >= 0, "need e >= 1, I >= 0")
    if d == 1:
        return e + I - 1
    k = factorial(d - 1)
    return e ** (k - 1) * (e * e + e * I + 2 * I - e) ** k - I


def reg_upper_bound_cm(d: int, e: int) -> int:
    """Cohen-Macaulay case: e - 1 for d = 1, else e^{2k-1}(e-1)^k with k = (d-1)!."""
    _need(d >= 1 and e >= 1, "need d >= 1, e >= 1")
    if d == 1:
        return e - 1
    k = factorial(d - 1)
    return e ** (2 * k - 1) * (e - 1) ** k


def coeff_upper_bound(i: int, e: int, I: int = 0, variant: str = "main", c: Optional[int] = None) -> int:
    """Bound on |e_i(A)| for i >= 1.

    variants: ``main`` (any extended degree), ``cm`` (I = 0),
    ``srinivas-trivedi`` (9e^5)^{i!} and ``trivedi`` [(3+c)^2 e^5]^{i!} with c >= 2I.
    """
    _need(i >= 1, "i = 0 is the multiplicity itself")
    _need(e >= 1 and I >= 0, "need e >= 1, I >= 0")
    f = factorial(i)
    if variant == "main":
        if i == 1:
            return e * (e - 1) // 2 + I
        return e ** (f - i) * (e * e + e * I + 2 * I) ** f - 1
    if variant == "cm":
        if i == 1:
            return e * (e - 1) // 2
        return e ** (3 * f - i) - 1
    if variant == "srinivas-trivedi":
        return (9 * e**5) ** f
    if variant == "trivedi":
        if c is None:
            c = 2 * I
        _need(c >= 2 * I, f"trivedi variant needs c >= 2I = {2 * I}")
        return ((3 + c) ** 2 * e**5) ** f
    raise ValueError(f"unknown variant {variant!r}")


# --- verdicts ------------------------------------------------------------------


@dataclass(frozen=True)
class BoundVerdict:
    thm: str
    inputs: Tuple[Tuple[str, int], ...]
    bound: int
    actual: int
    holds: bool
    slack: int

    @classmethod
    def upper(cls, thm: str, inputs: Dict[str, int], bound: int, actual: int) -> "BoundVerdict":
        slack = bound - actual
        return cls(thm, tuple(inputs.items()), bound, actual, slack >= 0, slack)

    @classmethod
    def equal(cls, thm: str, inputs: Dict[str, int], expected: int, actual: int) -> "BoundVerdict":
        slack = -abs(expected - actual)
        return cls(thm, tuple(inputs.items()), expected, actual, slack == 0, slack)

    def as_dict(self) -> dict:
        return {
            "thm": self.thm,
            "inputs": dict(self.inputs),
            "bound": self.bound,
            "actual": self.actual,
            "holds": self.holds,
            "slack": self.slack,
        }


@dataclass
class InstanceFacts:
    """Everything the checks read.  ``hs[n] = l(A/m^{n+1})``; ``h``/``p`` are G's Hilbert function and polynomial."""

    d: int
    e: int
    hs: Sequence[int]
    e_coeffs: Sequence[int]
    reg: int
    greg: Optional[int]
    lengthL: int
    reg_prime: Optional[int]
    D: Optional[int] = None
    h: Sequence[int] = ()
    p: Sequence[int] = ()
    hs_range: int = 20

    @property
    def I(self) -> Optional[int]:
        return None if self.D is None else self.D - self.e


def _checks(f: InstanceFacts):
    verdicts: List[BoundVerdict] = []
    skipped: List[str] = []
    d, e, I = f.d, f.e, f.I
    # Serre: h(n) = p(n) beyond the regularity
    for n in range(f.reg + 1, f.reg + 11):
        if n < len(f.h) and n < len(f.p):
            verdicts.append(BoundVerdict.equal("serre", {"n": n}, f.p[n], f.h[n]))
    if f.greg is not None:
        verdicts.append(BoundVerdict.upper("greg-le-reg", {}, f.reg, f.greg))
    if f.lengthL == 0:
        if f.greg is None:
            skipped.append("hoa: no higher local cohomology")
        else:
            verdicts.append(BoundVerdict.equal("hoa", {}, f.greg, f.reg))
    if f.reg_prime is None:
        skipped.append("depthzero: A/L is the zero ring")
    else:
        verdicts.append(
            BoundVerdict.upper("depthzero", {"lengthL": f.lengthL}, f.reg_prime + f.lengthL, f.reg)
        )
    if d < 1:
        skipped.append("uniform, weak, regularity, coeff: dim A = 0")
        return verdicts, skipped
    if I is None:
        skipped.append("uniform, weak, regularity, coeff: no extended degree")
        return verdicts, skipped
    base = {"d": d, "e": e, "I": I}
    for n in range(min(f.hs_range, len(f.hs) - 1) + 1):
        verdicts.append(BoundVerdict.upper("uniform", {**base, "n": n}, hs_upper_bound(n, d, e, I), f.hs[n]))
        verdicts.append(
            BoundVerdict.upper("weak", {"d": d, "D": f.D, "n": n}, hs_upper_bound_weak(n, d, f.D), f.hs[n])
        )
    verdicts.append(BoundVerdict.upper("regularity", base, reg_upper_bound(d, e, I), f.reg))
    if I == 0:
        verdicts.append(BoundVerdict.upper("regularity-cm", {"d": d, "e": e}, reg_upper_bound_cm(d, e), f.reg))
    for i in range(1, d + 1):
        a = abs(f.e_coeffs[i])
        verdicts.append(BoundVerdict.upper("coeff", {**base, "i": i}, coeff_upper_bound(i, e, I), a))
        if I == 0:
            verdicts.append(BoundVerdict.upper("coeff-cm", {"e": e, "i": i}, coeff_upper_bound(i, e, 0, "cm"), a))
            verdicts.append(
                BoundVerdict.upper("srinivas-trivedi", {"e": e, "i": i}, coeff_upper_bound(i, e, 0, "srinivas-trivedi"), a)
            )
    return verdicts, skipped


def verify_instance(facts: InstanceFacts) -> List[BoundVerdict]:
    return _checks(facts)[0]


def skipped_checks(facts: InstanceFacts) -> List[str]:
    return _checks(facts)[1]


# --- finiteness envelope ---------------------------------------------------------------


@dataclass
class EnvelopeSplit:
    """Candidate space for one split D = e + I.

    Values l(A/m^{n+1}) for n < n0 range over ``value_ranges``; from n0 on
    they equal P(n), whose coefficients range over ``coeff_ranges``.
    """

    e: int
    I: int
    n0: int
    value_ranges: List[Tuple[int, int, int]] = field(default_factory=list)
    coeff_ranges: List[Tuple[int, int, int]] = field(default_factory=list)

    @property
    def count(self) -> int:
        total = 1
        for _, lo, hi in self.value_ranges + self.coeff_ranges:
            total *= max(0, hi - lo + 1)
        return total


@dataclass
class Envelope:
    d: int
    q: int
    splits: List[EnvelopeSplit]

    @property
    def count(self) -> int:
        return sum(s.count for s in self.splits)


@dataclass(frozen=True)
class Candidate:
    d: int
    n0: int
    values: Tuple[int, ...]
    e_coeffs: Tuple[int, ...]

    def __call__(self, n: int) -> int:
        if n < self.n0:
            return self.values[n]
        d = self.d
        return sum((-1) ** i * c * binomial(n + d - i, d - i) for i, c in enumerate(self.e_coeffs))


def finiteness_envelope(d: int, q: int) -> Envelope:
    """Enumerate the candidate space over the splits e + I = q.

    Smaller extended degrees are covered too: every bound grows with I, so
    the split (e, q - e) contains (e, I') for I' < q - e.
    """
    _need(d >= 1 and q >= 1, "need d >= 1, q >= 1")
    splits = []
    for e in range(1, q + 1):
        I = q - e
        n0 = max(reg_upper_bound(d, e, I), 0)
        values = [(n, 1, hs_upper_bound(n, d, e, I)) for n in range(n0)]
        coeffs = []
        for i in range(1, d + 1):
            b = coeff_upper_bound(i, e, I)
            coeffs.append((i, -b, b))
        splits.append(EnvelopeSplit(e, I, n0, values, coeffs))
    return Envelope(d, q, splits)


def envelope_candidates(env: Envelope, limit: Optional[int] = None) -> Iterator[Candidate]:
    produced = 0
    for s in env.splits:
        ranges = [range(lo, hi + 1) for _, lo, hi in s.value_ranges + s.coeff_ranges]
        k = len(s.value_ranges)
        for combo in itertools.product(*ranges):
            if limit is not None and produced >= limit:
                return
            yield Candidate(env.d, s.n0, tuple(combo[:k]), (s.e,) + tuple(combo[k:]))
            produced += 1
