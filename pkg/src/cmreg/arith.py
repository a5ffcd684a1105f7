"""Exact coefficient fields and integer helpers.

Polynomial code works on raw coefficient values (``int`` residues for a
prime field, :class:`fractions.Fraction` for Q) and asks the field object
for normalisation and inverses.  :class:`FieldElement` is the boxed,
user-facing form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

DEFAULT_PRIME = 32003

Scalar = Union[int, Fraction]


class FieldError(ArithmeticError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    from sympy import isprime  # heavy import, only needed when building fields

    return bool(isprime(n))


class PrimeField:
    """The prime field F_p; elements are residues in ``[0, p)``."""

    def __init__(self, p: int = DEFAULT_PRIME):
        p = int(p)
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p

    characteristic = property(lambda self: self.p)

    def normalize(self, v) -> int:
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator {v.denominator} vanishes mod {self.p}")
            return v.numerator * pow(v.denominator, -1, self.p) % self.p
        return int(v) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def signed(self, a: int) -> int:
        """Symmetric representative, used for printing."""
        return a - self.p if a > self.p // 2 else a

    def __call__(self, v) -> "FieldElement":
        return FieldElement(self, self.normalize(v))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"F{self.p}"


class RationalField:
    """The rational numbers with :class:`fractions.Fraction` values."""

    p = None
    characteristic = 0

    def normalize(self, v) -> Fraction:
        return Fraction(v)

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def signed(self, a):
        return a

    def __call__(self, v) -> "FieldElement":
        return FieldElement(self, self.normalize(v))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


QQ = RationalField()
Field = Union[PrimeField, RationalField]


def field_from_descriptor(text: str) -> Field:
    """``"F32003"`` -> F_32003, ``"Q"`` -> rationals."""
    text = text.strip()
    if text in ("Q", "QQ"):
        return QQ
    if text[:1] in ("F", "f") and text[1:].isdigit():
        return PrimeField(int(text[1:]))
    raise FieldError(f"unknown field descriptor {text!r}")


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: Scalar

    def _coerce(self, other) -> Scalar:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("field mismatch")
            return other.value
        return self.field.normalize(other)

    def _make(self, v) -> "FieldElement":
        return FieldElement(self.field, self.field.normalize(v))

    def __add__(self, other):
        return self._make(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._make(self.value - self._coerce(other))

    def __rsub__(self, other):
        return self._make(self._coerce(other) - self.value)

    def __mul__(self, other):
        return self._make(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self._make(-self.value)

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        return self * FieldElement(self.field, self._coerce(other)).inv()

    def __rtruediv__(self, other):
        return FieldElement(self.field, self._coerce(other)) * self.inv()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.normalize(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}"


def binomial(n: int, k: int) -> int:
    """C(n, k) with the polynomial convention n(n-1)...(n-k+1)/k!.

    Negative ``n`` is allowed; ``k < 0`` gives 0.
    """
    n, k = int(n), int(k)
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    # C(n, k) = (-1)^k C(k - n - 1, k)
    return (-1) ** k * math.comb(k - n - 1, k)
