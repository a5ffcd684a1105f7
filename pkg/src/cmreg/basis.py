"""Ideals, Gröbner bases, Mora standard bases and tangent cones."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .gb import GroebnerEngine, ModuleOrder, Vector, groebner_vectors
from .hilbert import (
    div_one_minus_t,
    hilbert_numerator,
    monomial_dimension,
    tp_add,
    tp_eval,
)
from .poly import (
    GREVLEX,
    LOCAL,
    Exp,
    Polynomial,
    PolynomialRing,
    as_order,
    mono_div,
    mono_divides,
    mono_lcm,
)


class UnitIdealError(ValueError):
    pass


def to_vector(f: Polynomial, comp: int = 0) -> Vector:
    return {(comp, e): c for e, c in f.coeffs.items()}


def from_vector(ring: PolynomialRing, v: Vector, comp: Optional[int] = 0) -> Polynomial:
    return Polynomial(ring, {e: c for (k, e), c in v.items() if comp is None or k == comp})


def _ring_of(gens: Sequence[Polynomial]) -> PolynomialRing:
    rings = {id(g.ring): g.ring for g in gens}
    if len({g.ring for g in gens}) > 1:
        raise ValueError("generators live in different rings")
    return next(iter(rings.values()))


def buchberger(gens: Sequence[Polynomial], order=GREVLEX) -> List[Polynomial]:
    """Reduced monic Gröbner basis for a global term order."""
    order = as_order(order)
    if not order.is_global:
        raise ValueError("buchberger needs a global order; use standard_basis for local orders")
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = _ring_of(gens)
    eng = groebner_vectors([to_vector(g) for g in gens], ModuleOrder(order), ring.field, ideal=True)
    return [from_vector(ring, v) for v in eng.reduced_basis()]


class Ideal:
    """A finitely generated ideal with lazily cached Gröbner bases."""

    def __init__(self, ring: PolynomialRing, gens: Sequence[Polynomial | str] = ()):
        self.ring = ring
        gs = []
        for g in gens:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if g:
                gs.append(g)
        self.gens: Tuple[Polynomial, ...] = tuple(gs)
        self._bases: Dict = {}
        self._engines: Dict = {}

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def is_monomial(self) -> bool:
        return all(len(g.coeffs) == 1 for g in self.gens)

    def groebner_basis(self, order=None) -> List[Polynomial]:
        order = as_order(order or GREVLEX)
        if order not in self._bases:
            self._bases[order] = buchberger(self.gens, order)
        return self._bases[order]

    def _engine(self, order) -> GroebnerEngine:
        order = as_order(order or GREVLEX)
        if order not in self._engines:
            eng = GroebnerEngine(ModuleOrder(order), self.ring.field, ideal=True)
            for g in self.groebner_basis(order):
                eng.add(to_vector(g), reduce=False)
            eng.pairs.clear()  # already a Gröbner basis
            self._engines[order] = eng
        return self._engines[order]

    def normal_form(self, f: Polynomial, order=None) -> Polynomial:
        return from_vector(self.ring, self._engine(order).normal_form(to_vector(f)))

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def __contains__(self, f) -> bool:
        return self.contains(f)

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return any(g.degree() == 0 for g in gb)

    def is_zero(self) -> bool:
        return not self.gens

    def leading_monomials(self, order=None) -> List[Exp]:
        order = as_order(order or GREVLEX)
        return [g.leading_monomial(order) for g in self.groebner_basis(order)]

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner_basis() == other.groebner_basis()

    def __hash__(self):
        return hash(tuple(self.groebner_basis()))

    def __repr__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


def initial_monomial_ideal(I: Ideal, order=GREVLEX) -> Ideal:
    ring = I.ring
    return Ideal(ring, [ring.monomial(e) for e in I.leading_monomials(order)])


def ideal_dimension(I: Ideal) -> int:
    """Krull dimension of S/I, via the largest independent set of variables."""
    if I.is_unit():
        raise UnitIdealError("the unit ideal has no dimension")
    return monomial_dimension(I.leading_monomials(GREVLEX), I.ring.n)


def affine_numerator(I: Ideal):
    """Numerator of the affine Hilbert series of S/I (degree filtration)."""
    return hilbert_numerator(I.leading_monomials(GREVLEX), I.ring.n)


# --- Mora's tangent cone algorithm ----------------------------------------------


class _LocalElem:
    __slots__ = ("f", "lm", "lc", "ecart")

    def __init__(self, f: Dict[Exp, object], key):
        self.f = f
        self.lm = max(f, key=key)
        self.lc = f[self.lm]
        self.ecart = max(sum(e) for e in f) - sum(self.lm)


def _sub_multiple(h: Dict, c, mono: Exp, g: Dict, p) -> None:
    for e, v in g.items():
        t = tuple(a + b for a, b in zip(e, mono))
        nv = h.get(t, 0) - c * v
        if p:
            nv %= p
        if nv:
            h[t] = nv
        else:
            h.pop(t, None)


def _mora_reduce(h: Dict, T: List[_LocalElem], key, field) -> Dict:
    """Weak normal form with the écart strategy (lazy reducer set T)."""
    h = dict(h)
    T = list(T)
    p = field.p
    while h:
        lm = max(h, key=key)
        cands = [g for g in T if mono_divides(g.lm, lm)]
        if not cands:
            break
        g = min(cands, key=lambda g: g.ecart)
        eh = max(sum(e) for e in h) - sum(lm)
        if g.ecart > eh:
            T.append(_LocalElem(dict(h), key))
        c = h[lm] * field.inv(g.lc)
        if p:
            c %= p
        _sub_multiple(h, c, mono_div(lm, g.lm), g.f, p)
    return h


def mora_normal_form(f: Polynomial, basis: Sequence[Polynomial], order=LOCAL) -> Polynomial:
    """Mora's weak normal form of f with respect to ``basis`` under a local order.

    The result is 0 iff u*f lies in the ideal generated by ``basis`` for some
    unit u of the local ring; otherwise its leading monomial is divisible by
    no leading monomial of ``basis``.
    """
    order = as_order(order)
    key = order.key
    T = [_LocalElem(dict(g.coeffs), key) for g in basis if g]
    return Polynomial(f.ring, _mora_reduce(f.coeffs, T, key, f.ring.field))


def _monic_local(f: Dict, key, field) -> Dict:
    lm = max(f, key=key)
    c = field.inv(f[lm])
    p = field.p
    return {e: (v * c) % p if p else v * c for e, v in f.items()}


def standard_basis(I: Ideal, order=LOCAL) -> List[Polynomial]:
    """Standard basis of I S_(x) under a local order (Mora's algorithm)."""
    order = as_order(order)
    if order.is_global:
        return I.groebner_basis(order)
    ring, field, key = I.ring, I.ring.field, order.key
    for g in I.gens:
        if g.constant_term():
            raise UnitIdealError(f"ideal is the unit ideal locally (generator {g} is a unit)")
    S: List[_LocalElem] = []
    pairs: Dict[Tuple[int, int], tuple] = {}

    def add(f):
        f = _monic_local(f, key, field)
        el = _LocalElem(f, key)
        idx = len(S)
        for j, g in enumerate(S):
            L = mono_lcm(g.lm, el.lm)
            pairs[(j, idx)] = (sum(L), g.ecart + el.ecart, idx)
        S.append(el)

    for g in sorted(I.gens, key=lambda g: (g.low_degree(), len(g.coeffs))):
        h = _mora_reduce(g.coeffs, S, key, field) if S else dict(g.coeffs)
        if h:
            add(h)
    while pairs:
        i, j = min(pairs, key=pairs.__getitem__)
        del pairs[(i, j)]
        L = mono_lcm(S[i].lm, S[j].lm)
        skip = False
        for k, g in enumerate(S):
            if k in (i, j) or not mono_divides(g.lm, L):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                skip = True
                break
        if skip:
            continue
        a, b = S[i], S[j]
        s: Dict = {}
        p = field.p
        _sub_multiple(s, -1, mono_div(L, a.lm), a.f, p)
        _sub_multiple(s, 1, mono_div(L, b.lm), b.f, p)
        h = _mora_reduce(s, S, key, field)
        if h:
            add(h)
    # drop elements whose leading monomial is a multiple of another's
    keep = []
    for i, g in enumerate(S):
        if any(
            mono_divides(h.lm, g.lm) and (h.lm != g.lm or j < i)
            for j, h in enumerate(S)
            if j != i
        ):
            continue
        keep.append(g)
    keep.sort(key=lambda g: key(g.lm), reverse=True)
    return [Polynomial(ring, g.f) for g in keep]


@dataclass
class TangentConeData:
    """in*(I) and the associated graded ring G = S/in*(I) of A = S_(x)/I."""

    source: Ideal
    standard_basis: List[Polynomial]
    initial_ideal: Ideal

    @property
    def ring(self) -> PolynomialRing:
        return self.source.ring


def tangent_cone(I: Ideal) -> TangentConeData:
    cached = I.__dict__.get("_tangent_cone")
    if cached is not None:
        return cached
    sb = standard_basis(I, LOCAL)
    forms = [g.initial_form() for g in sb]
    J = Ideal(I.ring, forms)
    tc = I.__dict__["_tangent_cone"] = TangentConeData(I, sb, Ideal(I.ring, J.groebner_basis()))
    return tc


# --- colon and saturation -----------------------------------------------------


def colon(I: Ideal, f: Polynomial) -> Ideal:
    """I : f from the syzygies of (f, g_1, ..., g_k)."""
    from .gb import syzygy_generators  # local import keeps module order flat

    ring = I.ring
    gens = I.groebner_basis() or []
    cols = [to_vector(f)] + [to_vector(g) for g in gens]
    homog = f.is_homogeneous() and I.is_homogeneous
    degs = [0] if homog else None
    syz = syzygy_generators(cols, ring.field, GREVLEX, degs, nvars=ring.n)
    return Ideal(ring, [from_vector(ring, s, 0) for s in syz] + list(I.gens))


def colon_maximal(I: Ideal) -> Ideal:
    """I : (x_1, ..., x_n), as the kernel of S -> (S/I)^n, a -> (a x_1, ..., a x_n)."""
    from .gb import syzygy_generators

    ring = I.ring
    n = ring.n
    gens = I.groebner_basis()
    first = {}
    for i, x in enumerate(ring.gens()):
        first[(i, next(iter(x.coeffs)))] = 1
    cols = [first]
    for i in range(n):
        for g in gens:
            cols.append(to_vector(g, i))
    degs = [0] * n if I.is_homogeneous else None
    syz = syzygy_generators(cols, ring.field, GREVLEX, degs, nvars=ring.n)
    return Ideal(ring, [from_vector(ring, s, 0) for s in syz] + list(gens))


def quotient_length(I: Ideal, J: Ideal) -> int:
    """dim_k J/I for I ⊆ J with J/I of finite length."""
    num = tp_add(affine_numerator(I), affine_numerator(J), scale=-1)
    for _ in range(I.ring.n):
        num = div_one_minus_t(num)
    return int(tp_eval(num, 1))


def saturation_cap(I: Ideal) -> int:
    n = I.ring.n
    leads = I.leading_monomials()
    spread = sum(max((e[v] for e in leads), default=0) for v in range(n))
    return 2 * spread + n + 2


def colon_saturate_maximal(I: Ideal) -> Tuple[Ideal, int]:
    """(I : m^oo, dim_k (I : m^oo)/I) by iterating J <- J : m."""
    if I.is_unit():
        raise UnitIdealError("saturation of the unit ideal")
    cap = saturation_cap(I)
    J = I
    for _ in range(cap + 1):
        K = colon_maximal(J)
        if K == J:
            return J, quotient_length(I, J)
        J = K
    raise RuntimeError(f"saturation did not stabilise within {cap} steps")
