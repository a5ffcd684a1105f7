"""Buchberger's algorithm for submodules of graded free modules.

Vectors are dicts ``{(component, exponents): coefficient}``; an ideal is the
rank-one case with every component equal to 0.  The engine can carry a
second vector (the *tail*) along every reduction.  Seeding generator ``j``
with tail ``e_j`` makes every tail record how an element is built from the
generators, and each S-pair that reduces to zero leaves behind a syzygy.
"""
from __future__ import annotations

from collections import defaultdict
from operator import add
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import Exp, TermOrder, mono_divides, mono_lcm, mono_div

Term = Tuple[int, Exp]
Vector = Dict[Term, object]


class ModuleOrder:
    """Term-over-position order on ``(comp, exp)`` terms.

    With ``degrees`` given the order is graded by ``|exp| + degrees[comp]``
    first; otherwise the monomial order decides and the component only
    breaks ties.
    """

    def __init__(self, order: TermOrder, degrees: Optional[Sequence[int]] = None):
        self.order = order
        self.degrees = None if degrees is None else tuple(degrees)
        self._cache: Dict[Term, tuple] = {}
        mkey = order.key
        if self.degrees is None:
            def raw(t):
                return mkey(t[1]) + (-t[0],)
        else:
            degs = self.degrees

            def raw(t):
                return (sum(t[1]) + degs[t[0]],) + mkey(t[1]) + (-t[0],)
        self._raw = raw

    def key(self, t: Term) -> tuple:
        k = self._cache.get(t)
        if k is None:
            k = self._cache[t] = self._raw(t)
        return k

    def degree(self, t: Term) -> int:
        if self.degrees is None:
            return sum(t[1])
        return sum(t[1]) + self.degrees[t[0]]

    def lead(self, f: Vector) -> Term:
        return max(f, key=self.key)


def shift_term(t: Term, mono: Exp) -> Term:
    return (t[0], tuple(map(add, t[1], mono)))


def axpy(f: Vector, c, mono: Exp, g: Vector, p) -> None:
    """In place: f -= c * x^mono * g."""
    for (comp, e), v in g.items():
        t = (comp, tuple(map(add, e, mono)))
        nv = f.get(t, 0) - c * v
        if p:
            nv %= p
        if nv:
            f[t] = nv
        else:
            f.pop(t, None)


def scaled(f: Vector, c, p) -> Vector:
    if p:
        return {t: v * c % p for t, v in f.items()}
    return {t: v * c for t, v in f.items()}


class _Elem:
    __slots__ = ("f", "t", "lt", "lc")

    def __init__(self, f, t, lt, lc):
        self.f = f
        self.t = t
        self.lt = lt
        self.lc = lc


class GroebnerEngine:
    """Incremental Buchberger with the normal selection strategy.

    Pairs are selected by smallest lcm (degree first).  Buchberger's chain
    criterion is always used; the coprime-leads criterion only in the
    untracked rank-one case where it is valid.
    """

    def __init__(self, morder: ModuleOrder, field, track: bool = False, ideal: bool = False):
        self.morder = morder
        self.field = field
        self.p = field.p
        self.track = track
        self.use_product = ideal and not track
        self.elems: List[_Elem] = []
        self.by_comp: Dict[int, List[int]] = defaultdict(list)
        self.pairs: Dict[Tuple[int, int], tuple] = {}
        self.syzygies: List[Vector] = []

    # --- reduction ---------------------------------------------------------
    def _reducer(self, lt: Term) -> Optional[_Elem]:
        comp, e = lt
        elems = self.elems
        for k in self.by_comp.get(comp, ()):
            g = elems[k]
            if mono_divides(g.lt[1], e):
                return g
        return None

    def top_reduce(self, f: Vector, t: Optional[Vector] = None):
        f = dict(f)
        t = dict(t) if t is not None else None
        key = self.morder.key
        p = self.p
        inv = self.field.inv
        while f:
            lt = max(f, key=key)
            g = self._reducer(lt)
            if g is None:
                break
            c = f[lt] * inv(g.lc)
            if p:
                c %= p
            mono = mono_div(lt[1], g.lt[1])
            axpy(f, c, mono, g.f, p)
            if t is not None and g.t:
                axpy(t, c, mono, g.t, p)
        return f, t

    def normal_form(self, f: Vector) -> Vector:
        """Fully reduced remainder of ``f``."""
        f = dict(f)
        key = self.morder.key
        p = self.p
        inv = self.field.inv
        rem: Vector = {}
        while f:
            lt = max(f, key=key)
            g = self._reducer(lt)
            if g is None:
                rem[lt] = f.pop(lt)
                continue
            c = f[lt] * inv(g.lc)
            if p:
                c %= p
            axpy(f, c, mono_div(lt[1], g.lt[1]), g.f, p)
        return rem

    def contains(self, f: Vector) -> bool:
        return not self.top_reduce(f)[0]

    # --- basis growth --------------------------------------------------------
    def add(self, f: Vector, t: Optional[Vector] = None, reduce: bool = True) -> Optional[int]:
        """Add a generator; returns its index, or None if it reduced to zero."""
        if reduce and self.elems:
            f, t = self.top_reduce(f, t)
        else:
            f = dict(f)
            t = dict(t) if t is not None else None
        if not f:
            if self.track and t:
                self.syzygies.append(t)
            return None
        lt = self.morder.lead(f)
        c = self.field.inv(f[lt])
        f = scaled(f, c, self.p)
        if t is not None:
            t = scaled(t, c, self.p)
        idx = len(self.elems)
        comp, e = lt
        deg = self.morder.degree
        key = self.morder.key
        for j in self.by_comp[comp]:
            lj = self.elems[j].lt[1]
            if self.use_product and all(a == 0 or b == 0 for a, b in zip(lj, e)):
                continue
            L = (comp, mono_lcm(lj, e))
            self.pairs[(j, idx)] = (deg(L), key(L))
        self.elems.append(_Elem(f, t, lt, 1))
        self.by_comp[comp].append(idx)
        return idx

    def _chain_skip(self, i: int, j: int) -> bool:
        comp, L = self.pair_lcm(i, j)
        pairs = self.pairs
        for k in self.by_comp[comp]:
            if k == i or k == j:
                continue
            if not mono_divides(self.elems[k].lt[1], L):
                continue
            if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
                continue
            return True
        return False

    def pair_lcm(self, i: int, j: int) -> Term:
        a, b = self.elems[i], self.elems[j]
        return (a.lt[0], mono_lcm(a.lt[1], b.lt[1]))

    def spoly(self, i: int, j: int):
        a, b = self.elems[i], self.elems[j]
        comp, L = self.pair_lcm(i, j)
        p = self.p
        f: Vector = {}
        axpy(f, -1, mono_div(L, a.lt[1]), a.f, p)
        axpy(f, 1, mono_div(L, b.lt[1]), b.f, p)
        t = None
        if self.track:
            t = {}
            if a.t:
                axpy(t, -1, mono_div(L, a.lt[1]), a.t, p)
            if b.t:
                axpy(t, 1, mono_div(L, b.lt[1]), b.t, p)
        return f, t

    def complete(self, max_degree: Optional[int] = None) -> "GroebnerEngine":
        """Process pending pairs (only those of degree <= max_degree if given)."""
        pairs = self.pairs
        while pairs:
            ij = min(pairs, key=pairs.__getitem__)
            if max_degree is not None and pairs[ij][0] > max_degree:
                break
            del pairs[ij]
            if self._chain_skip(*ij):
                continue
            f, t = self.spoly(*ij)
            self.add(f, t)
        return self

    # --- output ----------------------------------------------------------------
    def minimal_indices(self) -> List[int]:
        keep = []
        for i, g in enumerate(self.elems):
            comp, e = g.lt
            redundant = False
            for j in self.by_comp[comp]:
                if j == i:
                    continue
                h = self.elems[j].lt[1]
                if mono_divides(h, e) and (h != e or j < i):
                    redundant = True
                    break
            if not redundant:
                keep.append(i)
        return keep

    def reduced_basis(self) -> List[Vector]:
        """The reduced Gröbner basis, sorted by decreasing leading term."""
        keep = self.minimal_indices()
        sub = GroebnerEngine(self.morder, self.field)
        for i in keep:
            g = self.elems[i]
            sub.elems.append(_Elem(g.f, None, g.lt, 1))
            sub.by_comp[g.lt[0]].append(len(sub.elems) - 1)
        out = []
        key = self.morder.key
        for k, i in enumerate(keep):
            g = self.elems[i]
            tail = dict(g.f)
            lead_c = tail.pop(g.lt)
            # tail terms are below the lead, so the lead of g itself is never used
            saved = sub.by_comp[g.lt[0]]
            sub.by_comp[g.lt[0]] = [m for m in saved if m != k]
            rem = sub.normal_form(tail)
            sub.by_comp[g.lt[0]] = saved
            rem[g.lt] = lead_c
            out.append(rem)
        out.sort(key=lambda v: key(self.morder.lead(v)), reverse=True)
        return out

    def lead_terms(self) -> List[Term]:
        return [self.elems[i].lt for i in self.minimal_indices()]


def groebner_vectors(vectors: Sequence[Vector], morder: ModuleOrder, field, ideal=False) -> GroebnerEngine:
    eng = GroebnerEngine(morder, field, ideal=ideal)
    for v in sorted(vectors, key=len):
        if v:
            eng.add(v)
    return eng.complete()


def vector_degree(v: Vector, degrees: Sequence[int]) -> int:
    """Degree of a homogeneous vector (taken from any of its terms)."""
    c, e = next(iter(v))
    return sum(e) + degrees[c]


def syzygy_generators(
    columns: Sequence[Vector],
    field,
    order: TermOrder,
    target_degrees: Optional[Sequence[int]] = None,
    column_degrees: Optional[Sequence[int]] = None,
    nvars: Optional[int] = None,
) -> List[Vector]:
    """Generators of the syzygy module of ``columns``.

    Each column j is seeded with the tail e_j; reductions to zero leave a
    tail that is a syzygy, and Schreyer's theorem makes the collection
    generate all of them.  Terms of the result are ``(j, exp)``.
    """
    morder = ModuleOrder(order, target_degrees)
    eng = GroebnerEngine(morder, field, track=True)
    zero = (0,) * nvars if nvars is not None else _zero_exp(columns)
    idx = list(range(len(columns)))
    if column_degrees is not None:
        idx.sort(key=lambda j: column_degrees[j])
    for j in idx:
        eng.add(columns[j], {(j, zero): 1})
    eng.complete()
    return eng.syzygies


def _zero_exp(columns):
    for col in columns:
        for _, e in col:
            return (0,) * len(e)
    raise ValueError("cannot infer the number of variables from zero columns")


def minimal_generators(
    vectors: Sequence[Vector],
    field,
    order: TermOrder,
    degrees: Sequence[int],
) -> List[Vector]:
    """Minimal homogeneous generators (greedy by degree with membership tests)."""
    items = sorted(
        ((vector_degree(v, degrees), len(v), k) for k, v in enumerate(vectors) if v)
    )
    eng = GroebnerEngine(ModuleOrder(order, degrees), field)
    kept = []
    for d, _, k in items:
        v = vectors[k]
        eng.complete(max_degree=d)
        if eng.contains(v):
            continue
        kept.append(v)
        eng.add(v)
    return kept
