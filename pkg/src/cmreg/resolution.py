"""Graded modules, minimal free resolutions, Betti tables and Ext.

A :class:`GradedModulePresentation` is a matrix whose columns (relations)
live in a graded free module ``F = ⊕ S(-degrees[i])``; it presents
``coker = F / <columns>``.  The same class carries the differentials of a
resolution, whose source degrees are ``relation_degrees``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import binomial
from .gb import (
    GroebnerEngine,
    ModuleOrder,
    Vector,
    axpy,
    minimal_generators,
    syzygy_generators,
    vector_degree,
)
from .hilbert import TPoly, lowest_degree, module_numerator, reduce_series, series_coefficient
from .poly import GREVLEX, Exp, Polynomial, PolynomialRing, TermOrder, as_order


class NotMinimalError(ValueError):
    pass


@dataclass(eq=False)
class GradedModulePresentation:
    ring: PolynomialRing
    degrees: Tuple[int, ...]
    relations: List[Vector]
    relation_degrees: List[int]
    _numerator: Optional[TPoly] = field(default=None, repr=False)
    _resolution: Optional[list] = field(default=None, repr=False)

    def __post_init__(self):
        self.degrees = tuple(self.degrees)
        self.relations = [dict(v) for v in self.relations]
        self.relation_degrees = list(self.relation_degrees)
        if len(self.relations) != len(self.relation_degrees):
            raise ValueError("one degree per relation required")
        for v, d in zip(self.relations, self.relation_degrees):
            for (c, e) in v:
                if sum(e) + self.degrees[c] != d:
                    raise ValueError(f"relation of degree {d} has a term {e} in component {c}")

    @classmethod
    def quotient(cls, ideal) -> "GradedModulePresentation":
        """S/I for a homogeneous ideal I."""
        if not ideal.is_homogeneous:
            raise ValueError("graded presentations need a homogeneous ideal")
        gens = ideal.groebner_basis() if ideal.gens else []
        return cls(
            ideal.ring,
            (0,),
            [{(0, e): c for e, c in g.coeffs.items()} for g in gens],
            [g.degree() for g in gens],
        )

    @classmethod
    def free(cls, ring, degrees: Sequence[int]) -> "GradedModulePresentation":
        return cls(ring, tuple(degrees), [], [])

    @classmethod
    def from_matrix(cls, ring, degrees, columns: Sequence[Sequence[Polynomial]]) -> "GradedModulePresentation":
        """Columns given as lists of polynomial entries (one per row)."""
        vecs, degs = [], []
        for col in columns:
            v: Vector = {}
            d = None
            for r, entry in enumerate(col):
                for e, c in entry.coeffs.items():
                    v[(r, e)] = c
                    d = sum(e) + degrees[r]
            if d is None:
                raise ValueError("zero columns need explicit degrees")
            vecs.append(v)
            degs.append(d)
        return cls(ring, tuple(degrees), vecs, degs)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def ncols(self) -> int:
        return len(self.relations)

    def entry(self, r: int, c: int) -> Polynomial:
        return Polynomial(self.ring, {e: v for (k, e), v in self.relations[c].items() if k == r})

    def matrix(self) -> List[List[Polynomial]]:
        return [[self.entry(r, c) for c in range(self.ncols)] for r in range(self.rank)]

    def key(self) -> tuple:
        return (
            self.degrees,
            tuple(
                (d, tuple(sorted(v.items())))
                for d, v in sorted(zip(self.relation_degrees, self.relations), key=lambda t: (t[0], sorted(t[1].items())))
            ),
        )

    def __repr__(self):
        return f"<module rank={self.rank} degrees={list(self.degrees)} relations={self.ncols}>"


# --- helpers ----------------------------------------------------------------------


def _zero_exp(ring) -> Exp:
    return (0,) * ring.n


def vec_times_poly(v: Vector, q: Dict[Exp, object], p) -> Vector:
    out: Vector = {}
    for e, c in q.items():
        axpy(out, -c, e, v, p)
    return out


def transpose(d: GradedModulePresentation) -> List[Vector]:
    """Columns of d^T, indexed by the rows of d."""
    cols: List[Vector] = [dict() for _ in range(d.rank)]
    for c, v in enumerate(d.relations):
        for (r, e), x in v.items():
            cols[r][(c, e)] = x
    return cols


def module_engine(M: GradedModulePresentation, order=GREVLEX) -> GroebnerEngine:
    eng = GroebnerEngine(ModuleOrder(as_order(order), M.degrees), M.ring.field)
    for v in sorted(M.relations, key=len):
        if v:
            eng.add(v)
    return eng.complete()


def hilbert_numerator_module(M: GradedModulePresentation) -> TPoly:
    """N(t) with HS_M(t) = N(t)/(1-t)^n (Laurent in t)."""
    if M._numerator is None:
        eng = module_engine(M)
        M._numerator = module_numerator(eng.lead_terms(), M.degrees, M.ring.n)
    return dict(M._numerator)


def graded_piece_dim(M: GradedModulePresentation, j: int) -> int:
    return series_coefficient(hilbert_numerator_module(M), M.ring.n, j)


def is_zero_module(M: GradedModulePresentation) -> bool:
    return not hilbert_numerator_module(M)


def initial_degree(M: GradedModulePresentation) -> Optional[int]:
    """Lowest degree of a nonzero graded piece (None for the zero module)."""
    return lowest_degree(hilbert_numerator_module(M))


# --- presentations and syzygies -----------------------------------------------------


def syzygies(M: GradedModulePresentation, order=GREVLEX) -> GradedModulePresentation:
    """Minimal generators of the syzygy module of the columns of M."""
    order = as_order(order)
    ring = M.ring
    srcdeg = M.relation_degrees
    if not M.relations:
        return GradedModulePresentation(ring, (), [], [])
    raw = syzygy_generators(M.relations, ring.field, order, M.degrees, srcdeg, nvars=ring.n)
    gens = minimal_generators(raw, ring.field, order, srcdeg)
    return GradedModulePresentation(ring, tuple(srcdeg), gens, [vector_degree(v, srcdeg) for v in gens])


def minimize_presentation(M: GradedModulePresentation, order=GREVLEX) -> GradedModulePresentation:
    """Same module, minimal generators and minimal relations."""
    ring, p = M.ring, M.ring.p
    zero = _zero_exp(ring)
    degrees = list(M.degrees)
    rels = minimal_generators(M.relations, ring.field, as_order(order), degrees)
    while True:
        hit = None
        for c, v in enumerate(rels):
            for (r, e), x in v.items():
                if e == zero:
                    hit = (c, r, x)
                    break
            if hit:
                break
        if hit is None:
            break
        c, r, u = hit
        pivot = rels[c]
        uinv = ring.field.inv(u)
        new = []
        for k, v in enumerate(rels):
            if k == c:
                continue
            q = {e: x * uinv for (rr, e), x in v.items() if rr == r}
            if p:
                q = {e: x % p for e, x in q.items()}
            if q:
                v = dict(v)
                for e, x in q.items():
                    axpy(v, x, e, pivot, p)
            # drop row r and renumber the rows after it
            w = {}
            for (rr, e), x in v.items():
                if rr == r:
                    raise ArithmeticError("elimination left an entry in the removed row")
                w[(rr - 1 if rr > r else rr, e)] = x
            new.append(w)
        del degrees[r]
        rels = minimal_generators(new, ring.field, as_order(order), degrees)
    return GradedModulePresentation(ring, tuple(degrees), rels, [vector_degree(v, degrees) for v in rels])


def free_resolution(
    M: GradedModulePresentation, minimal: bool = True, order=GREVLEX
) -> List[GradedModulePresentation]:
    """Differentials d_1, ..., d_s of a graded free resolution of M.

    ``d_i`` has target degrees F_{i-1} and relation degrees F_i.  With
    ``minimal=False`` the given presentation is resolved as it stands.
    """
    order = as_order(order)
    if minimal and M._resolution is not None and order == GREVLEX:
        return list(M._resolution)
    start = minimize_presentation(M, order) if minimal else M
    n = M.ring.n
    res = []
    d = start
    while True:
        res.append(d)
        if not d.relations:
            break
        if len(res) > n + 2:
            raise RuntimeError("resolution longer than the number of variables allows")
        d = syzygies(d, order)
    # the last differential has no columns: drop it unless it is d_1
    while len(res) > 1 and not res[-1].relations:
        res.pop()
    if minimal and order == GREVLEX:
        M._resolution = list(res)
    return res


def _free_degrees(res: Sequence[GradedModulePresentation]) -> List[Tuple[int, ...]]:
    """Degrees of F_0, F_1, ..., F_s."""
    out = [tuple(res[0].degrees)]
    for d in res:
        if d.relations:
            out.append(tuple(d.relation_degrees))
    return out


def is_minimal(res: Sequence[GradedModulePresentation]) -> bool:
    zero = _zero_exp(res[0].ring)
    return all(e != zero for d in res for v in d.relations for (_, e) in v)


def compose_is_zero(res: Sequence[GradedModulePresentation]) -> bool:
    """d_i ∘ d_{i+1} = 0 for every consecutive pair (exact products)."""
    for a, b in zip(res, res[1:]):
        p = a.ring.p
        for col in b.relations:
            acc: Vector = {}
            for (j, e), x in col.items():
                axpy(acc, -x, e, a.relations[j], p)
            if acc:
                return False
    return True


def minimize_resolution(res: Sequence[GradedModulePresentation]) -> List[GradedModulePresentation]:
    """Split off trivial summands S(-a) -> S(-a) by Gaussian elimination on unit entries."""
    ring = res[0].ring
    p = ring.p
    zero = _zero_exp(ring)
    mats = [
        {
            "rows": list(d.degrees),
            "cols": list(d.relation_degrees),
            "vecs": [dict(v) for v in d.relations],
        }
        for d in res
    ]
    i = 0
    while i < len(mats):
        m = mats[i]
        hit = None
        for c, v in enumerate(m["vecs"]):
            for (r, e), x in v.items():
                if e == zero:
                    hit = (c, r, x)
                    break
            if hit:
                break
        if hit is None:
            i += 1
            continue
        c, r, u = hit
        pivot = m["vecs"][c]
        uinv = ring.field.inv(u)
        # row operations clear column c outside row r; the rest of the block survives
        newvecs = []
        for k, v in enumerate(m["vecs"]):
            if k == c:
                continue
            newvecs.append({t: x for t, x in v.items()})
        pivot_rows: Dict[int, Dict[Exp, object]] = {}
        for (rr, e), x in pivot.items():
            if rr != r:
                pivot_rows.setdefault(rr, {})[e] = x
        # row_{r'} -= (pivot[r']/u) * row_r   for every column
        for v in newvecs:
            rowr = {e: x for (rr, e), x in v.items() if rr == r}
            if not rowr:
                continue
            for rr, q in pivot_rows.items():
                # entry (rr) -= q/u * rowr
                for e1, x1 in q.items():
                    for e2, x2 in rowr.items():
                        t = (rr, tuple(a + b for a, b in zip(e1, e2)))
                        nv = v.get(t, 0) - x1 * uinv * x2
                        if p:
                            nv %= p
                        if nv:
                            v[t] = nv
                        else:
                            v.pop(t, None)
        for k, v in enumerate(newvecs):
            newvecs[k] = {(rr - 1 if rr > r else rr, e): x for (rr, e), x in v.items() if rr != r}
        m["vecs"] = newvecs
        del m["rows"][r]
        del m["cols"][c]
        if i > 0:
            prev = mats[i - 1]
            prev["vecs"] = [v for k, v in enumerate(prev["vecs"]) if k != r]
            del prev["cols"][r]
        if i + 1 < len(mats):
            nxt = mats[i + 1]
            nxt["rows"] = [d for k, d in enumerate(nxt["rows"]) if k != c]
            nxt["vecs"] = [
                {(rr - 1 if rr > c else rr, e): x for (rr, e), x in v.items() if rr != c}
                for v in nxt["vecs"]
            ]
        i = max(i - 1, 0)
    out = [GradedModulePresentation(ring, tuple(m["rows"]), m["vecs"], m["cols"]) for m in mats]
    while len(out) > 1 and not out[-1].relations:
        out.pop()
    return out


# --- Betti tables and depth -----------------------------------------------------------


@dataclass
class BettiTable:
    entries: Dict[Tuple[int, int], int]
    nvars: int

    @property
    def projective_dimension(self) -> int:
        return max((i for (i, _), b in self.entries.items() if b), default=0)

    def regularity(self) -> int:
        return max(j - i for (i, j), b in self.entries.items() if b)

    def total(self, i: int) -> int:
        return sum(b for (k, _), b in self.entries.items() if k == i)

    def as_triples(self) -> List[Tuple[int, int, int]]:
        return sorted((i, j, b) for (i, j), b in self.entries.items() if b)

    def __str__(self):
        if not self.entries:
            return "(zero)"
        pd = self.projective_dimension
        rows = sorted({j - i for (i, j) in self.entries})
        lines = ["      " + " ".join(f"{i:>4}" for i in range(pd + 1))]
        lines.append("total:" + " ".join(f"{self.total(i):>4}" for i in range(pd + 1)))
        for r in range(rows[0], rows[-1] + 1):
            cells = []
            for i in range(pd + 1):
                b = self.entries.get((i, i + r), 0)
                cells.append(f"{b if b else '.':>4}")
            lines.append(f"{r:>5}:" + " ".join(cells))
        return "\n".join(lines)


def betti_table(res: Sequence[GradedModulePresentation]) -> BettiTable:
    if not is_minimal(res):
        raise NotMinimalError("Betti numbers need a minimal resolution")
    entries: Dict[Tuple[int, int], int] = {}
    for i, degs in enumerate(_free_degrees(res)):
        for j in degs:
            entries[(i, j)] = entries.get((i, j), 0) + 1
    return BettiTable(entries, res[0].ring.n)


def depth_from_betti(res: Sequence[GradedModulePresentation]) -> int:
    """Auslander-Buchsbaum: depth = n - pd."""
    return res[0].ring.n - betti_table(res).projective_dimension


def euler_characteristic(res: Sequence[GradedModulePresentation], j: int) -> int:
    """sum_i (-1)^i dim (F_i)_j."""
    n = res[0].ring.n
    total = 0
    for i, degs in enumerate(_free_degrees(res)):
        for a in degs:
            if j - a >= 0:
                total += (-1) ** i * binomial(j - a + n - 1, n - 1)
    return total


# --- Ext ------------------------------------------------------------------------------


def ext_module(M: GradedModulePresentation, i: int, res=None) -> GradedModulePresentation:
    """A minimal presentation of Ext^i_S(M, S) as ker(d_{i+1}^T)/im(d_i^T)."""
    ring = M.ring
    if res is None:
        res = free_resolution(M)
    fdeg = _free_degrees(res)
    s = len(fdeg) - 1
    empty = GradedModulePresentation(ring, (), [], [])
    if i < 0 or i > s:
        return empty
    dual_i = [-a for a in fdeg[i]]
    if not dual_i:
        return empty
    # kernel of d_{i+1}^T : F_i^* -> F_{i+1}^*
    if i == s:
        zero = _zero_exp(ring)
        K = [{(j, zero): 1} for j in range(len(dual_i))]
    else:
        d_next = res[i]  # d_{i+1}
        cols = transpose(d_next)
        raw = syzygy_generators(
            cols, ring.field, GREVLEX, [-a for a in fdeg[i + 1]], dual_i, nvars=ring.n
        )
        K = minimal_generators(raw, ring.field, GREVLEX, dual_i)
    if not K:
        return empty
    kdeg = [vector_degree(v, dual_i) for v in K]
    # image of d_i^T : F_{i-1}^* -> F_i^*
    U: List[Vector] = []
    udeg: List[int] = []
    if i > 0:
        U = [v for v in transpose(res[i - 1])]
        udeg = [-a for a in fdeg[i - 1]]
        keep = [k for k, v in enumerate(U) if v]
        U = [U[k] for k in keep]
        udeg = [udeg[k] for k in keep]
    rels: List[Vector] = []
    if U:
        raw = syzygy_generators(K + U, ring.field, GREVLEX, dual_i, kdeg + udeg, nvars=ring.n)
        k = len(K)
        for v in raw:
            w = {t: x for t, x in v.items() if t[0] < k}
            if w:
                rels.append(w)
    # relations among the kernel generators themselves are already zero in F_i^*
    H = GradedModulePresentation(ring, tuple(kdeg), rels, [vector_degree(v, kdeg) for v in rels])
    return minimize_presentation(H)
