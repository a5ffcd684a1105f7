"""Hilbert functions, Hilbert-Samuel data, local cohomology and regularity.

Graded quotients R = S/J are resolved over S.  Local cohomology is read off
the Ext modules through local duality::

    dim H^i(R)_q = dim Ext^{n-i}(R, S)_{-q-n}

so ``a_i(R) = -n - indeg Ext^{n-i}(R, S)`` and ``reg R = max(a_i + i)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .basis import Ideal, TangentConeData, UnitIdealError, colon_saturate_maximal, tangent_cone
from .hilbert import (
    HilbertData,
    hilbert_data_from_numerator,
    hilbert_numerator as monomial_numerator,
    hilbert_polynomial_value,
    interpolate,
    reduce_series,
    series_coefficient,
)
from .resolution import (
    GradedModulePresentation,
    betti_table,
    ext_module,
    free_resolution,
    graded_piece_dim,
    initial_degree,
)


class InconsistencyError(RuntimeError):
    """Two independent routes to the same number disagree."""


Graded = Union[Ideal, TangentConeData]


def graded_ideal(R: Graded) -> Ideal:
    """The homogeneous ideal J with G = S/J attached to R.

    A homogeneous ideal is its own tangent cone; for any other ideal the
    initial-form ideal is used.
    """
    if isinstance(R, TangentConeData):
        return R.initial_ideal
    if R.is_homogeneous:
        return R
    return tangent_cone(R).initial_ideal


def hilbert_numerator(R: Graded) -> Dict[int, int]:
    J = graded_ideal(R)
    return monomial_numerator(J.leading_monomials(), J.ring.n)


def hilbert_function(R: Graded, j: int) -> int:
    J = graded_ideal(R)
    return series_coefficient(hilbert_numerator(J), J.ring.n, j)


def hilbert_polynomial(R: Graded):
    """Coefficients of p(X), constant term first (empty list for p = 0)."""
    J = graded_ideal(R)
    Q, d = reduce_series(hilbert_numerator(J), J.ring.n)
    if d <= 0:
        return []
    return interpolate([(x, hilbert_polynomial_value(Q, d, x)) for x in range(d)])


# --- local cohomology -------------------------------------------------------------


@dataclass
class CohomologyTable:
    """Graded pieces of H^i(R) inside a window of degrees, plus the exact a_i."""

    nvars: int
    window: Tuple[int, int]
    dims: Dict[int, Dict[int, int]] = field(default_factory=dict)
    a: Dict[int, Optional[int]] = field(default_factory=dict)

    def dim(self, i: int, q: int) -> int:
        lo, hi = self.window
        if not lo <= q <= hi:
            raise ValueError(f"degree {q} outside the tabulated window {self.window}")
        return self.dims.get(i, {}).get(q, 0)

    def regularity(self) -> int:
        vals = [a + i for i, a in self.a.items() if a is not None]
        if not vals:
            raise ValueError("the zero module has no regularity")
        return max(vals)

    def g_regularity(self) -> Optional[int]:
        vals = [a + i for i, a in self.a.items() if a is not None and i > 0]
        return max(vals) if vals else None


def _graded_module(R: Graded) -> GradedModulePresentation:
    J = graded_ideal(R)
    M = J.__dict__.get("_graded_module")
    if M is None:
        if J.is_unit():
            raise UnitIdealError("the zero ring has no graded invariants")
        M = J.__dict__["_graded_module"] = GradedModulePresentation.quotient(J)
    return M


def ext_modules(M: GradedModulePresentation) -> List[GradedModulePresentation]:
    exts = M.__dict__.get("_exts")
    if exts is None:
        res = free_resolution(M)
        exts = M.__dict__["_exts"] = [ext_module(M, k, res) for k in range(M.ring.n + 1)]
    return exts


def cohomology_table(R, window: Optional[Tuple[int, int]] = None) -> CohomologyTable:
    M = R if isinstance(R, GradedModulePresentation) else _graded_module(R)
    n = M.ring.n
    exts = ext_modules(M)
    a: Dict[int, Optional[int]] = {}
    for i in range(n + 1):
        low = initial_degree(exts[n - i])
        a[i] = None if low is None else -n - low
    if window is None:
        top = max((v for v in a.values() if v is not None), default=0)
        window = (-n - 2, top + n + 2)
    lo, hi = window
    dims: Dict[int, Dict[int, int]] = {}
    for i in range(n + 1):
        if a[i] is None:
            continue
        E = exts[n - i]
        row = {}
        for q in range(lo, min(hi, a[i]) + 1):
            v = graded_piece_dim(E, -q - n)
            if v:
                row[q] = v
        dims[i] = row
    return CohomologyTable(n, (lo, hi), dims, a)


def local_cohomology_dim(exts: List[GradedModulePresentation], i: int, q: int) -> int:
    n = len(exts) - 1
    if not 0 <= i <= n:
        return 0
    return graded_piece_dim(exts[n - i], -q - n)


# --- regularity -------------------------------------------------------------------


def regularity_from_betti(R) -> int:
    M = R if isinstance(R, GradedModulePresentation) else _graded_module(R)
    return betti_table(free_resolution(M)).regularity()


def regularity_from_duality(R) -> int:
    return cohomology_table(R).regularity()


def regularity(R, route: str = "both") -> int:
    """Castelnuovo-Mumford regularity of G; ``route`` is betti, duality or both."""
    if route == "betti":
        return regularity_from_betti(R)
    if route == "duality":
        return regularity_from_duality(R)
    if route != "both":
        raise ValueError(f"unknown route {route!r}")
    r1 = regularity_from_betti(R)
    r2 = regularity_from_duality(R)
    if r1 != r2:
        raise InconsistencyError(f"regularity: Betti table gives {r1}, local duality gives {r2}")
    return r1


def g_regularity(R) -> Optional[int]:
    """Least m with H^i(R)_q = 0 for i > 0 and q >= m - i + 1 (None if every such H^i vanishes)."""
    return cohomology_table(R).g_regularity()


def is_weakly_regular(exts: List[GradedModulePresentation], m: int) -> bool:
    n = len(exts) - 1
    return all(local_cohomology_dim(exts, i, m - i + 1) == 0 for i in range(n + 1))


def weak_regularity(R, start: int = 0) -> int:
    """Least m >= start with H^i(R)_{m-i+1} = 0 for every i.

    For cyclic R = S/J of positive dimension any start works.  When R has
    finite length the boundary condition alone is too weak below 0 (k itself
    passes it at m = -2), which is why the default start is 0.
    """
    M = R if isinstance(R, GradedModulePresentation) else _graded_module(R)
    exts = ext_modules(M)
    top = max(v + i for i, v in cohomology_table(M).a.items() if v is not None)
    for m in range(start, top + 1):
        if is_weakly_regular(exts, m):
            return m
    return top if start <= top else start


def serre_defect(R, q: int, exts=None) -> Tuple[int, int]:
    """(h(q) - p(q), sum_i (-1)^i dim H^i(R)_q); equal by Serre's formula."""
    J = graded_ideal(R)
    n = J.ring.n
    num = hilbert_numerator(J)
    Q, d = reduce_series(num, n)
    left = series_coefficient(num, n, q) - hilbert_polynomial_value(Q, d, q)
    if exts is None:
        exts = ext_modules(_graded_module(J))
    right = sum((-1) ** i * local_cohomology_dim(exts, i, q) for i in range(n + 1))
    return left, right


# --- Hilbert-Samuel data of the local ring ------------------------------------------


def hilbert_samuel(A: Graded, horizon: Optional[int] = None) -> HilbertData:
    """Hilbert-Samuel data of A = S_(x)/I from G = S/in*(I).

    ``horizon`` defaults to reg(G) + d + 10.
    """
    J = graded_ideal(A)
    if J.is_unit():
        raise UnitIdealError("the zero ring has no Hilbert-Samuel function")
    n = J.ring.n
    num = hilbert_numerator(J)
    if horizon is None:
        _, d = reduce_series(num, n)
        horizon = regularity(J, "betti") + d + 10
    return hilbert_data_from_numerator(num, n, horizon)


def reg_of_quotient_mod_L(A: Ideal) -> Tuple[Optional[int], int]:
    """(reg G', l(L)) where G' is the tangent cone of A/L; reg G' is None when A/L = 0."""
    J, length = colon_saturate_maximal(A)
    if any(g.constant_term() for g in J.groebner_basis()):
        # J is not inside the maximal ideal at the origin: A/L = 0 after localizing
        return None, length
    return regularity(graded_ideal(J), "betti"), length
