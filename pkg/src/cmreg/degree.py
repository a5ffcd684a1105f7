"""Multiplicity, graded length and the homological degree.

    hdeg(M) = e(M) + sum_{i<r} C(r-1, i) hdeg(Ext^{n-i}(M, S)),   r = dim M

The recursion is on dimension; each Ext module is strictly smaller, which is
checked at every level.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from .arith import binomial
from .basis import Ideal
from .hilbert import reduce_series, tp_eval
from .resolution import GradedModulePresentation, ext_module, free_resolution, hilbert_numerator_module


class UnsupportedError(ValueError):
    pass


class NotGCMError(ValueError):
    pass


Module = Union[GradedModulePresentation, Ideal]


def as_module(M: Module) -> GradedModulePresentation:
    if isinstance(M, GradedModulePresentation):
        return M
    if not M.is_homogeneous:
        raise UnsupportedError("unsupported: supply D(A) externally")
    cached = M.__dict__.get("_graded_module")
    if cached is None:
        cached = M.__dict__["_graded_module"] = GradedModulePresentation.quotient(M)
    return cached


def _reduced(M: GradedModulePresentation):
    return reduce_series(hilbert_numerator_module(M), M.ring.n)


def module_dimension(M: Module) -> int:
    """Krull dimension; -1 for the zero module."""
    return _reduced(as_module(M))[1]


def multiplicity(M: Module) -> int:
    Q, d = _reduced(as_module(M))
    if d < 0:
        raise ValueError("the zero module has no multiplicity")
    return int(tp_eval(Q, 1))


def graded_length(M: Module):
    """Total k-dimension, or math.inf when M has positive dimension."""
    Q, d = _reduced(as_module(M))
    if d < 0:
        return 0
    if d > 0:
        return math.inf
    return int(tp_eval(Q, 1))


@dataclass
class ExtContribution:
    i: int
    ext_index: int
    dim: int
    hdeg: int
    weight: int


@dataclass
class DegreeReport:
    dim: int
    e: int
    hdeg: int
    levels: List[ExtContribution] = field(default_factory=list)
    local_lengths: Dict[int, object] = field(default_factory=dict)

    @property
    def deviation(self) -> int:
        return self.hdeg - self.e

    @property
    def gcm(self) -> bool:
        return all(v != math.inf for v in self.local_lengths.values())


def _hdeg(M: GradedModulePresentation, memo: Dict) -> int:
    key = M.key()
    if key in memo:
        return memo[key]
    Q, r = _reduced(M)
    if r < 0:
        memo[key] = 0
        return 0
    total = int(tp_eval(Q, 1))
    n = M.ring.n
    if r > 0:
        res = free_resolution(M)
        for i in range(r):
            E = ext_module(M, n - i, res)
            if not E.degrees:
                continue
            dE = module_dimension(E)
            if dE < 0:
                continue
            if dE >= r:
                raise ArithmeticError(f"dim Ext^{n - i} = {dE} is not below dim M = {r}")
            total += binomial(r - 1, i) * _hdeg(E, memo)
    memo[key] = total
    return total


def hdeg(M: Module, memo: Optional[Dict] = None) -> DegreeReport:
    """Homological degree with the per-level Ext table."""
    M = as_module(M)
    memo = {} if memo is None else memo
    Q, r = _reduced(M)
    if r < 0:
        return DegreeReport(-1, 0, 0)
    e = int(tp_eval(Q, 1))
    n = M.ring.n
    res = free_resolution(M)
    levels = []
    lengths: Dict[int, object] = {}
    total = e
    for i in range(r):
        E = ext_module(M, n - i, res)
        dE = module_dimension(E) if E.degrees else -1
        if dE >= r:
            raise ArithmeticError(f"dim Ext^{n - i} = {dE} is not below dim M = {r}")
        h = _hdeg(E, memo) if dE >= 0 else 0
        w = binomial(r - 1, i)
        total += w * h
        levels.append(ExtContribution(i, n - i, dE, h, w))
        lengths[i] = graded_length(E) if dE >= 0 else 0
    report = DegreeReport(r, e, total, levels, lengths)
    memo[M.key()] = total
    return report


def hdeg_gcm(M: Module) -> int:
    """e(M) + sum_{i<r} C(r-1, i) l(H^i(M)), defined when every such length is finite."""
    M = as_module(M)
    Q, r = _reduced(M)
    if r < 0:
        return 0
    n = M.ring.n
    res = free_resolution(M)
    total = int(tp_eval(Q, 1))
    for i in range(r):
        E = ext_module(M, n - i, res)
        length = graded_length(E) if E.degrees else 0
        if length == math.inf:
            raise NotGCMError("not gCM")
        total += binomial(r - 1, i) * length
    return total


def cm_deviation(M: Module) -> int:
    return hdeg(M).deviation
