"""Instance files, the end-to-end analysis and the random corpus.

Instance grammar, one directive per line (``#`` starts a comment)::

    field: F32003          # or Q
    vars: x, y
    ideal: x^2, x*y^3
    extdeg: 4              # optional extended degree D(A)
    label: some text       # optional
"""
from __future__ import annotations

import random
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import DEFAULT_PRIME, FieldError, field_from_descriptor
from .basis import Ideal, TangentConeData, tangent_cone
from .bounds import BoundVerdict, InstanceFacts, _checks
from .degree import DegreeReport, hdeg
from .hilbert import HilbertData, reduce_series
from .invariants import (
    _graded_module,
    g_regularity,
    hilbert_numerator,
    hilbert_samuel,
    reg_of_quotient_mod_L,
    regularity,
)
from .poly import ParseError, PolynomialRing, format_polynomial, parse_polynomial
from .resolution import BettiTable, betti_table, free_resolution

_DIRECTIVES = ("field", "vars", "ideal", "extdeg", "label")


class InstanceError(ValueError):
    def __init__(self, msg, line=None, col=None):
        where = "" if line is None else f"line {line}" + ("" if col is None else f", column {col}") + ": "
        super().__init__(where + msg)
        self.line = line
        self.col = col


@dataclass(frozen=True)
class InstanceSpec:
    field: str
    vars: Tuple[str, ...]
    gens: Tuple[str, ...]
    extdeg: Optional[int] = None
    label: Optional[str] = None

    def ring(self) -> PolynomialRing:
        return PolynomialRing(field_from_descriptor(self.field), self.vars)

    def ideal(self, ring: Optional[PolynomialRing] = None) -> Ideal:
        ring = ring or self.ring()
        return Ideal(ring, [parse_polynomial(g, ring) for g in self.gens])

    def emit(self) -> str:
        lines = [f"field: {self.field}", f"vars: {', '.join(self.vars)}", f"ideal: {', '.join(self.gens)}"]
        if self.extdeg is not None:
            lines.append(f"extdeg: {self.extdeg}")
        if self.label is not None:
            lines.append(f"label: {self.label}")
        return "\n".join(lines) + "\n"


def _split_top(text: str, start: int) -> List[Tuple[str, int]]:
    """Split on commas outside parentheses; returns (piece, column offset)."""
    out, depth, cur = [], 0, start
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append((text[cur - start : k], cur))
            cur = start + k + 1
    out.append((text[cur - start :], cur))
    return out


def parse_instance(text: str) -> InstanceSpec:
    seen: Dict[str, Tuple[str, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            raise InstanceError("expected 'directive: value'", lineno, 1)
        key, value = line.split(":", 1)
        key = key.strip().lower()
        if key not in _DIRECTIVES:
            raise InstanceError(f"unknown directive {key!r}", lineno, 1)
        if key in seen:
            raise InstanceError(f"duplicate directive {key!r}", lineno, 1)
        seen[key] = (value, lineno, len(key) + 1 + (len(line.split(":", 1)[0]) - len(key)))
    for key in ("field", "vars", "ideal"):
        if key not in seen:
            raise InstanceError(f"missing directive {key!r}")

    value, lineno, _ = seen["field"]
    fdesc = value.strip()
    try:
        field_obj = field_from_descriptor(fdesc)
    except FieldError as exc:
        raise InstanceError(str(exc), lineno) from None

    value, lineno, off = seen["vars"]
    names = []
    for piece, col in _split_top(value, off):
        name = piece.strip()
        col += len(piece) - len(piece.lstrip()) + 1
        if not name.isidentifier():
            raise InstanceError(f"bad variable name {name!r}", lineno, col)
        if name in names:
            raise InstanceError(f"variable {name!r} declared twice", lineno, col)
        names.append(name)
    if not names:
        raise InstanceError("no variables declared", lineno)
    ring = PolynomialRing(field_obj, names)

    value, lineno, off = seen["ideal"]
    gens = []
    if value.strip():
        for piece, col in _split_top(value, off):
            if not piece.strip():
                raise InstanceError("empty generator", lineno, col + 1)
            parse_polynomial(piece, ring, lineno, col)  # raises ParseError with line/column
            gens.append(" ".join(piece.split()))

    extdeg = None
    if "extdeg" in seen:
        value, lineno, _ = seen["extdeg"]
        try:
            extdeg = int(value.strip())
        except ValueError:
            raise InstanceError(f"extdeg must be an integer, got {value.strip()!r}", lineno) from None
    label = seen["label"][0].strip() if "label" in seen else None
    return InstanceSpec(fdesc, tuple(names), tuple(gens), extdeg, label)


def example_family(r: int, field: str = f"F{DEFAULT_PRIME}") -> InstanceSpec:
    """k[[x,y]]/(x^2, x y^r): multiplicity 1, not Cohen-Macaulay."""
    if r < 1:
        raise ValueError("r >= 1")
    return InstanceSpec(field, ("x", "y"), ("x^2", f"x*y^{r}"), label=f"x^2, x*y^{r}")


# --- analysis ----------------------------------------------------------------------


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"stage {stage}: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class AnalysisReport:
    instance: InstanceSpec
    standard_basis: List[str]
    initial_ideal: List[str]
    dim: int
    depth: int
    e: int
    hdeg: Optional[int]
    hdeg_source: Optional[str]
    lengthL: int
    betti: BettiTable
    reg: int
    greg: Optional[int]
    reg_prime: Optional[int]
    hilbert: HilbertData
    verdicts: List[BoundVerdict]
    skipped: List[str]
    degree: Optional[DegreeReport] = None
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def deviation(self) -> Optional[int]:
        return None if self.hdeg is None else self.hdeg - self.e

    @property
    def hs(self) -> List[int]:
        return list(self.hilbert.samuel)

    @property
    def e_coeffs(self) -> List[int]:
        return list(self.hilbert.e_coeffs)

    @property
    def failures(self) -> List[BoundVerdict]:
        return [v for v in self.verdicts if not v.holds]

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "instance": {
                "field": self.instance.field,
                "vars": list(self.instance.vars),
                "ideal": list(self.instance.gens),
                "extdeg": self.instance.extdeg,
                "label": self.instance.label,
            },
            "standard_basis": self.standard_basis,
            "initial_ideal": self.initial_ideal,
            "dim": self.dim,
            "depth": self.depth,
            "e": self.e,
            "hdeg": self.hdeg,
            "hdeg_source": self.hdeg_source,
            "deviation": self.deviation,
            "lengthL": self.lengthL,
            "reg": self.reg,
            "greg": self.greg,
            "reg_prime": self.reg_prime,
            "betti": [list(t) for t in self.betti.as_triples()],
            "hs": self.hs,
            "e_coeffs": self.e_coeffs,
            "verdicts": [
                {"thm": v.thm, "inputs": dict(v.inputs), "bound": v.bound, "actual": v.actual, "holds": v.holds}
                for v in self.verdicts
            ],
            "skipped": list(self.skipped),
        }
        if timings:
            out["timing"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


@contextmanager
def _stage(name: str, timings: Dict[str, float]):
    t0 = time.perf_counter()
    try:
        yield
    except StageError:
        raise
    except Exception as exc:
        raise StageError(name, exc) from exc
    finally:
        timings[name] = timings.get(name, 0.0) + time.perf_counter() - t0


def analyze(spec: InstanceSpec, horizon: Optional[int] = None) -> AnalysisReport:
    timings: Dict[str, float] = {}
    with _stage("ring", timings):
        ring = spec.ring()
        I = spec.ideal(ring)
    with _stage("tangent-cone", timings):
        tc: TangentConeData = tangent_cone(I)
        G = tc.initial_ideal
    with _stage("resolution", timings):
        res = free_resolution(_graded_module(G))
        betti = betti_table(res)
        depth = ring.n - betti.projective_dimension
    with _stage("regularity", timings):
        reg = regularity(G, "both")
        greg = g_regularity(G)
    with _stage("hilbert", timings):
        _, d = reduce_series(hilbert_numerator(G), ring.n)
        hz = max(horizon or 0, reg + d + 10, 20)
        hd = hilbert_samuel(G, hz)
    with _stage("saturation", timings):
        reg_prime, lengthL = reg_of_quotient_mod_L(I)
    D, source, degree = None, None, None
    with _stage("degree", timings):
        if I.is_homogeneous:
            degree = hdeg(I)
            D, source = degree.hdeg, "hdeg"
            if degree.e != hd.multiplicity:
                raise ArithmeticError(f"multiplicity {degree.e} of S/I differs from e(A) = {hd.multiplicity}")
        elif spec.extdeg is not None:
            if spec.extdeg < hd.multiplicity:
                raise ValueError(f"extdeg {spec.extdeg} is below the multiplicity {hd.multiplicity}")
            D, source = spec.extdeg, "external"
    with _stage("bounds", timings):
        facts = InstanceFacts(
            d=d,
            e=hd.multiplicity,
            hs=hd.samuel,
            e_coeffs=hd.e_coeffs,
            reg=reg,
            greg=greg,
            lengthL=lengthL,
            reg_prime=reg_prime,
            D=D,
            h=hd.values,
            p=[hd.p(n) for n in range(len(hd.values))],
        )
        verdicts, skipped = _checks(facts)
    return AnalysisReport(
        instance=spec,
        standard_basis=[format_polynomial(g) for g in tc.standard_basis],
        initial_ideal=[format_polynomial(g) for g in G.groebner_basis()],
        dim=d,
        depth=depth,
        e=hd.multiplicity,
        hdeg=D,
        hdeg_source=source,
        lengthL=lengthL,
        betti=betti,
        reg=reg,
        greg=greg,
        reg_prime=reg_prime,
        hilbert=hd,
        verdicts=verdicts,
        skipped=skipped,
        degree=degree,
        timings=timings,
    )


def format_report(rep: AnalysisReport, rows: int = 12) -> str:
    inst = rep.instance
    out = []
    if inst.label:
        out.append(f"# {inst.label}")
    out.append(f"ring      {inst.field}[{', '.join(inst.vars)}]")
    out.append(f"ideal     ({', '.join(inst.gens)})")
    out.append(f"std basis {', '.join(rep.standard_basis) or '0'}")
    out.append(f"in*(I)    ({', '.join(rep.initial_ideal)})")
    out.append("")
    hd = "-" if rep.hdeg is None else f"{rep.hdeg} ({rep.hdeg_source})"
    dev = "-" if rep.deviation is None else str(rep.deviation)
    greg = "-" if rep.greg is None else str(rep.greg)
    regp = "-" if rep.reg_prime is None else str(rep.reg_prime)
    out.append(f"dim {rep.dim}   depth(G) {rep.depth}   e {rep.e}   D {hd}   I {dev}   l(L) {rep.lengthL}")
    out.append(f"reg(G) {rep.reg}   g-reg(G) {greg}   reg(G') {regp}")
    out.append("e_i       " + ", ".join(str(c) for c in rep.e_coeffs))
    out.append("")
    out.append("Betti table of G")
    out.append(str(rep.betti))
    out.append("")
    out.append("  n   h_G(n)   l(A/m^(n+1))")
    for n in range(min(rows, len(rep.hs))):
        out.append(f"{n:>3} {rep.hilbert.values[n]:>8} {rep.hs[n]:>14}")
    out.append("")
    groups: Dict[str, List[BoundVerdict]] = {}
    for v in rep.verdicts:
        groups.setdefault(v.thm, []).append(v)
    out.append("checks")
    for thm, vs in groups.items():
        bad = [v for v in vs if not v.holds]
        tight = min(v.slack for v in vs)
        status = "ok" if not bad else f"FAILED x{len(bad)}"
        out.append(f"  {thm:<18} {len(vs):>3} checked  min slack {tight:<6} {status}")
        for v in bad:
            out.append(f"    {dict(v.inputs)} bound {v.bound} actual {v.actual}")
    for s in rep.skipped:
        out.append(f"  skipped: {s}")
    return "\n".join(out)


# --- random corpus ----------------------------------------------------------------------


def _random_monomial(rng: random.Random, n: int, deg: int) -> Tuple[int, ...]:
    e = [0] * n
    for _ in range(deg):
        e[rng.randrange(n)] += 1
    return tuple(e)


def _mono_text(names: Sequence[str], e: Sequence[int]) -> str:
    parts = [v if a == 1 else f"{v}^{a}" for v, a in zip(names, e) if a]
    return "*".join(parts) or "1"


_NAMES = ("x", "y", "z", "w")


def random_monomial_instance(rng: random.Random, max_vars=4, max_gens=5, max_deg=5) -> InstanceSpec:
    n = rng.randint(2, max_vars)
    names = _NAMES[:n]
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        e = _random_monomial(rng, n, rng.randint(1, max_deg))
        text = _mono_text(names, e)
        if text not in gens:
            gens.append(text)
    return InstanceSpec(f"F{DEFAULT_PRIME}", names, tuple(gens))


def random_binomial_instance(rng: random.Random, max_vars=4, max_gens=4, max_deg=3) -> InstanceSpec:
    """Homogeneous binomials m1 - c*m2 with c a random nonzero residue."""
    n = rng.randint(2, max_vars)
    names = _NAMES[:n]
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        deg = rng.randint(1, max_deg)
        a = _random_monomial(rng, n, deg)
        b = _random_monomial(rng, n, deg)
        while b == a:
            b = _random_monomial(rng, n, deg)
        c = rng.randrange(1, DEFAULT_PRIME)
        gens.append(f"{_mono_text(names, a)} - {c}*{_mono_text(names, b)}")
    return InstanceSpec(f"F{DEFAULT_PRIME}", names, tuple(gens))


def corpus_specs(seed: int, monomial: int = 100, binomial: int = 50) -> List[Tuple[str, InstanceSpec]]:
    """Deterministic corpus; each entry's tag ``seed:kind:index`` reproduces it alone."""
    out = []
    for k in range(monomial):
        tag = f"{seed}:monomial:{k}"
        out.append((tag, random_monomial_instance(random.Random(tag))))
    for k in range(binomial):
        tag = f"{seed}:binomial:{k}"
        out.append((tag, random_binomial_instance(random.Random(tag))))
    return out


def spec_from_tag(tag: str) -> InstanceSpec:
    _, kind, _ = tag.split(":")
    make = random_monomial_instance if kind == "monomial" else random_binomial_instance
    return make(random.Random(tag))


@dataclass
class CorpusSummary:
    instances: int = 0
    verdicts: int = 0
    holds: int = 0
    skipped: int = 0
    failures: List[dict] = field(default_factory=list)
    errors: List[dict] = field(default_factory=list)
    elapsed: float = 0.0
    by_theorem: Dict[str, List[int]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.errors

    def to_dict(self) -> dict:
        return {
            "instances": self.instances,
            "verdicts": self.verdicts,
            "holds": self.holds,
            "skipped": self.skipped,
            "failures": self.failures,
            "errors": self.errors,
            "by_theorem": self.by_theorem,
            "elapsed": round(self.elapsed, 3),
        }


def corpus_run(
    seed: int = 0,
    monomial: int = 100,
    binomial: int = 50,
    directory: Optional[str] = None,
    reports: Optional[list] = None,
) -> CorpusSummary:
    """Analyze the seeded corpus (or every ``*.txt`` instance in ``directory``)."""
    t0 = time.perf_counter()
    if directory is not None:
        items = [(str(p), parse_instance(p.read_text())) for p in sorted(Path(directory).glob("*.txt"))]
    else:
        items = corpus_specs(seed, monomial, binomial)
    summary = CorpusSummary()
    for tag, spec in items:
        summary.instances += 1
        try:
            rep = analyze(spec)
        except Exception as exc:
            summary.errors.append({"tag": tag, "instance": spec.emit(), "error": str(exc)})
            continue
        if reports is not None:
            reports.append((tag, rep))
        summary.verdicts += len(rep.verdicts)
        summary.skipped += len(rep.skipped)
        for v in rep.verdicts:
            row = summary.by_theorem.setdefault(v.thm, [0, 0])
            row[0] += 1
            row[1] += v.holds
            if v.holds:
                summary.holds += 1
            else:
                summary.failures.append({"tag": tag, "instance": spec.emit(), **v.as_dict()})
    summary.elapsed = time.perf_counter() - t0
    return summary
