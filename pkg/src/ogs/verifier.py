"""Cross-validation of spectra and audit of the published closed forms.

Checks come in two flavours.  ``cross_check`` compares the structural
spectrum of an arbitrary group against the dense oracle.
``check_paper_claim`` evaluates one published claim at concrete parameters
and compares it against independently computed quantities.  Each produces a
:class:`Report`; ``run_suite`` runs many of them in a thread pool and merges
the results in a deterministic order.
"""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import claims
from .errors import BadParams, OGSError, UnknownClaim
from .groups import Cyclic, Dihedral, GroupExpr, Product, order_profile
from .parser import format_group_expr
from .spectra import (
    ADJACENCY,
    LAPLACIAN,
    SIGNLESS,
    MatrixKind,
    Spectrum,
    build_matrix,
    charpoly_exact,
    clique_part,
    dense_spectrum,
    partition_quotient,
    quotient_matrix,
    structural_spectrum,
)
from .supergraph import DEFAULT_DENSE_CAP, class_graph, expand_dense, graph_stats

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-7
DOUBLING_TOL = 1e-9

PASS, FAIL, FINDING = "PASS", "FAIL", "FINDING"

ALL_KINDS = (
    ADJACENCY,
    MatrixKind.aalpha(Fraction(1, 4)),
    MatrixKind.aalpha(Fraction(1, 2)),
    MatrixKind.aalpha(Fraction(3, 4)),
    MatrixKind.aalpha(1),
    LAPLACIAN,
    SIGNLESS,
)


@dataclass
class Check:
    name: str
    status: str
    deviation: float | None
    details: str
    params: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def sort_key(self):
        def norm(v):
            if isinstance(v, (int, Fraction)):
                return (0, float(v), "")
            return (1, 0.0, str(v))
        return (self.name, tuple((k, norm(v)) for k, v in sorted(self.params.items())))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "deviation": self.deviation,
            "details": self.details,
            "params": {k: _jsonable(v) for k, v in sorted(self.params.items())},
            "wall_time": self.wall_time,
        }

    def line(self) -> str:
        ps = " ".join(f"{k}={_jsonable(v)}" for k, v in sorted(self.params.items()))
        dev = "-" if self.deviation is None else f"{self.deviation:.3e}"
        return f"{self.status:<7} {self.name} [{ps}] deviation={dev} {self.details}"


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)
    parameters: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "pass": sum(c.status == PASS for c in self.checks),
            "fail": sum(c.status == FAIL for c in self.checks),
            "finding": sum(c.status == FINDING for c in self.checks),
        }

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def sorted(self) -> "Report":
        return Report(sorted(self.checks, key=Check.sort_key), dict(self.parameters))

    def to_dict(self) -> dict:
        return {
            "parameters": {k: _jsonable(v) for k, v in sorted(self.parameters.items())},
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.summary(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _jsonable(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, MatrixKind):
        return str(v)
    if isinstance(v, (Cyclic, Dihedral, Product)):
        return format_group_expr(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _max_gap(a: Sequence[float], b: Sequence[float]) -> float:
    a, b = np.sort(np.asarray(a, float)), np.sort(np.asarray(b, float))
    if a.shape != b.shape:
        return float("inf")
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def _numeric(name, dev, tol, params, details="") -> Check:
    status = PASS if dev <= tol else FAIL
    text = f"tol={tol:g}" + (f"; {details}" if details else "")
    return Check(name, status, dev, text, dict(params))


def _exact(name, equal: bool, params, details="", dev=None) -> Check:
    if dev is None:
        dev = 0.0 if equal else None
    return Check(name, PASS if equal else FAIL, dev, details or ("exact" if equal else "mismatch"), dict(params))


def _timed(fn, *args, **kwargs) -> list[Check]:
    t0 = time.perf_counter()
    checks = fn(*args, **kwargs)
    elapsed = time.perf_counter() - t0
    for c in checks:
        c.wall_time = elapsed / max(1, len(checks))
    return checks


# --- cross checks -----------------------------------------------------------


@dataclass(frozen=True)
class CheckSpec:
    """One unit of work: a group cross-check, or claims at fixed parameters."""

    group: GroupExpr | None = None
    kinds: tuple[MatrixKind, ...] = ALL_KINDS
    tolerance: float = DEFAULT_TOL
    claim_ids: tuple[str, ...] = ()
    p: int | None = None
    k: int | None = None
    alpha: Fraction | None = None
    cap: int = DEFAULT_DENSE_CAP

    def __post_init__(self):
        if not self.tolerance > 0:
            raise BadParams(f"tolerance must be positive, got {self.tolerance}")


def _cross_kind(cg, g, kind, tol, params) -> list[Check]:
    checks = []
    struct = structural_spectrum(cg, kind)
    m = build_matrix(g, kind)
    dense = dense_spectrum(m)
    checks.append(_numeric("cross.structural_vs_dense", _max_gap(struct.values(), dense), tol, params))

    c_deg, _ = kind.coefficients
    degree_sum = sum(d * n for d, n in zip(cg.class_degrees(), cg.sizes))
    trace = sum(float(v) * mult for v, mult in struct.entries)
    trace_dev = abs(trace - float(c_deg * degree_sum))
    checks.append(_numeric("cross.trace", trace_dev, tol * max(1, g.n), params,
                           f"expected {c_deg * degree_sum}"))
    if kind.tag == "laplacian":
        rows = np.abs(m.sum(axis=1)).max() if g.n else 0.0
        checks.append(_exact("cross.laplacian_rowsum", rows == 0, params, f"max |row sum| = {rows}"))
    return checks


def cross_check(spec: CheckSpec) -> Report:
    if spec.group is None:
        raise BadParams("cross_check needs a group")
    label = format_group_expr(spec.group)
    report = Report(parameters={"group": label, "tolerance": spec.tolerance})
    cg = class_graph(order_profile(spec.group))
    try:
        g = expand_dense(cg, spec.cap)
    except OGSError as exc:
        for kind in spec.kinds:
            report.checks.append(Check("cross.structural_vs_dense", FAIL, None, str(exc),
                                       {"group": label, "kind": str(kind)}))
        return report
    for kind in spec.kinds:
        params = {"group": label, "kind": str(kind)}
        try:
            report.checks.extend(_timed(_cross_kind, cg, g, kind, spec.tolerance, params))
        except OGSError as exc:
            report.checks.append(Check("cross.structural_vs_dense", FAIL, None, str(exc), params))
    return report


# --- claim checks -----------------------------------------------------------


def _dpdp(p):
    g_expr = Product(Dihedral(p), Dihedral(p))
    cg = class_graph(order_profile(g_expr))
    return cg, expand_dense(cg)


def _paper_cells_dpdp(cg, p):
    """Vertex cells in published order: orders 1, 2, 2p, p."""
    starts = np.concatenate([[0], np.cumsum(cg.sizes)])
    idx = {d: list(range(starts[i], starts[i + 1])) for i, d in enumerate(cg.orders)}
    return [idx[1], idx[2], idx[2 * p], idx[p]]


def _paper_cells_dpk(cg):
    """Identity, all non-trivial rotations, reflections."""
    starts = np.concatenate([[0], np.cumsum(cg.sizes)])
    cells = {"id": [], "rot": [], "ref": []}
    for i, d in enumerate(cg.orders):
        key = "id" if d == 1 else ("ref" if d == 2 else "rot")
        cells[key].extend(range(starts[i], starts[i + 1]))
    return [cells["id"], cells["rot"], cells["ref"]]


def _check_thm31(p, alpha, tol):
    params = {"p": p, "alpha": alpha}
    kind = MatrixKind.aalpha(alpha)
    pred = claims.thm31_prediction(p, alpha)
    cg, g = _dpdp(p)
    dense = dense_spectrum(build_matrix(g, kind))
    struct = structural_spectrum(cg, kind)
    closed_ok = Spectrum.from_counts(pred.closed_part) == Spectrum.from_counts(clique_part(cg, kind))
    quotient = partition_quotient(g, _paper_cells_dpdp(cg, p), kind)
    return [
        _exact("thm31.closed", closed_ok, params, "closed families vs clique classes"),
        _exact("thm31.quotient", quotient == pred.residual_quotient, params,
               "printed 4x4 vs partition quotient"),
        _numeric("thm31.oracle", _max_gap(pred.values(), dense), tol, params, "prediction vs dense"),
        _numeric("thm31.structural", _max_gap(struct.values(), dense), tol, params, "structural vs dense"),
    ]


def _check_cor32(p, tol):
    params = {"p": p}
    claim = claims.cor32_quartic(p)
    cg, g = _dpdp(p)
    poly = charpoly_exact(quotient_matrix(cg, ADJACENCY))
    got = tuple(poly.descending())
    coeff_text = ", ".join(str(c) for c in got)
    printed = partition_quotient(g, _paper_cells_dpdp(cg, p), ADJACENCY)
    return [
        _exact("cor32.charpoly", got == claim.coefficients, params, f"coefficients ({coeff_text})"),
        _exact("cor32.matrix", printed == claims.cor32_quotient(p), params,
               "printed 4x4 vs partition quotient"),
    ]


def _check_cor33(p, tol):
    params = {"p": p}
    claim = claims.cor33_laplacian(p)
    cg, g = _dpdp(p)
    struct = structural_spectrum(cg, LAPLACIAN)
    dense = dense_spectrum(build_matrix(g, LAPLACIAN))
    m = graph_stats(cg).m
    total = sum(v * mult for v, mult in struct.entries)
    return [
        _exact("cor33.spectrum", struct.is_exact and struct == claim, params,
               "structural Laplacian vs published multiset"),
        _exact("cor33.trace", total == 2 * m, params, f"eigenvalue sum {total} vs 2M = {2 * m}"),
        _numeric("cor33.oracle", _max_gap(claim.values(), dense), tol, params, "published vs dense"),
    ]


def _check_cor34(p, tol):
    params = {"p": p}
    half = Fraction(1, 2)
    pred = claims.cor34_signless(p)
    base = claims.thm31_prediction(p, half)
    cg, g = _dpdp(p)
    doubled = Spectrum.from_counts((2 * v, m) for v, m in base.closed_part)
    closed_ok = (Spectrum.from_counts(pred.closed_part) == doubled
                 and doubled == Spectrum.from_counts(clique_part(cg, SIGNLESS)))
    q_dense = dense_spectrum(build_matrix(g, SIGNLESS))
    a_dense = dense_spectrum(build_matrix(g, MatrixKind.aalpha(half)))
    scale = max(1.0, float(np.max(np.abs(q_dense))))
    return [
        _exact("cor34.closed", closed_ok, params, "closed values vs doubled alpha=1/2 and clique classes"),
        _numeric("cor34.doubling", _max_gap(q_dense, 2 * a_dense), DOUBLING_TOL * scale, params,
                 "spec(Q) vs 2 spec(A_1/2)"),
        _numeric("cor34.oracle", _max_gap(pred.values(), q_dense), tol, params, "prediction vs dense"),
    ]


def _check_thm41(p, k, alpha, tol):
    params = {"p": p, "k": k, "alpha": alpha}
    kind = MatrixKind.aalpha(alpha)
    pred = claims.thm41_prediction(p, k, alpha)
    cg = class_graph(order_profile(Dihedral(p**k)))
    g = expand_dense(cg)
    dense = dense_spectrum(build_matrix(g, kind))
    quotient = partition_quotient(g, _paper_cells_dpk(cg), kind)
    return [
        _exact("thm41.quotient", quotient == pred.residual_quotient, params,
               "printed 3x3 vs partition quotient"),
        _numeric("thm41.oracle", _max_gap(pred.values(), dense), tol, params, "prediction vs dense"),
    ]


def cubic_audit(p: int, k: int, alpha) -> Check:
    """Compare the printed cubic with the exact monic quotient polynomial."""
    params = {"p": p, "k": k, "alpha": Fraction(alpha)}
    printed = claims.thm41_cubic(p, k, alpha).coefficients
    cg = class_graph(order_profile(Dihedral(p**k)))
    g = expand_dense(cg)
    quotient = partition_quotient(g, _paper_cells_dpk(cg), MatrixKind.aalpha(alpha))
    monic = charpoly_exact(quotient).descending()
    factor = printed[0]
    expected = 1 - 2 * p**k
    residual = [pc - factor * mc for pc, mc in zip(printed, monic)]
    dev = float(max(abs(r) for r in residual))
    factor_note = f"factor={factor}" + ("" if factor == expected else f" (expected {expected})")
    if all(r == 0 for r in residual):
        return Check("thm41cubic.proportionality", PASS, 0.0, f"{factor_note}; printed cubic is proportional", params)
    bad = ", ".join(
        f"deg{3 - i}: printed {pc} vs {factor}*({mc}) = {factor * mc}"
        for i, (pc, mc, r) in enumerate(zip(printed, monic, residual)) if r != 0
    )
    return Check("thm41cubic.proportionality", FINDING, dev,
                 f"{factor_note}; not proportional: {bad}", params)


def check_paper_claim(claim_id: str, p=None, k=None, alpha=None, tolerance: float = DEFAULT_TOL) -> Report:
    if claim_id not in claims.CLAIM_IDS:
        raise UnknownClaim(f"unknown claim {claim_id!r}; choose from {', '.join(claims.CLAIM_IDS)}")
    if p is None:
        raise BadParams(f"{claim_id} needs p")
    needs_alpha = claim_id in ("thm31", "thm41", "thm41cubic")
    needs_k = claim_id in ("thm41", "thm41cubic")
    if needs_alpha and alpha is None:
        raise BadParams(f"{claim_id} needs alpha")
    if needs_k and k is None:
        raise BadParams(f"{claim_id} needs k")
    alpha = None if alpha is None else Fraction(alpha)
    if alpha is not None and not 0 <= alpha <= 1:
        raise BadParams(f"alpha must lie in [0, 1], got {alpha}")
    params = {"claim": claim_id, "p": p, "k": k if needs_k else None, "alpha": alpha if needs_alpha else None}
    report = Report(parameters={k_: v for k_, v in params.items() if v is not None} | {"tolerance": tolerance})
    if claim_id == "thm31":
        checks = _timed(_check_thm31, p, alpha, tolerance)
    elif claim_id == "cor32":
        checks = _timed(_check_cor32, p, tolerance)
    elif claim_id == "cor33":
        checks = _timed(_check_cor33, p, tolerance)
    elif claim_id == "cor34":
        checks = _timed(_check_cor34, p, tolerance)
    elif claim_id == "thm41":
        checks = _timed(_check_thm41, p, k, alpha, tolerance)
    else:
        checks = _timed(lambda: [cubic_audit(p, k, alpha)])
    report.checks.extend(checks)
    return report


# --- suites -----------------------------------------------------------------


def _job_label(spec: CheckSpec) -> dict:
    out = {}
    if spec.group is not None:
        out["group"] = format_group_expr(spec.group)
    for key in ("p", "k", "alpha"):
        if getattr(spec, key) is not None:
            out[key] = getattr(spec, key)
    return out


def _run_one(spec: CheckSpec) -> list[Check]:
    checks: list[Check] = []
    try:
        if spec.group is not None:
            checks.extend(cross_check(spec).checks)
        for cid in spec.claim_ids:
            try:
                checks.extend(check_paper_claim(cid, spec.p, spec.k, spec.alpha, spec.tolerance).checks)
            except Exception as exc:  # isolation: one broken claim never sinks the job
                log.warning("claim %s failed: %s", cid, exc)
                checks.append(Check(f"{cid}.error", FAIL, None, f"{type(exc).__name__}: {exc}", _job_label(spec)))
    except Exception as exc:
        log.warning("check job failed: %s", exc)
        checks.append(Check("job.error", FAIL, None, f"{type(exc).__name__}: {exc}", _job_label(spec)))
    return checks


def run_suite(config: Iterable[CheckSpec], workers: int | None = None) -> Report:
    config = list(config)
    if workers == 1 or len(config) <= 1:
        results = [_run_one(s) for s in config]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, config))
    checks = [c for batch in results for c in batch]
    return Report(checks, {"jobs": len(config)}).sorted()


DEFAULT_PRIMES = (3, 5, 7)
DEFAULT_ALPHAS = tuple(Fraction(n, 4) for n in range(5))
THM41_GRID = ((3, 1), (5, 1), (7, 1), (3, 2), (5, 2))
THM41_ALPHAS = (Fraction(0), Fraction(1, 2), Fraction(1))


def default_suite(tolerance: float = DEFAULT_TOL) -> list[CheckSpec]:
    from .parser import parse_group_expr

    specs = []
    for p in DEFAULT_PRIMES:
        for a in DEFAULT_ALPHAS:
            specs.append(CheckSpec(claim_ids=("thm31",), p=p, alpha=a, tolerance=tolerance))
        specs.append(CheckSpec(claim_ids=("cor32", "cor33", "cor34"), p=p, tolerance=tolerance))
    for p, k in THM41_GRID:
        for a in THM41_ALPHAS:
            specs.append(CheckSpec(claim_ids=("thm41", "thm41cubic"), p=p, k=k, alpha=a, tolerance=tolerance))
    for text in ("Z1", "Z12", "D9", "D3 x D3", "D5 x D5", "D4 x Z6", "Z2 x Z2 x Z3"):
        specs.append(CheckSpec(group=parse_group_expr(text), tolerance=tolerance))
    return specs
