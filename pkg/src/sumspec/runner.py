"""Batch driver: run scenario directives and emit canonical JSON or CSV reports."""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import criteria as cr
from .errors import BlockNotSupported, HypothesisViolation, InfiniteCore, SumSpecError
from .linalg import DEFAULT_TOLERANCES, Tolerances
from .operators import truncate
from .radicals import Surd
from .scenario import (TOLERANCE_SETTINGS, Directive, ScenarioSpec, parse_scenario,
                       serialize_scenario)
from .sequences import CountResult, IndexSet
from .truncation import (CLUSTER_GAP, numeric_epsilon_core, truncated_spectrum,
                         truncation_spectrum_convergence, weyl_experiment)

SCHEMA_VERSION = 1
DEFAULT_SEED = 0
REFUSALS = (HypothesisViolation, InfiniteCore, BlockNotSupported)


# -- canonical plain data ------------------------------------------------------
def plain(x):
    """JSON-ready form: rationals as "p/q", non-finite floats as strings."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Surd):
        return str(x.to_fraction()) if x.is_rational() else str(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, IndexSet):
        return {"modulus": x.modulus,
                "cofinal": [{"strand": r, "excluded": list(ex)} for r, ex in x.cofinal],
                "finite": list(x.finite)}
    if isinstance(x, CountResult):
        if x.finite:
            return {"finite": True, "count": x.count, "indices": list(x.witness_indices)}
        return {"finite": False, "witness_strand": x.witness_strand}
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return {f.name: plain(getattr(x, f.name)) for f in dataclasses.fields(x) if f.repr}
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (frozenset, set)):
        return [plain(v) for v in sorted(x)]
    if isinstance(x, (list, tuple, np.ndarray)):
        return [plain(v) for v in x]
    return str(x)


# -- settings ------------------------------------------------------------------
@dataclass(frozen=True)
class Settings:
    seed: int = DEFAULT_SEED
    trunc_size: Optional[int] = None  # default truncation for ineq41, truncate, transfer, weyl
    cluster_gap: float = CLUSTER_GAP
    tolerances: Tolerances = DEFAULT_TOLERANCES

    def as_dict(self) -> dict:
        return {"seed": self.seed, "trunc_size": self.trunc_size,
                "cluster_gap": self.cluster_gap, "tolerances": self.tolerances.as_dict()}


def resolve_settings(spec: ScenarioSpec, seed: Optional[int] = None,
                     trunc_size: Optional[int] = None) -> Settings:
    """CLI flag, then scenario ``set`` line, then built-in default."""
    given = spec.settings
    tol = {k: given[f"tol-{k}"] for k in TOLERANCE_SETTINGS if f"tol-{k}" in given}
    tol = {k: (int(v) if k == "sweeps" else float(v)) for k, v in tol.items()}
    return Settings(
        seed=seed if seed is not None else int(given.get("seed", DEFAULT_SEED)),
        trunc_size=trunc_size if trunc_size is not None else given.get("trunc-size"),
        cluster_gap=float(given.get("cluster-gap", CLUSTER_GAP)),
        tolerances=dataclasses.replace(DEFAULT_TOLERANCES, **tol),
    )


def directive_seed(seed: int, index: int) -> int:
    """Per-directive seed derived from (global seed, directive index)."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


# -- the checks --------------------------------------------------------------------
class _Outcome:
    def __init__(self, verdict: str, certificate: dict, ok: bool = True):
        self.verdict, self.certificate, self.ok = verdict, certificate, ok


def _closedness_certificate(v: cr.ClosednessVerdict) -> dict:
    if not v.closed:
        return {"type": "witness_strand", "strand": v.witness_strand, "modulus": v.modulus}
    return {"type": "eps", "eps": plain(v.eps), "modulus": v.modulus, "core": plain(v.core),
            "kernel": plain(v.kernel), "candidate_eps": plain(v.candidate_eps),
            "candidate_excess": plain(v.candidate_excess)}


LIMITS = {"n": 4096, "trunc": 4096, "sizes": 4096, "length": 10_000, "samples": 100_000,
          "rank": 4096}


def _check_limits(params: dict) -> None:
    for k, cap in LIMITS.items():
        vals = params.get(k, ())
        for v in vals if isinstance(vals, tuple) else (vals,):
            if not 0 <= v <= cap:
                raise ValueError(f"parameter {k}={v} outside 0..{cap}")


def _run_check(d: Directive, spec: ScenarioSpec, st: Settings, seed: int) -> _Outcome:
    p = d.param_map
    _check_limits(p)
    tol = st.tolerances
    if d.check == "grouped":
        groups = spec.groups
        ops_by_label = spec.operators
        members = [[ops_by_label[x] for x in groups[g]] for g in d.labels]
    elif d.check in ("coercivity", "cor23", "gram-gap"):
        mats = [spec.matrices[x] for x in d.labels]
    else:
        ops = [spec.operators[x] for x in d.labels]

    if d.check == "hypotheses":
        r = cr.check_hypotheses(ops)
        return _Outcome("Holds" if r.holds else "Fails",
                        {"type": "failing_pairs", "pairs": plain(r.failing_pairs)}, r.holds)
    if d.check == "theorem-a":
        r = cr.check_theorem_a(ops)
        return _Outcome("Holds" if r.holds else "Fails",
                        {"type": "essential_points", **plain(r)}, r.holds)
    if d.check == "main":
        v = cr.check_zero_essential(ops)
        if v.in_essential:
            cert = {"type": "witness_strand", "strand": v.witness_strand, "modulus": v.modulus}
        else:
            cert = {"type": "eps", "eps": plain(v.eps), "modulus": v.modulus,
                    "core": plain(v.core)}
        cert["strand_max_limits"] = plain(v.strand_max_limits)
        return _Outcome("InEssential" if v.in_essential else "NotInEssential", cert)
    if d.check == "schedule":
        s = cr.build_singular_schedule(ops, p.get("length", 20))
        ok = s.verify()
        return _Outcome("Verified" if ok else "Fails",
                        {"type": "schedule", "indices": list(s.index_schedule),
                         "bound_constant": s.bound_constant, "strand": s.witness_strand,
                         "modulus": s.modulus}, ok)
    if d.check == "closedness":
        v = cr.check_sum_ranges_closed(ops)
        ok = cr.revalidate_closedness(ops, v)
        return _Outcome("Closed" if v.closed else "NotClosed", _closedness_certificate(v), ok)
    if d.check == "single-range":
        v = cr.check_range_closed_single(ops[0])
        return _Outcome("Closed" if v.closed else "NotClosed", _closedness_certificate(v))
    if d.check == "coercivity":
        r = cr.coercivity_constant(mats, p.get("samples", 100), seed, tol)
        coercive = r.constant > tol.rank
        return _Outcome("Coercive" if coercive else "Degenerate",
                        {"type": "coercivity", "constant": r.constant, "samples": r.samples,
                         "worst_slack": r.worst_slack, "sampled_inequality": r.holds}, r.holds)
    if d.check == "cor23":
        r = cr.corollary_ranges_eq(mats, tol)
        return _Outcome("Equal" if r.equal else "NotEqual",
                        {"type": "ranks", "rank_stacked": r.rank_stacked,
                         "rank_gram": r.rank_gram, "residual": r.residual}, r.equal)
    if d.check == "lemma41":
        r = cr.check_projection_product_compact(ops[0], ops[1], p["eps"], p["delta"])
        return _Outcome("Finite", {"type": "exceedance", "count": r.count,
                                   "indices": list(r.indices), "eps": plain(r.eps),
                                   "delta": plain(r.delta)})
    if d.check == "gram-gap":
        g = cr.gram_gap(mats, tol)
        ok = g.spectra_mismatch is not None and g.spectra_mismatch <= tol.match
        cert = {"type": "gap", **{k: v for k, v in plain(g).items() if k != "tolerances"}}
        return _Outcome("Gap" if g.eps is not None else "NoGap", cert, ok)
    if d.check == "ineq41":
        n = p.get("trunc", st.trunc_size or 500)
        r = cr.verify_inequality_41(ops, p["eps"], n, tol)
        return _Outcome("Holds" if r.holds else "Fails",
                        {"type": "mu", "mu": plain(r.mu), "eps": plain(r.eps),
                         "delta": plain(r.delta), "core": plain(r.core),
                         "failing": plain(r.failing), "truncation": r.truncation}, r.holds)
    if d.check == "grouped":
        v = cr.check_grouped_closed(members)
        cert = {"type": "eps" if v.closed else "stage", "stage": v.stage, "eps": plain(v.eps),
                "core": plain(v.core), "kernel": plain(v.kernel)}
        return _Outcome("Closed" if v.closed else "NotClosed", cert)
    if d.check == "transfer":
        sched = cr.lambda_schedule(ops[1], p["lambda"], p.get("length", 20))
        n = p.get("n", max(st.trunc_size or 0, max(sched.index_schedule)))
        r = cr.transfer_singular(ops[0], ops[1], p["lambda"], sched, n)
        return _Outcome("Holds" if r.holds else "Fails",
                        {"type": "schedule", "indices": list(sched.index_schedule),
                         "norms": plain(r.norms), "first_quarter_max": r.first_quarter_max,
                         "last_quarter_max": r.last_quarter_max}, r.holds)
    if d.check == "truncate":
        n = p.get("n", st.trunc_size or 10)
        spectra = {op.label: plain(truncated_spectrum(op, n, tol)) for op in ops}
        exact = all(truncate(op, n).exact_diagonal() is not None for op in ops)
        cert = {"type": "spectra", "n": n, "exact": exact, "spectra": spectra}
        if "eps" not in p:
            return _Outcome("Computed", cert)
        r = numeric_epsilon_core(ops, p["eps"], n, tol)
        cert.update(eps=plain(p["eps"]), dimension=r.dimension, symbolic_count=r.symbolic_count)
        agrees = r.agrees is not False
        return _Outcome("Agrees" if agrees else "Disagrees", cert, agrees)
    if d.check == "converge":
        sizes = tuple(int(x) for x in p.get("sizes", (100, 400)))
        r = truncation_spectrum_convergence(ops[0], sizes, st.cluster_gap, tol)
        cert = {"type": "hausdorff", **plain(r)}
        return _Outcome("Converging" if r.nonincreasing else "NotMonotone", cert, r.nonincreasing)
    if d.check == "weyl":
        n = p.get("n", st.trunc_size or 200)
        r = weyl_experiment(ops[0], p.get("rank", 1), n, seed, tol)
        cert = {"type": "interlacing", **{k: v for k, v in plain(r).items() if k != "holds"}}
        return _Outcome("Holds" if r.holds else "Fails", cert, r.holds)
    raise ValueError(f"unhandled check {d.check!r}")


def run_directive(spec: ScenarioSpec, index: int, settings: Settings,
                  timing: bool = False) -> dict:
    d = spec.directives[index]
    seed = directive_seed(settings.seed, index)
    out = {"index": index, "check": d.check,
           "inputs": {"labels": list(d.labels), "params": {k: plain(v) for k, v in d.params}},
           "status": None, "verdict": None, "certificate": None, "error": None,
           "tolerances": settings.tolerances.as_dict(), "seed": seed, "timing": None}
    start = time.perf_counter()
    try:
        res = _run_check(d, spec, settings, seed)
        out.update(status="ok" if res.ok else "violation", verdict=res.verdict,
                   certificate=plain(res.certificate))
    except REFUSALS as exc:
        out.update(status="refused", verdict="Refused",
                   error={"type": type(exc).__name__, "message": str(exc)})
    except (SumSpecError, ValueError, ArithmeticError) as exc:
        out.update(status="error", verdict="Error",
                   error={"type": type(exc).__name__, "message": str(exc)})
    if timing:
        out["timing"] = round(time.perf_counter() - start, 6)
    return out


# -- reports ------------------------------------------------------------------------
@dataclass(frozen=True)
class AnalysisReport:
    results: tuple
    settings: dict
    schema_version: int = SCHEMA_VERSION

    @property
    def exit_code(self) -> int:
        """0 when every directive passes, 2 on violations or refusals, 1 on errors."""
        statuses = {r["status"] for r in self.results}
        if "error" in statuses:
            return 1
        return 2 if statuses & {"violation", "refused"} else 0


def _worker(args):
    text, index, settings, timing = args
    return run_directive(parse_scenario(text), index, settings, timing)


def run(spec: ScenarioSpec, workers: int = 1, seed: Optional[int] = None,
        trunc_size: Optional[int] = None, timing: bool = False) -> AnalysisReport:
    """Run every directive in order; failures are recorded, never fatal."""
    settings = resolve_settings(spec, seed, trunc_size)
    n = len(spec.directives)
    if workers <= 1 or n <= 1:
        results = [run_directive(spec, i, settings, timing) for i in range(n)]
    else:
        text = serialize_scenario(spec)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_worker, [(text, i, settings, timing) for i in range(n)]))
    return AnalysisReport(tuple(results), settings.as_dict())


def emit(report: AnalysisReport, fmt: str = "json") -> str:
    if fmt == "json":
        doc = {"schema_version": report.schema_version, "results": list(report.results),
               "settings": report.settings}
        return json.dumps(doc, separators=(",", ":"), ensure_ascii=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "check", "labels", "status", "verdict", "key", "value"])
        for r in report.results:
            key, value = key_scalar(r)
            w.writerow([r["index"], r["check"], " ".join(r["inputs"]["labels"]), r["status"],
                        r["verdict"], key, value])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


_KEYS = ("eps", "strand", "mu", "constant", "count", "residual", "spectra_mismatch",
         "hausdorff_to_essential", "max_shift", "dimension", "pairs", "sum_points", "indices")


def key_scalar(result: dict) -> tuple:
    """The single most telling certificate field, for the CSV view."""
    cert = result.get("certificate")
    if not cert:
        err = result.get("error") or {}
        return ("error", err.get("type", ""))
    for k in _KEYS:
        if cert.get(k) is not None:
            v = cert[k]
            if isinstance(v, list):
                v = v[-1] if k == "hausdorff_to_essential" and v else " ".join(map(str, v))
            return (k, v)
    return ("type", cert.get("type", ""))


def parse_report(text: str) -> AnalysisReport:
    doc = json.loads(text)
    return AnalysisReport(tuple(doc["results"]), doc["settings"], doc["schema_version"])
