"""CSV and JSON serialisation of suite reports.

Output is byte-deterministic for a given manifest and seed: rows are
sorted, floats are written with 17 significant digits and no timestamps
are recorded.
"""
from __future__ import annotations

import csv
import io
import json
import math
import platform

import numpy as np

from .. import __version__
from .sweep import SuiteReport, Verdict

CSV_COLUMNS = ("inequality_id", "a", "c", "kappa", "mu", "tau", "family", "order", "x",
               "delta", "normalized", "lower_bound", "upper_bound", "margin", "status")
PARAM_COLUMNS = ("a", "c", "kappa", "mu", "tau")


def fmt(v) -> str:
    """Round-trip text of a float; empty for missing values."""
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def _row(v: Verdict) -> list:
    p = dict(v.params)
    return ([v.inequality] + [fmt(p.get(k)) for k in PARAM_COLUMNS]
            + [fmt(v.family), fmt(v.order), fmt(v.x), fmt(v.delta), fmt(v.normalized),
               fmt(v.lower), fmt(v.upper), fmt(v.margin), v.status])


def _all_verdicts(report: SuiteReport, exploratory: bool = True) -> list:
    reps = list(report.sweeps.values())
    if exploratory:
        reps += list(report.exploratory.values())
    rows = [v for r in reps for v in r.verdicts]
    rows.sort(key=lambda v: (v.inequality,) + v.sort_key())
    return rows


def to_csv(report: SuiteReport) -> str:
    """One row per sweep verdict, exploratory ids included."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for v in _all_verdicts(report):
        w.writerow(_row(v))
    return buf.getvalue()


def _clean(obj):
    # JSON has no NaN or infinity; write them as strings
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else fmt(obj)
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.floating):
        return _clean(float(obj))
    return obj


def _verdict_dict(v: Verdict) -> dict:
    return {"params": dict(v.params), "x": v.x, "family": v.family, "order": v.order,
            "status": v.status, "margin": v.margin, "value": v.value, "err": v.err,
            "delta": v.delta, "normalized": v.normalized, "lower_bound": v.lower,
            "upper_bound": v.upper, "note": v.note}


def _sweep_dict(r) -> dict:
    return {"normative": r.normative, "status": r.status, "counts": r.counts,
            "skipped_out_of_regime": r.skipped, "notes": r.notes,
            "verdicts": [_verdict_dict(v) for v in r.verdicts]}


def to_dict(report: SuiteReport) -> dict:
    """Report as plain data (metadata, summaries, verdicts, extras)."""
    return _clean({
        "metadata": {
            "seed": report.seed,
            "manifest_sha256": report.manifest_sha256,
            "versions": {"turanlab": __version__, "python": platform.python_version(),
                         "numpy": np.__version__},
            "exit_code": report.exit_code,
        },
        "summaries": {k: {"status": r.status, "counts": r.counts, "skipped": r.skipped}
                      for k, r in sorted(report.sweeps.items())},
        "inequalities": {k: _sweep_dict(r) for k, r in sorted(report.sweeps.items())},
        "exploratory": {k: _sweep_dict(r) for k, r in sorted(report.exploratory.items())},
        "limits": [{"mode": v.mode.value, "params": dict(v.params), "endpoint": v.endpoint,
                    "xs": list(v.xs), "values": list(v.values), "extrapolated": v.extrapolated,
                    "target": v.target, "error": v.error, "status": v.status, "note": v.note}
                   for v in report.limits],
        "convexity": [{"surface": r.surface.value, "seed": r.seed, "status": r.status,
                       "counts": r.counts} for r in report.convexity],
        "stieltjes": [{"target": r.target, "status": r.status,
                       "by_order": {str(k): s for k, s in r.by_order.items()}}
                      for r in report.stieltjes],
    })


def to_json(report: SuiteReport) -> str:
    return json.dumps(to_dict(report), indent=1, sort_keys=True, allow_nan=False) + "\n"


def summary_lines(report: SuiteReport) -> list:
    """Human-readable one-line summaries."""
    out = []
    for k, r in sorted(report.sweeps.items()):
        c = r.counts
        out.append(f"{k:18s} {r.status:12s} pass={c['pass']} violation={c['violation']} "
                   f"inconclusive={c['inconclusive']} skipped={r.skipped}")
        out += [f"{'':18s} note: {n}" for n in r.notes]
    for k, r in sorted(report.exploratory.items()):
        c = r.counts
        out.append(f"{k:18s} {r.status:12s} (exploratory) pass={c['pass']} "
                   f"violation={c['violation']} inconclusive={c['inconclusive']}")
    if report.limits:
        bad = [v for v in report.limits if v.status != "pass"]
        out.append(f"{'limits':18s} {'pass' if not bad else 'issues':12s} "
                   f"{len(report.limits) - len(bad)}/{len(report.limits)} endpoint limits")
    for r in report.convexity:
        out.append(f"{'convexity':18s} {r.status:12s} {r.surface.value} {r.counts}")
    for r in report.stieltjes:
        out.append(f"{'stieltjes':18s} {r.status:12s} {r.target}")
    return out
