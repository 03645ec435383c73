"""Grid sweeps of the catalog inequalities with a margin-based verdict rule.

For a sample with value v, error estimate e and bounds L, U the margin is

    min((v - L) / e, (U - v) / e)

in units of the combined error estimate e (the evaluator's estimate plus
the rounding of v and the bound).  A point passes when the margin is at
least ``margin_factor``, is a violation when it is at most
``-margin_factor``, and is inconclusive in between.  Points where a bound
is attained as an equality are checked to ``endpoint_rel_tol`` instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from ..errors import RegimeError
from ..turan import TuranianMode
from .catalog import CATALOG, Inequality, InequalityId, Sample, get_inequality
from .convexity import Surface, check_log_convexity
from .limits import check_limit_sharpness
from .manifest import expand_axis, expand_grid, load_manifest
from .monotone import check_am, check_cm, det_target, stieltjes_target

_EPS = 2.220446049250313e-16
_TINY = 1e-300


@dataclass(frozen=True)
class TolPolicy:
    margin_factor: float = 10.0
    endpoint_rel_tol: float = 1e-8

    def __post_init__(self):
        if not self.margin_factor >= 1:
            raise ValueError("margin_factor must be at least 1")
        if not self.endpoint_rel_tol > 0:
            raise ValueError("endpoint_rel_tol must be positive")


@dataclass(frozen=True)
class SweepSpec:
    """Grid of one inequality.

    Attributes
    ----------
    inequality : InequalityId
    grids : mapping
        Parameter name -> list of values (or a manifest range object).
    x : sequence of float
    tol_policy : TolPolicy
    orders : int
        Highest forward-difference order for the ``DET_*`` ids.
    """

    inequality: InequalityId
    grids: Mapping
    x: Sequence[float]
    tol_policy: TolPolicy = TolPolicy()
    orders: int = 4


@dataclass(frozen=True)
class Verdict:
    """Outcome at one grid point; ``margin`` is in error-estimate units."""

    inequality: str
    params: tuple
    x: float
    status: str
    margin: float
    value: float = math.nan
    err: float = math.nan
    delta: float = math.nan
    normalized: float = math.nan
    lower: Optional[float] = None
    upper: Optional[float] = None
    family: Optional[int] = None
    order: Optional[int] = None
    note: str = ""

    def sort_key(self):
        return (self.params, -1 if self.order is None else self.order, self.x)


@dataclass
class SweepReport:
    inequality: str
    normative: bool
    verdicts: list
    skipped: int = 0
    notes: list = field(default_factory=list)

    @property
    def counts(self) -> dict:
        out = {"pass": 0, "violation": 0, "inconclusive": 0}
        for v in self.verdicts:
            out[v.status] += 1
        return out

    @property
    def status(self) -> str:
        c = self.counts
        if c["violation"]:
            return "violation"
        return "inconclusive" if c["inconclusive"] else "pass"


def margin_of(sample: Sample) -> float:
    """Signed distance of a sample from its nearest bound in error units."""
    margins = []
    for bound, sign in ((sample.lower, 1.0), (sample.upper, -1.0)):
        if bound is None:
            continue
        err = sample.err + 4 * _EPS * max(abs(sample.value), abs(bound)) + _TINY
        margins.append(sign * (sample.value - bound) / err)
    return min(margins) if margins else math.nan


def judge(sample: Sample, policy: TolPolicy, equality: bool = False) -> tuple:
    """``(status, margin, note)`` of one sample."""
    if not all(math.isfinite(v) for v in (sample.value, sample.err)):
        return "inconclusive", math.nan, "non-finite value"
    if equality:
        # the upper bound is attained here
        rel = abs(sample.value - sample.upper) / abs(sample.upper)
        status = "pass" if rel <= policy.endpoint_rel_tol else "violation"
        return status, math.nan, f"equality, relative deviation {rel:.3e}"
    margin = margin_of(sample)
    if math.isnan(margin):
        return "inconclusive", margin, "no bound in regime"
    if not sample.converged:
        return "inconclusive", margin, "unconverged evaluation"
    if margin >= policy.margin_factor:
        return "pass", margin, ""
    if margin <= -policy.margin_factor:
        return "violation", margin, ""
    return "inconclusive", margin, ""


def _key(params: Mapping[str, float]) -> tuple:
    return tuple(sorted((k, float(v)) for k, v in params.items()))


def _sweep_det(ineq: Inequality, points: list, xs: list, spec: SweepSpec) -> list:
    out = []
    check = check_am if ineq.quantity == "am" else check_cm
    for p in points:
        rep = check(det_target(ineq.family, p), xs, spec.orders,
                    margin_factor=spec.tol_policy.margin_factor)
        for v in rep.verdicts:
            out.append(Verdict(ineq.id.value, _key(p), v.x, v.status, v.margin, v.difference,
                               v.err, family=ineq.family, order=v.order))
    return out


def sweep_inequality(spec: SweepSpec) -> SweepReport:
    """Evaluate one inequality on its grid.

    Points outside the claimed regime are skipped and counted.  Failed
    evaluations become inconclusive verdicts.

    Returns
    -------
    SweepReport
        Verdicts sorted by parameter tuple, then order, then x.

    Examples
    --------
    >>> r = sweep_inequality(SweepSpec("T32_R", {"a": [1.0], "c": [-2.0]}, [0.5, 1.0]))
    >>> r.status
    'pass'
    """
    ineq = get_inequality(spec.inequality)
    points = expand_grid(dict(spec.grids))
    xs = [float(x) for x in spec.x]
    skipped = 0
    if ineq.evaluate is None:
        inside = []
        for p in points:
            if all(ineq.regime(p, x) for x in xs):
                inside.append(p)
            else:
                skipped += len(xs)
        verdicts = _sweep_det(ineq, inside, xs, spec)
    else:
        verdicts = []
        for p in points:
            for x in xs:
                if not ineq.regime(p, x):
                    skipped += 1
                    continue
                try:
                    s = ineq.evaluate(p, x)
                except (ArithmeticError, ValueError, RegimeError) as exc:
                    verdicts.append(Verdict(ineq.id.value, _key(p), x, "inconclusive",
                                            math.nan, note=f"evaluation failed: {exc}"))
                    continue
                status, margin, note = judge(s, spec.tol_policy, x in ineq.equality_at)
                verdicts.append(Verdict(ineq.id.value, _key(p), x, status, margin, s.value,
                                        s.err, s.delta, s.normalized, s.lower, s.upper,
                                        note=note))
    verdicts.sort(key=Verdict.sort_key)
    return SweepReport(ineq.id.value, ineq.normative, verdicts, skipped, list(ineq.notes))


def sweep_phi_ratios(spec: SweepSpec) -> SweepReport:
    """Sweep of the Kummer ratio bounds PHI_RATIO_A or PHI_RATIO_DIAG."""
    iid = InequalityId(spec.inequality)
    if iid not in (InequalityId.PHI_RATIO_A, InequalityId.PHI_RATIO_DIAG):
        raise ValueError(f"{iid.value} is not a Kummer ratio bound")
    return sweep_inequality(spec)


def spec_from_manifest(iid: InequalityId | str, manifest: Optional[dict] = None,
                       policy: TolPolicy = TolPolicy()) -> SweepSpec:
    """SweepSpec of an id from the manifest (bundled default when None)."""
    m = load_manifest() if manifest is None else manifest
    iid = InequalityId(iid)
    entry = m["sweeps"].get(iid.value) or m["exploratory"].get(iid.value)
    if entry is None:
        raise KeyError(f"manifest has no grid for {iid.value}")
    return SweepSpec(iid, entry["grid"], expand_axis(entry["x"]), policy,
                     entry.get("orders", 4))


@dataclass
class SuiteReport:
    """Everything one run of the suite produces.

    ``sweeps`` holds the normative inequalities, ``exploratory`` the
    non-normative ones; only the former, the limits, the convexity trials
    and the Stieltjes check feed the exit code.
    """

    seed: int
    manifest_sha256: str
    sweeps: dict
    exploratory: dict
    limits: list
    convexity: list
    stieltjes: list

    def normative_statuses(self) -> list:
        out = [r.status for r in self.sweeps.values()]
        out += [v.status for v in self.limits]
        out += [r.status for r in self.convexity]
        out += [r.status for r in self.stieltjes]
        return out

    @property
    def exit_code(self) -> int:
        """0 all pass, 1 any normative violation, 2 inconclusive only."""
        st = self.normative_statuses()
        if "violation" in st:
            return 1
        return 2 if "inconclusive" in st else 0


def run_limits(manifest: dict) -> list:
    """Sharpness verdicts at both endpoints over the manifest limit grids."""
    out = []
    for entry in manifest.get("limits", []):
        mode = TuranianMode(entry["mode"])
        for p in expand_grid(entry["grid"]):
            for endpoint in ("0", "inf"):
                try:
                    out.append(check_limit_sharpness(mode, p, endpoint))
                except RegimeError:
                    continue
    return out


def run_suite(manifest: Optional[dict] = None, ids: Optional[Sequence[str]] = None,
              policy: TolPolicy = TolPolicy(), include_extras: bool = True) -> SuiteReport:
    """Run every manifest sweep (or the listed ids) plus the extra checks.

    Parameters
    ----------
    manifest : dict, optional
        As returned by :func:`load_manifest`; the bundled grid when None.
    ids : sequence of str, optional
        Restrict the sweeps to these ids.
    policy : TolPolicy
    include_extras : bool
        Also run the sharpness limits, log-convexity trials and the
        Stieltjes transform CM check.
    """
    m = load_manifest() if manifest is None else manifest
    wanted = None if ids is None else {InequalityId(i).value for i in ids}
    sweeps, exploratory = {}, {}
    for section, target in (("sweeps", sweeps), ("exploratory", exploratory)):
        for name in sorted(m.get(section, {})):
            if wanted is not None and name not in wanted:
                continue
            target[name] = sweep_inequality(spec_from_manifest(name, m, policy))
    limits, convexity, stieltjes = [], [], []
    if include_extras:
        limits = run_limits(m)
        conv = m.get("convexity", {})
        for s in conv.get("surfaces", []):
            convexity.append(check_log_convexity(Surface(s), conv.get("n_trials", 100),
                                                 conv.get("seed", m.get("seed", 0)),
                                                 policy.margin_factor))
        st = m.get("stieltjes")
        if st:
            xs = expand_axis(st["x"])
            for p in expand_grid(st["grid"]):
                stieltjes.append(check_cm(stieltjes_target(p["a"], p["c"]), xs,
                                          st.get("orders", 4),
                                          margin_factor=policy.margin_factor,
                                          name=f"stieltjes_G a={p['a']:g} c={p['c']:g}"))
    return SuiteReport(int(m.get("seed", 0)), m.get("sha256", ""), sweeps, exploratory,
                       limits, convexity, stieltjes)


def normative_ids() -> list:
    """Ids whose claims feed the exit code."""
    return [i for i, q in CATALOG.items() if q.normative]
