"""Finite-difference checks of complete and absolute monotonicity.

A function is completely monotonic (CM) when (-1)^m f^(m) >= 0 and
absolutely monotonic (AM) when f^(m) >= 0 for every order m.  Both are
probed through forward differences

    Delta_h^m f(x) = sum_j (-1)^(m-j) C(m, j) f(x + j h),

which have the sign of the m-th derivative somewhere in [x, x + m h].  The
error of a difference is bounded by sum_j C(m, j) e_j, where e_j is the
absolute error estimate of f(x + j h).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from ..confluent import stieltjes_G
from ..hankel import family_catalog, hankel_det_direct
from ..quadrature import EvalResult, Status

MAX_ORDER = 4
H0 = 1e-2
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class MonotoneVerdict:
    """Sign test of one forward difference."""

    x: float
    order: int
    h: float
    difference: float
    err: float
    margin: float
    status: str


@dataclass
class MonotoneReport:
    """Outcome of :func:`check_cm` or :func:`check_am`.

    ``by_order`` maps each order to its status: ``pass`` when every point
    passes, ``violation`` when any point violates, ``inconclusive`` otherwise.
    """

    target: str
    kind: str
    verdicts: list
    by_order: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return _combine(self.by_order.values())

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _combine(statuses) -> str:
    statuses = list(statuses)
    if "violation" in statuses:
        return "violation"
    if "inconclusive" in statuses:
        return "inconclusive"
    return "pass"


def classify(margin: float, margin_factor: float) -> str:
    """Verdict of a signed margin measured in error-estimate units."""
    if margin >= margin_factor:
        return "pass"
    if margin <= -margin_factor:
        return "violation"
    return "inconclusive"


Target = Callable[[float], EvalResult]


def _as_eval(v) -> tuple:
    if isinstance(v, EvalResult):
        return float(v.value), float(v.abs_err_est), v.status is Status.CONVERGED
    val = float(v)
    return val, 4 * _EPS * abs(val), True


def _check(kind: str, target: Target, x_grid: Sequence[float], max_order: int, h0: float,
           margin_factor: float, name: str) -> MonotoneReport:
    if not 0 <= max_order <= MAX_ORDER or int(max_order) != max_order:
        raise ValueError(f"max_order must be an integer in [0, {MAX_ORDER}]")
    verdicts = []
    for x in sorted(float(v) for v in x_grid):
        h = h0 * max(1.0, x)
        try:
            samples = [_as_eval(target(x + j * h)) for j in range(max_order + 1)]
        except (ArithmeticError, ValueError):
            for m in range(max_order + 1):
                verdicts.append(MonotoneVerdict(x, m, h, math.nan, math.nan, math.nan,
                                                "inconclusive"))
            continue
        vals = np.array([s[0] for s in samples])
        errs = np.array([s[1] for s in samples])
        ok = all(s[2] for s in samples)
        for m in range(max_order + 1):
            coef = np.array([(-1) ** (m - j) * math.comb(m, j) for j in range(m + 1)])
            diff = float(coef @ vals[:m + 1])
            err = float(np.abs(coef) @ errs[:m + 1])
            # rounding of the alternating sum itself
            err += _EPS * float(np.abs(coef) @ np.abs(vals[:m + 1]))
            signed = diff if kind == "am" else (-1) ** m * diff
            margin = signed / err if err > 0 else math.copysign(math.inf, signed)
            status = classify(margin, margin_factor) if ok else "inconclusive"
            verdicts.append(MonotoneVerdict(x, m, h, diff, err, margin, status))
    by_order = {m: _combine(v.status for v in verdicts if v.order == m)
                for m in range(max_order + 1)}
    return MonotoneReport(name, kind, verdicts, by_order)


def check_cm(target: Target, x_grid: Sequence[float], max_order: int = MAX_ORDER,
             h0: float = H0, margin_factor: float = 10.0, name: str = "") -> MonotoneReport:
    """Probe complete monotonicity through signed forward differences.

    Parameters
    ----------
    target : callable
        ``target(x)`` returning an :class:`EvalResult` or a float (floats are
        given a rounding-level error estimate).
    x_grid : sequence of float
        Base points; differences use step ``h = h0 * max(1, x)``.
    max_order : int
        Highest order probed, at most 4.
    h0 : float
    margin_factor : float
        A point passes when (-1)^m Delta^m exceeds ``margin_factor`` times
        its error estimate.

    Returns
    -------
    MonotoneReport

    Examples
    --------
    >>> import math
    >>> check_cm(lambda x: math.exp(-x), [0.5, 1.0]).status
    'pass'
    """
    return _check("cm", target, x_grid, max_order, h0, margin_factor, name)


def check_am(target: Target, x_grid: Sequence[float], max_order: int = MAX_ORDER,
             h0: float = H0, margin_factor: float = 10.0, name: str = "") -> MonotoneReport:
    """Probe absolute monotonicity: every forward difference positive.

    Same arguments as :func:`check_cm`.

    Examples
    --------
    >>> import math
    >>> check_am(math.exp, [0.5, 1.0]).status
    'pass'
    """
    return _check("am", target, x_grid, max_order, h0, margin_factor, name)


def det_target(fid: int, params: Mapping[str, float], n: int = 1) -> Target:
    """``x -> fid Det_n(x)`` by the direct Hankel determinant."""
    fam = family_catalog(fid, params)
    return lambda x: hankel_det_direct(fam, n, x)


def stieltjes_target(a: float, c: float) -> Target:
    """``x -> a psi(a+1, c+1, x) / psi(a, c, x)``."""
    return lambda x: stieltjes_G(a, c, x)


def resolve_target(name: str, params: Optional[Mapping[str, float]] = None,
                   n: int = 1) -> Target:
    """Target by name: ``exp``, ``exp_neg``, ``stieltjes_G`` or a family id."""
    params = dict(params or {})
    if name == "exp":
        return math.exp
    if name == "exp_neg":
        return lambda x: math.exp(-x)
    if name == "stieltjes_G":
        return stieltjes_target(params["a"], params["c"])
    try:
        fid = int(name)
    except ValueError:
        raise ValueError(f"unknown monotonicity target {name!r}") from None
    return det_target(fid, params, n)
