"""Sharpness of Turan-type constants through endpoint limits.

The normalised Turanian is evaluated on a geometric sequence toward
x -> 0 or x -> infinity and extrapolated with Aitken's delta-squared
process (Richardson extrapolation with the rate estimated from the data).
At x -> 0 the limit is compared with the sharp constant of the mode; at
x -> infinity it must vanish.  PARA is bounded on ``delta`` rather than the
normalised Turanian, so there the quantity is delta / mu_a and its x -> 0
target is 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from ..errors import RegimeError
from ..quadrature import Status
from ..turan import TuranianMode, mu_a, sharp_constants, turanian

ZERO_XS = (1e-4, 1e-5, 1e-6)
INF_XS = (1e2, 1e3, 1e4)
PARA_INF_XS = (2.5, 5.0, 10.0)
ZERO_REL_TOL = 1e-3
INF_ABS_TOL = 1e-3

# side of the sharp constant that is attained as x -> 0
ZERO_SIDE = {
    TuranianMode.PARA: "upper",
    TuranianMode.PARA_EVEN: "upper",
    TuranianMode.PSI_DIAG: "lower",
    TuranianMode.PSI_A: "upper",
    TuranianMode.PSI_C: "lower",
    TuranianMode.PSI_DOUBLE: "lower",
    TuranianMode.BESSEL_K: "lower",
    TuranianMode.WHIT_DIAG: "lower",
    TuranianMode.WHIT_KAPPA: "upper",
    TuranianMode.WHIT_ANTI: "lower",
    TuranianMode.CHI: "upper",
}


@dataclass(frozen=True)
class LimitVerdict:
    """Outcome of :func:`check_limit_sharpness`.

    ``target`` is the sharp constant (x -> 0) or 0 (x -> infinity);
    ``error`` is relative for x -> 0 and absolute for x -> infinity.
    """

    mode: TuranianMode
    params: tuple
    endpoint: str
    xs: tuple
    values: tuple
    extrapolated: float
    target: float
    error: float
    status: str
    note: str = ""


def aitken(v0: float, v1: float, v2: float) -> float:
    """Aitken delta-squared limit of three successive terms.

    Examples
    --------
    >>> round(aitken(1.5, 1.25, 1.125), 12)
    1.0
    """
    d1, d2 = v1 - v0, v2 - v1
    den = d2 - d1
    if den == 0.0:
        return v2
    return v2 - d2 * d2 / den


def _quantity(mode: TuranianMode, params, x: float) -> tuple:
    r = turanian(mode, params, x)
    ok = r.status is Status.CONVERGED
    if mode is TuranianMode.PARA:
        return r.delta / mu_a(params["a"]), ok
    return r.normalized, ok


def check_limit_sharpness(mode: TuranianMode | str, params: Mapping[str, float], endpoint: str,
                          xs: Optional[Sequence[float]] = None) -> LimitVerdict:
    """Extrapolate the normalised Turanian to an endpoint.

    Parameters
    ----------
    mode : TuranianMode or str
    params : mapping
    endpoint : {"0", "inf"}
    xs : sequence of three floats, optional
        Geometric sequence toward the endpoint.  Defaults to
        (1e-4, 1e-5, 1e-6) for x -> 0, (1e2, 1e3, 1e4) for x -> infinity
        and (2.5, 5, 10) for the PARA decay.

    Returns
    -------
    LimitVerdict
        ``pass`` when the extrapolated limit is within 1e-3 (relative) of
        the sharp constant at x -> 0, or when both the last value and the
        limit are below 1e-3 in modulus at x -> infinity.  A sequence that
        does not approach its limit monotonically is ``inconclusive``.

    Raises
    ------
    RegimeError
        x -> 0 was requested outside the regime of the sharp constant.

    Examples
    --------
    >>> check_limit_sharpness("PSI_A", {"a": 2.0, "c": 0.0}, "0").status
    'pass'
    """
    mode = TuranianMode(mode)
    if endpoint not in ("0", "inf"):
        raise ValueError(f"endpoint must be '0' or 'inf', got {endpoint!r}")
    if xs is None:
        if endpoint == "0":
            xs = ZERO_XS
        else:
            xs = PARA_INF_XS if mode is TuranianMode.PARA else INF_XS
    xs = tuple(float(x) for x in xs)
    if len(xs) != 3:
        raise ValueError("three abscissae are needed for extrapolation")
    key = tuple(sorted((k, float(v)) for k, v in params.items()))
    if endpoint == "0":
        side = ZERO_SIDE[mode]
        sc = sharp_constants(mode, params, side=side)
        target = sc.lower if side == "lower" else sc.upper
        if mode is TuranianMode.PARA:
            target /= mu_a(params["a"])
    else:
        target = 0.0
    try:
        evals = [_quantity(mode, params, x) for x in xs]
    except (ArithmeticError, ValueError) as exc:
        return LimitVerdict(mode, key, endpoint, xs, (), math.nan, target, math.nan,
                            "inconclusive", f"evaluation failed: {exc}")
    values = tuple(v for v, _ in evals)
    lim = aitken(*values)
    if endpoint == "0":
        error = abs(lim - target) / abs(target) if target else abs(lim)
        good = error <= ZERO_REL_TOL
    else:
        error = max(abs(lim), abs(values[-1]))
        good = error < INF_ABS_TOL
    d1, d2 = values[1] - values[0], values[2] - values[1]
    note = ""
    if d1 * d2 < 0:
        status, note = "inconclusive", "non-monotone sequence"
    elif not all(ok for _, ok in evals):
        status, note = "inconclusive", "unconverged evaluation"
    else:
        status = "pass" if good else "violation"
    return LimitVerdict(mode, key, endpoint, xs, values, lim, target, error, status, note)


def sharp_limits(mode: TuranianMode | str, params: Mapping[str, float]) -> list:
    """Both endpoint verdicts; x -> 0 is skipped outside its regime."""
    out = []
    try:
        out.append(check_limit_sharpness(mode, params, "0"))
    except RegimeError:
        pass
    out.append(check_limit_sharpness(mode, params, "inf"))
    return out
