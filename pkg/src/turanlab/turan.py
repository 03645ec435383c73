"""Turanians f^2 - f_- f_+ for shifted families of special functions.

Each :class:`TuranianMode` fixes the centre function ``f`` and the two
shifted neighbours.  The normalised Turanian ``1 - f_- f_+ / f^2`` is formed
from log-magnitudes, so it stays finite when the three values themselves
would overflow, and its absolute error is propagated from the relative
errors of the three factors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, NamedTuple

import numpy as np

from .confluent import tricomi_psi_log
from .cylinder import bessel_K_log, chi_density_log, parabolic_D_log, whittaker_W_log
from .errors import DomainError, EvaluationError, RegimeError
from .quadrature import LogResult, Status, worst_status
from .scalar import SignedLogValue, log_gamma, rgamma_signed

_EPS = np.finfo(float).eps


class TuranianMode(str, Enum):
    PARA = "PARA"
    PARA_EVEN = "PARA_EVEN"
    PSI_DIAG = "PSI_DIAG"
    PSI_A = "PSI_A"
    PSI_C = "PSI_C"
    PSI_DOUBLE = "PSI_DOUBLE"
    BESSEL_K = "BESSEL_K"
    WHIT_DIAG = "WHIT_DIAG"
    WHIT_KAPPA = "WHIT_KAPPA"
    WHIT_ANTI = "WHIT_ANTI"
    CHI = "CHI"


# parameter names each mode reads
MODE_PARAMS = {
    TuranianMode.PARA: ("a",),
    TuranianMode.PARA_EVEN: ("a",),
    TuranianMode.PSI_DIAG: ("a", "c"),
    TuranianMode.PSI_A: ("a", "c"),
    TuranianMode.PSI_C: ("a", "c"),
    TuranianMode.PSI_DOUBLE: ("a", "c"),
    TuranianMode.BESSEL_K: ("a",),
    TuranianMode.WHIT_DIAG: ("kappa", "mu"),
    TuranianMode.WHIT_KAPPA: ("kappa", "mu"),
    TuranianMode.WHIT_ANTI: ("kappa", "mu"),
    TuranianMode.CHI: ("a", "tau"),
}


@dataclass(frozen=True)
class TuranianResult:
    """Turanian of one mode at one point.

    Attributes
    ----------
    delta : float
        f^2 - f_- f_+ (may overflow to +-inf; ``log_delta`` does not).
    normalized : float
        delta / f^2.
    abs_err_est : float
        Absolute error estimate of ``delta``.
    norm_err_est : float
        Absolute error estimate of ``normalized``.
    center : SignedLogValue
        The centre value f.
    """

    delta: float
    normalized: float
    abs_err_est: float
    norm_err_est: float
    center: SignedLogValue
    log_delta: SignedLogValue
    n_evals: int = 0
    status: Status = Status.CONVERGED


class SharpConstants(NamedTuple):
    """Bounds of a Turanian; ``on`` is ``"normalized"`` or ``"delta"``."""

    lower: float | None
    upper: float | None
    on: str = "normalized"


def _get(params: Mapping[str, float], mode: TuranianMode):
    try:
        return tuple(float(params[k]) for k in MODE_PARAMS[mode])
    except KeyError as exc:
        raise DomainError(f"mode {mode.value} needs parameters {MODE_PARAMS[mode]}") from exc


def turanian_factors(mode: TuranianMode | str, params: Mapping[str, float], x: float):
    """The three factors ``(f, f_minus, f_plus)`` of a mode as LogResults."""
    mode = TuranianMode(mode)
    p = _get(params, mode)
    x = float(x)
    if mode is TuranianMode.PARA:
        (a,) = p
        return parabolic_D_log(-a, x), parabolic_D_log(-a - 1, x), parabolic_D_log(-a + 1, x)
    if mode is TuranianMode.PARA_EVEN:
        (a,) = p
        return (parabolic_D_log(-2 * a, x), parabolic_D_log(-2 * a - 2, x),
                parabolic_D_log(-2 * a + 2, x))
    if mode in (TuranianMode.PSI_DIAG, TuranianMode.PSI_A, TuranianMode.PSI_C,
                TuranianMode.PSI_DOUBLE):
        a, c = p
        da, dc = {TuranianMode.PSI_DIAG: (1, 1), TuranianMode.PSI_A: (1, 0),
                  TuranianMode.PSI_C: (0, 1), TuranianMode.PSI_DOUBLE: (1, 2)}[mode]
        return (tricomi_psi_log(a, c, x), tricomi_psi_log(a - da, c - dc, x),
                tricomi_psi_log(a + da, c + dc, x))
    if mode is TuranianMode.BESSEL_K:
        (a,) = p
        return bessel_K_log(a, x), bessel_K_log(a - 1, x), bessel_K_log(a + 1, x)
    if mode in (TuranianMode.WHIT_DIAG, TuranianMode.WHIT_KAPPA, TuranianMode.WHIT_ANTI):
        k, m = p
        # (kappa, mu) offsets of f_minus; f_plus uses the opposite offsets.
        # f_minus is the neighbour whose psi parameter a = mu - kappa + 1/2
        # is smaller (or, for WHIT_ANTI, whose c = 1 + 2 mu is smaller).
        dk, dm = {TuranianMode.WHIT_DIAG: (0.5, -0.5), TuranianMode.WHIT_KAPPA: (1.0, 0.0),
                  TuranianMode.WHIT_ANTI: (-0.5, -0.5)}[mode]
        return (whittaker_W_log(k, m, x), whittaker_W_log(k + dk, m + dm, x),
                whittaker_W_log(k - dk, m - dm, x))
    if mode is TuranianMode.CHI:
        a, tau = p
        return (chi_density_log(2 * a + 1, tau, x, route="series"),
                chi_density_log(2 * a, tau, x, route="series"),
                chi_density_log(2 * a + 2, tau, x, route="series"))
    raise DomainError(f"unknown mode {mode!r}")


def turanian_from_factors(f: LogResult, fm: LogResult, fp: LogResult) -> TuranianResult:
    """Assemble a :class:`TuranianResult` from the three factors."""
    if f.value.sign == 0:
        raise EvaluationError("the centre function vanishes; normalisation undefined")
    r = fm.value * fp.value / (f.value * f.value)
    rl = r.to_linear()
    normalized = 1.0 - rl
    rel_sum = fm.rel_err_est + fp.rel_err_est + 2.0 * f.rel_err_est
    if rl == 0.0 and math.isinf(rel_sum):
        # an exactly vanishing neighbour carries no relative error bound
        norm_err = math.inf
    else:
        norm_err = abs(rl) * rel_sum + 4.0 * _EPS * (1.0 + abs(rl))
    f2 = f.value * f.value
    log_delta = f2 * SignedLogValue.from_linear(normalized) if math.isfinite(normalized) \
        else SignedLogValue(-r.sign, r.log_abs + f2.log_abs)
    abs_err = (f2 * norm_err).to_linear()
    status = worst_status(f.status, fm.status, fp.status)
    return TuranianResult(float(log_delta.to_linear()), float(normalized), float(abs_err),
                          float(norm_err), f.value, log_delta,
                          f.n_evals + fm.n_evals + fp.n_evals, status)


def turanian(mode: TuranianMode | str, params: Mapping[str, float], x: float) -> TuranianResult:
    """Turanian ``f^2 - f_- f_+`` of ``mode`` at ``x``.

    Parameters
    ----------
    mode : TuranianMode or str
        PARA: (D_{-a}, D_{-a-1}, D_{-a+1}); PARA_EVEN: (D_{-2a}, D_{-2a-2},
        D_{-2a+2}); PSI_DIAG: psi at (a+-1, c+-1); PSI_A: (a+-1, c);
        PSI_C: (a, c+-1); PSI_DOUBLE: (a+-1, c+-2); BESSEL_K: (K_a, K_{a-1},
        K_{a+1}); WHIT_DIAG: W at (kappa+1/2, mu-1/2) and (kappa-1/2, mu+1/2);
        WHIT_KAPPA: (kappa+-1, mu); WHIT_ANTI: (kappa-1/2, mu-1/2) and
        (kappa+1/2, mu+1/2); CHI: (chi_{2a+1}, chi_{2a}, chi_{2a+2}) at tau.
    params : mapping
        ``a``, ``c``, ``kappa``, ``mu``, ``tau`` as the mode requires.
    x : float

    Returns
    -------
    TuranianResult

    Examples
    --------
    >>> r = turanian("PARA", {"a": 1.0}, 0.0)
    >>> abs(r.delta - (math.pi / 2 - 1)) < 1e-12
    True
    """
    return turanian_from_factors(*turanian_factors(mode, params, x))


# ----------------------------------------------------------- sharp constants

def mu_a(a: float) -> float:
    """Upper constant of the parabolic Turanian, attained at x = 0.

    mu_a = pi 2^(-a) [1/Gamma((a+1)/2)^2 - 1/(Gamma(a/2) Gamma(a/2+1))].
    """
    a = float(a)
    r1 = rgamma_signed(0.5 * (a + 1))
    r2 = rgamma_signed(0.5 * a) * rgamma_signed(0.5 * a + 1)
    pre = SignedLogValue(1, math.log(math.pi) - a * math.log(2.0))
    return float((pre * (r1 * r1 - r2)).to_linear())


def chi_weak_upper(a: float) -> float:
    """1 - Gamma(a)^2 / (Gamma(a - 1/2) Gamma(a + 1/2)), a > 1/2."""
    if not a > 0.5:
        raise RegimeError("the weak chi bound needs a > 1/2")
    return -math.expm1(2 * log_gamma(a) - log_gamma(a - 0.5) - log_gamma(a + 0.5))


def chi_sharp_upper(a: float) -> float:
    """1 - Gamma(a + 1/2)^2 / (Gamma(a) Gamma(a + 1)), a > 0."""
    if not a > 0:
        raise RegimeError("the chi bound needs a > 0")
    return -math.expm1(2 * log_gamma(a + 0.5) - log_gamma(a) - log_gamma(a + 1))


def _psi_c_lower(a: float, c: float) -> float:
    if a > 0 > c:
        return a / (c * (1 + a - c))
    if a > c - 1 > 1:
        return 1.0 / (2.0 - c)
    raise RegimeError("PSI_C lower bound needs a > 0 > c or a > c - 1 > 1")


def _sides(mode: TuranianMode, p):
    """Return ``(lower_fn, upper_fn, on)``; each fn returns a value or raises."""

    def need(cond, msg):
        if not cond:
            raise RegimeError(msg)

    if mode is TuranianMode.PARA:
        (a,) = p

        def lo():
            need(a >= 0, "PARA lower bound needs a > 0 (a = 0 for x > 0)")
            return 0.0

        def up():
            need(a > 0, "PARA upper bound needs a > 0")
            return mu_a(a)
        return lo, up, "delta"
    if mode is TuranianMode.PARA_EVEN:
        (a,) = p

        def lo():
            need(a > 0, "PARA_EVEN lower bound needs a > 0")
            return 0.0

        def up():
            need(a > 1, "PARA_EVEN upper bound needs a > 1")
            return 1.0 / (a + 0.5)
        return lo, up, "normalized"
    if mode is TuranianMode.PSI_DIAG:
        a, c = p

        def lo():
            need(a > 0 > c, "PSI_DIAG lower bound needs a > 0 > c")
            return 1.0 / c

        def up():
            need((a > 0 and c < 1) or a + 1 > c > 2,
                 "PSI_DIAG upper bound needs a > 0, c < 1 or a + 1 > c > 2")
            return 0.0
        return lo, up, "normalized"
    if mode is TuranianMode.PSI_A:
        a, c = p

        def lo():
            need(a > 0 and c < 1, "PSI_A lower bound needs a > 0, c < 1")
            return 0.0

        def up():
            need(a > 1 > c, "PSI_A upper bound needs a > 1 > c")
            return 1.0 / (1 + a - c)
        return lo, up, "normalized"
    if mode is TuranianMode.PSI_C:
        a, c = p

        def up():
            need(a > 0, "PSI_C upper bound needs a > 0")
            return 0.0
        return (lambda: _psi_c_lower(a, c)), up, "normalized"
    if mode is TuranianMode.PSI_DOUBLE:
        a, c = p
        # only the Bessel parametrisation (a + 1/2, 2a + 1) carries sharp bounds
        nu = a - 0.5

        def lo():
            need(abs(c - 2 * a) <= 1e-12 * max(1.0, abs(c)) and nu > 1,
                 "PSI_DOUBLE lower bound needs c = 2a and a > 3/2")
            return 1.0 / (1.0 - nu)

        def up():
            need(abs(c - 2 * a) <= 1e-12 * max(1.0, abs(c)),
                 "PSI_DOUBLE upper bound needs c = 2a")
            return 0.0
        return lo, up, "normalized"
    if mode is TuranianMode.BESSEL_K:
        (a,) = p

        def lo():
            need(a > 1, "BESSEL_K lower bound needs a > 1")
            return 1.0 / (1.0 - a)
        return lo, (lambda: 0.0), "normalized"
    if mode is TuranianMode.WHIT_DIAG:
        k, m = p

        def lo():
            need(0 > m + 0.5 > k, "WHIT_DIAG lower bound needs 0 > mu + 1/2 > kappa")
            return 1.0 / (1 + 2 * m)

        def up():
            need(0.5 > m + 0.5 > k, "WHIT_DIAG upper bound needs 1/2 > mu + 1/2 > kappa")
            return 0.0
        return lo, up, "normalized"
    if mode is TuranianMode.WHIT_KAPPA:
        k, m = p

        def lo():
            need(0.5 > m + 0.5 > k, "WHIT_KAPPA lower bound needs 1/2 > mu + 1/2 > kappa")
            return 0.0

        def up():
            need(-0.5 > m - 0.5 > k, "WHIT_KAPPA upper bound needs -1/2 > mu - 1/2 > kappa")
            return 1.0 / (0.5 - m - k)
        return lo, up, "normalized"
    if mode is TuranianMode.WHIT_ANTI:
        k, m = p

        def lo():
            if 0 > m + 0.5 > k:
                return (m - k + 0.5) / ((1 + 2 * m) * (0.5 - m - k))
            if 1 < m + 0.5 < 1 - k:
                return 1.0 / (1.0 - 2 * m)
            raise RegimeError("WHIT_ANTI lower bound needs 0 > mu + 1/2 > kappa "
                              "or 1 < mu + 1/2 < 1 - kappa")

        def up():
            need(m + 0.5 > k, "WHIT_ANTI upper bound needs mu + 1/2 > kappa")
            return 0.0
        return lo, up, "normalized"
    if mode is TuranianMode.CHI:
        a, tau = p

        def lo():
            need(a > 0 and tau > 0, "CHI bounds need a, tau > 0")
            return 0.0

        def up():
            need(tau > 0, "CHI bounds need a, tau > 0")
            return chi_sharp_upper(a)
        return lo, up, "normalized"
    raise DomainError(f"unknown mode {mode!r}")


def sharp_constants(mode: TuranianMode | str, params: Mapping[str, float],
                    side: str = "both") -> SharpConstants:
    """Best-possible constants bounding the Turanian of ``mode``.

    Parameters
    ----------
    mode : TuranianMode or str
    params : mapping
    side : {"both", "lower", "upper"}
        With ``"both"`` a side outside its regime is returned as ``None``;
        a single requested side outside its regime raises.

    Returns
    -------
    SharpConstants
        ``on`` tells whether the bounds apply to ``delta`` (PARA) or to the
        normalised Turanian (every other mode).

    Raises
    ------
    RegimeError
        The requested side, or both sides, are outside the claimed regime.

    Examples
    --------
    >>> sharp_constants("PSI_DIAG", {"a": 1.0, "c": -2.0})
    SharpConstants(lower=-0.5, upper=0.0, on='normalized')
    """
    mode = TuranianMode(mode)
    lo, up, on = _sides(mode, _get(params, mode))
    if side == "lower":
        return SharpConstants(lo(), None, on)
    if side == "upper":
        return SharpConstants(None, up(), on)
    if side != "both":
        raise ValueError(f"side must be both, lower or upper, got {side!r}")
    vals = []
    for fn in (lo, up):
        try:
            vals.append(fn())
        except RegimeError:
            vals.append(None)
    if vals == [None, None]:
        raise RegimeError(f"parameters {dict(params)} are outside every {mode.value} regime")
    return SharpConstants(vals[0], vals[1], on)
