"""Catalog of the Turan-type claims that the sweep engine certifies.

Every :class:`InequalityId` maps to an :class:`Inequality` record carrying
the quantity that is bounded, the bound functions, the parameter regime in
which the claim is made, and whether the claim is normative.  Bounds refer
to one of four quantities:

``delta``       f^2 - f_- f_+
``normalized``  delta / f^2
``ratio``       f^2 / (f_- f_+), or a Kummer ratio for the PHI_RATIO claims
``laguerre``    1 - ((a+1)/a) psi(a,c) psi(a+2,c+2) / psi(a+1,c+1)^2

Suffix ``_L`` names the lower bound and ``_R`` the upper bound of a
two-sided claim, whatever side of the printed display they sit on.
"""
from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping, Optional

from ..confluent import kummer_phi_log
from ..errors import RegimeError
from ..quadrature import Status, worst_status
from ..turan import (TuranianMode, chi_sharp_upper, chi_weak_upper, mu_a, sharp_constants,
                     turanian)

_EPS = 2.220446049250313e-16


class InequalityId(str, Enum):
    T21_L = "T21_L"
    T21_R = "T21_R"
    SEGURA = "SEGURA"
    TMB_L = "TMB_L"
    TMB_R = "TMB_R"
    T32_L = "T32_L"
    T32_R = "T32_R"
    T34_L = "T34_L"
    T34_R = "T34_R"
    T36A_L = "T36A_L"
    T36A_R = "T36A_R"
    T36B_L = "T36B_L"
    T36B_R = "T36B_R"
    LAGUERRE = "LAGUERRE"
    EQ_TURANTRICO2 = "EQ_TURANTRICO2"
    EQREM1 = "EQREM1"
    EQREM2 = "EQREM2"
    PARA_EVEN_SHARP = "PARA_EVEN_SHARP"
    WHIT_DIAG_2S = "WHIT_DIAG_2S"
    WHIT_KAPPA_2S = "WHIT_KAPPA_2S"
    WHIT_ANTI_2S = "WHIT_ANTI_2S"
    DET_CM_1 = "DET_CM_1"
    DET_CM_2 = "DET_CM_2"
    DET_CM_3 = "DET_CM_3"
    DET_CM_4 = "DET_CM_4"
    DET_CM_5 = "DET_CM_5"
    DET_CM_6 = "DET_CM_6"
    DET_CM_7 = "DET_CM_7"
    DET_CM_8 = "DET_CM_8"
    DET_AM_9 = "DET_AM_9"
    DET_AM_10 = "DET_AM_10"
    DET_AM_11 = "DET_AM_11"
    DET_CM_12 = "DET_CM_12"
    DET_AM_13 = "DET_AM_13"
    DET_CM_14 = "DET_CM_14"
    DET_AM_15 = "DET_AM_15"
    DET_CM_16 = "DET_CM_16"
    R43_PSIDOUBLE = "R43_PSIDOUBLE"
    R43_HANKEL_DELTA = "R43_HANKEL_DELTA"
    R43_PSI_A_3 = "R43_PSI_A_3"
    R43_PSI_C_4 = "R43_PSI_C_4"
    R43_PSI_C_5 = "R43_PSI_C_5"
    R43_PSI_DIAG_6 = "R43_PSI_DIAG_6"
    R43_PSIDOUBLE_8 = "R43_PSIDOUBLE_8"
    PHI_RATIO_A = "PHI_RATIO_A"
    PHI_RATIO_DIAG = "PHI_RATIO_DIAG"
    CHI_WEAK = "CHI_WEAK"
    CHI_SHARP = "CHI_SHARP"
    CONJ_T21_NEG_A = "CONJ_T21_NEG_A"


@dataclass(frozen=True)
class Sample:
    """One evaluated point of an inequality.

    ``value`` is the bounded quantity and ``err`` its absolute error
    estimate; ``delta`` and ``normalized`` are reported alongside.
    """

    value: float
    err: float
    delta: float
    normalized: float
    lower: Optional[float]
    upper: Optional[float]
    converged: bool = True


Bound = Callable[[Mapping[str, float]], Optional[float]]


@dataclass(frozen=True)
class Inequality:
    """A claim ``lower < quantity < upper`` over a parameter regime.

    Attributes
    ----------
    id : InequalityId
    quantity : str
        ``delta``, ``normalized``, ``ratio``, ``laguerre`` or ``cm``/``am``
        for the determinant monotonicity claims.
    params : tuple of str
        Parameter names read from a grid point.
    evaluate : callable or None
        ``evaluate(params, x)`` -> :class:`Sample`; None for determinant ids.
    regime : callable
        ``regime(params, x)`` is True where the claim is made.
    mode : TuranianMode or None
    family : int or None
        Hankel family for ``DET_*`` ids.
    equality_at : tuple of float
        Abscissae where the upper bound is attained (checked as an equality).
    normative : bool
    claim : str
        One-line statement of the inequality.
    """

    id: InequalityId
    quantity: str
    params: tuple
    evaluate: Optional[Callable[[Mapping[str, float], float], Sample]]
    regime: Callable[[Mapping[str, float], float], bool]
    mode: Optional[TuranianMode] = None
    family: Optional[int] = None
    equality_at: tuple = ()
    normative: bool = True
    claim: str = ""
    notes: tuple = field(default_factory=tuple)


# ------------------------------------------------------------------ builders

@lru_cache(maxsize=1 << 16)
def _turanian_cached(mode: TuranianMode, items: tuple, x: float):
    # the _L and _R ids of one claim share every evaluation
    return turanian(mode, dict(items), x)


def clear_cache() -> None:
    """Drop memoised Turanian evaluations."""
    _turanian_cached.cache_clear()


def _turan(mode: TuranianMode, lower: Bound | None, upper: Bound | None,
           quantity: str = "normalized", transform=None):
    """Evaluator for a bound on one Turanian mode.

    ``transform(params)`` maps grid parameters to mode parameters.
    """
    def evaluate(params, x):
        mp = transform(params) if transform else params
        r = _turanian_cached(mode, tuple(sorted((k, float(v)) for k, v in mp.items())), x)
        lo = lower(params) if lower else None
        up = upper(params) if upper else None
        ok = r.status is Status.CONVERGED
        if quantity == "delta":
            return Sample(r.delta, r.abs_err_est, r.delta, r.normalized, lo, up, ok)
        if quantity == "ratio":
            ratio = 1.0 / (1.0 - r.normalized)
            return Sample(ratio, ratio * ratio * r.norm_err_est, r.delta, r.normalized, lo, up,
                          ok)
        return Sample(r.normalized, r.norm_err_est, r.delta, r.normalized, lo, up, ok)
    return evaluate


def _const(v):
    return lambda p: v


def _laguerre(params, x):
    a, c = params["a"], params["c"]
    r = turanian(TuranianMode.PSI_DIAG, {"a": a + 1, "c": c + 1}, x)
    k = (a + 1) / a
    value = 1.0 - k * (1.0 - r.normalized)
    return Sample(value, k * r.norm_err_est + 4 * _EPS, r.delta, r.normalized, None, 0.0,
                  r.status is Status.CONVERGED)


def _phi_ratio(da: int, dc: int, bound: Bound):
    def evaluate(params, x):
        a, c = params["a"], params["c"]
        f = kummer_phi_log(a, c, x)
        fm = kummer_phi_log(a - da, c - dc, x)
        fp = kummer_phi_log(a + da, c + dc, x)
        r = fm.value * fp.value / (f.value * f.value)
        ratio = float(r.to_linear())
        err = abs(ratio) * (fm.rel_err_est + fp.rel_err_est + 2 * f.rel_err_est + 4 * _EPS)
        status = worst_status(f.status, fm.status, fp.status)
        return Sample(ratio, err, math.nan, 1.0 - ratio, bound(params), None,
                      status is Status.CONVERGED)
    return evaluate


def _sharp(mode: TuranianMode, side: str) -> Bound:
    def bound(params):
        try:
            sc = sharp_constants(mode, params, side=side)
        except RegimeError:
            return None
        return sc.lower if side == "lower" else sc.upper
    return bound


def _in_sharp_regime(mode: TuranianMode):
    def regime(params, x):
        try:
            sharp_constants(mode, params)
        except RegimeError:
            return False
        return x > 0
    return regime


def _segura_upper(params):
    a = params["a"]
    return math.sqrt((a + 1) / (a - 1)) if a > 1 else None


def _para_even_upper(params):
    a = params["a"]
    return 1.0 / (a + 0.5) if a > 1 else None


def _chi_weak(params):
    return chi_weak_upper(params["a"])


def _chi_sharp(params):
    return chi_sharp_upper(params["a"])


def _det(fid: int, kind: str, guard: Callable[[Mapping[str, float]], bool], params: tuple,
         claim: str) -> Inequality:
    iid = InequalityId(f"DET_{kind.upper()}_{fid}")
    return Inequality(iid, kind, params, None, lambda p, x: guard(p) and x > 0,
                      family=fid, claim=claim)


def _build() -> dict:
    M = TuranianMode
    pos = lambda p, x: x > 0
    cat = [
        Inequality(InequalityId.T21_L, "delta", ("a",),
                   _turan(M.PARA, _const(0.0), None, "delta"),
                   lambda p, x: p["a"] > 0 or (p["a"] == 0 and x > 0), M.PARA,
                   claim="0 < D_{-a}^2 - D_{-a-1} D_{-a+1} for a > 0, x real"),
        Inequality(InequalityId.T21_R, "delta", ("a",),
                   _turan(M.PARA, None, lambda p: mu_a(p["a"]), "delta"),
                   lambda p, x: p["a"] > 0, M.PARA, equality_at=(0.0,),
                   claim="D_{-a}^2 - D_{-a-1} D_{-a+1} <= mu_a for a > 0, x real"),
        Inequality(InequalityId.SEGURA, "ratio", ("a",),
                   _turan(M.PARA, _const(1.0), _segura_upper, "ratio"),
                   lambda p, x: p["a"] > 0, M.PARA,
                   claim="1 < D_{-a}^2/(D_{-a-1} D_{-a+1}) < sqrt((a+1)/(a-1)), upper for a > 1"),
        Inequality(InequalityId.TMB_L, "normalized", ("a",),
                   _turan(M.BESSEL_K, lambda p: 1.0 / (1.0 - p["a"]), None),
                   lambda p, x: p["a"] > 1 and x > 0, M.BESSEL_K,
                   claim="1/(1-a) < 1 - K_{a-1} K_{a+1}/K_a^2 for a > 1"),
        Inequality(InequalityId.TMB_R, "normalized", ("a",),
                   _turan(M.BESSEL_K, None, _const(0.0)), pos, M.BESSEL_K,
                   claim="1 - K_{a-1} K_{a+1}/K_a^2 < 0 for all real a"),
        Inequality(InequalityId.T32_L, "normalized", ("a", "c"),
                   _turan(M.PSI_DIAG, lambda p: 1.0 / p["c"], None),
                   lambda p, x: p["a"] > 0 > p["c"] and x > 0, M.PSI_DIAG,
                   claim="1/c < PSI_DIAG normalised Turanian for a > 0 > c"),
        Inequality(InequalityId.T32_R, "normalized", ("a", "c"),
                   _turan(M.PSI_DIAG, None, _const(0.0)),
                   lambda p, x: p["a"] > 0 and p["c"] < 1 and x > 0, M.PSI_DIAG,
                   claim="PSI_DIAG normalised Turanian < 0 for a > 0, c < 1"),
        Inequality(InequalityId.T34_L, "normalized", ("a", "c"),
                   _turan(M.PSI_A, _const(0.0), None),
                   lambda p, x: p["a"] > 0 and p["c"] < 1 and x > 0, M.PSI_A,
                   claim="0 < PSI_A normalised Turanian for a > 0, c < 1"),
        Inequality(InequalityId.T34_R, "normalized", ("a", "c"),
                   _turan(M.PSI_A, None, lambda p: 1.0 / (1 + p["a"] - p["c"])),
                   lambda p, x: p["a"] > 1 > p["c"] and x > 0, M.PSI_A,
                   claim="PSI_A normalised Turanian < 1/(1+a-c) for a > 1 > c"),
        Inequality(InequalityId.T36A_L, "normalized", ("a", "c"),
                   _turan(M.PSI_C, lambda p: p["a"] / (p["c"] * (1 + p["a"] - p["c"])), None),
                   lambda p, x: p["a"] > 0 > p["c"] and x > 0, M.PSI_C,
                   claim="a/(c(1+a-c)) < PSI_C normalised Turanian for a > 0 > c"),
        Inequality(InequalityId.T36A_R, "normalized", ("a", "c"),
                   _turan(M.PSI_C, None, _const(0.0)),
                   lambda p, x: p["a"] > 0 and x > 0, M.PSI_C,
                   claim="PSI_C normalised Turanian < 0 for a > 0, c real"),
        Inequality(InequalityId.T36B_L, "normalized", ("a", "c"),
                   _turan(M.PSI_C, lambda p: 1.0 / (2 - p["c"]), None),
                   lambda p, x: p["a"] > p["c"] - 1 > 1 and x > 0, M.PSI_C,
                   claim="1/(2-c) < PSI_C normalised Turanian for a > c - 1 > 1",
                   notes=("the lower-bound regimes a > 0 > c and a > c - 1 > 1 leave "
                          "0 <= c <= 2 uncovered; grids avoid that strip",)),
        Inequality(InequalityId.T36B_R, "normalized", ("a", "c"),
                   _turan(M.PSI_C, None, _const(0.0)),
                   lambda p, x: p["a"] > p["c"] - 1 > 0 and x > 0, M.PSI_C,
                   claim="PSI_C normalised Turanian < 0 for a > c - 1 > 0"),
        Inequality(InequalityId.LAGUERRE, "laguerre", ("a", "c"), _laguerre,
                   lambda p, x: p["a"] > 0 and p["c"] < 1 and x > 0,
                   claim="a psi(a+1,c+1)^2 < (a+1) psi(a,c) psi(a+2,c+2) for a > 0, c < 1"),
        Inequality(InequalityId.EQ_TURANTRICO2, "normalized", ("a", "c"),
                   _turan(M.PSI_DIAG, None, lambda p: 1.0 / p["a"]),
                   lambda p, x: p["a"] > 1 and x > 0, M.PSI_DIAG,
                   claim="PSI_DIAG normalised Turanian < 1/a for a > 1, c real"),
        Inequality(InequalityId.EQREM1, "normalized", ("a", "c"),
                   _turan(M.PSI_A, None, lambda p: 1.0 / p["a"]),
                   lambda p, x: p["a"] > 1 and x > 0, M.PSI_A,
                   claim="PSI_A normalised Turanian < 1/a for a > 1, c real"),
        Inequality(InequalityId.EQREM2, "normalized", ("a",),
                   _turan(M.PARA_EVEN, None, lambda p: 1.0 / p["a"]),
                   lambda p, x: p["a"] > 1 and x > 0, M.PARA_EVEN,
                   claim="PARA_EVEN normalised Turanian < 1/a for a > 1"),
        Inequality(InequalityId.PARA_EVEN_SHARP, "normalized", ("a",),
                   _turan(M.PARA_EVEN, lambda p: 0.0 if p["a"] > 0 else None, _para_even_upper),
                   lambda p, x: p["a"] > 0 and x > 0, M.PARA_EVEN,
                   claim="0 < PARA_EVEN normalised Turanian < 1/(a+1/2), upper for a > 1"),
        Inequality(InequalityId.WHIT_DIAG_2S, "normalized", ("kappa", "mu"),
                   _turan(M.WHIT_DIAG, _sharp(M.WHIT_DIAG, "lower"),
                          _sharp(M.WHIT_DIAG, "upper")),
                   _in_sharp_regime(M.WHIT_DIAG), M.WHIT_DIAG,
                   claim="1/(1+2mu) < WHIT_DIAG normalised Turanian < 0"),
        Inequality(InequalityId.WHIT_KAPPA_2S, "normalized", ("kappa", "mu"),
                   _turan(M.WHIT_KAPPA, _sharp(M.WHIT_KAPPA, "lower"),
                          _sharp(M.WHIT_KAPPA, "upper")),
                   _in_sharp_regime(M.WHIT_KAPPA), M.WHIT_KAPPA,
                   claim="0 < WHIT_KAPPA normalised Turanian < 1/(1/2-mu-kappa)"),
        Inequality(InequalityId.WHIT_ANTI_2S, "normalized", ("kappa", "mu"),
                   _turan(M.WHIT_ANTI, _sharp(M.WHIT_ANTI, "lower"),
                          _sharp(M.WHIT_ANTI, "upper")),
                   _in_sharp_regime(M.WHIT_ANTI), M.WHIT_ANTI,
                   claim="WHIT_ANTI lower constant < normalised Turanian < 0"),
        Inequality(InequalityId.R43_PSIDOUBLE, "normalized", ("a", "c"),
                   _turan(M.PSI_DOUBLE, None, lambda p: 1.0 / p["a"]),
                   lambda p, x: p["a"] > 1 and x > 0, M.PSI_DOUBLE,
                   claim="PSI_DOUBLE normalised Turanian < 1/a for a > 1, c real"),
        Inequality(InequalityId.R43_HANKEL_DELTA, "normalized", ("a",),
                   _turan(M.PSI_DOUBLE, None, lambda p: 1.0 / (p["a"] + 0.5),
                          transform=lambda p: {"a": p["a"] + 0.5, "c": 2 * p["a"] + 1}),
                   lambda p, x: p["a"] > 0.5 and x > 0, M.PSI_DOUBLE,
                   claim="PSI_DOUBLE at (a+1/2, 2a+1) normalised < 1/(a+1/2) for a > 1/2"),
        Inequality(InequalityId.R43_PSI_A_3, "normalized", ("a", "c"),
                   _turan(M.PSI_A, None, lambda p: 1.0 / (1 + p["a"] - p["c"])),
                   lambda p, x: p["a"] > p["c"] > 1 and x > 0, M.PSI_A,
                   claim="PSI_A normalised Turanian < 1/(1+a-c) for a > c > 1"),
        Inequality(InequalityId.R43_PSI_C_4, "normalized", ("a", "c"),
                   _turan(M.PSI_C, None, lambda p: 1.0 / (p["a"] - p["c"] + 1)),
                   lambda p, x: p["a"] + 1 > p["c"] > 2 and x > 0, M.PSI_C,
                   claim="PSI_C normalised Turanian < 1/(a-c+1) for a + 1 > c > 2"),
        Inequality(InequalityId.R43_PSI_C_5, "normalized", ("a", "c"),
                   _turan(M.PSI_C, None, lambda p: 1.0 / p["a"]),
                   lambda p, x: p["a"] > 1 and x > 0, M.PSI_C,
                   claim="PSI_C normalised Turanian < 1/a for a > 1, c real"),
        Inequality(InequalityId.R43_PSI_DIAG_6, "normalized", ("a", "c"),
                   _turan(M.PSI_DIAG, None, _const(0.0)),
                   lambda p, x: p["a"] + 1 > p["c"] > 2 and x > 0, M.PSI_DIAG,
                   claim="PSI_DIAG normalised Turanian < 0 for a + 1 > c > 2"),
        Inequality(InequalityId.R43_PSIDOUBLE_8, "normalized", ("a", "c"),
                   _turan(M.PSI_DOUBLE, None, lambda p: 1.0 / (p["a"] - p["c"] + 1)),
                   lambda p, x: p["a"] + 1 > p["c"] > 3 and x > 0, M.PSI_DOUBLE,
                   claim="PSI_DOUBLE normalised Turanian < 1/(a-c+1) for a + 1 > c > 3"),
        Inequality(InequalityId.PHI_RATIO_A, "ratio", ("a", "c"),
                   _phi_ratio(1, 0, lambda p: (p["a"] - 1) * (p["c"] - p["a"] - 1)
                              / (p["a"] * (p["c"] - p["a"]))),
                   lambda p, x: p["c"] > p["a"] + 1 > 2 and x > 0,
                   claim="Phi(a-1,c)Phi(a+1,c)/Phi(a,c)^2 >= (a-1)(c-a-1)/(a(c-a))"),
        Inequality(InequalityId.PHI_RATIO_DIAG, "ratio", ("a", "c"),
                   _phi_ratio(1, 1, lambda p: (p["a"] - 1) * p["c"]
                              / ((p["c"] - 1) * p["a"])),
                   lambda p, x: p["c"] > p["a"] > 1 and x > 0,
                   claim="Phi(a-1,c-1)Phi(a+1,c+1)/Phi(a,c)^2 >= (a-1)c/((c-1)a)"),
        Inequality(InequalityId.CHI_WEAK, "normalized", ("a", "tau"),
                   _turan(M.CHI, None, _chi_weak),
                   lambda p, x: p["a"] > 0.5 and p["tau"] > 0 and x > 0, M.CHI,
                   claim="CHI normalised Turanian < 1 - G(a)^2/(G(a-1/2)G(a+1/2))"),
        Inequality(InequalityId.CHI_SHARP, "normalized", ("a", "tau"),
                   _turan(M.CHI, _const(0.0), _chi_sharp),
                   lambda p, x: p["a"] > 0 and p["tau"] > 0 and x > 0, M.CHI,
                   claim="0 < CHI normalised Turanian < 1 - G(a+1/2)^2/(G(a)G(a+1))"),
        Inequality(InequalityId.CONJ_T21_NEG_A, "delta", ("a",),
                   _turan(M.PARA, _const(0.0), None, "delta"),
                   lambda p, x: p["a"] <= 0 and x > 0, M.PARA, normative=False,
                   claim="0 < D_{-a}^2 - D_{-a-1} D_{-a+1} for a <= 0, x > 0 (unproved)"),
    ]
    a_pos = lambda p: p["a"] > 0
    cm_psi = lambda p: p["a"] + 1 > p["c"] > 1
    beta = lambda p: p["c"] > p["a"] > 0
    half = lambda p: p["a"] > -0.5
    chi = lambda p: p["a"] > 0.5 and p["tau"] > 0
    ac = ("a", "c")
    cat += [
        _det(1, "cm", a_pos, ac, "1Det_1 completely monotonic for a > 0"),
        _det(2, "cm", a_pos, ac, "2Det_1 completely monotonic for a > 0"),
        _det(3, "cm", cm_psi, ac, "3Det_1 completely monotonic for a + 1 > c > 1"),
        _det(4, "cm", cm_psi, ac, "4Det_1 completely monotonic for a + 1 > c > 1"),
        _det(5, "cm", a_pos, ac, "5Det_1 completely monotonic for a > 0"),
        _det(6, "cm", cm_psi, ac, "6Det_1 completely monotonic for a + 1 > c > 1"),
        _det(7, "cm", a_pos, ac, "7Det_1 completely monotonic for a > 0"),
        _det(8, "cm", cm_psi, ac, "8Det_1 completely monotonic for a + 1 > c > 1"),
        _det(9, "am", beta, ac, "9Det_1 absolutely monotonic for c > a > 0"),
        _det(10, "am", beta, ac, "10Det_1 absolutely monotonic for c > a > 0"),
        _det(11, "am", beta, ac, "11Det_1 absolutely monotonic for c > a > 0"),
        _det(12, "cm", half, ("a",), "12Det_1 completely monotonic for a > -1/2"),
        _det(13, "am", half, ("a",), "13Det_1 absolutely monotonic for a > -1/2"),
        _det(14, "cm", half, ("a",), "14Det_1 completely monotonic for a > -1/2"),
        _det(15, "am", chi, ("a", "tau"), "15Det_1 absolutely monotonic for a > 1/2"),
        _det(16, "cm", chi, ("a", "tau"), "16Det_1 completely monotonic for a > 1/2"),
    ]
    return {ineq.id: ineq for ineq in cat}


CATALOG: dict = _build()


def get_inequality(iid: InequalityId | str) -> Inequality:
    """Catalog record of an inequality id."""
    return CATALOG[InequalityId(iid)]
