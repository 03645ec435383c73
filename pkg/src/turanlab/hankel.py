"""Hankel determinants of moment-type families and their Heine integrals.

A family is ``f_k(x) = int phi(t, x)^k exp(w(t, x)) dt`` over a fixed
support.  Then

    det [f_{j+k}(x)]_{j,k=0..n}
        = 1/(n+1)! int prod_{j<k} (phi(t_j) - phi(t_k))^2 prod_j e^{w(t_j)} dt_j.

The catalog holds sixteen families whose entries are shifted Tricomi,
Kummer, Bessel and non-central chi values.  Each entry is available in
closed form and by one-dimensional quadrature; the determinant is available
directly and through the Heine integral.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

import numpy as np

from .confluent import kummer_phi_log, tricomi_psi_log
from .cylinder import bessel_I_log, bessel_K_log, chi_r_log, chi_s_log
from .errors import ConditioningWarning, DomainError, EvaluationError
from .quadrature import (EvalResult, Interval, LogResult, MCResult, ProductSampler, Status,
                         TabulatedSampler, integrate_adaptive, integrate_tensor, mc_integrate,
                         worst_status)
from .scalar import SignedLogValue, log_gamma

_EPS = np.finfo(float).eps
N_MAX = 3
COND_WARN = 1e12
ENTRY_RTOL = 1e-12
LOG_SQRT_PI = 0.5 * math.log(math.pi)
LOG2 = math.log(2.0)

# monotonicity claimed for each family: completely (cm) or absolutely (am)
FAMILY_KIND = {**{i: "cm" for i in range(1, 9)}, 9: "am", 10: "am", 11: "am",
               12: "cm", 13: "am", 14: "cm", 15: "am", 16: "cm"}


@dataclass(frozen=True)
class HankelFamily:
    """One catalog family at fixed parameters.

    Attributes
    ----------
    label : str
    family_id : int
    support : Interval
        Support of the measure (singularity data refers to ``k = 0``).  The
        symmetric families 13 to 16 live on [-1, 1] with kernels depending on
        1 - t^2 only; they are stored folded onto s = 1 - |t| in [0, 1], and
        family 12 is stored shifted to s = t - 1, which keeps the distance to
        singular endpoints exact.
    kernel : callable
        ``kernel(t, x)`` = phi(t, x), vectorised in ``t``.
    log_weight : callable
        ``log_weight(t, x)`` = w(t, x), the log density of the measure.
    closed_form_entry : callable or None
        ``closed_form_entry(k, x)`` -> LogResult of f_k(x).
    domain_guard : callable
        Predicate on the parameter mapping; checked at construction.
    params : mapping
    kind : {"cm", "am"}
        Monotonicity claimed for the determinants in x.
    entry_ok : callable
        ``entry_ok(k)`` is False when f_k leaves the domain of its
        representation (families 4, 8 and 10 lose integrability as k grows).
    singularity : callable
        ``singularity(k)`` -> (order, where) of phi^k e^w at the support ends.
    semi_infinite_scale : callable
        ``semi_infinite_scale(x)`` -> length scale for the semi-infinite map.
    branches : callable or None
        ``branches(u, x)`` -> list of (log_weight, kernel) arrays, one per
        branch t = t_b(u) over the base interval ``base``.  Used by the unit
        interval families, whose two branches t = u and t = 1 - u keep both
        endpoint distances exact; None means the single branch t = u over
        ``support``.
    base : Interval or None
    """

    label: str
    family_id: int
    support: Interval
    kernel: Callable[[np.ndarray, float], np.ndarray]
    log_weight: Callable[[np.ndarray, float], np.ndarray]
    closed_form_entry: Optional[Callable[[int, float], LogResult]]
    domain_guard: Callable[[Mapping[str, float]], bool]
    params: Mapping[str, float] = field(default_factory=dict)
    kind: str = "cm"
    entry_ok: Callable[[int], bool] = lambda k: True
    singularity: Callable[[int], tuple] = lambda k: (0.0, "both")
    semi_infinite_scale: Callable[[float], float] = lambda x: 1.0
    branches: Optional[Callable[[np.ndarray, float], list]] = None
    base: Optional[Interval] = None

    def interval(self, k: int, x: float) -> Interval:
        """Integration interval in the base variable for entry ``k``."""
        order, where = self.singularity(k)
        sup = self.base if self.base is not None else self.support
        scale = self.semi_infinite_scale(x) if sup.semi_infinite else 1.0
        return Interval(sup.lower, sup.upper, order, where, scale, power_map=True)

    def parts(self, u: np.ndarray, x: float) -> list:
        """(log_weight, kernel) per branch at base points ``u``."""
        if self.branches is None:
            return [(self.log_weight(u, x), self.kernel(u, x))]
        return self.branches(u, x)


# --------------------------------------------------------- entry builders

def _scaled_psi(log_pre: float, a: float, c: float, x: float) -> LogResult:
    p = tricomi_psi_log(a, c, x)
    return LogResult(p.value * SignedLogValue(1, log_pre),
                     p.rel_err_est + 4 * _EPS * (1 + abs(log_pre)), p.n_evals, p.status,
                     p.method)


def _scaled_phi(log_pre: float, a: float, c: float, x: float) -> LogResult:
    p = kummer_phi_log(a, c, x)
    return LogResult(p.value * SignedLogValue(1, log_pre),
                     p.rel_err_est + 4 * _EPS * (1 + abs(log_pre)), p.n_evals, p.status,
                     p.method)


def _scaled(r: LogResult, log_pre: float) -> LogResult:
    return LogResult(r.value * SignedLogValue(1, log_pre),
                     r.rel_err_est + 4 * _EPS * (1 + abs(log_pre)), r.n_evals, r.status,
                     r.method)


def _laplace_weight(a, c):
    # e^{-xt} t^{a-1} (1+t)^{c-a-1}
    def w(t, x):
        with np.errstate(divide="ignore"):
            return -x * t + (a - 1) * np.log(t) + (c - a - 1) * np.log1p(t)
    return w


def _transformed_weight(a, c):
    # x^{1-c} e^{-xt} t^{a-c} (1+t)^{-a}
    def w(t, x):
        with np.errstate(divide="ignore"):
            return (1 - c) * math.log(x) - x * t + (a - c) * np.log(t) - a * np.log1p(t)
    return w


def _beta_log(a, c, log_const, x, t, r):
    # const e^{xt} t^{a-1} r^{c-a-1} with r = 1 - t supplied exactly
    with np.errstate(divide="ignore"):
        return log_const + x * t + (a - 1) * np.log(t) + (c - a - 1) * np.log(r)


def _beta_weight(a, c, log_const):
    def w(t, x):
        return _beta_log(a, c, log_const, x, t, 1 - t)
    return w


def _beta_branches(a, c, log_const, kern_tr):
    # base u in [0, 1/2]: t = u and t = 1 - u
    def branches(u, x):
        r = 1 - u
        return [(_beta_log(a, c, log_const, x, u, r), kern_tr(u, r, x)),
                (_beta_log(a, c, log_const, x, r, u), kern_tr(r, u, x))]
    return branches


def _sym_weight(p, rate_sign, tau=1.0):
    # e^{rate_sign tau x (1-t)} (1 - t^2)^p on [-1, 1], folded onto s = 1 - |t| in [0, 1]:
    # both branches t = +-(1 - s) share 1 - t^2 = s(2 - s), so their weights add
    def w(s, x):
        r = rate_sign * tau * x
        with np.errstate(divide="ignore"):
            return np.logaddexp(r * s, r * (2 - s)) + p * (np.log(s) + np.log(2 - s))
    return w


def _fold_sq(s):
    # 1 - t^2 with t = +-(1 - s)
    return s * (2 - s)


def _guard(cond, msg):
    if not cond:
        raise DomainError(msg)


def family_catalog(fid: int, params: Mapping[str, float]) -> HankelFamily:
    """Build catalog family ``fid`` (1..16) at the given parameters.

    Parameters
    ----------
    fid : int
        1-8 use g = Gamma(a) psi (1, 2, 5, 7) or h = Gamma(1+a-c) psi
        (3, 4, 6, 8); 9-11 use scaled Kummer functions; 12-14 scaled
        Bessel K and I; 15-16 the non-central chi functions r_b and s_b.
    params : mapping
        ``a`` always; ``c`` for 1-11; ``tau`` for 15-16.

    Raises
    ------
    DomainError
        If the parameters fail the family's guard.

    Examples
    --------
    >>> fam = family_catalog(2, {"a": 1.0, "c": 0.5})
    >>> fam.kernel(np.array([2.0]), 1.0)
    array([3.])
    """
    fid = int(fid)
    if not 1 <= fid <= 16:
        raise DomainError(f"family id must be in 1..16, got {fid}")
    p = {k: float(v) for k, v in params.items()}
    a = p.get("a")
    if a is None:
        raise DomainError("every family needs the parameter a")
    c = p.get("c")
    tau = p.get("tau")
    if fid <= 11 and c is None:
        raise DomainError(f"family {fid} needs the parameter c")
    if fid >= 15 and tau is None:
        raise DomainError(f"family {fid} needs the parameter tau")
    kind = FAMILY_KIND[fid]
    semi = Interval(0.0, math.inf)

    def laplace_scale(x):
        return max(1.0, abs(a)) / x

    if fid in (1, 2, 5, 7):
        guard = lambda q: q["a"] > 0
        _guard(guard(p), f"family {fid} needs a > 0")
        kern = {1: lambda t, x: t / (1 + t), 2: lambda t, x: 1 + t,
                5: lambda t, x: t, 7: lambda t, x: t * (1 + t)}[fid]
        da, dc = {1: (1, 0), 2: (0, 1), 5: (1, 1), 7: (1, 2)}[fid]

        def entry(k, x):
            ak, ck = a + da * k, c + dc * k
            return _scaled_psi(log_gamma(ak), ak, ck, x)

        def sing(k):
            order = a - 1 + (k if fid in (5, 7) else 0) + (k if fid == 1 else 0)
            return order, "lower"

        return HankelFamily(f"{fid}Det", fid, semi, kern, _laplace_weight(a, c), entry, guard,
                            p, kind, singularity=sing, semi_infinite_scale=laplace_scale)

    if fid in (3, 4, 6, 8):
        guard = lambda q: q["a"] + 1 > q["c"]
        _guard(guard(p), f"family {fid} needs a + 1 > c")
        kern = {3: lambda t, x: t / (1 + t), 4: lambda t, x: 1 / (x * t),
                6: lambda t, x: 1 / (x * (1 + t)),
                8: lambda t, x: 1 / (x * x * t * (1 + t))}[fid]
        da, dc = {3: (1, 0), 4: (0, 1), 6: (1, 1), 8: (1, 2)}[fid]

        def entry_ok(k):
            return 1 + a - c - (dc - da) * k > 0

        def entry(k, x):
            if not entry_ok(k):
                raise DomainError(f"entry {k} of family {fid} needs 1 + a - c > {(dc - da) * k}")
            ak, ck = a + da * k, c + dc * k
            return _scaled_psi(log_gamma(1 + ak - ck), ak, ck, x)

        def sing(k):
            order = a - c + {3: k, 4: -k, 6: 0, 8: -k}[fid]
            return order, "lower"

        return HankelFamily(f"{fid}Det", fid, semi, kern, _transformed_weight(a, c), entry, guard,
                            p, kind, entry_ok, sing, laplace_scale)

    unit = Interval(0.0, 1.0)
    half = Interval(0.0, 0.5)
    if fid in (9, 10, 11):
        guard = lambda q: q["c"] > q["a"] > 0
        _guard(guard(p), f"family {fid} needs c > a > 0")
        if fid == 9:
            kern_tr = lambda t, r, x: r
            const = -log_gamma(a)

            def entry(k, x):
                ck = c + k
                return _scaled_phi(log_gamma(ck - a) - log_gamma(ck), a, ck, x)

            def sing(k):
                return min(a - 1, c - a - 1 + k), "lower"
            entry_ok = lambda k: True
        elif fid == 10:
            kern_tr = lambda t, r, x: t / r
            const = log_gamma(c)

            def entry_ok(k):
                return c - a - k > 0

            def entry(k, x):
                if not entry_ok(k):
                    raise DomainError(f"entry {k} of family 10 needs c - a > {k}")
                ak = a + k
                return _scaled_phi(log_gamma(ak) + log_gamma(c - ak), ak, c, x)

            def sing(k):
                return min(a - 1 + k, c - a - 1 - k), "lower"
        else:
            kern_tr = lambda t, r, x: t
            const = 0.0

            def entry(k, x):
                ak, ck = a + k, c + k
                return _scaled_phi(log_gamma(ak) + log_gamma(c - a) - log_gamma(ck), ak, ck, x)

            def sing(k):
                return min(a - 1 + k, c - a - 1), "lower"
            entry_ok = lambda k: True
        return HankelFamily(f"{fid}Det", fid, unit, lambda t, x: kern_tr(t, 1 - t, x),
                            _beta_weight(a, c, const), entry, guard, p, kind, entry_ok, sing,
                            branches=_beta_branches(a, c, const, kern_tr), base=half)

    sym = Interval(0.0, 1.0)
    if fid == 12:
        guard = lambda q: q["a"] > -0.5
        _guard(guard(p), "family 12 needs a > -1/2")
        # stored shifted to s = t - 1 in [0, inf): t^2 - 1 = s(2 + s)
        kern = lambda s, x: s * (2 + s)

        def w(s, x):
            with np.errstate(divide="ignore"):
                return -x * s + (a - 0.5) * (np.log(s) + np.log1p(0.5 * s) + LOG2)

        def entry(k, x):
            ak = a + k
            kv = bessel_K_log(ak, x)
            pre = log_gamma(ak + 0.5) - LOG_SQRT_PI - ak * math.log(0.5 * x) + x
            return _scaled(kv, pre)

        return HankelFamily("12Det", 12, Interval(0.0, math.inf), kern, w, entry, guard, p, kind,
                            singularity=lambda k: (a - 0.5 + k, "lower"),
                            semi_infinite_scale=lambda x: (1.0 + abs(a)) / x)

    if fid in (13, 14):
        guard = lambda q: q["a"] > -0.5
        _guard(guard(p), f"family {fid} needs a > -1/2")
        sgn = 1 if fid == 13 else -1
        kern = lambda s, x: _fold_sq(s)

        def entry(k, x):
            ak = a + k
            iv = bessel_I_log(ak, x)
            pre = LOG_SQRT_PI + log_gamma(ak + 0.5) - ak * math.log(0.5 * x) + sgn * x
            return _scaled(iv, pre)

        return HankelFamily(f"{fid}Det", fid, sym, kern, _sym_weight(a - 0.5, sgn), entry, guard,
                            p, kind, singularity=lambda k: (a - 0.5 + k, "lower"))

    guard = lambda q: q["a"] > 0.5 and q["tau"] > 0
    _guard(guard(p), f"family {fid} needs a > 1/2 and tau > 0")
    sgn = 1 if fid == 15 else -1
    kern = lambda s, x: np.sqrt(_fold_sq(s))
    fn = chi_r_log if fid == 15 else chi_s_log

    def entry(k, x):
        return fn(2 * a + k, tau, x)

    return HankelFamily(f"{fid}Det", fid, sym, kern, _sym_weight(a - 1.5, sgn, tau), entry,
                        guard, p, kind, singularity=lambda k: (a - 1.5 + 0.5 * k, "lower"))


# ----------------------------------------------------------------- entries

def _probe_shift(fam: HankelFamily, k: int, x: float, iv: Interval) -> float:
    if iv.semi_infinite:
        probe = iv.lower + iv.scale * np.logspace(-8, 3, 400)
    else:
        u = np.linspace(0.0, 1.0, 402)[1:-1]
        probe = iv.lower + (iv.upper - iv.lower) * u
    lf = _log_integrand(fam, k, x, probe)
    lf = lf[np.isfinite(lf)]
    return float(lf.max()) if lf.size else 0.0


def _log_integrand(fam: HankelFamily, k: int, x: float, u: np.ndarray) -> np.ndarray:
    terms = []
    with np.errstate(divide="ignore", invalid="ignore"):
        for lw, phi in fam.parts(u, x):
            terms.append(lw + k * np.log(phi) if k else lw)
    if len(terms) == 1:
        return terms[0]
    return np.logaddexp.reduce(np.stack(terms), axis=0)


def _heine_sum(fam: HankelFamily, x: float, us, offset) -> np.ndarray:
    """Heine integrand summed over branch choices, times exp(-offset)."""
    parts = [fam.parts(u, x) for u in us]
    total = 0.0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for choice in itertools.product(*[range(len(pp)) for pp in parts]):
            lw = sum(parts[j][b][0] for j, b in enumerate(choice)) - offset
            w = np.where(np.isfinite(lw), np.exp(np.minimum(lw, 700.0)), 0.0)
            if len(us) > 1:
                v = _vandermonde_sq([parts[j][b][1] for j, b in enumerate(choice)])
                w = np.where(w > 0, w * v, 0.0)
            total = total + w
    return total


def entry_quadrature(fam: HankelFamily, k: int, x: float, rtol: float = ENTRY_RTOL) -> LogResult:
    """f_k(x) = int phi^k e^w by adaptive quadrature, as a LogResult."""
    if not fam.entry_ok(k):
        raise DomainError(f"entry {k} of {fam.label} is outside its representation")
    iv = fam.interval(k, x)
    shift = _probe_shift(fam, k, x, iv)

    def f(t):
        lf = _log_integrand(fam, k, x, t) - shift
        return np.where(np.isfinite(lf), np.exp(np.minimum(lf, 700.0)), 0.0)

    res = integrate_adaptive(f, iv, tol=0.0, rel_tol=rtol)
    if not res.value > 0:
        raise EvaluationError(f"non-positive quadrature entry for {fam.label}")
    return LogResult(SignedLogValue(1, math.log(res.value) + shift),
                     res.abs_err_est / res.value + 4 * _EPS * (1 + abs(shift)),
                     res.n_evals, res.status, "quadrature")


def hankel_entry_log(fam: HankelFamily, k: int, x: float, route: str = "auto") -> LogResult:
    if k < 0 or int(k) != k:
        raise DomainError("entry index must be a non-negative integer")
    if not x > 0:
        raise DomainError("entries are evaluated for x > 0")
    if route == "quadrature" or (route == "auto" and fam.closed_form_entry is None):
        return entry_quadrature(fam, int(k), x)
    if route not in ("auto", "closed"):
        raise ValueError(f"unknown route {route!r}")
    if fam.closed_form_entry is None:
        raise DomainError(f"{fam.label} has no closed-form entry")
    return fam.closed_form_entry(int(k), float(x))


def hankel_entry(fam: HankelFamily, k: int, x: float, route: str = "auto") -> EvalResult:
    """Entry f_k(x) of a family.

    ``route`` is ``auto`` (closed form when available), ``closed`` or
    ``quadrature``.

    Examples
    --------
    >>> fam = family_catalog(2, {"a": 1.0, "c": 0.5})
    >>> r0 = hankel_entry(fam, 0, 1.0)
    >>> r1 = hankel_entry(fam, 0, 1.0, route="quadrature")
    >>> abs(r0.value - r1.value) < 1e-10
    True
    """
    return hankel_entry_log(fam, k, x, route).to_result()


# ------------------------------------------------------------- determinant

@dataclass(frozen=True)
class DetResult:
    """Hankel determinant in log form with diagnostics."""

    value: SignedLogValue
    rel_err_est: float
    condition: float
    n_evals: int
    status: Status

    def to_result(self, method: str = "direct") -> EvalResult:
        v = float(self.value.to_linear())
        return EvalResult(v, float(abs(v) * self.rel_err_est), self.n_evals, self.status, method)


def hankel_det_log(entries: list[LogResult]) -> DetResult:
    """Determinant of the Hankel matrix [f_{j+k}] from 2n+1 positive entries.

    The matrix is equilibrated by its diagonal, M = D^-1/2 H D^-1/2 with
    D = diag(f_{2j}), and factorised by LU with partial pivoting.  The
    relative error adds the first-order response to every entry error,
    sum |(M^-1)_{kj} M_{jk}| e_{j+k}, to a rounding term eps cond(M).
    """
    m = len(entries)
    if m % 2 != 1:
        raise DomainError("a Hankel determinant needs an odd number of entries")
    n1 = (m + 1) // 2
    signs = np.array([e.value.sign for e in entries], dtype=float)
    logs = np.array([e.value.log_abs if e.value.sign else -np.inf for e in entries])
    rels = np.array([e.rel_err_est for e in entries])
    if np.any(signs[0::2] <= 0):
        raise EvaluationError("diagonal Hankel entries must be positive")
    j = np.arange(n1)
    jk = j[:, None] + j[None, :]
    ld = logs[2 * j]
    M = signs[jk] * np.exp(logs[jk] - 0.5 * (ld[:, None] + ld[None, :]))
    sign, logdet = np.linalg.slogdet(M)
    cond = float(np.linalg.cond(M))
    if cond > COND_WARN:
        warnings.warn(f"Hankel matrix condition number {cond:.3g} exceeds {COND_WARN:.0e}",
                      ConditioningWarning, stacklevel=2)
    if sign == 0:
        val = SignedLogValue.zero()
        rel = math.inf
    else:
        val = SignedLogValue(int(sign), float(logdet + ld.sum()))
        Minv = np.linalg.inv(M)
        rel = float(np.sum(np.abs(Minv.T * M) * rels[jk])) + 4 * n1 * _EPS * cond
    return DetResult(val, rel, cond, sum(e.n_evals for e in entries),
                     worst_status(*(e.status for e in entries)))


def hankel_det_direct_log(fam: HankelFamily, n: int, x: float, route: str = "auto") -> DetResult:
    _check_n(n)
    entries = [hankel_entry_log(fam, k, x, route) for k in range(2 * n + 1)]
    return hankel_det_log(entries)


def hankel_det_direct(fam: HankelFamily, n: int, x: float, route: str = "auto") -> EvalResult:
    """Hankel determinant det[f_{j+k}(x)]_{j,k=0..n}, n in 0..3.

    Raises
    ------
    ConditioningWarning
        (as a warning) when the equilibrated matrix has condition above 1e12.
    """
    return hankel_det_direct_log(fam, n, x, route).to_result()


def _check_n(n):
    if int(n) != n or not 0 <= n <= N_MAX:
        raise DomainError(f"determinant order n must be in 0..{N_MAX}, got {n}")


def _vandermonde_sq(phis):
    out = 1.0
    for j in range(len(phis)):
        for k in range(j + 1, len(phis)):
            d = phis[j] - phis[k]
            out = out * d * d
    return out


def hankel_det_heine(fam: HankelFamily, n: int, x: float, tol: float | None = 1e-9,
                     n_samples: int | None = None, seed: int | None = None,
                     workers: int = 1) -> EvalResult | MCResult:
    """Hankel determinant through the (n+1)-fold Heine integral.

    With ``n_samples`` given the integral is estimated by importance
    sampling from the normalised product measure (``seed`` required) and an
    :class:`MCResult` is returned; otherwise nested tensor quadrature with
    relative tolerance ``tol`` is used, which needs n + 1 <= 3.
    """
    if int(n) != n or n < 0:
        raise DomainError("determinant order must be a non-negative integer")
    n = int(n)
    d = n + 1
    fact = math.factorial(d)
    iv = fam.interval(0, x)
    if n_samples is not None:
        if seed is None:
            raise ValueError("Monte Carlo evaluation requires an explicit seed")

        def lw1(u):
            return _log_integrand(fam, 0, x, u)

        sampler = ProductSampler([TabulatedSampler(lw1, iv)] * d)
        f0 = entry_quadrature(fam, 0, x)
        norm = math.exp(d * f0.value.log_abs) / fact

        def h(pts):
            us = [pts[:, j] for j in range(d)]
            return _heine_sum(fam, x, us, sum(lw1(u) for u in us))

        return mc_integrate(sampler, h, n_samples, seed, normalization=norm, workers=workers)
    shift = _probe_shift(fam, 0, x, iv)

    def f(*ts):
        return _heine_sum(fam, x, ts, d * shift) / fact

    res = integrate_tensor(f, [iv] * d, tol=0.0, rel_tol=tol)
    scale = math.exp(d * shift)
    return EvalResult(res.value * scale, res.abs_err_est * scale, res.n_evals, res.status,
                      res.method)
