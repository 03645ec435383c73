"""Parabolic cylinder functions, Whittaker W, modified Bessel I and K, and the
non-central chi density.

``U(a, x)`` is evaluated from the even/odd Weber solutions

    U = sqrt(pi) 2^(-eta) [ y1 / Gamma(eta + 1/2) - sqrt(2) y2 / Gamma(eta) ],

eta = a/2 + 1/4, which is the usual cos/sin-Gamma form after reflection;
the reciprocal Gamma factors are entire, so exact zeros stay exact.  For
x > 0 with x^2/2 > 2 the two terms cancel and the psi relation

    U(a, x) = 2^(-eta) e^(-x^2/4) psi(eta, 1/2, x^2/2)

is used instead.
"""
from __future__ import annotations

import math

import numpy as np

from .confluent import kummer_phi_array, kummer_phi_log, tricomi_psi_log
from .errors import DomainError
from .quadrature import EvalResult, Interval, LogResult, Status, integrate_adaptive
from .scalar import SignedLogValue, erfc, log_gamma, rgamma_signed

_EPS = np.finfo(float).eps
LOG_SQRT_PI = 0.5 * math.log(math.pi)
LOG2 = math.log(2.0)
U_PSI_SWITCH = 2.0
U_DEF_ACCEPT = 1e-12


def _rel_round(*logs):
    return 4 * _EPS * (1.0 + sum(abs(v) for v in logs))


# ------------------------------------------------------- parabolic cylinder

def _U_definition(a: float, x: float) -> LogResult:
    eta = 0.5 * a + 0.25
    q = 0.5 * x * x
    pre = LOG_SQRT_PI - eta * LOG2 - 0.5 * q
    phi1 = kummer_phi_log(eta, 0.5, q)
    r1 = rgamma_signed(eta + 0.5)
    t1 = SignedLogValue(1, pre) * r1 * phi1.value
    e1 = phi1.rel_err_est + _rel_round(pre, r1.log_abs if r1.sign else 0.0)
    if x == 0:
        t2, e2 = SignedLogValue.zero(), 0.0
    else:
        phi2 = kummer_phi_log(eta + 0.5, 1.5, q)
        r2 = rgamma_signed(eta)
        t2 = SignedLogValue(1, pre + 0.5 * LOG2) * (-x) * r2 * phi2.value
        e2 = phi2.rel_err_est + _rel_round(pre, r2.log_abs if r2.sign else 0.0, math.log(abs(x)))
    total = t1 + t2
    if total.sign == 0:
        return LogResult(total, math.inf, 2, Status.INCONCLUSIVE, "definition")
    abs_err = abs(t1) * e1 + abs(t2) * e2
    rel = (abs_err / abs(total)).to_linear() if abs_err.sign else 0.0
    return LogResult(total, rel, 2, Status.CONVERGED, "definition")


def _U_psi(a: float, x: float) -> LogResult:
    if not x > 0:
        raise DomainError("the psi route for U needs x > 0")
    eta = 0.5 * a + 0.25
    q = 0.5 * x * x
    p = tricomi_psi_log(eta, 0.5, q)
    pre = -eta * LOG2 - 0.5 * q
    return LogResult(p.value * SignedLogValue(1, pre), p.rel_err_est + _rel_round(pre),
                     p.n_evals, p.status, f"psi/{p.method}")


def parabolic_U_log(a: float, x: float, route: str = "auto") -> LogResult:
    """U(a, x) as a :class:`LogResult`; ``route`` is auto, definition or psi."""
    a, x = float(a), float(x)
    if route == "definition":
        return _U_definition(a, x)
    if route == "psi":
        return _U_psi(a, x)
    if route != "auto":
        raise ValueError(f"unknown route {route!r}")
    if x > 0 and 0.5 * x * x > U_PSI_SWITCH:
        return _U_psi(a, x)
    r = _U_definition(a, x)
    if x > 0 and r.rel_err_est > U_DEF_ACCEPT:
        return _U_psi(a, x)
    return r


def parabolic_U(a: float, x: float, route: str = "auto") -> EvalResult:
    """Parabolic cylinder function U(a, x) for real a and x.

    Examples
    --------
    >>> round(parabolic_U(-0.5, 2.0).value, 12) == round(math.exp(-1.0), 12)
    True
    """
    return parabolic_U_log(a, x, route).to_result()


def parabolic_D_log(nu: float, x: float, route: str = "auto") -> LogResult:
    return parabolic_U_log(-nu - 0.5, x, route)


def parabolic_D(nu: float, x: float, route: str = "auto") -> EvalResult:
    """Whittaker's D_nu(x) = U(-nu - 1/2, x).

    ``route="psi"`` evaluates ``2^(nu/2) e^(-x^2/4) psi(-nu/2, 1/2, x^2/2)``
    and needs x > 0.
    """
    return parabolic_D_log(nu, x, route).to_result()


def U_at_zero(a: float) -> float:
    """Closed form U(a, 0) = sqrt(pi) / (2^(a/2 + 1/4) Gamma(a/2 + 3/4))."""
    r = rgamma_signed(0.5 * a + 0.75)
    return (SignedLogValue(1, LOG_SQRT_PI - (0.5 * a + 0.25) * LOG2) * r).to_linear()


def weber_ode_residual(a: float, x: float) -> float:
    """Normalised residual of U'' = (a + x^2/4) U.

    U'' comes from central second differences at h and h/2,
    h = 1e-3 max(1, |x|), combined by one Richardson step.  The residual
    is scaled by (1 + |a| + x^2/4) max |U| over the stencil, so points
    where both sides vanish (a zero of U, or a + x^2/4 = 0 with U'' = 0)
    are not divided by rounding noise.
    """
    h = 1e-3 * max(1.0, abs(x))
    steps = (-h, -0.5 * h, 0.0, 0.5 * h, h)
    u = dict(zip(steps, (parabolic_U(a, x + s).value for s in steps)))

    def d2(step):
        return (u[step] - 2.0 * u[0.0] + u[-step]) / (step * step)

    upp = (4.0 * d2(0.5 * h) - d2(h)) / 3.0
    rhs = (a + 0.25 * x * x) * u[0.0]
    scale = (1.0 + abs(a) + 0.25 * x * x) * max(abs(v) for v in u.values()) + 1e-300
    return abs(upp - rhs) / scale


def log_U_abs_sq_imag_axis(a: float, t):
    """log |D_{-a}(i sqrt(t))|^2 for an array of t > 0."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    r1 = rgamma_signed(0.5 * (a + 1.0))
    r2 = rgamma_signed(0.5 * a)
    base = LOG_SQRT_PI - 0.5 * a * LOG2 - 0.25 * t
    s1, l1, _ = kummer_phi_array(0.5 - 0.5 * a, 0.5, 0.5 * t)
    s2, l2, _ = kummer_phi_array(1.0 - 0.5 * a, 1.5, 0.5 * t)
    lr1 = r1.log_abs if r1.sign else -np.inf
    lr2 = r2.log_abs if r2.sign else -np.inf
    log_re = base + lr1 + l1
    log_im = base + lr2 + 0.5 * LOG2 + 0.5 * np.log(t) + l2
    ref = np.maximum(log_re, log_im)
    with np.errstate(over="ignore", invalid="ignore"):
        re = r1.sign * s1 * np.exp(log_re - ref)
        im = r2.sign * s2 * np.exp(log_im - ref)
    with np.errstate(divide="ignore"):
        return np.log(re * re + im * im) + 2.0 * ref


def U_abs_sq_imag_axis(a: float, t):
    """|D_{-a}(i sqrt t)|^2 assembled from its real (y1) and imaginary (y2) parts."""
    out = np.exp(log_U_abs_sq_imag_axis(a, t))
    return float(out[0]) if np.ndim(t) == 0 else out


def parabolic_ratio_stieltjes(a: float, z: float, tol: float = 1e-10) -> EvalResult:
    """D_{-a-1}(sqrt z) / (sqrt z D_{-a}(sqrt z)) from its Stieltjes integral.

    The integral over t is taken in v = sqrt(t), which removes the
    t^(-1/2) endpoint factor.
    """
    if not (a > 0 and z > 0):
        raise DomainError("the representation needs a > 0 and z > 0")
    norm = 0.5 * math.log(2 * math.pi) + log_gamma(a + 1.0)
    v_cut = math.sqrt(1600.0 + 100.0 * abs(a))

    def f(v):
        out = np.zeros_like(v)
        live = v < v_cut
        vl = v[live]
        t = vl * vl
        lg = math.log(2.0) - log_U_abs_sq_imag_axis(a, t) - np.log(z + t) - norm
        out[live] = np.where(lg > -745.0, np.exp(np.maximum(lg, -745.0)), 0.0)
        return out

    res = integrate_adaptive(f, Interval(0.0, math.inf, scale=max(1.0, math.sqrt(z))),
                             tol=0.0, rel_tol=tol)
    return EvalResult(res.value, res.abs_err_est, res.n_evals, res.status, "stieltjes")


def mills_delta0(x: float) -> float:
    """exp(-x^2/2) - x int_x^inf exp(-t^2/2) dt, through erfc."""
    if not x > 0:
        raise DomainError("mills_delta0 needs x > 0")
    return math.exp(-0.5 * x * x) - x * math.sqrt(0.5 * math.pi) * erfc(x / math.sqrt(2.0))


# ----------------------------------------------------------------- Whittaker

def whittaker_W_log(kappa: float, mu: float, x: float) -> LogResult:
    if not x > 0:
        raise DomainError("whittaker_W needs x > 0")
    p = tricomi_psi_log(mu - kappa + 0.5, 1.0 + 2.0 * mu, x)
    pre = -0.5 * x + (mu + 0.5) * math.log(x)
    return LogResult(p.value * SignedLogValue(1, pre), p.rel_err_est + _rel_round(pre),
                     p.n_evals, p.status, f"psi/{p.method}")


def whittaker_W(kappa: float, mu: float, x: float) -> EvalResult:
    """W_{kappa,mu}(x) = e^(-x/2) x^(mu+1/2) psi(mu - kappa + 1/2, 1 + 2 mu, x)."""
    return whittaker_W_log(kappa, mu, x).to_result()


# -------------------------------------------------------------------- Bessel

def _bessel_K_psi(a: float, x: float) -> LogResult:
    a = abs(a)
    p = tricomi_psi_log(a + 0.5, 2 * a + 1, 2 * x)
    pre = LOG_SQRT_PI + a * math.log(2 * x) - x
    return LogResult(p.value * SignedLogValue(1, pre), p.rel_err_est + _rel_round(pre),
                     p.n_evals, p.status, "psi")


def _bessel_K_integral(a: float, x: float, tol: float = 1e-13) -> LogResult:
    if not a > -0.5:
        raise DomainError("the integral route for K needs a > -1/2")
    p = a - 0.5

    # integrate in s = t - 1 so the endpoint factor is exact near t = 1
    def f(s):
        with np.errstate(divide="ignore"):
            return np.exp(-x * s + p * np.log(s * (2.0 + s)))

    iv = Interval(0.0, math.inf, singularity_order=p, singular_at="lower",
                  scale=(1.0 + abs(a)) / x)
    res = integrate_adaptive(f, iv, tol=0.0, rel_tol=tol)
    pre = LOG_SQRT_PI + a * math.log(0.5 * x) - x - log_gamma(a + 0.5)
    val = SignedLogValue(1, math.log(res.value) + pre)
    return LogResult(val, res.abs_err_est / res.value + _rel_round(pre),
                     res.n_evals, res.status, "integral")


def bessel_K_log(a: float, x: float, route: str = "auto") -> LogResult:
    if not x > 0:
        raise DomainError("bessel_K needs x > 0")
    if route in ("auto", "psi"):
        return _bessel_K_psi(a, x)
    if route == "integral":
        return _bessel_K_integral(a, x)
    raise ValueError(f"unknown route {route!r}")


def bessel_K(a: float, x: float, route: str = "auto") -> EvalResult:
    """Modified Bessel function K_a(x), x > 0.

    ``psi`` route: sqrt(pi) (2x)^a e^(-x) psi(a + 1/2, 2a + 1, 2x) with
    a -> |a|.  ``integral`` route (a > -1/2):
    sqrt(pi) (x/2)^a / Gamma(a + 1/2) int_1^inf e^(-xt) (t^2 - 1)^(a - 1/2) dt.
    """
    return bessel_K_log(a, x, route).to_result()


def log_bessel_I_series(a: float, x):
    """log I_a(x) from the power series, vectorised over x >= 0 (a > -1).

    All terms are positive, so the sum is taken as a log-sum-exp over
    enough terms to pass the peak and the tail.
    """
    if not a > -1:
        raise DomainError("series route for I needs a > -1")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.full(x.shape, -np.inf)
    pos = x > 0
    if a == 0:
        out[~pos] = 0.0
    if not np.any(pos):
        return out
    xp = x[pos]
    kmax = int(math.ceil(xp.max() + 12.0 * math.sqrt(xp.max()) + 40.0))
    k = np.arange(kmax + 1, dtype=float)
    lk = log_gamma(k + 1.0) + log_gamma(a + k + 1.0)
    lz = np.log(0.5 * xp)
    terms = 2.0 * k[None, :] * lz[:, None] - lk[None, :]
    m = terms.max(axis=1)
    out[pos] = a * lz + m + np.log(np.sum(np.exp(terms - m[:, None]), axis=1))
    return out


def _bessel_I_integral(a: float, x: float, sign: int = 1, tol: float = 1e-13) -> LogResult:
    if not a > -0.5:
        raise DomainError("the integral route for I needs a > -1/2")
    p = a - 0.5
    # Split [-1, 1] at 0 and integrate in the distance s to the nearer
    # endpoint, t = 1 - s and t = -1 + s, so (1 - t^2) = s (2 - s) is exact.
    # The exponent sign*x*t - x is carried relative to the factor e^x.

    def f(s):
        w = p * np.log(s * (2.0 - s))
        return (np.exp(sign * x * (1.0 - s) - x + w)
                + np.exp(sign * x * (s - 1.0) - x + w))

    res = integrate_adaptive(f, Interval(0.0, 1.0, singularity_order=p, singular_at="lower"),
                             tol=0.0, rel_tol=tol)
    pre = a * math.log(0.5 * x) + x - LOG_SQRT_PI - log_gamma(a + 0.5)
    val = SignedLogValue(1, math.log(res.value) + pre)
    return LogResult(val, res.abs_err_est / res.value + _rel_round(pre),
                     res.n_evals, res.status, "integral")


def bessel_I_log(a: float, x: float, route: str = "auto", sign: int = 1) -> LogResult:
    if x < 0:
        raise DomainError("bessel_I is evaluated for x >= 0")
    if x == 0:
        v = SignedLogValue(1, 0.0) if a == 0 else SignedLogValue.zero()
        return LogResult(v, 0.0, 0, Status.CONVERGED, "exact")
    if route in ("auto", "series"):
        la = float(log_bessel_I_series(a, np.array([x]))[0])
        kmax = x + 12 * math.sqrt(x) + 40
        return LogResult(SignedLogValue(1, la), 8 * _EPS * (kmax + abs(la)), 0,
                         Status.CONVERGED, "series")
    if route == "integral":
        return _bessel_I_integral(a, x, sign)
    raise ValueError(f"unknown route {route!r}")


def bessel_I(a: float, x: float, route: str = "auto", sign: int = 1) -> EvalResult:
    """Modified Bessel function I_a(x) for x >= 0.

    ``integral`` route (a > -1/2):
    (x/2)^a / (sqrt(pi) Gamma(a + 1/2)) int_{-1}^{1} e^(+-xt) (1 - t^2)^(a - 1/2) dt,
    with ``sign`` choosing the exponent; ``series`` route (a > -1) sums the
    power series.
    """
    return bessel_I_log(a, x, route, sign).to_result()


# ---------------------------------------------------------- non-central chi

def log_chi_density_array(a: float, tau: float, x):
    """log chi_{a,tau}(x), vectorised over x > 0, via the Bessel series."""
    if not (a > 0 and tau > 0):
        raise DomainError("chi density needs a > 0 and tau > 0")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    li = log_bessel_I_series(0.5 * a - 1.0, tau * x)
    return (math.log(tau) - 0.5 * (x * x + tau * tau)
            + 0.5 * a * (np.log(x) - math.log(tau)) + li)


def chi_density_log(a: float, tau: float, x: float, route: str = "auto") -> LogResult:
    if not (a > 0 and tau > 0 and x > 0):
        raise DomainError("chi density needs a, tau, x > 0")
    nu = 0.5 * a - 1.0
    if route == "auto":
        route = "integral" if nu > -0.5 else "series"
    bi = bessel_I_log(nu, tau * x, route)
    pre = math.log(tau) - 0.5 * (x * x + tau * tau) + 0.5 * a * math.log(x / tau)
    return LogResult(bi.value * SignedLogValue(1, pre), bi.rel_err_est + _rel_round(pre),
                     bi.n_evals, bi.status, f"chi/{bi.method}")


def chi_density(a: float, tau: float, x: float, route: str = "auto") -> EvalResult:
    """Non-central chi density tau e^(-(x^2+tau^2)/2) (x/tau)^(a/2) I_{a/2-1}(tau x)."""
    return chi_density_log(a, tau, x, route).to_result()


def _chi_rs_prefactor(b: float, x: float) -> float:
    return (LOG_SQRT_PI + (0.5 * b - 1.0) * LOG2 + log_gamma(0.5 * (b - 1.0))
            + (1.0 - b) * math.log(x))


def chi_r_log(b: float, tau: float, x: float, route: str = "series") -> LogResult:
    """r_b(x) = sqrt(pi) 2^(b/2-1) Gamma((b-1)/2) x^(1-b) e^((x+tau)^2/2) chi_{b,tau}(x).

    Equals int_{-1}^{1} e^((1-t) tau x) (1 - t^2)^((b-3)/2) dt; needs b > 1.
    """
    if not b > 1:
        raise DomainError("r_b needs b > 1")
    ch = chi_density_log(b, tau, x, route)
    lp = _chi_rs_prefactor(b, x) + 0.5 * (x + tau) ** 2
    return LogResult(ch.value * SignedLogValue(1, lp), ch.rel_err_est + _rel_round(lp),
                     ch.n_evals, ch.status, ch.method)


def chi_s_log(b: float, tau: float, x: float, route: str = "series") -> LogResult:
    """s_b(x), the e^((x - tau)^2/2) analogue of :func:`chi_r_log`."""
    if not b > 1:
        raise DomainError("s_b needs b > 1")
    ch = chi_density_log(b, tau, x, route)
    lp = _chi_rs_prefactor(b, x) + 0.5 * (x - tau) ** 2
    return LogResult(ch.value * SignedLogValue(1, lp), ch.rel_err_est + _rel_round(lp),
                     ch.n_evals, ch.status, ch.method)
