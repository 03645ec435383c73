"""Pure numpy implementations of the hot kernels.

These are the reference versions; ``_ckernels.pyx`` mirrors them loop for
loop and must agree to rounding.
"""
import math

import numpy as np

_RESCALE = 1e280
_LOG_RESCALE = math.log(_RESCALE)

# Lanczos coefficients, g = 671/128, 14 terms.
LANCZOS_G_SHIFT = 5.24218750000000000
LANCZOS_C0 = 0.999999999999997092
LANCZOS_COEF = (
    57.1562356658629235, -59.5979603554754912, 14.1360979747417471,
    -0.491913816097620199, 0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5,
)
SQRT_2PI = 2.5066282746310005


def lgamma_array(x):
    """ln Gamma(x) for an array of positive reals (no domain checks)."""
    x = np.asarray(x, dtype=float)
    tmp = x + LANCZOS_G_SHIFT
    tmp = (x + 0.5) * np.log(tmp) - tmp
    ser = np.full_like(x, LANCZOS_C0)
    y = x.copy()
    for coef in LANCZOS_COEF:
        y = y + 1.0
        ser = ser + coef / y
    return tmp + np.log(SQRT_2PI * ser / x)


def hyp1f1_series(a, c, x, rtol=1e-16, max_terms=10000):
    """Sum the Kummer series term by term for every entry of ``x``.

    Returns ``(value, abs_sum, log_scale, n_terms)``; the true sum is
    ``value * exp(log_scale)``.  ``abs_sum`` is the sum of term magnitudes on
    the same scale, used for rounding-error bounds.  ``n_terms`` is -1 where
    the cap was hit.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    value = np.ones_like(x)
    abs_sum = np.ones_like(x)
    term = np.ones_like(x)
    log_scale = np.zeros_like(x)
    n_terms = np.full(x.shape, -1, dtype=np.int64)
    active = np.ones(x.shape, dtype=bool)
    for n in range(max_terms):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        ratio = (a + n) / (c + n) * x[idx] / (n + 1)
        t = term[idx] * ratio
        term[idx] = t
        v = value[idx] + t
        s = abs_sum[idx] + np.abs(t)
        big = s > _RESCALE
        if big.any():
            v[big] /= _RESCALE
            s[big] /= _RESCALE
            t[big] /= _RESCALE
            term[idx[big]] = t[big]
            log_scale[idx[big]] += _LOG_RESCALE
        value[idx] = v
        abs_sum[idx] = s
        nxt = np.abs((a + n + 1) / (c + n + 1) * x[idx] / (n + 2))
        done = (t == 0.0) | ((np.abs(t) <= rtol * np.abs(v)) & (nxt < 1.0))
        if done.any():
            n_terms[idx[done]] = n + 2
            active[idx[done]] = False
    return value, abs_sum, log_scale, n_terms


def vandermonde_sq(phi):
    """prod_{j<k} (phi[:, j] - phi[:, k])**2 for a 2-D sample array."""
    phi = np.asarray(phi, dtype=float)
    out = np.ones(phi.shape[0])
    d = phi.shape[1]
    for j in range(d):
        for k in range(j + 1, d):
            diff = phi[:, j] - phi[:, k]
            out *= diff * diff
    return out
