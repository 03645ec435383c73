# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport log, fabs

cnp.import_array()

cdef double _RESCALE = 1e280
cdef double _LOG_RESCALE = log(1e280)
cdef double _G_SHIFT = 5.24218750000000000
cdef double _C0 = 0.999999999999997092
cdef double _SQRT_2PI = 2.5066282746310005
cdef double[14] _COEF = [
    57.1562356658629235, -59.5979603554754912, 14.1360979747417471,
    -0.491913816097620199, 0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5,
]


def lgamma_array(x):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.ascontiguousarray(
        np.atleast_1d(np.asarray(x, dtype=np.float64)).ravel())
    cdef Py_ssize_t i, j, m = xs.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m)
    cdef double xv, y, tmp, ser
    for i in range(m):
        xv = xs[i]
        tmp = xv + _G_SHIFT
        tmp = (xv + 0.5) * log(tmp) - tmp
        ser = _C0
        y = xv
        for j in range(14):
            y += 1.0
            ser += _COEF[j] / y
        out[i] = tmp + log(_SQRT_2PI * ser / xv)
    return out.reshape(np.shape(x)) if np.ndim(x) else out


def hyp1f1_series(double a, double c, x, double rtol=1e-16, long max_terms=10000):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.ascontiguousarray(
        np.atleast_1d(np.asarray(x, dtype=np.float64)).ravel())
    cdef Py_ssize_t i, m = xs.shape[0]
    cdef long n
    cdef cnp.ndarray[cnp.float64_t, ndim=1] value = np.empty(m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] abs_sum = np.empty(m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] log_scale = np.empty(m)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] n_terms = np.empty(m, dtype=np.int64)
    cdef double xv, t, v, s, ls, nxt
    for i in range(m):
        xv = xs[i]
        t = 1.0
        v = 1.0
        s = 1.0
        ls = 0.0
        n_terms[i] = -1
        for n in range(max_terms):
            t *= (a + n) / (c + n) * xv / (n + 1)
            v += t
            s += fabs(t)
            if s > _RESCALE:
                v /= _RESCALE
                s /= _RESCALE
                t /= _RESCALE
                ls += _LOG_RESCALE
            nxt = fabs((a + n + 1) / (c + n + 1) * xv / (n + 2))
            if t == 0.0 or (fabs(t) <= rtol * fabs(v) and nxt < 1.0):
                n_terms[i] = n + 2
                break
        value[i] = v
        abs_sum[i] = s
        log_scale[i] = ls
    return value, abs_sum, log_scale, n_terms


def vandermonde_sq(phi):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] p = np.ascontiguousarray(phi, dtype=np.float64)
    cdef Py_ssize_t i, j, k, nrow = p.shape[0], d = p.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(nrow)
    cdef double acc, diff
    for i in range(nrow):
        acc = 1.0
        for j in range(d):
            for k in range(j + 1, d):
                diff = p[i, j] - p[i, k]
                acc *= diff * diff
        out[i] = acc
    return out
