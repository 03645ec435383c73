"""Adaptive Gauss-Kronrod quadrature, nested tensor quadrature and seeded
importance-sampling Monte Carlo.

Integrands are vectorised: they receive a 1-D array of abscissae and return
an array of the same length.  Semi-infinite intervals are mapped to (0, 1)
with ``t = L + s*u/(1-u)``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionError, DomainError, EvaluationError
from .scalar import SignedLogValue

_EPS = np.finfo(float).eps

# Gauss-Kronrod 21-point rule on [-1, 1]; Gauss nodes are the odd indices.
_XK = np.array([
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0,
])
_XK = np.concatenate([_XK, -_XK[-2::-1]])
_WK = np.array([
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WK = np.concatenate([_WK, _WK[-2::-1]])
_WG = np.array([
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])
_WG = np.concatenate([_WG, _WG[::-1]])

_GRADE_RATIO = 0.25
_GRADE_LEVELS = 16


class Status(str, Enum):
    CONVERGED = "converged"
    MAX_SUBDIVISION = "max-subdivision"
    INCONCLUSIVE = "inconclusive"


_STATUS_RANK = {Status.CONVERGED: 0, Status.INCONCLUSIVE: 1, Status.MAX_SUBDIVISION: 2}


def worst_status(*statuses: Status) -> Status:
    return max(statuses, key=_STATUS_RANK.__getitem__, default=Status.CONVERGED)


@dataclass(frozen=True)
class Interval:
    """Integration interval with an optional algebraic endpoint singularity.

    Parameters
    ----------
    lower, upper : float
        Endpoints; ``upper`` may be ``math.inf``.
    singularity_order : float
        Exponent p of a ``|t - endpoint|**p`` behaviour; 0 means regular.
    singular_at : {"lower", "upper", "both"}
        Which endpoint(s) the graded initial mesh refines toward.
    scale : float
        Length scale ``s`` of the semi-infinite map ``t = L + s*u/(1-u)``.
    power_map : bool
        For a negative order, substitute ``u ~ v**(1/(1+p))`` near the singular
        endpoint(s) so the transformed integrand is regular; replaces grading.
    """

    lower: float
    upper: float
    singularity_order: float = 0.0
    singular_at: str = "both"
    scale: float = 1.0
    power_map: bool = False

    def __post_init__(self):
        if not math.isfinite(self.lower):
            raise DomainError("lower endpoint must be finite")
        if not self.lower < self.upper:
            raise DomainError("interval requires lower < upper")
        if not self.singularity_order > -1:
            raise DomainError("singularity order must exceed -1")
        if self.singular_at not in ("lower", "upper", "both"):
            raise DomainError(f"bad singular_at {self.singular_at!r}")
        if not self.scale > 0:
            raise DomainError("scale must be positive")

    @property
    def semi_infinite(self) -> bool:
        return math.isinf(self.upper)

    @property
    def mapped(self) -> bool:
        return self.power_map and self.singularity_order < 0

    @property
    def graded(self) -> bool:
        p = self.singularity_order
        if self.mapped:
            return False
        return p != 0 and not (p > 0 and float(p).is_integer())


@dataclass(frozen=True)
class EvalResult:
    """A computed value with an absolute error estimate."""

    value: float
    abs_err_est: float
    n_evals: int = 0
    status: Status = Status.CONVERGED
    method: str = ""

    @property
    def rel_err_est(self) -> float:
        return self.abs_err_est / abs(self.value) if self.value else math.inf


@dataclass(frozen=True)
class LogResult:
    """A value carried as :class:`SignedLogValue` with a relative error estimate."""

    value: SignedLogValue
    rel_err_est: float
    n_evals: int = 0
    status: Status = Status.CONVERGED
    method: str = ""

    def to_result(self) -> EvalResult:
        v = float(self.value.to_linear())
        # an exact zero with an unbounded relative error has no absolute bound
        err = math.inf if math.isinf(self.rel_err_est) else abs(v) * self.rel_err_est
        return EvalResult(v, float(err), self.n_evals, self.status, self.method)


@dataclass(frozen=True)
class MCResult:
    """Monte Carlo estimate; reruns with the same seed reproduce ``mean``."""

    mean: float
    std_err: float
    n_samples: int
    seed: int


def _power_map(q: float, where: str):
    """Monotone map of [0, 1] onto itself behaving like ``v**q`` at singular ends."""
    def lower(v):
        vq = v ** q
        return vq, q * vq / v

    def upper(v):
        w = 1.0 - v
        wq = w ** q
        return 1.0 - wq, q * wq / w

    def both(v):
        w = 1.0 - v
        vq, wq = v ** q, w ** q
        den = vq + wq
        return vq / den, q * vq * wq / (v * w * den * den)
    return {"lower": lower, "upper": upper, "both": both}[where]


def _map_interval(iv: Interval):
    """Return (lo, hi, transform) with transform(u) -> (t, jacobian)."""
    inner = None
    if iv.mapped:
        where = iv.singular_at
        if iv.semi_infinite:
            where = "lower"
        inner = _power_map(1.0 / (1.0 + iv.singularity_order), where)

    if iv.semi_infinite:
        L, s = iv.lower, iv.scale

        def transform(v):
            u, du = inner(v) if inner else (v, 1.0)
            one_m = 1.0 - u
            return L + s * u / one_m, du * s / (one_m * one_m)
        return 0.0, 1.0, transform

    if inner is not None:
        L, h = iv.lower, iv.upper - iv.lower

        def mapped(v):
            u, du = inner(v)
            return L + h * u, h * du
        return 0.0, 1.0, mapped

    def identity(u):
        return u, np.ones_like(u)
    return iv.lower, iv.upper, identity


def _initial_mesh(iv: Interval, lo: float, hi: float, n_init: int) -> np.ndarray:
    pts = list(np.linspace(lo, hi, n_init + 1))
    if iv.graded:
        w = hi - lo
        grade = w * _GRADE_RATIO ** np.arange(1, _GRADE_LEVELS + 1)
        if iv.singular_at in ("lower", "both"):
            pts.extend(lo + grade)
        if iv.singular_at in ("upper", "both") and not iv.semi_infinite:
            pts.extend(hi - grade)
    return np.unique(np.asarray(pts))


def _rule(g, lo, hi, m):
    """Apply GK21 to panels [lo, hi]; g(u) returns (values, errs) of shape (m, len(u))."""
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    u = (center[:, None] + half[:, None] * _XK[None, :]).ravel()
    vals, inner_err = g(u)
    fu = vals.reshape(m, lo.size, 21)
    if not np.all(np.isfinite(fu)):
        raise EvaluationError("integrand returned a non-finite value")
    kron = half * (fu @ _WK)
    gauss = half * (fu[..., 1::2] @ _WG)
    resabs = np.abs(half) * (np.abs(fu) @ _WK)
    mean = (fu @ _WK) * 0.5
    resasc = np.abs(half) * (np.abs(fu - mean[..., None]) @ _WK)
    err = np.abs(kron - gauss)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc != 0) & (err != 0), scaled, err)
    floor = 50.0 * _EPS * resabs
    at_floor = err <= floor
    err = np.maximum(err, floor)
    if inner_err is not None:
        ie = np.abs(inner_err).reshape(m, lo.size, 21)
        err = err + np.abs(half) * (ie @ _WK)
        at_floor = np.zeros_like(at_floor)
    return kron, err, at_floor


def _adaptive_core(g, iv: Interval, m: int, tol: float, rel_tol: float,
                   max_panels: int, n_init: int = 1, batch_rel: bool = False):
    """Vector-valued adaptive GK21 on a (possibly mapped) interval.

    ``g(t)`` returns ``(values, inner_errs)`` with values of shape (m, len(t));
    ``inner_errs`` is None or an array of absolute errors of the same shape.
    With ``batch_rel`` the relative target of every component is floored at
    ``rel_tol`` times the largest component, so negligible components do not
    drive refinement.  Returns per-component (values, errors), the evaluation
    count and status.
    """
    lo0, hi0, transform = _map_interval(iv)

    def mapped(u):
        t, jac = transform(u)
        vals, errs = g(t)
        vals = np.asarray(vals, dtype=float).reshape(m, u.size)
        with np.errstate(invalid="ignore"):
            vals = vals * jac
        if errs is not None:
            errs = np.asarray(errs, dtype=float).reshape(m, u.size) * jac
        return vals, errs

    mesh = _initial_mesh(iv, lo0, hi0, n_init)
    lo, hi = mesh[:-1], mesh[1:]
    val, err, frozen = _rule(mapped, lo, hi, m)
    frozen = np.all(frozen, axis=0)
    n_evals = 21 * lo.size
    status = Status.CONVERGED
    while True:
        total = np.array([math.fsum(row) for row in val])
        total_err = np.array([math.fsum(row) for row in err])
        target = np.maximum(tol, rel_tol * np.abs(total))
        if batch_rel and m:
            target = np.maximum(target, rel_tol * np.max(np.abs(total)))
        if np.all(total_err <= target):
            break
        if lo.size >= max_panels:
            status = Status.MAX_SUBDIVISION
            break
        # Score panels by the worst component error relative to its target.
        # a component whose target is 0 has integrated to exactly 0
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(err > 0, err / target[:, None], 0.0)
        score = np.max(ratio, axis=0)
        score = np.where(frozen, 0.0, score)
        best = score.max()
        if best == 0.0:
            status = Status.INCONCLUSIVE
            break
        pick = np.flatnonzero(score >= 0.1 * best)
        pick = pick[np.argsort(-score[pick], kind="stable")][: max_panels - lo.size]
        plo, phi = lo[pick], hi[pick]
        mid = 0.5 * (plo + phi)
        narrow = (mid <= plo) | (mid >= phi) | (phi - plo <= 4 * _EPS * np.maximum(np.abs(plo), np.abs(phi)))
        if np.any(narrow):
            frozen[pick[narrow]] = True
            pick, plo, phi, mid = pick[~narrow], plo[~narrow], phi[~narrow], mid[~narrow]
            if pick.size == 0:
                continue
        new_lo = np.concatenate([plo, mid])
        new_hi = np.concatenate([mid, phi])
        nv, ne, nf = _rule(mapped, new_lo, new_hi, m)
        n_evals += 21 * new_lo.size
        keep = np.ones(lo.size, dtype=bool)
        keep[pick] = False
        order = np.argsort(np.concatenate([lo[keep], new_lo]), kind="stable")
        lo = np.concatenate([lo[keep], new_lo])[order]
        hi = np.concatenate([hi[keep], new_hi])[order]
        val = np.concatenate([val[:, keep], nv], axis=1)[:, order]
        err = np.concatenate([err[:, keep], ne], axis=1)[:, order]
        frozen = np.concatenate([frozen[keep], np.all(nf, axis=0)])[order]
    return total, total_err, n_evals, status


def integrate_adaptive(f: Callable[[np.ndarray], np.ndarray], iv: Interval,
                       tol: float = 1e-10, rel_tol: float = 0.0,
                       max_panels: int = 10000) -> EvalResult:
    """Integrate a vectorised ``f`` over ``iv`` with adaptive GK21 bisection.

    Parameters
    ----------
    f : callable
        Maps a 1-D array of abscissae to an array of integrand values.
    iv : Interval
    tol, rel_tol : float
        The error target is ``max(tol, rel_tol*|value|)``.
    max_panels : int
        Panel budget; exhausting it yields status ``max-subdivision``.

    Returns
    -------
    EvalResult
        ``status`` is ``converged`` only when the estimate meets the target,
        and ``inconclusive`` when every remaining panel is at its rounding
        floor.

    Raises
    ------
    EvaluationError
        If ``f`` returns NaN or an infinity.
    """
    if not (tol > 0 or rel_tol > 0):
        raise DomainError("a positive tol or rel_tol is required")

    def g(t):
        return np.asarray(f(t), dtype=float).reshape(1, -1), None

    total, err, n, status = _adaptive_core(g, iv, 1, tol, rel_tol, max_panels)
    return EvalResult(float(total[0]), float(err[0]), n, status, "gk21")


_CHUNK = 256


def _nested(f, ivs, prefix, tol, rel_tol, max_panels):
    """Integrate ``f`` over ``ivs`` for every point of the broadcast prefix grid."""
    lead = np.broadcast_shapes(*[p.shape for p in prefix]) if prefix else ()
    m = int(np.prod(lead, dtype=int))
    flat = [np.broadcast_to(p, lead).ravel() for p in prefix]
    vals = np.empty(m)
    errs = np.empty(m)
    n_total = 0
    status = Status.CONVERGED
    for start in range(0, max(m, 1), _CHUNK):
        sl = slice(start, min(start + _CHUNK, max(m, 1)))
        chunk = [p[sl][:, None] for p in flat]
        mc = chunk[0].shape[0] if chunk else 1

        def g(t, chunk=chunk, mc=mc):
            if len(ivs) == 1:
                v = f(*[np.broadcast_to(c, (mc, t.size)) for c in chunk],
                      np.broadcast_to(t, (mc, t.size)))
                return np.broadcast_to(v, (mc, t.size)), None
            sub_prefix = [np.broadcast_to(c, (mc, t.size)) for c in chunk]
            sub_prefix.append(np.broadcast_to(t, (mc, t.size)))
            v, e, n, st = _nested(f, ivs[1:], sub_prefix, 0.1 * tol, 0.1 * rel_tol, max_panels)
            g.n_inner += n
            g.status = worst_status(g.status, st)
            return v, e

        g.n_inner = 0
        g.status = Status.CONVERGED
        v, e, n, st = _adaptive_core(g, ivs[0], mc, tol, rel_tol, max_panels,
                                     batch_rel=bool(prefix))
        vals[sl] = v
        errs[sl] = e
        n_total += n + g.n_inner
        status = worst_status(status, st, g.status)
    return vals.reshape(lead), errs.reshape(lead), n_total, status


def integrate_tensor(f: Callable[..., np.ndarray], ivs: Sequence[Interval],
                     tol: float = 1e-10, rel_tol: float = 0.0,
                     max_panels: int = 10000) -> EvalResult:
    """Iterated adaptive quadrature over a product of up to three intervals.

    ``f(t0, t1, ...)`` must broadcast over array arguments.  Inner integrals
    are computed for whole batches of outer nodes at once and their error
    estimates are integrated into the outer estimate.
    """
    ivs = list(ivs)
    if not 1 <= len(ivs) <= 3:
        raise DimensionError(f"tensor quadrature supports 1 to 3 dimensions, got {len(ivs)}")
    v, e, n, status = _nested(f, ivs, [], tol, rel_tol, max_panels)
    target = max(tol, rel_tol * abs(float(v)))
    if status is Status.CONVERGED and float(e) > target:
        status = Status.INCONCLUSIVE
    return EvalResult(float(v), float(e), n, status, f"tensor-gk21-{len(ivs)}d")


class TabulatedSampler:
    """Sampler for a 1-D density known up to normalisation through its log.

    The density is tabulated on 4096 nodes spaced logarithmically toward the
    endpoints; inside each cell the proposal is constant, and in the two end
    cells it follows the power law fitted to the neighbouring nodes so that
    integrable endpoint singularities keep the importance ratio bounded.

    ``draw`` returns the points and the ratio target/proposal, where the
    target is normalised by the tabulated mass; self-normalised estimators
    remove the residual normalisation error.
    """

    n_nodes = 4096

    def __init__(self, log_weight: Callable[[np.ndarray], np.ndarray], iv: Interval,
                 cutoff: float = 60.0):
        self.log_weight = log_weight
        self.iv = iv
        L = iv.lower
        if iv.semi_infinite:
            probe = L + np.logspace(-14, 14, 2801) * iv.scale
            lw = log_weight(probe)
            ok = np.isfinite(lw) & (lw > np.max(lw[np.isfinite(lw)]) - cutoff)
            top = probe[np.flatnonzero(ok)[-1]]
            offsets = np.logspace(-14, math.log10(top - L), self.n_nodes - 1)
            nodes = np.concatenate([[L], L + offsets])
        else:
            U = iv.upper
            half = 0.5 * (U - L)
            k = self.n_nodes // 2
            left = L + np.logspace(math.log10(half) - 14, math.log10(half), k)
            right = U - np.logspace(math.log10(half) - 14, math.log10(half), k)[::-1]
            nodes = np.unique(np.concatenate([[L], left, right[1:], [U]]))
        lw = np.asarray(log_weight(nodes[1:-1]), dtype=float)
        interior = nodes[1:-1]
        ref = np.max(lw)
        w = np.exp(lw - ref)
        self._ref = ref
        width = np.diff(nodes)
        mass = np.empty(width.size)
        mass[1:-1] = 0.5 * width[1:-1] * (w[:-1] + w[1:])
        # power-law end cells
        p_lo = self._fit_power(interior[0] - L, interior[1] - L, lw[0], lw[1])
        mass[0] = w[0] * width[0] / (p_lo + 1.0)
        self._p_lo = p_lo
        if iv.semi_infinite:
            self._p_hi = None
            mass[-1] = 0.5 * width[-1] * w[-1]
        else:
            p_hi = self._fit_power(nodes[-1] - interior[-1], nodes[-1] - interior[-2], lw[-1], lw[-2])
            mass[-1] = w[-1] * width[-1] / (p_hi + 1.0)
            self._p_hi = p_hi
        self.nodes = nodes
        self._mass = mass
        self.total = math.fsum(mass)
        self._cdf = np.concatenate([[0.0], np.cumsum(mass)]) / self.total
        self._cdf[-1] = 1.0
        self.log_norm = ref + math.log(self.total)

    @staticmethod
    def _fit_power(d0, d1, lw0, lw1):
        p = (lw1 - lw0) / (math.log(d1) - math.log(d0))
        return min(max(p, -0.999), 50.0)

    def _proposal_log_density(self, t, cell):
        nodes, mass = self.nodes, self._mass
        width = nodes[cell + 1] - nodes[cell]
        q = mass[cell] / width
        last = nodes.size - 2
        with np.errstate(divide="ignore"):
            lq = np.log(q)
            first = cell == 0
            if np.any(first):
                w0 = nodes[1] - nodes[0]
                d = t[first] - nodes[0]
                lq[first] = (math.log(mass[0] * (self._p_lo + 1.0) / w0)
                             + self._p_lo * (np.log(d) - math.log(w0)))
            if self._p_hi is not None:
                end = cell == last
                if np.any(end):
                    d = nodes[-1] - t[end]
                    wl = nodes[-1] - nodes[-2]
                    lq[end] = (math.log(mass[-1] * (self._p_hi + 1.0) / wl)
                               + self._p_hi * (np.log(d) - math.log(wl)))
        return lq - math.log(self.total)

    def draw(self, rng: np.random.Generator, n: int):
        """Draw ``n`` points; return ``(points, ratio)``."""
        u = rng.random(n)
        v = rng.random(n)
        cell = np.clip(np.searchsorted(self._cdf, u, side="right") - 1, 0, self.nodes.size - 2)
        a = self.nodes[cell]
        b = self.nodes[cell + 1]
        t = a + v * (b - a)
        first = cell == 0
        if np.any(first):
            t[first] = a[first] + (b[first] - a[first]) * v[first] ** (1.0 / (self._p_lo + 1.0))
        if self._p_hi is not None:
            end = cell == self.nodes.size - 2
            if np.any(end):
                t[end] = b[end] - (b[end] - a[end]) * v[end] ** (1.0 / (self._p_hi + 1.0))
        # keep points strictly inside the support
        t = np.clip(t, np.nextafter(a, b), np.nextafter(b, a))
        lw = np.asarray(self.log_weight(t), dtype=float) - self.log_norm
        ratio = np.exp(lw - self._proposal_log_density(t, cell))
        return t, ratio


class ProductSampler:
    """Independent product of 1-D samplers; points have shape (n, d)."""

    def __init__(self, samplers: Sequence[TabulatedSampler]):
        self.samplers = list(samplers)

    def draw(self, rng: np.random.Generator, n: int):
        pts = np.empty((n, len(self.samplers)))
        ratio = np.ones(n)
        for j, s in enumerate(self.samplers):
            pts[:, j], r = s.draw(rng, n)
            ratio *= r
        return pts, ratio


MC_BLOCK = 65536


def block_rng(seed: int, block: int) -> np.random.Generator:
    """Counter-based stream for one block of samples, keyed by (seed, block)."""
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, block], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def mc_integrate(sampler, h: Callable[[np.ndarray], np.ndarray], n_samples: int,
                 seed: int, normalization: float = 1.0, workers: int = 1) -> MCResult:
    """Self-normalised importance-sampling estimate of ``normalization * E[h]``.

    Samples are generated in blocks of 65536, block ``b`` drawing from a
    Philox stream keyed by ``(seed, b)``, so the result does not depend on
    ``workers``.  ``std_err`` is the delta-method standard error of the
    self-normalised mean, which reduces to ``sd/sqrt(n)`` when the sampler
    is exact.
    """
    if seed is None:
        raise ValueError("mc_integrate requires an explicit seed")
    if int(seed) != seed or not 0 <= seed < 2 ** 64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    seed = int(seed)
    sizes = [min(MC_BLOCK, n_samples - s) for s in range(0, n_samples, MC_BLOCK)]

    def run(block):
        pts, ratio = sampler.draw(block_rng(seed, block), sizes[block])
        hv = np.asarray(h(pts), dtype=float)
        if not (np.all(np.isfinite(hv)) and np.all(np.isfinite(ratio))):
            raise EvaluationError("non-finite Monte Carlo integrand value")
        return ratio, hv

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    else:
        parts = [run(b) for b in range(len(sizes))]
    ratio = np.concatenate([p[0] for p in parts])
    hv = np.concatenate([p[1] for p in parts])
    if np.all(hv == hv[0]):
        return MCResult(float(normalization * hv[0]), 0.0, n_samples, seed)
    rsum = math.fsum(ratio)
    mean = math.fsum(ratio * hv) / rsum
    resid = ratio * (hv - mean)
    var = math.fsum(resid * resid) / (rsum * rsum) * n_samples / (n_samples - 1)
    return MCResult(float(normalization * mean), float(abs(normalization) * math.sqrt(var)),
                    n_samples, seed)
