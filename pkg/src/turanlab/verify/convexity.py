"""Midpoint tests of logarithmic convexity in the parameters of psi.

Surfaces
--------
GAMMA_A_PSI_AC      (a, c) -> Gamma(a) psi(a, c, x),            a > 0
GAMMA_AC_PSI_AC     (a, c) -> Gamma(a - c + 1) psi(a, c, x),    c < a + 1
PSI_IN_C            c -> psi(a, c, x),                           a > 0
GAMMA_A_PSI_IN_A    a -> Gamma(a) psi(a, c, x),                  a > 0

A trial draws two parameter points p1, p2 and x, and tests
log F(p1) + log F(p2) - 2 log F((p1 + p2)/2) >= 0 against the summed
relative error estimates of the three evaluations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..confluent import tricomi_psi_log
from ..quadrature import Status
from ..scalar import log_gamma
from .monotone import classify

DEGENERATE_TOL = 1e-12
MIN_SEPARATION = 0.5
_EPS = 2.220446049250313e-16


class Surface(str, Enum):
    GAMMA_A_PSI_AC = "GAMMA_A_PSI_AC"
    GAMMA_AC_PSI_AC = "GAMMA_AC_PSI_AC"
    PSI_IN_C = "PSI_IN_C"
    GAMMA_A_PSI_IN_A = "GAMMA_A_PSI_IN_A"


@dataclass(frozen=True)
class ConvexityTrial:
    """One midpoint test; ``p1``, ``p2`` are (a, c) pairs."""

    p1: tuple
    p2: tuple
    x: float
    gap: float
    err: float
    margin: float
    status: str


@dataclass
class ConvexityReport:
    surface: Surface
    seed: int
    trials: list

    @property
    def counts(self) -> dict:
        out = {"pass": 0, "violation": 0, "inconclusive": 0}
        for t in self.trials:
            out[t.status] += 1
        return out

    @property
    def status(self) -> str:
        c = self.counts
        if c["violation"]:
            return "violation"
        return "inconclusive" if c["inconclusive"] else "pass"


def log_surface(surface: Surface | str, a: float, c: float, x: float) -> tuple:
    """``(log F, relative error, converged)`` of a surface at (a, c, x)."""
    surface = Surface(surface)
    r = tricomi_psi_log(a, c, x)
    if r.value.sign <= 0:
        raise ArithmeticError(f"psi({a}, {c}, {x}) is not positive")
    lf = r.value.log_abs
    if surface in (Surface.GAMMA_A_PSI_AC, Surface.GAMMA_A_PSI_IN_A):
        lf += log_gamma(a)
    elif surface is Surface.GAMMA_AC_PSI_AC:
        lf += log_gamma(a - c + 1)
    # log_gamma contributes rounding relative to its own size
    err = float(r.rel_err_est + 4 * _EPS * (abs(lf) + 1))
    return float(lf), err, r.status is Status.CONVERGED


def _draw(surface: Surface, rng: np.random.Generator) -> tuple:
    """Two (a, c) points inside the surface domain, at least 0.5 apart."""
    while True:
        if surface is Surface.PSI_IN_C:
            a = rng.uniform(0.25, 4.0)
            c1, c2 = rng.uniform(-4.0, 4.0, 2)
            p1, p2 = (a, c1), (a, c2)
        elif surface is Surface.GAMMA_A_PSI_IN_A:
            c = rng.uniform(-4.0, 4.0)
            a1, a2 = rng.uniform(0.25, 5.0, 2)
            p1, p2 = (a1, c), (a2, c)
        else:
            p1 = (rng.uniform(0.25, 5.0), rng.uniform(-4.0, 4.0))
            p2 = (rng.uniform(0.25, 5.0), rng.uniform(-4.0, 4.0))
            if surface is Surface.GAMMA_AC_PSI_AC and not (p1[1] < p1[0] + 1
                                                           and p2[1] < p2[0] + 1):
                continue
        if math.dist(p1, p2) >= MIN_SEPARATION:
            return tuple(map(float, p1)), tuple(map(float, p2))


def midpoint_trial(surface: Surface | str, p1: tuple, p2: tuple, x: float,
                   margin_factor: float = 10.0) -> ConvexityTrial:
    """Midpoint log-convexity test between two (a, c) points.

    Coincident points reduce to the equality gap = 0, accepted within 1e-12.
    """
    surface = Surface(surface)
    pm = ((p1[0] + p2[0]) / 2, (p1[1] + p2[1]) / 2)
    try:
        evals = [log_surface(surface, *p, x) for p in (p1, p2, pm)]
    except (ArithmeticError, ValueError):
        return ConvexityTrial(tuple(p1), tuple(p2), x, math.nan, math.nan, math.nan,
                              "inconclusive")
    (l1, e1, ok1), (l2, e2, ok2), (lm, em, okm) = evals
    gap = l1 + l2 - 2 * lm
    # relative errors of F are absolute errors of log F
    err = e1 + e2 + 2 * em
    if tuple(p1) == tuple(p2):
        status = "pass" if abs(gap) <= DEGENERATE_TOL else "violation"
        return ConvexityTrial(tuple(p1), tuple(p2), x, gap, err, math.nan, status)
    margin = gap / err
    status = classify(margin, margin_factor) if ok1 and ok2 and okm else "inconclusive"
    return ConvexityTrial(tuple(p1), tuple(p2), x, gap, err, margin, status)


def check_log_convexity(surface: Surface | str, n_trials: int = 100, seed: int = 7,
                        margin_factor: float = 10.0) -> ConvexityReport:
    """Random midpoint log-convexity trials on one surface.

    Parameters
    ----------
    surface : Surface or str
    n_trials : int
    seed : int
        Seeds ``numpy.random.default_rng``; equal seeds give equal trials.
    margin_factor : float

    Returns
    -------
    ConvexityReport

    Examples
    --------
    >>> check_log_convexity("PSI_IN_C", n_trials=5, seed=1).status
    'pass'
    """
    surface = Surface(surface)
    rng = np.random.default_rng(seed)
    trials = []
    for _ in range(n_trials):
        p1, p2 = _draw(surface, rng)
        x = float(rng.uniform(0.1, 10.0))
        trials.append(midpoint_trial(surface, p1, p2, x, margin_factor))
    return ConvexityReport(surface, seed, trials)
