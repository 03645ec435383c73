import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turanlab.cylinder import bessel_K
from turanlab.errors import DimensionError, DomainError
from turanlab.quadrature import (Interval, ProductSampler, Status, TabulatedSampler,
                                 integrate_adaptive, integrate_tensor, mc_integrate,
                                 worst_status)

# mpmath reference: besselk(1, 1)
K1_AT_1 = 0.60190723019723457473


def test_interval_validation():
    with pytest.raises(DomainError):
        Interval(1.0, 0.0)
    with pytest.raises(DomainError):
        Interval(-math.inf, 0.0)
    with pytest.raises(DomainError):
        Interval(0.0, 1.0, singularity_order=-1.0)
    with pytest.raises(DomainError):
        Interval(0.0, 1.0, singular_at="middle")


def test_worst_status_ordering():
    assert worst_status() is Status.CONVERGED
    assert worst_status(Status.CONVERGED, Status.INCONCLUSIVE) is Status.INCONCLUSIVE


def test_identity_on_unit_interval():
    r = integrate_adaptive(lambda u: u, Interval(0.0, 1.0), 1e-12)
    assert r.value == pytest.approx(0.5, abs=1e-14)
    assert r.status is Status.CONVERGED
    assert r.abs_err_est <= 1e-12


def test_exponential_on_half_line():
    r = integrate_adaptive(lambda t: np.exp(-t), Interval(0.0, math.inf), 1e-12)
    assert r.value == pytest.approx(1.0, abs=1e-12)
    assert r.status is Status.CONVERGED


@pytest.mark.parametrize("power_map", [False, True])
def test_singular_integral_matches_bessel_K(power_map):
    # K_1(1) = int_1^inf e^{-t} (t^2 - 1)^{1/2} dt
    iv = Interval(1.0, math.inf, singularity_order=0.5, singular_at="lower",
                  power_map=power_map)
    r = integrate_adaptive(lambda t: np.exp(-t) * np.sqrt(t * t - 1.0), iv, 1e-10)
    assert r.value == pytest.approx(K1_AT_1, rel=1e-9)
    assert r.value == pytest.approx(bessel_K(1.0, 1.0).value, rel=1e-8)


@pytest.mark.parametrize("power_map", [False, True])
def test_inverse_sqrt_singularity(power_map):
    iv = Interval(0.0, 1.0, singularity_order=-0.5, singular_at="lower", power_map=power_map)
    r = integrate_adaptive(lambda t: t ** -0.5, iv, 1e-10)
    assert r.value == pytest.approx(2.0, abs=1e-9)


@pytest.mark.parametrize("deg", range(11))
def test_polynomials_exact(deg):
    coef = np.arange(1, deg + 2, dtype=float)
    exact = sum(c / (k + 1) for k, c in enumerate(coef))
    r = integrate_adaptive(lambda u: np.polynomial.polynomial.polyval(u, coef),
                           Interval(0.0, 1.0), 1e-13)
    assert abs(r.value - exact) <= 1e-13


@pytest.mark.parametrize("k", range(9))
def test_gamma_moments(k):
    r = integrate_adaptive(lambda t: t ** k * np.exp(-t), Interval(0.0, math.inf), 0.0,
                           rel_tol=1e-12)
    assert r.value == pytest.approx(math.factorial(k), rel=1e-10)


def test_relative_target_is_used():
    r = integrate_adaptive(lambda t: 1e-30 * np.exp(-t), Interval(0.0, math.inf), 0.0,
                           rel_tol=1e-12)
    assert r.value == pytest.approx(1e-30, rel=1e-11)


def test_budget_exhaustion_reported():
    r = integrate_adaptive(lambda t: np.sin(1.0 / t), Interval(1e-6, 1.0), 1e-14,
                           max_panels=20)
    assert r.status is not Status.CONVERGED


def test_tensor_constant():
    r = integrate_tensor(lambda s, t: np.ones(np.broadcast(s, t).shape),
                         [Interval(0.0, 1.0)] * 2, 1e-12)
    assert r.value == pytest.approx(1.0, abs=1e-12)


def test_tensor_separable_exponential():
    r = integrate_tensor(lambda s, t: np.exp(-s - t), [Interval(0.0, math.inf)] * 2, 1e-11)
    assert r.value == pytest.approx(1.0, abs=1e-10)


def test_tensor_three_dimensions():
    r = integrate_tensor(lambda s, t, u: s * t * u, [Interval(0.0, 1.0)] * 3, 1e-12)
    assert r.value == pytest.approx(0.125, abs=1e-12)


def test_tensor_dimension_cap():
    with pytest.raises(DimensionError):
        integrate_tensor(lambda *ts: ts[0], [Interval(0.0, 1.0)] * 4)


def test_tensor_heine_family_2():
    from turanlab.hankel import family_catalog, hankel_det_heine, hankel_entry
    fam = family_catalog(2, {"a": 1.0, "c": 0.5})
    f = [hankel_entry(fam, k, 1.0).value for k in range(3)]
    direct = f[0] * f[2] - f[1] ** 2
    r = hankel_det_heine(fam, 1, 1.0)
    assert r.value == pytest.approx(direct, rel=1e-6)


# ---------------------------------------------------------------- sampling

def _gamma_sampler(shape=2.0):
    return TabulatedSampler(lambda t: (shape - 1) * np.log(t) - t, Interval(0.0, math.inf))


def test_mc_constant_integrand():
    m = mc_integrate(_gamma_sampler(), lambda t: np.ones_like(t), 10_000, seed=1)
    assert m.mean == 1.0 and m.std_err == 0.0


def test_mc_median_indicator():
    # median of the Gamma(2) law: solves 1 - (1+m)e^{-m} = 1/2
    from scipy.special import gammaincinv
    med = gammaincinv(2.0, 0.5)
    m = mc_integrate(_gamma_sampler(), lambda t: (t < med).astype(float), 200_000, seed=3)
    assert abs(m.mean - 0.5) <= 3 * m.std_err


def test_mc_mean_of_gamma_law():
    m = mc_integrate(_gamma_sampler(), lambda t: t, 200_000, seed=11)
    assert abs(m.mean - 2.0) <= 4 * m.std_err


def test_mc_requires_seed():
    with pytest.raises(ValueError):
        mc_integrate(_gamma_sampler(), lambda t: t, 100, seed=None)


def test_mc_determinism_and_worker_independence():
    s = _gamma_sampler()
    a = mc_integrate(s, np.sqrt, 150_000, seed=42)
    b = mc_integrate(s, np.sqrt, 150_000, seed=42)
    c = mc_integrate(s, np.sqrt, 150_000, seed=42, workers=3)
    d = mc_integrate(s, np.sqrt, 150_000, seed=43)
    assert a.mean == b.mean == c.mean
    assert a.std_err == c.std_err
    assert d.mean != a.mean


def test_mc_std_err_scaling():
    s = _gamma_sampler()
    errs = [mc_integrate(s, np.sqrt, n, seed=5).std_err for n in (10_000, 100_000, 1_000_000)]
    for lo, hi in zip(errs, errs[1:]):
        assert lo / hi == pytest.approx(math.sqrt(10.0), rel=0.3)


def test_product_sampler_shape():
    s = ProductSampler([_gamma_sampler(), _gamma_sampler(3.0)])
    m = mc_integrate(s, lambda p: p[:, 0] + p[:, 1], 100_000, seed=9)
    assert abs(m.mean - 5.0) <= 4 * m.std_err


def test_singular_weight_sampler():
    # weight t^{-1/2} e^{-t}: E[t] = Gamma(3/2)/Gamma(1/2) = 1/2
    s = TabulatedSampler(lambda t: -0.5 * np.log(t) - t, Interval(0.0, math.inf))
    m = mc_integrate(s, lambda t: t, 200_000, seed=2)
    assert abs(m.mean - 0.5) <= 4 * m.std_err


@settings(max_examples=25, deadline=None)
@given(st.floats(0.1, 5.0), st.floats(0.1, 5.0))
def test_adaptive_power_exponential(k, rate):
    # int_0^inf t^k e^{-rate t} dt = Gamma(k+1) / rate^{k+1}
    r = integrate_adaptive(lambda t: t ** k * np.exp(-rate * t),
                           Interval(0.0, math.inf, singularity_order=k, singular_at="lower",
                                    scale=1.0 / rate), 0.0, rel_tol=1e-11)
    assert r.value == pytest.approx(math.gamma(k + 1) / rate ** (k + 1), rel=1e-9)
