import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turanlab.cylinder import (U_abs_sq_imag_axis, U_at_zero, bessel_I, bessel_K, chi_density,
                               mills_delta0, parabolic_D, parabolic_ratio_stieltjes,
                               parabolic_U, weber_ode_residual, whittaker_W)
from turanlab.errors import DomainError
from turanlab.scalar import erfc, hermite_eval, log_gamma

# mpmath pcfu / besselk / besseli / whitw at 40 digits
U_REF = [
    (1.0, 0.0, 1.1627366340382372),
    (1.0, 2.0, 0.095952316280494326),
    (0.25, -3.0, 15.062911339833357),
    (2.0, 1.5, 0.081540979494245955),
    (-2.5, 0.7, -0.45120001152117668),
    (0.5, 7.0, 6.7041496495122404e-7),
    (3.0, -1.0, 2.6686281073483636),
]
K_REF = [
    (0.5, 1.0, 0.46106850444789456),
    (1.0, 2.0, 0.13986588181652243),
    (0.25, 1.0, 0.43073977444858552),
    (0.75, 1.0, 0.51577530069591863),
    (2.3, 0.4, 22.939582154526638),
    (-1.7, 3.0, 0.052605504084725399),
]
I_REF = [
    (0.5, 1.0, 0.93767488824548765),
    (0.0, 2.0, 2.2795853023360673),
    (1.7, 3.0, 2.7490535717647506),
]
W_REF = [
    (-0.25, 0.25, 1.0, 0.45967269884222596),
    (0.0, 1.0, 2.0, 0.48025248600998968),
    (-2.0, -0.75, 1.5, 0.038294439087135578),
    (1.2, 0.3, 4.0, 0.64287351661464253),
]
CHI_REF = [
    (3.0, 1.0, 1.0, 0.34495131388824463),
    (2.0, 0.5, 2.0, 0.30242001160226426),
    (1.5, 2.0, 0.7, 0.15054707643309169),
]


# ---------------------------------------------------------------- U and D

@pytest.mark.parametrize("a, x, ref", U_REF)
def test_U_reference_values(a, x, ref):
    assert parabolic_U(a, x).value == pytest.approx(ref, rel=1e-10)


def test_U_closed_forms():
    assert parabolic_U(-0.5, 2.0).value == pytest.approx(math.exp(-1.0), rel=1e-12)
    assert parabolic_U(-1.5, 2.0).value == pytest.approx(2 * math.exp(-1.0), rel=1e-12)
    for x in np.arange(0.0, 6.0001, 0.25):
        ref = math.sqrt(math.pi / 2) * math.exp(x * x / 4) * erfc(x / math.sqrt(2))
        assert parabolic_U(0.5, x).value == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0, 5.0, -0.7])
def test_U_at_zero(a):
    ref = math.sqrt(math.pi) / (2 ** (a / 2 + 0.25) * math.gamma(a / 2 + 0.75))
    assert U_at_zero(a) == pytest.approx(ref, rel=1e-13)
    assert parabolic_U(a, 0.0).value == pytest.approx(ref, rel=1e-10)


def test_U_routes_agree():
    for a in (-1.3, 0.25, 2.0):
        for x in (0.5, 1.0, 2.0, 4.0):
            d = parabolic_U(a, x, "definition").value
            p = parabolic_U(a, x, "psi").value
            assert d == pytest.approx(p, rel=1e-8)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
def test_D_hermite_relation(n, x):
    ref = 2 ** (-n / 2) * math.exp(-x * x / 4) * hermite_eval(n, x / math.sqrt(2))
    assert parabolic_D(n, x).value == pytest.approx(ref, rel=1e-9)


def test_D0_is_gaussian():
    for x in (-2.0, 0.0, 1.5):
        assert parabolic_D(0, x).value == pytest.approx(math.exp(-x * x / 4), rel=1e-12)


@pytest.mark.parametrize("a", [-1.5, -0.5, 0.25, 1.0, 3.0])
@pytest.mark.parametrize("x", [-3.0, -1.0, 0.5, 2.0])
def test_weber_residual(a, x):
    assert weber_ode_residual(a, x) <= 1e-6


def _K_combo(x, coef, power, denom):
    z = x * x / 4
    ks = [bessel_K(v, z).value for v in (0.25, 0.75, 1.25, 1.75)]
    return x ** power * math.sqrt(x) / (denom * math.sqrt(2 * math.pi)) * np.dot(coef, ks)


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
def test_bessel_K_composites(x):
    assert parabolic_U(0.0, x).value == pytest.approx(_K_combo(x, [1, 0, 0, 0], 0, 1),
                                                      rel=1e-7)
    assert parabolic_U(-1.0, x).value == pytest.approx(_K_combo(x, [1, 1, 0, 0], 1, 2),
                                                       rel=1e-7)
    assert parabolic_U(-2.0, x).value == pytest.approx(_K_combo(x, [2, 3, -1, 0], 2, 4),
                                                       rel=1e-7)
    assert parabolic_U(-3.0, x).value == pytest.approx(_K_combo(x, [5, 9, -5, -1], 3, 8),
                                                       rel=1e-7)


def test_K_combination_turanians_positive():
    for x in np.round(np.arange(0.1, 6.0001, 0.1), 12):
        u = {a: parabolic_U(a, x).value for a in (0.0, -1.0, -2.0, -3.0)}
        assert u[-2.0] ** 2 - u[-3.0] * u[-1.0] > 0
        assert u[-1.0] ** 2 - u[-2.0] * u[0.0] > 0


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
def test_U_large_x_normalization(a):
    x = 30.0
    r = parabolic_U(a, x)
    scaled = math.exp(math.log(r.value) + x * x / 4 + (a + 0.5) * math.log(x))
    assert scaled == pytest.approx(1.0, abs=1e-2)


# -------------------------------------------------------- Stieltjes, Mills

def test_imag_axis_small_t_limit():
    for a in (0.5, 1.0, 3.0):
        lim = math.pi / (2 ** a * math.exp(2 * log_gamma((a + 1) / 2)))
        assert U_abs_sq_imag_axis(a, 1e-12) == pytest.approx(lim, rel=1e-6)


def test_parabolic_ratio_matches_direct():
    r = parabolic_ratio_stieltjes(1.0, 1.0).value
    assert r == pytest.approx(parabolic_D(-2, 1.0).value / parabolic_D(-1, 1.0).value, rel=1e-6)
    r = parabolic_ratio_stieltjes(2.0, 4.0).value
    ref = parabolic_D(-3, 2.0).value / (2 * parabolic_D(-2, 2.0).value)
    assert r == pytest.approx(ref, rel=1e-6)


def test_parabolic_ratio_decays():
    assert parabolic_ratio_stieltjes(1.0, 1e4).value < 1e-2


def test_parabolic_ratio_domain():
    with pytest.raises(DomainError):
        parabolic_ratio_stieltjes(0.0, 1.0)


def test_mills_delta0():
    assert mills_delta0(1e-12) == pytest.approx(1.0, abs=1e-11)
    ref = math.exp(-0.5) - math.sqrt(math.pi / 2) * math.erfc(1 / math.sqrt(2))
    assert mills_delta0(1.0) == pytest.approx(ref, rel=1e-13)
    assert all(mills_delta0(x) > 0 for x in np.arange(0.1, 8.0, 0.1))
    with pytest.raises(DomainError):
        mills_delta0(0.0)


# ------------------------------------------------ Whittaker, Bessel, chi

@pytest.mark.parametrize("kappa, mu, x, ref", W_REF)
def test_whittaker_reference_values(kappa, mu, x, ref):
    assert whittaker_W(kappa, mu, x).value == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("a, x, ref", K_REF)
def test_bessel_K_reference_values(a, x, ref):
    assert bessel_K(a, x).value == pytest.approx(ref, rel=1e-10)


def test_bessel_K_half_order_closed_form():
    for route in ("psi", "integral"):
        assert bessel_K(0.5, 1.0, route).value == pytest.approx(
            math.sqrt(math.pi / 2) * math.exp(-1.0), rel=1e-10)


@pytest.mark.parametrize("a", [0.0, 0.3, 1.0, 2.5])
@pytest.mark.parametrize("x", [0.2, 1.0, 5.0, 20.0])
def test_bessel_K_routes_agree(a, x):
    assert bessel_K(a, x, "integral").value == pytest.approx(bessel_K(a, x, "psi").value,
                                                             rel=1e-8)


def test_bessel_K_increasing_in_order():
    orders = np.arange(0.0, 5.01, 0.25)
    for x in (0.1, 1.0, 3.0, 10.0):
        vals = [bessel_K(a, x).value for a in orders]
        assert all(b > a for a, b in zip(vals, vals[1:]))
        assert bessel_K(-1.3, x).value == pytest.approx(bessel_K(1.3, x).value, rel=1e-12)


@pytest.mark.parametrize("a, x, ref", I_REF)
def test_bessel_I_reference_values(a, x, ref):
    assert bessel_I(a, x).value == pytest.approx(ref, rel=1e-11)
    assert bessel_I(a, x, "integral").value == pytest.approx(ref, rel=1e-9)


def test_bessel_I_closed_form_and_exponent_signs():
    ref = math.sqrt(2 / math.pi) * math.sinh(1.0)
    for sign in (1, -1):
        assert bessel_I(0.5, 1.0, "integral", sign).value == pytest.approx(ref, rel=1e-10)
    assert bessel_I(0.0, 0.0).value == 1.0


@pytest.mark.parametrize("a, tau, x, ref", CHI_REF)
def test_chi_reference_values(a, tau, x, ref):
    assert chi_density(a, tau, x).value == pytest.approx(ref, rel=1e-10)
    assert chi_density(a, tau, x, "series").value == pytest.approx(ref, rel=1e-11)


def test_chi_density_normalised():
    from turanlab.quadrature import Interval, integrate_adaptive
    from turanlab.cylinder import log_chi_density_array
    r = integrate_adaptive(lambda x: np.exp(log_chi_density_array(3.0, 1.5, x)),
                           Interval(0.0, math.inf, singularity_order=2.0, singular_at="lower"),
                           1e-12)
    assert r.value == pytest.approx(1.0, abs=1e-10)


@settings(max_examples=60, deadline=None)
@given(st.floats(-3.0, 3.0), st.floats(-4.0, 4.0))
def test_U_recurrence(a, x):
    # x U(a, x) - U(a-1, x) + (a + 1/2) U(a+1, x) = 0
    u0, um, up = (parabolic_U(b, x).value for b in (a, a - 1, a + 1))
    scale = abs(x * u0) + abs(um) + abs((a + 0.5) * up)
    assert abs(x * u0 - um + (a + 0.5) * up) <= 1e-9 * scale
