import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turanlab.errors import DomainError, PoleError
from turanlab.scalar import (SignedLogValue, erfc, gamma_signed, hermite_eval, log_beta,
                             log_gamma, rgamma)

SQRT_PI = math.sqrt(math.pi)


# ------------------------------------------------------------ SignedLogValue

def test_zero_sentinel():
    z = SignedLogValue.zero()
    assert z.sign == 0 and z.log_abs == -math.inf
    with pytest.raises(ValueError):
        SignedLogValue(0, 1.0)
    with pytest.raises(ValueError):
        SignedLogValue(1, -math.inf)


def test_nan_rejected():
    with pytest.raises(ValueError):
        SignedLogValue.from_linear(math.nan)


@given(st.floats(min_value=1e-300, max_value=1e300), st.sampled_from([-1.0, 1.0]))
def test_linear_round_trip(v, s):
    x = s * v
    back = SignedLogValue.from_linear(x).to_linear()
    assert back == pytest.approx(x, rel=2e-13)


@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_arithmetic_matches_linear(x, y):
    a, b = SignedLogValue.from_linear(x), SignedLogValue.from_linear(y)
    assert (a * b).to_linear() == pytest.approx(x * y, rel=1e-12, abs=1e-300)
    assert (a + b).to_linear() == pytest.approx(x + y, rel=1e-9, abs=1e-9 * (abs(x) + abs(y)))
    assert (a - b).to_linear() == pytest.approx(x - y, rel=1e-9, abs=1e-9 * (abs(x) + abs(y)))
    if y != 0:
        assert (a / b).to_linear() == pytest.approx(x / y, rel=1e-12)


def test_overflow_safe_product():
    big = SignedLogValue(1, 800.0)
    prod = big * big / SignedLogValue(1, 1590.0)
    assert prod.to_linear() == pytest.approx(math.exp(10.0), rel=1e-12)
    assert big.to_linear() == math.inf


def test_power_of_negative():
    v = SignedLogValue.from_linear(-2.0)
    assert (v ** 3).to_linear() == pytest.approx(-8.0)
    assert (v ** 2).to_linear() == pytest.approx(4.0)
    with pytest.raises(DomainError):
        v ** 0.5


# ------------------------------------------------------------------ gamma

@pytest.mark.parametrize("x, expected", [(1.0, 0.0), (5.0, math.log(24.0)),
                                         (0.5, math.log(SQRT_PI))])
def test_log_gamma_examples(x, expected):
    assert log_gamma(x) == pytest.approx(expected, rel=1e-13, abs=1e-15)


def test_log_gamma_against_stdlib_grid():
    xs = np.concatenate([np.linspace(0.01, 1, 50), np.linspace(1, 170, 200)])
    got = log_gamma(xs)
    ref = np.array([math.lgamma(x) for x in xs])
    assert np.allclose(got, ref, rtol=1e-13, atol=1e-14)


def test_log_gamma_domain():
    with pytest.raises(DomainError):
        log_gamma(0.0)
    with pytest.raises(DomainError):
        log_gamma(-1.5)


@pytest.mark.parametrize("x, sign, log_abs", [
    (2.0, 1, 0.0),
    (-0.5, -1, math.log(2 * SQRT_PI)),
    (-1.5, 1, math.log(4 * SQRT_PI / 3)),
])
def test_gamma_signed_examples(x, sign, log_abs):
    g = gamma_signed(x)
    assert g.sign == sign
    assert g.log_abs == pytest.approx(log_abs, rel=1e-13, abs=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, -7.0, -3.0 + 1e-14])
def test_gamma_poles(x):
    with pytest.raises(PoleError):
        gamma_signed(x)


def test_rgamma_zero_at_poles():
    assert rgamma(-2.0) == 0.0
    assert rgamma(4.0) == pytest.approx(1 / 6)


def test_log_beta():
    assert log_beta(2.0, 3.0) == pytest.approx(math.log(1 / 12))


@settings(max_examples=1000)
@given(st.floats(min_value=1e-3, max_value=50.0))
def test_gamma_recurrence(x):
    # ln Gamma(x+1) = ln x + ln Gamma(x)
    lhs = log_gamma(x + 1.0)
    rhs = math.log(x) + log_gamma(x)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-13)


@settings(max_examples=100)
@given(st.floats(min_value=-10.0, max_value=10.0).filter(
    lambda x: abs(x - round(x)) > 1e-3))
def test_reflection(x):
    prod = gamma_signed(x) * gamma_signed(1.0 - x)
    ref = math.pi / math.sin(math.pi * x)
    assert prod.sign == (1 if ref > 0 else -1)
    assert prod.log_abs == pytest.approx(math.log(abs(ref)), rel=1e-10, abs=1e-10)


# ------------------------------------------------------------------- erfc

def test_erfc_examples():
    assert erfc(0.0) == 1.0
    assert 0 < erfc(8.0) < 1e-25
    # mpmath 40-digit reference
    assert erfc(1.0) == pytest.approx(0.15729920705028513, abs=1e-12)


def test_erfc_matches_quadrature_of_definition():
    from scipy.integrate import quad
    for x in (0.3, 1.0, 2.5):
        ref = 2 / SQRT_PI * quad(lambda t: math.exp(-t * t), x, math.inf, epsabs=1e-15)[0]
        assert erfc(x) == pytest.approx(ref, abs=1e-12)


def test_erfc_symmetry_grid():
    xs = np.linspace(-6, 6, 121)
    assert np.allclose(erfc(xs) + erfc(-xs), 2.0, atol=1e-15)


# ---------------------------------------------------------------- Hermite

@pytest.mark.parametrize("n, x, expected", [(0, 3.7, 1.0), (1, 2.0, 4.0), (3, 1.0, -4.0)])
def test_hermite_examples(n, x, expected):
    assert hermite_eval(n, x) == pytest.approx(expected)


def test_hermite_matches_numpy():
    from numpy.polynomial.hermite import hermval
    xs = np.linspace(-3, 3, 31)
    for n in range(8):
        coef = np.zeros(n + 1)
        coef[n] = 1
        assert np.allclose(hermite_eval(n, xs), hermval(xs, coef), rtol=1e-12, atol=1e-12)


def test_hermite_turan_inequality():
    xs = np.round(np.arange(-5, 5.0001, 0.1), 12)
    for n in range(1, 11):
        d = hermite_eval(n, xs) ** 2 - hermite_eval(n - 1, xs) * hermite_eval(n + 1, xs)
        assert np.all(d >= 0)
