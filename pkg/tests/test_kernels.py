import math
import os
import subprocess
import sys

import numpy as np
import pytest

from turanlab import _kernels
from turanlab._kernels import python_impl

compiled = pytest.mark.skipif(_kernels.compiled_impl is None,
                              reason="compiled kernels not built")


def _hyp_value(impl, a, c, x):
    v, _, ls, _ = impl.hyp1f1_series(a, c, x)
    return np.log(np.abs(v)) + ls, np.sign(v)


def test_python_lgamma_matches_stdlib():
    xs = np.linspace(0.05, 150.0, 500)
    ref = np.array([math.lgamma(x) for x in xs])
    assert np.allclose(python_impl.lgamma_array(xs), ref, rtol=1e-13, atol=2e-15)


def test_python_series_values():
    # 1F1(2; 2; 1) = e and 1F1(a; c; 0) = 1
    v, _, ls, n = python_impl.hyp1f1_series(2.0, 2.0, np.array([1.0, 0.0]))
    assert v[0] * math.exp(ls[0]) == pytest.approx(math.e, rel=1e-15)
    assert v[1] == 1.0 and np.all(n > 0)


def test_series_rescales_instead_of_overflowing():
    v, _, ls, n = python_impl.hyp1f1_series(1.0, 1.0, np.array([1000.0]))
    assert math.log(v[0]) + ls[0] == pytest.approx(1000.0, rel=1e-13)
    assert n[0] > 0


def test_series_cap_reported():
    _, _, _, n = python_impl.hyp1f1_series(1.0, 1.0, np.array([500.0]), max_terms=10)
    assert n[0] == -1


def test_vandermonde():
    phi = np.array([[0.0, 1.0, 3.0], [2.0, 2.0, 5.0]])
    assert np.allclose(python_impl.vandermonde_sq(phi), [1 * 9 * 4, 0.0])


@compiled
def test_compiled_matches_python():
    rng = np.random.default_rng(0)
    xs = rng.uniform(0.01, 120.0, 300)
    assert np.allclose(_kernels.compiled_impl.lgamma_array(xs), python_impl.lgamma_array(xs),
                       rtol=1e-14, atol=1e-15)
    for a, c in ((1.3, 0.4), (-2.5, 0.5), (0.5, 1.5), (4.0, -3.5)):
        x = rng.uniform(-30.0, 30.0, 50)
        lc, sc = _hyp_value(_kernels.compiled_impl, a, c, x)
        lp, sp = _hyp_value(python_impl, a, c, x)
        assert np.array_equal(sc, sp)
        assert np.allclose(lc, lp, rtol=1e-13, atol=1e-13)
    phi = rng.normal(size=(100, 4))
    assert np.allclose(_kernels.compiled_impl.vandermonde_sq(phi),
                       python_impl.vandermonde_sq(phi), rtol=1e-13)


def test_pure_switch_selects_python_backend():
    env = dict(os.environ, TURANLAB_PURE="1")
    out = subprocess.run([sys.executable, "-c",
                          "import turanlab._kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_pure_backend_gives_same_psi():
    code = ("from turanlab.confluent import tricomi_psi;"
            "print(repr(tricomi_psi(1.3, 0.4, 1.7, 'definition-pair').value))")
    vals = []
    for pure in ("0", "1"):
        env = dict(os.environ, TURANLAB_PURE=pure)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                             text=True, check=True)
        vals.append(float(out.stdout))
    assert vals[0] == pytest.approx(vals[1], rel=1e-13)
    assert vals[0] == pytest.approx(0.22598514529742664, rel=1e-10)
