import math

import numpy as np
import pytest

from zetawork import kernels
from zetawork.special import loggamma

B = kernels.backends()
needs_compiled = pytest.mark.skipif("compiled" not in B, reason="compiled extension not built")


def both(name, *args):
    return getattr(B["python"], name)(*args), getattr(B["compiled"], name)(*args)


@needs_compiled
def test_dirichlet_partial():
    a, b = both("dirichlet_partial", np.linspace(0, 300, 37), 0.5, 700)
    assert np.allclose(a, b, atol=1e-12, rtol=0)


@needs_compiled
def test_rs_main():
    t = np.linspace(100, 5000, 23)
    m = np.floor(np.sqrt(t / (2 * math.pi))).astype(np.int64)
    a, b = both("rs_main", t, np.sin(t), m)
    assert np.allclose(a, b, atol=1e-12, rtol=0)


@needs_compiled
def test_unimodular_sum():
    a, b = both("unimodular_sum", 11, 50000, 77.7)
    assert abs(a - b) < 1e-10


@needs_compiled
def test_weyl_parts():
    a, b = both("weyl_parts", 30, 7.3, np.arange(1, 41), np.linspace(0.5, 1.5, 40))
    assert np.allclose(a, b, atol=1e-10, rtol=0)


@needs_compiled
def test_divisor_counts_exact():
    a, b = both("divisor_counts", 200000)
    assert np.array_equal(a, b)


@needs_compiled
def test_det_partition_exact():
    rng = np.random.default_rng(3)
    table = rng.integers(-10**9, 10**9, size=(9,) * 4)
    assert both("det_partition", table, 4)[0] == both("det_partition", table, 4)[1]


@needs_compiled
@pytest.mark.parametrize("r", [0.2, 1.0, 9.53, 40.0])
def test_bessel_kir(r):
    x = np.linspace(0.05, 60, 301)
    amp = math.sqrt(math.pi / (r * math.sinh(math.pi * r))) if r >= 0.5 else 0.0
    arg = loggamma(complex(1.0, r)).imag if r >= 0.5 else 0.0
    a, b = both("bessel_kir", r, x, amp, arg)
    assert np.allclose(a, b, atol=1e-14 * max(1.0, np.abs(a).max()), rtol=1e-12)


def test_selected_backend_name():
    assert kernels.BACKEND in ("compiled", "python")


def test_env_forces_python_backend():
    import os
    import subprocess
    import sys
    env = dict(os.environ, ZETAWORK_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import zetawork.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True).stdout.strip()
    assert out == "python"
