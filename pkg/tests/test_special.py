import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from zetawork.errors import ConvergenceError, DomainError, PoleError
from zetawork.quadrature import QuadratureSpec, oscillatory_quadrature
from zetawork.special import additive_character, bessel_k_imag, complex_gamma, loggamma

# mpmath quadrature of int_0^inf u^{2s-1} e^{-u^2} 2 du at s = 1/2 + i
ABS_GAMMA_HALF_PLUS_I = 0.520590963616751946
# mpmath quadrature of int_0^inf e^{-cosh t} dt
K0_AT_1 = 0.42102443824070833334
# mpmath quadrature of int_0^inf e^{-50 cosh t} cos t dt
K_I_AT_50 = 3.3760804636909652459e-23


class TestGamma:
    def test_one(self):
        assert complex_gamma(1) == pytest.approx(1.0, abs=1e-15)

    def test_half(self):
        assert complex_gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    def test_half_plus_i_against_integral(self):
        v = abs(complex_gamma(0.5 + 1j))
        assert v == pytest.approx(ABS_GAMMA_HALF_PLUS_I, rel=1e-12)
        assert v * v == pytest.approx(math.pi / math.cosh(math.pi), rel=1e-12)

    @pytest.mark.parametrize("s", [0, -1, -7])
    def test_poles(self, s):
        with pytest.raises(PoleError):
            complex_gamma(s)

    @given(st.floats(0.1, 5.0), st.floats(-20.0, 20.0))
    def test_recurrence(self, a, b):
        s = complex(a, b)
        assert abs(complex_gamma(s + 1) - s * complex_gamma(s)) <= 1e-10 * abs(s * complex_gamma(s))

    @pytest.mark.parametrize("s", [0.3 + 0.2j, 3.5 - 12j, 20 + 30j, -2.5 + 1j, 45 + 10j])
    def test_against_mpmath(self, s):
        ref = complex(mpmath.gamma(s))
        assert abs(complex_gamma(s) - ref) <= 1e-12 * abs(ref)

    @pytest.mark.parametrize("z", [0.7 + 3j, 10 + 100j, 2.0, 0.5 + 500j])
    def test_loggamma(self, z):
        assert abs(loggamma(z) - complex(mpmath.loggamma(z))) < 1e-11 * max(1, abs(z))


class TestBessel:
    def test_even_in_order(self):
        assert bessel_k_imag(3, 1.0) == bessel_k_imag(-3, 1.0)

    def test_k0_cosh_integral(self):
        assert bessel_k_imag(0, 1.0) == pytest.approx(K0_AT_1, abs=1e-12)

    def test_large_x_asymptotic(self):
        v = bessel_k_imag(1, 50.0)
        assert v == pytest.approx(K_I_AT_50, rel=1e-9)
        assert v / (math.sqrt(math.pi / 100) * math.exp(-50)) == pytest.approx(1.0, abs=0.02)

    @pytest.mark.parametrize("r", [0.3, 1.0, 5.0, 9.5336952613536, 13.78, 30.0])
    @pytest.mark.parametrize("x", [0.05, 0.5, 2.0, 7.0, 20.0, 50.0])
    def test_against_mpmath(self, r, x):
        ref = float(mpmath.besselk(1j * r, x).real)
        assert abs(bessel_k_imag(r, x) - ref) <= 1e-9

    @pytest.mark.parametrize("r", [1, 5])
    @pytest.mark.parametrize("x", [1, 10])
    def test_positive_past_turning_point(self, r, x):
        if x > r:
            assert bessel_k_imag(r, x) > 0

    def test_array_matches_scalar(self):
        xs = np.array([0.1, 1.0, 3.0, 12.0])
        arr = bessel_k_imag(9.5, xs)
        assert np.array_equal(arr, [bessel_k_imag(9.5, x) for x in xs])

    @pytest.mark.parametrize("x", [0.0, -1.0])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            bessel_k_imag(1.0, x)


class TestCharacter:
    def test_values(self):
        assert additive_character(0) == 1
        assert additive_character(0.5) == -1
        assert abs(additive_character(0.123)) == pytest.approx(1.0, abs=1e-15)

    @given(st.floats(-1e6, 1e6))
    def test_periodic(self, xi):
        if xi + 1 - 1 == xi:
            assert additive_character(xi + 1) == pytest.approx(additive_character(xi), abs=1e-9)

    @given(st.floats(-50, 50))
    def test_matches_exp(self, xi):
        assert abs(additive_character(xi) - cmath.exp(2j * math.pi * xi)) < 1e-12

    def test_vectorised(self):
        xi = np.linspace(-3, 3, 101)
        assert np.allclose(additive_character(xi), [additive_character(float(v)) for v in xi], atol=1e-15)


class TestQuadrature:
    def test_constant(self):
        assert oscillatory_quadrature(lambda x: np.ones_like(x), 0, 1).value == pytest.approx(1.0, abs=1e-15)

    def test_orthogonality(self):
        v = oscillatory_quadrature(lambda x: additive_character(3 * x), 0, 1).value
        assert abs(v) < 1e-12

    def test_gaussian_infinite(self):
        spec = QuadratureSpec(abs_tol=1e-12)
        r = oscillatory_quadrature(lambda x: np.exp(-math.pi * x * x), -math.inf, math.inf, spec,
                                   envelope=lambda X: math.exp(-math.pi * X * X) / (2 * math.pi * abs(X)))
        assert r.value == pytest.approx(1.0, abs=1e-10)
        assert r.error <= 1e-12

    def test_negative_envelope_rejected(self):
        with pytest.raises(DomainError):
            oscillatory_quadrature(lambda x: np.exp(-x * x), -math.inf, 0.0, envelope=lambda X: X)

    def test_reversed_interval(self):
        f = lambda x: x * x  # noqa: E731
        assert oscillatory_quadrature(f, 1, 0).value == pytest.approx(-1 / 3, abs=1e-14)

    def test_depth_limit_raises(self):
        with pytest.raises(ConvergenceError):
            oscillatory_quadrature(lambda x: np.sin(1 / np.maximum(x, 1e-300)), 0, 1,
                                   QuadratureSpec(abs_tol=1e-14, max_depth=3))

    def test_fixed_scheme(self):
        spec = QuadratureSpec(scheme="fixed", panels=8)
        assert oscillatory_quadrature(np.cos, 0, math.pi / 2, spec).value == pytest.approx(1.0, abs=1e-14)

    def test_tolerance_halving_never_increases_error(self):
        f = lambda x: np.cos(40 * x) * np.exp(-x)  # noqa: E731
        errs = [oscillatory_quadrature(f, 0, 5, QuadratureSpec(abs_tol=tol)).error for tol in (1e-4, 5e-5, 2.5e-5, 1e-8)]
        assert all(b <= a for a, b in zip(errs, errs[1:]))

    @pytest.mark.parametrize("kw", [dict(abs_tol=0), dict(max_depth=0), dict(scheme="magic")])
    def test_spec_validation(self, kw):
        with pytest.raises(DomainError):
            QuadratureSpec(**kw)
