import math
import warnings
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from zetawork import zeta
from zetawork.errors import DomainError, PoleError, RangeWarning
from zetawork.quadrature import QuadratureSpec

# mpmath.zeta at 25 digits
ZETA_HALF = -1.460354508809586812889455
ZETA_37_5 = complex(-0.03618883450130092, -0.16423113092668892)
ZETA_1000 = complex(0.35633436719439604, 0.9319978312329936)
ABS_ZETA_50 = 0.340735005955025
RATIO_AT_100 = 0.2713991467360744
# mpmath.fsum of n^{5i} over 10 < n <= 20
ZETA_SUM_10_5 = complex(2.800202474409274, 5.397222820430458)


class TestZetaCritical:
    def test_half(self):
        assert zeta.zeta_critical(0.0, "euler_maclaurin").real == pytest.approx(ZETA_HALF, abs=1e-12)

    def test_half_doubled_order(self):
        v, err = zeta.zeta_em(0.5, order=30, n_terms=2 * zeta.default_em_terms(0.0))
        assert abs(v - zeta.zeta_critical(0.0)) < 1e-12
        assert err < 1e-12

    def test_reflection_37_5(self):
        a = zeta.zeta_critical(37.5)
        assert abs(a - zeta.zeta_critical(-37.5).conjugate()) < 1e-12
        assert abs(a - ZETA_37_5) < 1e-12

    def test_methods_agree_at_1000(self):
        em = zeta.zeta_critical(1000.0, "euler_maclaurin")
        rs = zeta.zeta_critical(1000.0, "riemann_siegel")
        assert abs(em - rs) < 1e-8
        assert abs(rs - ZETA_1000) < 1e-9

    @pytest.mark.parametrize("t", [10.0, 14.134725141734693, 57.3, 250.0, 4321.5, 99999.0])
    def test_against_mpmath(self, t):
        ref = complex(mpmath.zeta(mpmath.mpc(0.5, t)))
        for method in ("euler_maclaurin", "riemann_siegel"):
            assert abs(zeta.zeta_critical(t, method) - ref) < 1e-8

    def test_asymptotic_remainder_option(self):
        ref = complex(mpmath.zeta(mpmath.mpc(0.5, 5000)))
        assert abs(zeta.zeta_critical(5000.0, "rs", remainder="asymptotic") - ref) < 1e-8

    def test_rs_needs_t_10(self):
        with pytest.raises(DomainError):
            zeta.zeta_critical(5.0, "riemann_siegel")

    def test_pole(self):
        with pytest.raises(PoleError):
            zeta.zeta_em(1.0)

    def test_range_warning(self):
        with pytest.warns(RangeWarning):
            zeta.zeta_critical(2e6)

    def test_array_matches_scalar(self):
        t = np.array([3.0, 20.0, 300.0, 2000.0])
        arr = zeta.zeta_critical(t)
        assert np.allclose(arr, [zeta.zeta_critical(float(x)) for x in t], atol=1e-13, rtol=0)

    @given(st.floats(0.0, 3000.0))
    def test_reflection_property(self, t):
        assert abs(zeta.zeta_critical(t) - zeta.zeta_critical(-t).conjugate()) < 1e-12

    def test_hardy_z_is_real_modulus(self):
        t = 123.4
        assert abs(zeta.hardy_z(t)) == pytest.approx(abs(zeta.zeta_critical(t)), abs=1e-10)


class TestZetaSum:
    def test_t_zero(self):
        assert zeta.zeta_sum(zeta.ZetaSumSpec(37, 0.0)) == 37

    def test_single_term(self):
        t = 2.5
        assert abs(zeta.zeta_sum(zeta.ZetaSumSpec(1, t)) - 2 ** (1j * t)) < 1e-15

    def test_oracle(self):
        assert abs(zeta.zeta_sum(zeta.ZetaSumSpec(10, 5.0)) - ZETA_SUM_10_5) < 1e-12

    def test_weights(self):
        w = zeta.indicator_weights(12, 15)
        direct = sum(n ** 3j for n in range(12, 16))
        assert abs(zeta.zeta_sum(zeta.ZetaSumSpec(10, 3.0, w)) - direct) < 1e-13

    def test_bad_N(self):
        with pytest.raises(DomainError):
            zeta.ZetaSumSpec(0, 1.0)

    def test_negative_weight_rejected(self):
        with pytest.raises(DomainError):
            zeta.ZetaSumSpec(5, 1.0, {6: -1.0})


class TestWeylSquare:
    def test_t_zero(self):
        r = zeta.weyl_square(7, 0.0, zeta.indicator_weights(1, 10))
        assert r.total == pytest.approx(49 * 10, abs=1e-9)

    def test_M_one(self):
        r = zeta.weyl_square(1, 3.3, {2: 0.5, 4: 2.0})
        assert r.total == pytest.approx(2.5, abs=1e-13)

    def test_split_default_indicator(self):
        r = zeta.weyl_square(20, 7.3)
        assert abs(r.diagonal + r.off_diagonal - r.total) < 1e-10

    def test_singleton_matches_inner_sum(self):
        n0, M, t = 9, 13, 4.1
        inner = sum((m + n0) ** (1j * t) for m in range(1, M + 1))
        r = zeta.weyl_square(M, t, {n0: 1.0})
        assert r.total == pytest.approx(abs(inner) ** 2, abs=1e-12)

    @given(st.integers(1, 50), st.floats(0, 100), st.integers(1, 30), st.integers(0, 20))
    def test_split_property(self, M, t, lo, span):
        r = zeta.weyl_square(M, t, zeta.indicator_weights(lo, lo + span))
        assert abs(r.diagonal + r.off_diagonal - r.total) < 1e-10 * max(1.0, r.total)


class TestAtkinson:
    def test_indicator(self):
        r = zeta.atkinson_reindex(np.ones((3, 3), dtype=np.int64))
        assert r.raw == r.offset_total == r.axis_total == 9 and r.consistent

    def test_m_plus_n(self):
        r = zeta.atkinson_reindex({(m, n): m + n for m in (1, 2) for n in (1, 2)})
        assert r.raw == r.offset_total == r.axis_total == 12

    @given(st.lists(st.integers(-50, 50), min_size=100, max_size=100))
    def test_random_integer_exact(self, vals):
        f = np.array(vals, dtype=np.int64).reshape(10, 10)
        r = zeta.atkinson_reindex(f)
        assert r.exact and r.consistent
        assert r.raw == int(f.sum()) == r.offset_total == r.axis_total
        assert r.diagonal + r.above + r.below == r.raw

    def test_fraction_values(self):
        f = {(1, 1): Fraction(1, 3), (1, 2): Fraction(1, 7), (3, 1): Fraction(-2, 5)}
        r = zeta.atkinson_reindex(f)
        assert r.raw == r.offset_total == r.axis_total == sum(f.values())


class TestMoments:
    def test_point_mass(self):
        g = zeta.WeightSpec(50.0, 0.01)
        for k in (1, 2):
            v = zeta.moment_integral(k, g).value
            ref = ABS_ZETA_50 ** (2 * k) * math.sqrt(math.pi) * 0.01
            assert v / ref == pytest.approx(1.0, abs=0.01)

    def test_linearity(self):
        g = zeta.WeightSpec(30.0, 5.0)
        a = zeta.moment_integral(1, g).value
        b = zeta.moment_integral(1, g.scaled(2.0)).value
        assert b == 2 * a

    def test_dominating_weights(self):
        g1 = zeta.WeightSpec(40.0, 4.0, amplitude=0.5)
        g2 = zeta.WeightSpec(40.0, 4.0)
        assert zeta.moment_integral(2, g1).value <= zeta.moment_integral(2, g2).value + 1e-10

    def test_tolerance_halving(self):
        g = zeta.WeightSpec(50.0, 10.0)
        a = zeta.moment_integral(2, g, QuadratureSpec(abs_tol=1e-8)).value
        b = zeta.moment_integral(2, g, QuadratureSpec(abs_tol=5e-9)).value
        assert abs(a - b) <= 1e-4 * abs(b)

    def test_second_moment_against_mpmath(self):
        g = zeta.WeightSpec(20.0, 2.0)
        ref = float(mpmath.quad(lambda t: abs(mpmath.zeta(mpmath.mpc(0.5, t))) ** 2 * mpmath.exp(-((t - 20) / 2) ** 2),
                                mpmath.linspace(8, 32, 13)))
        assert zeta.moment_integral(1, g).value == pytest.approx(ref, rel=1e-8)

    def test_experimental_k3(self):
        with pytest.warns(zeta.ExperimentalWarning):
            zeta.moment_integral(3, zeta.WeightSpec(20.0, 1.0))

    def test_fourth_moment_basics(self):
        assert zeta.plain_fourth_moment(0.0).value == 0.0
        assert zeta.plain_fourth_moment(10.0).value <= zeta.plain_fourth_moment(20.0).value

    def test_fourth_moment_depths(self):
        a = zeta.plain_fourth_moment(50.0, QuadratureSpec(abs_tol=1e-6)).value
        b = zeta.plain_fourth_moment(50.0, QuadratureSpec(abs_tol=1e-9)).value
        assert abs(a - b) <= 1e-4 * b

    def test_weight_validation(self):
        with pytest.raises(DomainError):
            zeta.WeightSpec(0.0, 0.0)


class TestScan:
    def test_single_sample(self):
        r = zeta.subconvexity_ratio_scan(100.0, 200.0, 1)
        assert r.max_ratio == pytest.approx(RATIO_AT_100, abs=1e-10)

    def test_positive(self):
        r = zeta.subconvexity_ratio_scan(2.0, 500.0, 400)
        assert np.all(r.ratio > 0)
        assert r.ratio[np.argmax(r.ratio)] == r.max_ratio

    def test_domain(self):
        with pytest.raises(DomainError):
            zeta.subconvexity_ratio_scan(1.0, 10.0, 10)
