import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zetawork.automorphic import expansion, forms, lfunction, whittaker
from zetawork.automorphic.iwasawa import GroupPoint, iwasawa
from zetawork.errors import DataValidationError, DomainError, ParseError, StepTooLargeError, TruncationError
from zetawork.quadrature import QuadratureSpec
from zetawork.special import bessel_k_imag, complex_gamma
from zetawork.zeta import WeightSpec

R1 = 9.5336952613536
# mpmath: 2 pi^{1/2+i} K_i(2 pi) / Gamma(1/2+i)
JACQUET_Y1_NU_I = complex(-0.0029241800946773703, 0.0050029110383944825)


@pytest.fixture(scope="module")
def odd():
    return forms.builtin_form("r9.53")


@pytest.fixture(scope="module")
def even():
    return forms.builtin_form("r13.78")


def form_text(form, n, r=None, overrides=None):
    lines = ["# test data", f"r={r if r is not None else repr(form.r)}", f"parity={'+1' if form.parity == 1 else '-1'}"]
    for k in range(1, n + 1):
        v = (overrides or {}).get(k, form.rho(k))
        lines.append(f"{k},{v!r}")
    return "\n".join(lines) + "\n"


class TestForms:
    def test_builtin(self, odd, even):
        assert odd.r == pytest.approx(R1, abs=1e-12) and odd.parity == -1
        assert even.parity == 1 and even.N_coeff >= 200
        assert odd.rho(1) == 1.0
        assert odd.eigenvalue == pytest.approx(0.25 + R1 * R1)

    def test_ingest_file(self, odd, tmp_path):
        p = tmp_path / "form.csv"
        p.write_text(form_text(odd, 40, r="9.5336952613536"))
        f = forms.ingest_maass_csv(p)
        assert f.r == 9.5336952613536 and f.N_coeff == 40
        assert abs(f.rho(2) * f.rho(3) - f.rho(6)) < 1e-6

    def test_normalisation(self, odd):
        scaled = form_text(odd, 30).replace("\n1,1.0\n", "\n1,2.5\n")
        lines = scaled.splitlines()
        lines = lines[:4] + [f"{k},{2.5 * odd.rho(k)!r}" for k in range(2, 31)]
        f = forms.ingest_maass_text("\n".join(lines))
        assert f.rho(1) == 1.0 and f.rho(7) == pytest.approx(odd.rho(7), rel=1e-15)

    def test_empty(self, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("")
        with pytest.raises(ParseError):
            forms.ingest_maass_csv(p)

    def test_corrupted_rho6(self, odd):
        text = form_text(odd, 30, overrides={6: odd.rho(6) + 0.01})
        with pytest.raises(DataValidationError) as e:
            forms.ingest_maass_text(text)
        assert any("rho(6)" in f for f in e.value.failures)

    def test_parse_error_line(self):
        with pytest.raises(ParseError) as e:
            forms.ingest_maass_text("r=1.5\n1,1.0\n2,abc\n")
        assert e.value.line == 3

    def test_gap_in_index(self):
        with pytest.raises(ParseError):
            forms.ingest_maass_text("r=1.5\n1,1.0\n3,0.5\n")

    def test_comma_decimal_rejected(self):
        with pytest.raises(ParseError):
            forms.ingest_maass_text("r=9,53\n1,1.0\n")

    def test_too_few(self):
        with pytest.raises(DataValidationError):
            forms.ingest_maass_text("r=1.5\n" + "".join(f"{k},1.0\n" for k in range(1, 5)))

    def test_parity_mirror(self, odd, even):
        assert odd.rho(-5) == -odd.rho(5) and even.rho(-5) == even.rho(5)

    def test_immutable(self, odd):
        with pytest.raises(ValueError):
            odd.coefficients[0] = 2.0

    def test_hecke_builtin(self, odd, even):
        assert forms.hecke_failures(odd.coefficients, 1e-9) == []
        assert forms.hecke_failures(even.coefficients, 1e-9) == []

    def test_load_form_unknown(self):
        with pytest.raises((DomainError, OSError)):
            forms.load_form("no/such/file.csv")


class TestIwasawa:
    @given(st.floats(-3, 3), st.floats(0.1, 5), st.floats(-10, 10))
    def test_roundtrip(self, x, y, th):
        g = GroupPoint(x, y, th)
        h = iwasawa(g.matrix())
        assert h.x == pytest.approx(g.x, abs=1e-9) and h.y == pytest.approx(g.y, rel=1e-9)
        d = abs(h.theta - g.theta)
        assert min(d, math.pi - d) < 1e-9
        assert 0 <= g.theta < math.pi

    def test_bad_y(self):
        with pytest.raises(DomainError):
            GroupPoint(0.0, 0.0)


class TestPhi:
    def test_theta_zero(self):
        assert whittaker.phi_ell(GroupPoint(0.3, 2.0), 0.25, 3) == pytest.approx(2.0**0.75)

    def test_unit_modulus(self):
        assert abs(whittaker.phi_ell(GroupPoint(0.0, 2.0, 0.3), 1j, 1)) == pytest.approx(math.sqrt(2.0))

    def test_direct_formula(self):
        v = whittaker.phi_ell(GroupPoint(0.5, 2.0, 0.1), 0.25, 2)
        assert abs(v - 2.0**0.75 * cmath.exp(0.4j)) < 1e-15


class TestJacquet:
    def test_closed_form_oracle(self):
        v = whittaker.jacquet_transform(1j, 0, 1, GroupPoint(0.0, 1.0))
        assert abs(v - JACQUET_Y1_NU_I) < 1e-6
        assert abs(whittaker.jacquet_closed_form(1j, 1, GroupPoint(0.0, 1.0)) - JACQUET_Y1_NU_I) < 1e-13

    @pytest.mark.parametrize("y", [0.5, 1.0, 5.0])
    @pytest.mark.parametrize("r", [1.0, 4.0, R1])
    def test_grid(self, y, r):
        g = GroupPoint(0.0, y)
        for delta in (1, -1):
            v = whittaker.jacquet_transform(1j * r, 0, delta, g)
            assert abs(v - whittaker.jacquet_closed_form(1j * r, delta, g)) < 1e-6

    @pytest.mark.parametrize("ell", [0, 1])
    def test_equivariance(self, ell):
        g = GroupPoint(0.0, 1.3, 0.2)
        u = 0.3
        base = whittaker.jacquet_transform(1j, ell, 1, g)
        moved = whittaker.jacquet_transform(1j, ell, 1, g.translate(u))
        assert abs(moved - cmath.exp(2j * math.pi * u) * base) < 1e-8

    def test_decay(self):
        a = abs(whittaker.jacquet_transform(1j, 0, 1, GroupPoint(0.0, 1.0)))
        b = abs(whittaker.jacquet_transform(1j, 0, 1, GroupPoint(0.0, 8.0)))
        assert a / b > 100

    def test_real_nu(self):
        # Re nu > 0 path against the closed form continued in nu (K_nu real order)
        import mpmath
        nu, y = 0.3, 0.8
        ref = complex(2 * mpmath.pi ** (0.5 + nu) / mpmath.gamma(0.5 + nu) * mpmath.sqrt(y) * mpmath.besselk(nu, 2 * mpmath.pi * y))
        assert abs(whittaker.jacquet_transform(nu, 0, 1, GroupPoint(0.0, y)) - ref) < 1e-8

    def test_domain(self):
        with pytest.raises(DomainError):
            whittaker.jacquet_transform(-0.7, 0, 1, GroupPoint(0.0, 1.0))
        with pytest.raises(DomainError):
            whittaker.jacquet_transform(1j, 0, 2, GroupPoint(0.0, 1.0))


class TestExpansion:
    def test_prefactor_unit(self):
        for ell in (0, 1, 3):
            assert expansion.expansion_prefactor(1j * R1, ell) == pytest.approx(1.0, abs=1e-12)

    def test_prefactor_real_nu(self):
        nu, ell = 0.2, 1
        ref = abs(math.pi ** (-2 * nu) * complex_gamma(ell + nu + 0.5) / complex_gamma(ell - nu + 0.5)) ** 0.5
        assert expansion.expansion_prefactor(nu, ell) == pytest.approx(ref)

    def test_periodic(self, odd):
        a = expansion.maass_eval(odd, GroupPoint(0.3, 0.9)).value
        b = expansion.maass_eval(odd, GroupPoint(1.3, 0.9)).value
        assert abs(a - b) < 1e-10

    def test_truncation_doubling(self, even):
        g = GroupPoint(0.1, 1.2)
        a = expansion.maass_eval(even, g, N_trunc=6, tol=1.0)
        b = expansion.maass_eval(even, g, N_trunc=12, tol=1.0)
        assert abs(a.value - b.value) < a.tail_bound

    def test_backends_agree(self, odd):
        g = GroupPoint(0.3, 1.5)
        a = expansion.maass_eval(odd, g, backend="bessel").value
        b = expansion.maass_eval(odd, g, backend="jacquet").value
        assert abs(a - b) < 1e-6

    @pytest.mark.parametrize("name", ["r9.53", "r13.78"])
    def test_modular_invariance(self, name):
        f = forms.builtin_form(name)
        z = complex(0.21, 0.93)
        w = -1 / z
        a = expansion.maass_eval(f, GroupPoint(z.real, z.imag)).value
        b = expansion.maass_eval(f, GroupPoint(w.real, w.imag)).value
        assert abs(a - b) < 1e-8

    def test_truncation_error(self, odd):
        with pytest.raises(TruncationError):
            expansion.maass_eval(odd, GroupPoint(0.0, 0.5), N_trunc=3)

    def test_bessel_backend_ell(self, odd):
        with pytest.raises(DomainError):
            expansion.maass_eval(odd, GroupPoint(0.0, 1.0), ell=1)

    def test_delta_form_closed(self):
        f = forms.delta_form(r=2.0)
        g = GroupPoint(0.1, 0.7)
        v = expansion.maass_eval(f, g, N_trunc=1, tol=1.0).value
        ref = whittaker.whittaker_constant(2j) * math.sqrt(0.7) * bessel_k_imag(2.0, 2 * math.pi * 0.7) * 2 * math.cos(2 * math.pi * 0.1)
        assert abs(v - ref) < 1e-13


class TestCasimir:
    def test_constant(self):
        r = expansion.casimir_apply_fd(lambda g: 1.0, GroupPoint(0.1, 1.0))
        assert abs(r.value) < 1e-9

    def test_phi_monomial(self):
        nu = 0.25
        g = GroupPoint(0.0, 1.0)
        r = expansion.casimir_apply_fd(lambda q: whittaker.phi_ell(q, nu, 0), g)
        assert abs(r.eigenvalue - (0.25 - nu * nu)) < 1e-6

    def test_phi_with_theta(self):
        # the mixed term vanishes on functions independent of x
        nu = 0.1j
        g = GroupPoint(0.2, 1.4, 0.3)
        r = expansion.casimir_apply_fd(lambda q: whittaker.phi_ell(q, nu, 2), g)
        assert abs(r.eigenvalue - (0.25 - nu * nu)) < 1e-6

    def test_maass_eigenvalue(self, odd):
        g = GroupPoint(0.2, 1.1)
        N = expansion.auto_truncation(odd, 1.0, 1e-13)
        r = expansion.casimir_apply_fd(lambda q: expansion.maass_eval(odd, q, N_trunc=N, tol=1.0).value, g)
        assert abs(r.eigenvalue - odd.eigenvalue) / odd.eigenvalue < 1e-3

    def test_step_too_large(self, odd):
        with pytest.raises(StepTooLargeError):
            expansion.casimir_apply_fd(lambda q: expansion.maass_eval(odd, q, N_trunc=30, tol=1.0).value,
                                       GroupPoint(0.2, 1.1), h=0.5)

    def test_zero_value(self):
        r = expansion.casimir_apply_fd(lambda q: 0.0, GroupPoint(0.0, 1.0))
        with pytest.raises(DomainError):
            r.eigenvalue


class TestLFunction:
    def test_s3_partial_sums(self, odd):
        full = lfunction.l_function_eval(odd, 3.0).value
        n = np.arange(1, 11)
        partial = np.sum(odd.coefficients[:10] * n**-3.0)
        tail = np.sum(np.abs(odd.coefficients[10:]) * np.arange(11, odd.N_coeff + 1) ** -3.0)
        assert abs(full - partial) <= tail + 1e-15

    def test_large_s(self, odd):
        assert abs(lfunction.l_function_eval(odd, 60.0).value - 1.0) < 1e-15

    def test_direct_needs_re_s_gt_1(self, odd):
        with pytest.raises(DomainError):
            lfunction.l_function_eval(odd, 0.5 + 2j)

    def test_smoothed_cutoffs(self, odd):
        a = lfunction.l_function_eval(odd, 0.5 + 5j, "smoothed", X=60.0).value
        b = lfunction.l_function_eval(odd, 0.5 + 5j, "smoothed", X=90.0).value
        assert abs(a - b) < 0.01 * abs(b)
        assert lfunction.l_function_eval(odd, 0.5 + 5j, "smoothed", X=60.0).heuristic

    def test_smoothing_needs_coefficients(self, odd):
        with pytest.raises(TruncationError):
            lfunction.l_function_eval(odd, 0.5, "smoothed", X=1000.0)

    def test_moment_point_mass(self, odd):
        X = 100.0
        v = lfunction.l_moment(odd, WeightSpec(20.0, 0.01), X).value
        point = abs(lfunction.l_function_eval(odd, 0.5 + 20j, "smoothed", X=X).value) ** 2
        assert v / (point * math.sqrt(math.pi) * 0.01) == pytest.approx(1.0, abs=0.01)

    def test_moment_linear(self, odd):
        g = WeightSpec(20.0, 3.0)
        a = lfunction.l_moment(odd, g, 60.0).value
        b = lfunction.l_moment(odd, g.scaled(2.0), 60.0).value
        assert b == 2 * a
