"""Fourier-expansion evaluation of Maass forms and the finite-difference Casimir.

lambda(g) = P * sum_{n != 0} rho(n)/sqrt|n| * A^{sgn n} phi_ell(a[|n|] g, nu),
P = |pi^{-2 nu} Gamma(|ell|+nu+1/2) / Gamma(|ell|-nu+1/2)|^{1/2}.

Since a[n] n[x] a[y] k[theta] = n[nx] a[ny] k[theta], each term equals
e(sgn(n) n x) e^{2 i ell theta} A^{sgn n} phi_ell(a[|n| y]).  For ell = 0 the
Whittaker function is c_nu sqrt(y) K_nu(2 pi y) for both signs, which gives
the closed-form ("bessel") backend; the "jacquet" backend evaluates every
Whittaker value by quadrature and supports any ell.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..errors import DomainError, StepTooLargeError, TruncationError
from ..quadrature import QuadratureSpec
from ..special import additive_character, bessel_k_imag, complex_gamma
from .forms import MaassForm, coefficient_envelope
from .iwasawa import GroupPoint
from .whittaker import jacquet_transform, whittaker_constant

DEFAULT_TOL = 1e-10


def expansion_prefactor(nu, ell: int) -> float:
    """|pi^{-2 nu} Gamma(|ell|+nu+1/2)/Gamma(|ell|-nu+1/2)|^{1/2}; 1 for imaginary nu."""
    nu = complex(nu)
    L = abs(int(ell))
    ratio = cmath.exp(-2 * nu * math.log(math.pi)) * complex_gamma(L + nu + 0.5) / complex_gamma(L - nu + 0.5)
    p = math.sqrt(abs(ratio))
    if nu.real == 0.0 and abs(p - 1.0) > 1e-10:
        raise AssertionError(f"Gamma-ratio prefactor has modulus {p!r}, expected 1")
    return p


def bessel_tail(form: MaassForm, y: float, N: int) -> float:
    """Bound for the ell = 0 terms with |n| > N.

    Uses |K_{ir}(x)| <= K_0(x) <= sqrt(pi/(2x)) e^{-x} and the Hecke
    coefficient envelope; both signs of n are counted.
    """
    c = abs(whittaker_constant(form.nu))
    n = np.arange(N + 1, N + 2000, dtype=np.float64)
    x = 2 * math.pi * n * y
    terms = coefficient_envelope(n) * np.sqrt(math.pi / (2 * x)) * np.exp(-x)
    # geometric remainder beyond the window is far below the first term
    return 2.0 * c * math.sqrt(y) * float(terms.sum())


def auto_truncation(form: MaassForm, y: float, tol: float) -> int:
    for N in range(1, form.N_coeff + 1):
        if bessel_tail(form, y, N) <= tol:
            return N
    raise TruncationError(f"{form.N_coeff} coefficients do not reach tolerance {tol:g} at y = {y:g}",
                          tail=bessel_tail(form, y, form.N_coeff))


@dataclass
class MaassValue:
    value: complex
    tail_bound: float
    n_trunc: int
    backend: str


def maass_eval(form: MaassForm, g: GroupPoint, ell: int = 0, N_trunc: Optional[int] = None,
               backend: str = "bessel", tol: float = DEFAULT_TOL,
               spec: Optional[QuadratureSpec] = None) -> MaassValue:
    """Truncated Fourier expansion of the form at g.

    Without ``N_trunc`` the smallest truncation whose tail bound is below
    ``tol`` is used.  With an explicit ``N_trunc`` a tail bound above ``tol``
    raises TruncationError.  The tail bound is for the ell = 0 terms.
    """
    if backend not in ("bessel", "jacquet"):
        raise DomainError(f"unknown backend {backend!r}")
    if int(ell) != ell:
        raise DomainError("ell must be an integer")
    if backend == "bessel" and ell != 0:
        raise DomainError("the closed-form backend covers ell = 0 only; use backend='jacquet'")
    if N_trunc is None:
        N = auto_truncation(form, g.y, tol)
    else:
        N = form.check_trunc(N_trunc)
    tail = bessel_tail(form, g.y, N)
    if N_trunc is not None and tail > tol:
        raise TruncationError(f"tail bound {tail:.3e} at N_trunc = {N} exceeds {tol:g}", tail=tail)
    pref = expansion_prefactor(form.nu, ell)
    n = np.arange(1, N + 1)
    rho = form.coefficients[:N]
    if backend == "bessel":
        c = whittaker_constant(form.nu)
        K = bessel_k_imag(form.r, 2 * math.pi * n * g.y)
        w = c * np.sqrt(n * g.y) * K / np.sqrt(n)
        ep = additive_character(n * g.x)
        # rho(-n) e(-nx) = parity * rho(n) * conj(e(nx))
        terms = rho * w * (ep + form.parity * ep.conj())
        value = complex(math.fsum(terms.real), math.fsum(terms.imag))
    else:
        spec = spec or QuadratureSpec(abs_tol=tol / (4 * N))
        acc = []
        for k in range(1, N + 1):
            a = GroupPoint(0.0, k * g.y)
            wp = jacquet_transform(form.nu, ell, 1, a, spec)
            wm = jacquet_transform(form.nu, ell, -1, a, spec)
            e = additive_character(k * g.x)
            acc.append(rho[k - 1] / math.sqrt(k) * (wp * e + form.parity * wm * e.conjugate()))
        acc = np.array(acc)
        value = complex(math.fsum(acc.real), math.fsum(acc.imag)) * cmath.exp(2j * ell * g.theta)
    return MaassValue(pref * value, pref * tail, N, backend)


# ---------------------------------------------------------------------------
# Casimir operator

def _second_differences(fn: Callable[[GroupPoint], complex], g: GroupPoint, h: float):
    x, y, th = g.x, g.y, g.theta

    def F(dx=0.0, dy=0.0, dt=0.0):
        return complex(fn(GroupPoint(x + dx, y + dy, th + dt)))

    f0 = F()
    fxx = (F(dx=h) - 2 * f0 + F(dx=-h)) / (h * h)
    fyy = (F(dy=h) - 2 * f0 + F(dy=-h)) / (h * h)
    fxt = (F(dx=h, dt=h) - F(dx=h, dt=-h) - F(dx=-h, dt=h) + F(dx=-h, dt=-h)) / (4 * h * h)
    return -y * y * (fxx + fyy) + y * fxt, f0


@dataclass
class CasimirResult:
    value: complex
    fn_value: complex
    richardson_gap: float
    h: float

    @property
    def eigenvalue(self) -> complex:
        if self.fn_value == 0:
            raise DomainError("function vanishes at the point; eigenvalue undefined")
        return self.value / self.fn_value


def casimir_apply_fd(fn: Callable[[GroupPoint], complex], g: GroupPoint, h: Optional[float] = None,
                     tol: float = 1e-6) -> CasimirResult:
    """Omega fn at g, Omega = -y^2 (d_x^2 + d_y^2) + y d_x d_theta.

    Central second differences D(h), D(h/2) are combined by Richardson
    extrapolation R = (4 D(h/2) - D(h)) / 3.  The same extrapolation from
    (h/2, h/4) serves as a check: if the two extrapolants differ by more than
    ``tol`` (relative to max(1, |fn(g)|, |R|)), StepTooLargeError is raised.
    """
    h = g.y / 200.0 if h is None else float(h)
    if not (0 < h < g.y):
        raise DomainError("step must satisfy 0 < h < y")
    d1, f0 = _second_differences(fn, g, h)
    d2, _ = _second_differences(fn, g, h / 2)
    d3, _ = _second_differences(fn, g, h / 4)
    value = (4 * d2 - d1) / 3
    check = (4 * d3 - d2) / 3
    gap = abs(value - check)
    if gap > tol * max(1.0, abs(f0), abs(value)):
        raise StepTooLargeError(f"Richardson gap {gap:.3e} exceeds tolerance at h = {h:g}")
    return CasimirResult(complex(value), f0, gap, h)
