"""The Kirillov seed omega(u) = u^{alpha+1/2} e^{-2 pi u} (u > 0) and what it generates.

Its preimage in the form's representation has the expansion

    F(x + iy) = y^{alpha+1/2} sum_{n>0} rho(n) n^alpha e(n(x+iy)),

and the m-th x-Fourier coefficient of |F|^2 at height y is the shifted sum

    y^{2 alpha+1} sum_n rho(n) rho(n+m) (n(n+m))^alpha e^{-2 pi (2n+m) y}

(coefficients are real, so conjugation drops out).  Integrating that
coefficient against a weight h(y) produces a shifted convolution
sum_n rho(n) rho(n+m) W_h(n/m) with an explicitly computable window W_h.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..divisor import WindowSpec
from ..errors import DomainError, TruncationError
from ..quadrature import QuadratureSpec, oscillatory_quadrature
from ..special import additive_character, loggamma
from .forms import MaassForm, coefficient_envelope

DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class SeedSpec:
    alpha: float = 2.0

    def __post_init__(self):
        if not (self.alpha >= 1 and math.isfinite(self.alpha)):
            raise DomainError("alpha must be >= 1")


def seed_tail(seed: SeedSpec, y: float, N: int) -> float:
    """Bound for y^{alpha+1/2} sum_{n>N} |rho(n)| n^alpha e^{-2 pi n y}."""
    a = seed.alpha
    n = np.arange(N + 1, N + 1 + 20000, dtype=np.float64)
    terms = coefficient_envelope(n) * n**a * np.exp(-2 * math.pi * n * y)
    return y ** (a + 0.5) * float(terms.sum())


def _truncation(form: MaassForm, seed: SeedSpec, y: float, N_trunc: Optional[int], tol: float, extra: int = 0):
    if not (y > 0 and math.isfinite(y)):
        raise DomainError("y must be positive")
    if N_trunc is None:
        for N in range(1, form.N_coeff - extra + 1):
            if seed_tail(seed, y, N) <= tol:
                return N, seed_tail(seed, y, N)
        raise TruncationError(f"coefficients exhausted before the tail fell below {tol:g} at y = {y:g}",
                              tail=seed_tail(seed, y, form.N_coeff - extra))
    N = form.check_trunc(N_trunc, extra)
    tail = seed_tail(seed, y, N)
    if tail > tol:
        raise TruncationError(f"seed expansion tail {tail:.3e} at N_trunc = {N} exceeds {tol:g}", tail=tail)
    return N, tail


def _expansion_coeffs(form: MaassForm, seed: SeedSpec, y: float, N: int) -> np.ndarray:
    n = np.arange(1, N + 1, dtype=np.float64)
    return y ** (seed.alpha + 0.5) * form.coefficients[:N] * n**seed.alpha * np.exp(-2 * math.pi * n * y)


@dataclass
class SeedValue:
    value: complex
    tail_bound: float
    n_trunc: int


def kirillov_seed_expansion(form: MaassForm, seed: SeedSpec, x: float, y: float,
                            N_trunc: Optional[int] = None, tol: float = DEFAULT_TOL) -> SeedValue:
    """y^{alpha+1/2} sum_{n <= N} rho(n) n^alpha e(n(x + iy)); x is reduced mod 1 first."""
    N, tail = _truncation(form, seed, y, N_trunc, tol)
    a = _expansion_coeffs(form, seed, y, N)
    xr = x - math.floor(x)
    terms = a * additive_character(np.arange(1, N + 1) * xr)
    return SeedValue(complex(math.fsum(terms.real), math.fsum(terms.imag)), tail, N)


@dataclass
class ShiftedCoefficient:
    closed_form: float
    quadrature: float
    difference: float
    n_trunc: int
    tail_bound: float


def shifted_sum(form: MaassForm, seed: SeedSpec, m: int, y: float, N: int) -> float:
    """y^{2a+1} sum_{n<=N} rho(n) rho(n+m) (n(n+m))^a e^{-2 pi (2n+m) y}."""
    a = seed.alpha
    n = np.arange(1, N + 1, dtype=np.float64)
    rho = form.coefficients
    terms = rho[:N] * rho[m:N + m] * (n * (n + m)) ** a * np.exp(-2 * math.pi * (2 * n + m) * y)
    return y ** (2 * a + 1) * math.fsum(terms)


def _square_coefficient_quadrature(form, seed, m, y, N, spec: Optional[QuadratureSpec]) -> float:
    # |F|^2 with F truncated at N + m is a trig polynomial of degree <= N + m,
    # so the periodic trapezoidal rule with P > 2(N + m) nodes is exact
    a = _expansion_coeffs(form, seed, y, N + m)
    k = np.arange(1, N + m + 1)
    if spec is None or spec.scheme == "fixed":
        P = 2 * (N + m) + 2
        xs = np.arange(P) / P
        F = additive_character(np.outer(xs, k)) @ a
        vals = np.abs(F) ** 2 * additive_character(-m * xs)
        return math.fsum(vals.real) / P

    def f(x):
        F = additive_character(np.outer(x, k)) @ a
        return (np.abs(F) ** 2 * additive_character(-m * x)).real

    return float(oscillatory_quadrature(f, 0.0, 1.0, spec).value)


def shifted_fourier_coefficient(form: MaassForm, seed: SeedSpec, m: int, y: float,
                                N_trunc: Optional[int] = None, tol: float = DEFAULT_TOL,
                                spec: Optional[QuadratureSpec] = None) -> ShiftedCoefficient:
    """m-th x-Fourier coefficient of |F(x+iy)|^2 by two routes.

    closed_form: the shifted sum over n <= N.  quadrature: int_0^1 |F|^2 e(-mx) dx
    with F truncated at N + m (periodic trapezoid by default, adaptive
    Gauss-Kronrod if ``spec`` with scheme 'adaptive' is given).
    """
    if int(m) != m or m < 0:
        raise DomainError("m must be a non-negative integer")
    m = int(m)
    N, tail = _truncation(form, seed, y, N_trunc, tol, extra=m)
    closed = shifted_sum(form, seed, m, y, N)
    quad = _square_coefficient_quadrature(form, seed, m, y, N, spec)
    return ShiftedCoefficient(closed, quad, abs(closed - quad), N, tail)


def shifted_convolution(form: MaassForm, m: int, W: Optional[WindowSpec] = None, N_trunc: Optional[int] = None) -> float:
    """sum_{n <= N_trunc} rho(n) rho(n+m) W(n/m) (real coefficients: no conjugation)."""
    if int(m) != m or m < 1:
        raise DomainError("m must be an integer >= 1")
    m = int(m)
    N = form.N_coeff - m if N_trunc is None else form.check_trunc(N_trunc, m)
    if N < 1:
        raise DomainError("no coefficients left after the shift")
    n = np.arange(1, N + 1, dtype=np.float64)
    w = np.ones(N) if W is None else W(n / m)
    rho = form.coefficients
    return math.fsum(rho[:N] * rho[m:N + m] * w)


# ---------------------------------------------------------------------------
# Windows induced by integrating the shifted coefficient over y

@dataclass(frozen=True)
class HeightWeight:
    """h(y) on y > 0: kind 'mellin' (y^{beta-1}) or 'gaussian' (exp(-((y-center)/width)^2))."""

    kind: str = "gaussian"
    beta: float = 1.0
    center: float = 0.15
    width: float = 0.03

    def __post_init__(self):
        if self.kind not in ("mellin", "gaussian"):
            raise DomainError(f"unknown height weight {self.kind!r}")
        if self.kind == "mellin" and not self.beta > 0:
            raise DomainError("beta must be positive")
        if self.kind == "gaussian" and not (self.width > 0 and self.center > 0):
            raise DomainError("gaussian height weight needs center > 0 and width > 0")

    def __call__(self, y):
        y = np.asarray(y, dtype=np.float64)
        if self.kind == "mellin":
            return y ** (self.beta - 1)
        z = (y - self.center) / self.width
        return np.exp(-z * z)

    def support(self, tol: float) -> tuple[float, float]:
        if self.kind == "mellin":
            return (0.0, math.inf)
        c = math.sqrt(-math.log(tol))
        return (max(self.center - c * self.width, 0.0), self.center + c * self.width)


def induced_weight(seed: SeedSpec, m: int, h: HeightWeight, n, tol: float = 1e-14) -> np.ndarray:
    """W_h at u = n/m: (n(n+m))^a int_0^inf e^{-2 pi (2n+m) y} y^{2a+1} h(y) dy."""
    a = seed.alpha
    n = np.atleast_1d(np.asarray(n, dtype=np.float64))
    lam = 2 * math.pi * (2 * n + m)
    pre = (n * (n + m)) ** a
    if h.kind == "mellin":
        s = 2 * a + 1 + h.beta
        return pre * np.exp(loggamma(s).real - s * np.log(lam))
    lo, hi = h.support(tol)
    out = np.empty(n.shape)
    spec = QuadratureSpec(abs_tol=tol, rel_tol=1e-13)
    for i, L in enumerate(lam):
        out[i] = oscillatory_quadrature(lambda y: np.exp(-L * y) * y ** (2 * a + 1) * h(y), lo, hi, spec).value
    return pre * out


def induced_window(seed: SeedSpec, m: int, h: HeightWeight) -> WindowSpec:
    """The window u -> W_h(u m) as a WindowSpec (argument u = n/m)."""
    if int(m) != m or m < 1:
        raise DomainError("m must be an integer >= 1")
    return WindowSpec.custom(lambda u: induced_weight(seed, int(m), h, np.rint(np.asarray(u) * m)))


def integrated_shifted_coefficient(form: MaassForm, seed: SeedSpec, m: int, h: HeightWeight,
                                   N_trunc: int, spec: Optional[QuadratureSpec] = None) -> float:
    """int h(y) C_m(y) dy, with C_m(y) from the x-quadrature route, by adaptive quadrature in y."""
    if h.kind != "gaussian":
        raise DomainError("the y-integrated route needs a compactly concentrated (gaussian) h")
    spec = spec or QuadratureSpec(abs_tol=1e-14, rel_tol=1e-12)
    lo, hi = h.support(1e-16)
    N = form.check_trunc(N_trunc, m)
    if seed_tail(seed, lo, N) > 1e-10:
        raise TruncationError(f"N_trunc = {N} too small for y down to {lo:g}", tail=seed_tail(seed, lo, N))

    def f(ys):
        return np.array([_square_coefficient_quadrature(form, seed, m, y, N, None) for y in ys]) * h(ys)

    return float(oscillatory_quadrature(f, lo, hi, spec).value)


def fourier_orthogonality(n: int, m: int, spec: Optional[QuadratureSpec] = None) -> complex:
    """int_0^1 e(n x) conj(e((n + m) x)) dx by quadrature; equals 1 if m = 0 else 0."""
    if int(n) != n or int(m) != m:
        raise DomainError("n and m must be integers")
    spec = spec or QuadratureSpec(abs_tol=1e-13)

    def f(x):
        return additive_character(n * x) * np.conj(additive_character((n + m) * x))

    return complex(oscillatory_quadrature(f, 0.0, 1.0, spec).value)
