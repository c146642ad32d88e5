"""Complex gamma, K-Bessel functions of imaginary order and the additive character."""

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import DomainError, PoleError

# Lanczos approximation, g = 7, nine terms (relative error ~1e-15 on Re s >= 1/2).
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (B_1 = -1/2) from the standard recurrence."""
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2 == 1:
        return Fraction(0)
    acc = Fraction(0)
    binom = 1
    for k in range(n):
        acc += binom * bernoulli(k)
        binom = binom * (n + 1 - k) // (k + 1)
    return -acc / (n + 1)


def _is_nonpositive_integer(s: complex) -> bool:
    return s.imag == 0.0 and s.real <= 0.0 and s.real == math.floor(s.real)


def complex_gamma(s) -> complex:
    """Gamma(s) for complex s via Lanczos, with reflection for Re s < 1/2.

    Raises PoleError at s = 0, -1, -2, ...
    """
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"Gamma has a pole at s = {s.real:g}")
    if s.real < 0.5:
        return math.pi / (sinpi(s) * complex_gamma(1.0 - s))
    z = s - 1.0
    acc = _LANCZOS[0]
    for k in range(1, len(_LANCZOS)):
        acc += _LANCZOS[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return cmath.exp(_HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t) * acc


def loggamma(z) -> complex:
    """Principal log Gamma(z) for Re z > 0 (continuous in Im z).

    Stirling's series after shifting |z| above 17; accurate to ~1e-14
    absolute for moderate |z|, ~1e-16 * |z log z| in general.
    """
    z = complex(z)
    if z.real <= 0.0:
        raise DomainError("loggamma is only provided on Re z > 0")
    shift = 0j
    while abs(z) < 17.0:
        shift += cmath.log(z)
        z += 1.0
    zinv = 1.0 / z
    zinv2 = zinv * zinv
    series = 0j
    p = zinv
    for k in range(1, 11):
        series += float(bernoulli(2 * k)) / (2 * k * (2 * k - 1)) * p
        p *= zinv2
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + series - shift


def sinpi(s):
    """sin(pi s) with exact zeros at integers (complex input allowed)."""
    s = complex(s)
    if s.imag == 0.0:
        return complex(_sinpi_real(s.real), 0.0)
    # sin(pi(a+ib)) = sin(pi a) cosh(pi b) + i cos(pi a) sinh(pi b)
    a, b = s.real, s.imag
    return complex(_sinpi_real(a) * math.cosh(math.pi * b), _cospi_real(a) * math.sinh(math.pi * b))


def _sinpi_real(x: float) -> float:
    x = math.fmod(x, 2.0)
    if x < 0:
        x += 2.0
    # x in [0, 2): reduce to an octant so that exact quarter points stay exact
    if x >= 1.0:
        return -_sinpi_real(x - 1.0)
    if x > 0.5:
        x = 1.0 - x
    if x > 0.25:
        return math.cos(math.pi * (0.5 - x))
    return math.sin(math.pi * x)


def _cospi_real(x: float) -> float:
    return _sinpi_real(x + 0.5)


def additive_character(xi):
    """e(xi) = exp(2 pi i xi), computed from the argument reduced mod 1.

    Accepts scalars or numpy arrays.  Reduction happens before scaling by
    2 pi, so e(xi + 1) == e(xi) whenever xi + 1 is exactly representable.
    """
    if np.ndim(xi) == 0:
        frac = float(xi) - math.floor(float(xi))
        return complex(_cospi_real(2.0 * frac), _sinpi_real(2.0 * frac))
    xi = np.asarray(xi, dtype=np.float64)
    frac = xi - np.floor(xi)
    # vectorised octant reduction of 2*frac in [0, 2)
    v = 2.0 * frac
    return _cospi_vec(v) + 1j * _sinpi_vec(v)


def _sinpi_vec(v: np.ndarray) -> np.ndarray:
    v = np.mod(v, 2.0)
    sign = np.where(v >= 1.0, -1.0, 1.0)
    v = np.where(v >= 1.0, v - 1.0, v)
    v = np.where(v > 0.5, 1.0 - v, v)
    out = np.where(v > 0.25, np.cos(np.pi * (0.5 - v)), np.sin(np.pi * v))
    return sign * out


def _cospi_vec(v: np.ndarray) -> np.ndarray:
    return _sinpi_vec(v + 0.5)


def bessel_k_imag(r: float, x):
    """K_{ir}(x) for real r and x > 0 (scalar or array input).

    Uses the ascending series of I_{+-ir} where that is well conditioned
    (|r| >= 1/2, x <= max(2, |r|)) and otherwise the trapezoidal rule for
    int_0^inf exp(-x cosh t) cos(r t) dt, whose integrand decays
    double-exponentially so the rule converges geometrically in the step.
    """
    r = abs(float(r))
    if r > 100.0:
        raise DomainError("|r| must not exceed 100")
    xa = np.asarray(x, dtype=np.float64)
    if np.any(~(xa > 0.0)):
        raise DomainError("K_{ir}(x) requires x > 0")
    if r >= 0.5:
        amp = math.sqrt(math.pi / (r * math.sinh(math.pi * r)))
        arg_gamma = loggamma(complex(1.0, r)).imag
    else:
        amp = arg_gamma = 0.0
    out = kernels.bessel_kir(r, xa.ravel(), amp, arg_gamma).reshape(xa.shape)
    if np.ndim(x) == 0:
        return float(out)
    return out

