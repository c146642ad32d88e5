"""Principal-series vectors phi_ell and their Jacquet transforms.

phi_ell(g, nu) = y^{1/2+nu} e^{2 i ell theta} in Iwasawa coordinates, and

    A^delta phi(g) = int_R e(-delta xi) phi(w n[xi] g) d xi.

For Re nu near 0 the integrand only decays like 1/|xi|, so the real line
is cut at +-A and the two tails are moved onto vertical rays
xi = +-A - i delta v, where e(-delta xi) supplies a factor e^{-2 pi v}.
The integrand is continued analytically in xi: for w n[xi] g with bottom
row (c, d) (linear in xi), y = 1/(c^2 + d^2) and
e^{2 i theta} = (d - i c)/(d + i c).  Its singularities sit at
xi = -x +- i y (g = n[x] a[y] k[theta]), so any A > |x| is admissible.
"""

from __future__ import annotations

import cmath
import math
from typing import Optional

import numpy as np

from ..errors import DomainError
from ..quadrature import QuadratureSpec, oscillatory_quadrature
from ..special import additive_character, bessel_k_imag, complex_gamma
from .iwasawa import GroupPoint


def phi_ell(g: GroupPoint, nu, ell: int) -> complex:
    """y^{1/2+nu} exp(2 i ell theta)."""
    nu = complex(nu)
    return cmath.exp((0.5 + nu) * math.log(g.y)) * cmath.exp(2j * ell * g.theta)


def _bottom_row(G: np.ndarray, xi):
    # w n[xi] G = (G10, G11; -G00 - xi G10, -G01 - xi G11)
    c = -G[0, 0] - xi * G[1, 0]
    d = -G[0, 1] - xi * G[1, 1]
    return c, d


def _integrand(G: np.ndarray, nu: complex, ell: int, delta: int):
    def f(xi):
        c, d = _bottom_row(G, xi)
        q = c * c + d * d
        out = np.exp(-(0.5 + nu) * np.log(q)) * np.exp(-2j * np.pi * delta * xi)
        if ell:
            out = out * ((d - 1j * c) / (d + 1j * c)) ** ell
        return out
    return f


def _cut_point(g: GroupPoint, nu: complex) -> float:
    # beyond |xi| ~ |Im nu|/pi the phase of q^{-nu} along the rays no
    # longer outgrows the e^{-2 pi v} decay
    return abs(g.x) + max(2.0, 2.0 * g.y, math.pi * abs(nu.imag) / 8.0)


def jacquet_transform(nu, ell: int, delta: int, g: GroupPoint, spec: Optional[QuadratureSpec] = None) -> complex:
    """A^delta phi_ell(g, nu) by contour-deformed quadrature.

    Requires Re nu > -1/2.  ell = 0 is the validated path; ell != 0 uses the
    same contour and is experimental.
    """
    nu = complex(nu)
    if delta not in (1, -1):
        raise DomainError("delta must be +1 or -1")
    if int(ell) != ell:
        raise DomainError("ell must be an integer")
    if not nu.real > -0.5:
        raise DomainError("Jacquet integral needs Re nu > -1/2")
    spec = spec or QuadratureSpec()
    ell = int(ell)
    G = g.matrix()
    f = _integrand(G, nu, ell, delta)
    A = _cut_point(g, nu)
    a0 = A - abs(g.x)
    part_tol = spec.with_tol(spec.abs_tol / 3)

    centre = oscillatory_quadrature(f, -A, A, part_tol, points=[-g.x] if abs(g.x) < A else ())

    # |integrand| on the rays <= env0 * e^{-2 pi v}: |q| >= a0^2 / y, the
    # phase of q^{-nu} is at most pi |Im nu| and |(d-ic)/(d+ic)| <= 1 + 2y/a0
    env0 = (g.y / a0**2) ** (0.5 + nu.real) * math.exp(math.pi * abs(nu.imag)) * (1 + 2 * g.y / a0) ** abs(ell)

    def envelope(V):
        return env0 * math.exp(-2 * math.pi * V) / (2 * math.pi)

    right = oscillatory_quadrature(lambda v: f(A - 1j * delta * v), 0.0, math.inf, part_tol, envelope=envelope)
    left = oscillatory_quadrature(lambda v: f(-A - 1j * delta * v), 0.0, math.inf, part_tol, envelope=envelope)
    # int_A^inf = -i delta int_0^inf F(A - i delta v) dv, int_-inf^-A = +i delta int_0^inf F(-A - i delta v) dv
    return complex(centre.value) - 1j * delta * complex(right.value) + 1j * delta * complex(left.value)


def whittaker_constant(nu) -> complex:
    """c_nu = 2 pi^{1/2+nu} / Gamma(1/2+nu)."""
    nu = complex(nu)
    return 2.0 * cmath.exp((0.5 + nu) * math.log(math.pi)) / complex_gamma(0.5 + nu)


def jacquet_closed_form(nu, delta: int, g: GroupPoint) -> complex:
    """A^delta phi_0(g, nu) = e(delta x) c_nu sqrt(y) K_nu(2 pi y), nu purely imaginary."""
    nu = complex(nu)
    if nu.real != 0.0:
        raise DomainError("closed form implemented for purely imaginary nu")
    if delta not in (1, -1):
        raise DomainError("delta must be +1 or -1")
    return (additive_character(delta * g.x) * whittaker_constant(nu)
            * math.sqrt(g.y) * bessel_k_imag(nu.imag, 2 * math.pi * g.y))
