"""L_V(s) = sum rho(n) n^{-s} from a finite coefficient table.

``direct`` sums all stored coefficients and is only offered for Re s > 1.
``smoothed`` sums rho(n) n^{-s} exp(-(n/X)^2); it is an entire-function
approximation usable on the critical line but carries no error guarantee
there (consistency under X -> 1.5 X is the check offered).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import DomainError, TruncationError
from ..quadrature import QuadratureSpec, oscillatory_quadrature
from ..zeta import MomentResult, WeightSpec, oscillation_breakpoints
from .forms import MaassForm, coefficient_envelope


@dataclass
class LValue:
    value: complex
    last_block: float
    tail_bound: float
    scheme: str
    heuristic: bool


def smoothing_weights(form: MaassForm, X: float, tol: float) -> np.ndarray:
    if not (X > 0 and math.isfinite(X)):
        raise DomainError("cutoff X must be positive")
    cut = math.exp(-(form.N_coeff / X) ** 2)
    if cut > tol:
        raise TruncationError(
            f"damping exp(-(N_coeff/X)^2) = {cut:.2e} at N_coeff = {form.N_coeff} exceeds {tol:g}; lower X",
            tail=cut)
    n = np.arange(1, form.N_coeff + 1, dtype=np.float64)
    return np.exp(-(n / X) ** 2)


def l_function_eval(form: MaassForm, s, scheme: str = "direct", X: Optional[float] = None,
                    tol: float = 1e-10) -> LValue:
    """L_V(s) by the direct series (Re s > 1) or the Gaussian-smoothed series.

    ``last_block`` is the contribution of the last tenth of the terms;
    ``tail_bound`` bounds the omitted terms (direct: sum over n > N_coeff of
    the Hecke envelope; smoothed: the damping weight at N_coeff).
    """
    s = complex(s)
    N = form.N_coeff
    if scheme == "direct":
        sigma = s.real
        if not sigma > 1:
            raise DomainError("direct scheme needs Re s > 1")
        w = np.ones(N)
        n = np.arange(N + 1, 40 * N + 1, dtype=np.float64)
        tail = float(np.sum(coefficient_envelope(n) * n ** -sigma))
        # integral comparison for n > 40 N (envelope * n^{-sigma} is decreasing when sigma > 0.61)
        if sigma > 1.61:
            tail += 2.0 * (40 * N) ** (1.61 - sigma) / (sigma - 1.61)
        else:
            tail = math.inf
        heuristic = False
    elif scheme == "smoothed":
        if X is None:
            raise DomainError("smoothed scheme needs a cutoff X")
        w = smoothing_weights(form, X, tol)
        tail = math.exp(-(N / X) ** 2)
        heuristic = s.real <= 1
    else:
        raise DomainError(f"unknown scheme {scheme!r}")
    terms = _terms(form, s, w)
    value = complex(math.fsum(terms.real), math.fsum(terms.imag))
    k = max(1, N // 10)
    last = abs(complex(math.fsum(terms[-k:].real), math.fsum(terms[-k:].imag)))
    return LValue(value, last, tail, scheme, heuristic)


def _terms(form: MaassForm, s: complex, w: np.ndarray) -> np.ndarray:
    n = np.arange(1, w.size + 1, dtype=np.float64)
    return form.coefficients[: w.size] * w * np.exp(-s * np.log(n))


def l_critical_line(form: MaassForm, t, X: float, tol: float = 1e-10) -> np.ndarray:
    """Smoothed L_V(1/2 + it) for an array of t (vectorised)."""
    w = smoothing_weights(form, X, tol)
    t = np.asarray(t, dtype=np.float64)
    n = np.arange(1, w.size + 1, dtype=np.float64)
    logn = np.log(n)
    amp = form.coefficients * w / np.sqrt(n)
    ph = np.outer(t.ravel(), logn)
    out = (amp * np.cos(ph)).sum(axis=1) - 1j * (amp * np.sin(ph)).sum(axis=1)
    return out.reshape(t.shape)


def l_moment(form: MaassForm, weight: WeightSpec, X: float, spec: Optional[QuadratureSpec] = None,
             tol: float = 1e-10) -> MomentResult:
    """int |L_V(1/2+it)|^2 g(t) dt with L_V from the smoothed series (heuristic)."""
    spec = spec or QuadratureSpec()
    smoothing_weights(form, X, tol)
    a = weight.amplitude
    if a == 0:
        return MomentResult(0.0, 0.0, (weight.center, weight.center), 0)
    # unit-amplitude weight, result scaled afterwards: exact linearity in g
    # (tolerance per unit of amplitude)
    unit = weight.scaled(1.0 / a)
    # |smoothed L| <= sum |rho(n)| n^{-1/2} e^{-(n/X)^2}: a t-independent envelope
    n = np.arange(1, form.N_coeff + 1, dtype=np.float64)
    bound = float(np.sum(np.abs(form.coefficients) / np.sqrt(n) * np.exp(-(n / X) ** 2)))
    c = 1.0
    while unit.width * math.sqrt(math.pi) * math.erfc(c) * bound**2 > spec.abs_tol / 10:
        c += 0.25
    lo, hi = unit.center - c * unit.width, unit.center + c * unit.width
    tail = unit.width * math.sqrt(math.pi) * math.erfc(c) * bound**2

    def f(t):
        return np.abs(l_critical_line(form, t, X, tol)) ** 2 * unit(t)

    res = oscillatory_quadrature(f, lo, hi, spec, points=oscillation_breakpoints(lo, hi))
    return MomentResult(a * float(res.value), a * (res.error + tail), (lo, hi), res.evaluations)
