"""Divisor counts, weight windows and the additive divisor sum.

The window argument is n/m (not n/N): ``additive_divisor_sum(N, m, W)``
computes sum_{n <= N} d(n) d(n + m) W(n / m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import kernels
from .errors import DomainError

SIEVE_CAP = 10**8


@dataclass(frozen=True)
class DivisorTable:
    """d(n) for 0 <= n <= N_max (index 0 holds 0); the array is read-only."""

    N_max: int
    d: np.ndarray

    def __getitem__(self, n):
        return self.d[n]


def divisor_sieve(N: int) -> DivisorTable:
    """Exact d(n), n <= N, by marking multiples of every k <= N."""
    if int(N) != N or N < 1:
        raise DomainError("N must be an integer >= 1")
    if N > SIEVE_CAP:
        raise DomainError(f"N = {N} exceeds the sieve memory guard {SIEVE_CAP}")
    d = kernels.divisor_counts(int(N))
    d.setflags(write=False)
    return DivisorTable(int(N), d)


def divisor_count_trial(n) -> np.ndarray:
    """d(n) by trial division, vectorised over candidate divisors k <= sqrt(n)."""
    n = np.atleast_1d(np.asarray(n, dtype=np.int64))
    if n.size and n.min() < 1:
        raise DomainError("trial division needs n >= 1")
    out = np.zeros(n.shape, dtype=np.int64)
    kmax = math.isqrt(int(n.max())) if n.size else 0
    for k in range(1, kmax + 1):
        hit = n % k == 0
        kk = k * k
        out += np.where(hit & (kk < n), 2, 0) + np.where(hit & (kk == n), 1, 0)
    return out


WINDOW_KINDS = ("constant", "indicator", "gaussian", "rational", "custom")


@dataclass(frozen=True)
class WindowSpec:
    """Non-negative window W(u).

    constant:  W = value
    indicator: W = value on lo <= u <= hi, else 0
    gaussian:  W = value * exp(-((u - center)/width)^2)
    rational:  W = value / (1 + |u/scale|^power)
    custom:    W = func(u) (vectorised, checked non-negative and finite)
    """

    kind: str = "constant"
    value: float = 1.0
    lo: float = 0.0
    hi: float = math.inf
    center: float = 1.0
    width: float = 1.0
    scale: float = 1.0
    power: float = 2.0
    func: Optional[Callable] = None

    def __post_init__(self):
        if self.kind not in WINDOW_KINDS:
            raise DomainError(f"unknown window kind {self.kind!r}")
        if not (self.value >= 0 and math.isfinite(self.value)):
            raise DomainError("window level must be finite and >= 0")
        if self.kind == "indicator" and not self.lo <= self.hi:
            raise DomainError("indicator needs lo <= hi")
        if self.kind == "gaussian" and not (self.width > 0 and math.isfinite(self.center)):
            raise DomainError("gaussian window needs width > 0")
        if self.kind == "rational" and not (self.scale > 0 and self.power > 0):
            raise DomainError("rational window needs scale > 0 and power > 0")
        if self.kind == "custom" and not callable(self.func):
            raise DomainError("custom window needs a callable")

    @classmethod
    def constant(cls, value: float = 1.0) -> "WindowSpec":
        return cls("constant", value=value)

    @classmethod
    def indicator(cls, lo: float, hi: float, value: float = 1.0) -> "WindowSpec":
        return cls("indicator", value=value, lo=lo, hi=hi)

    @classmethod
    def gaussian(cls, center: float, width: float, value: float = 1.0) -> "WindowSpec":
        return cls("gaussian", value=value, center=center, width=width)

    @classmethod
    def rational(cls, scale: float = 1.0, power: float = 2.0, value: float = 1.0) -> "WindowSpec":
        return cls("rational", value=value, scale=scale, power=power)

    @classmethod
    def custom(cls, func: Callable) -> "WindowSpec":
        return cls("custom", func=func)

    def __call__(self, u):
        u = np.asarray(u, dtype=np.float64)
        if self.kind == "constant":
            out = np.full(u.shape, self.value)
        elif self.kind == "indicator":
            out = np.where((u >= self.lo) & (u <= self.hi), self.value, 0.0)
        elif self.kind == "gaussian":
            z = (u - self.center) / self.width
            out = self.value * np.exp(-z * z)
        elif self.kind == "rational":
            out = self.value / (1.0 + np.abs(u / self.scale) ** self.power)
        else:
            out = np.broadcast_to(np.asarray(self.func(u), dtype=np.float64), u.shape)
            if not np.all(np.isfinite(out)) or np.any(out < 0):
                raise DomainError("custom window must be finite and non-negative")
        return out

    def support(self, tol: float = 1e-16) -> tuple[float, float]:
        """Interval of u outside which W(u) <= tol * value (u >= 0 side)."""
        if self.kind in ("constant", "custom") or self.value == 0:
            return (0.0, math.inf) if self.value else (0.0, 0.0)
        if self.kind == "indicator":
            return (self.lo, self.hi)
        if self.kind == "gaussian":
            c = math.sqrt(-math.log(tol))
            return (self.center - c * self.width, self.center + c * self.width)
        return (0.0, self.scale * (1.0 / tol) ** (1.0 / self.power))

    @property
    def is_unit(self) -> bool:
        return self.kind == "constant" and self.value == 1.0


def additive_divisor_sum(N: int, m: int, W: Optional[WindowSpec] = None, backend: str = "sieve",
                         table: Optional[DivisorTable] = None):
    """sum_{n <= N} d(n) d(n + m) W(n / m).

    Without a window (or with W = 1) the exact integer sum is returned.
    ``backend`` chooses between the sieve and trial division for d(n).
    m <= 0 is rejected: m = 0 is the excluded diagonal case.
    """
    if int(m) != m or m <= 0:
        raise DomainError("m must be a positive integer (m = 0 is the diagonal case)")
    if int(N) != N or N < 1:
        raise DomainError("N must be an integer >= 1")
    N, m = int(N), int(m)
    if backend == "sieve":
        if table is None or table.N_max < N + m:
            table = divisor_sieve(N + m)
        d = table.d[: N + m + 1].astype(np.int64)
    elif backend == "trial":
        d = np.concatenate([[0], divisor_count_trial(np.arange(1, N + m + 1))])
    else:
        raise DomainError(f"unknown backend {backend!r}")
    prod = d[1:N + 1] * d[1 + m:N + m + 1]
    if W is None or W.is_unit:
        return int(prod.sum())
    w = W(np.arange(1, N + 1, dtype=np.float64) / m)
    return math.fsum(prod * w)


def sigma_minus1(m: int) -> Fraction:
    """sigma_{-1}(m) = sum_{d | m} 1/d, exactly."""
    if int(m) != m or m < 1:
        raise DomainError("m must be a positive integer")
    m = int(m)
    s = Fraction(0)
    d = 1
    while d * d <= m:
        if m % d == 0:
            s += Fraction(1, d)
            if d * d != m:
                s += Fraction(d, m)
        d += 1
    return s


def ingham_main_term(N: int, m: int) -> float:
    """(6/pi^2) sigma_{-1}(m) N log^2 N, the classical leading term."""
    if N < 2:
        raise DomainError("N must be >= 2")
    return 6.0 / math.pi**2 * float(sigma_minus1(m)) * N * math.log(N) ** 2
