"""Maass cusp form data: coefficient tables, ingestion and Hecke checks.

Coefficient file format (text, ``.`` radix point)::

    # comment lines anywhere
    r=9.53369526135356
    parity=-1            (optional, default +1)
    1,1.0
    2,-1.068333551223566
    ...

n must run 1, 2, 3, ... without gaps.  Coefficients are normalised so that
rho(1) = 1 on ingestion.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

import numpy as np

from ..errors import DataValidationError, DomainError, ParseError

MIN_COEFFS = 16
HECKE_TOL = 1e-6

BUILTIN_FORMS = {
    "r9.53": "maass_r9.53.csv",
    "r13.78": "maass_r13.78.csv",
}


@dataclass(frozen=True)
class MaassForm:
    """Spectral parameter r (nu = i r), real coefficients rho(1..N_coeff), parity +-1.

    parity +1 (even) mirrors rho(-n) = rho(n); parity -1 (odd) gives rho(-n) = -rho(n).
    """

    r: float
    coefficients: np.ndarray = field(repr=False)
    parity: int = 1
    source: str = ""

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=np.float64)
        if c.ndim != 1:
            raise DomainError("coefficients must be a 1-d sequence")
        if c.size < MIN_COEFFS:
            raise DomainError(f"need at least {MIN_COEFFS} coefficients, got {c.size}")
        if not np.all(np.isfinite(c)):
            raise DomainError("coefficients must be finite")
        if c[0] == 0.0:
            raise DomainError("rho(1) must be non-zero")
        if not (self.r > 0 and math.isfinite(self.r)):
            raise DomainError("spectral parameter r must be positive")
        if self.parity not in (1, -1):
            raise DomainError("parity must be +1 or -1")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def N_coeff(self) -> int:
        return int(self.coefficients.size)

    @property
    def nu(self) -> complex:
        return complex(0.0, self.r)

    @property
    def eigenvalue(self) -> float:
        return 0.25 + self.r * self.r

    def rho(self, n: int) -> float:
        if n == 0 or abs(n) > self.N_coeff:
            raise DomainError(f"rho({n}) outside the stored range")
        v = float(self.coefficients[abs(n) - 1])
        return v if n > 0 else self.parity * v

    def check_trunc(self, N_trunc: int, extra: int = 0) -> int:
        if int(N_trunc) != N_trunc or N_trunc < 1:
            raise DomainError("N_trunc must be a positive integer")
        if N_trunc + extra > self.N_coeff:
            raise DomainError(f"N_trunc + {extra} = {N_trunc + extra} exceeds N_coeff = {self.N_coeff}")
        return int(N_trunc)


def hecke_failures(coeffs, tol: float = HECKE_TOL) -> list[str]:
    """Coprime a, b >= 2 with ab <= N where |rho(a) rho(b) - rho(ab)| > tol.

    Also checks rho(p^2) = rho(p)^2 - 1 for primes p with p^2 <= N.
    """
    c = np.asarray(coeffs, dtype=np.float64)
    N = c.size
    bad = []
    for a in range(2, N + 1):
        for b in range(a + 1, N // a + 1):
            if math.gcd(a, b) == 1:
                gap = abs(c[a - 1] * c[b - 1] - c[a * b - 1])
                if gap > tol:
                    bad.append(f"rho({a})*rho({b}) != rho({a * b}) (gap {gap:.3e})")
    for p in range(2, math.isqrt(N) + 1):
        if all(p % q for q in range(2, math.isqrt(p) + 1)):
            gap = abs(c[p - 1] ** 2 - 1.0 - c[p * p - 1])
            if gap > tol:
                bad.append(f"rho({p})^2 - 1 != rho({p * p}) (gap {gap:.3e})")
    return bad


def _parse_number(text: str, line: int) -> float:
    t = text.strip()
    try:
        v = float(t)
    except ValueError:
        raise ParseError(f"not a decimal number: {t!r}", line) from None
    if not math.isfinite(v):
        raise ParseError(f"non-finite value {t!r}", line)
    return v


def parse_maass_text(text: str, source: str = "<text>") -> tuple[float, int, np.ndarray]:
    r = None
    parity = None
    coeffs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if r is None:
            if not line.startswith("r="):
                raise ParseError("first data line must be r=<decimal>", lineno)
            r = _parse_number(line[2:], lineno)
            continue
        if line.startswith("parity="):
            if parity is not None or coeffs:
                raise ParseError("parity must follow r= and appear once", lineno)
            val = line[len("parity="):].strip()
            if val not in ("+1", "1", "-1"):
                raise ParseError(f"parity must be +1 or -1, got {val!r}", lineno)
            parity = -1 if val == "-1" else 1
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError("expected 'n,rho'", lineno)
        try:
            n = int(parts[0].strip())
        except ValueError:
            raise ParseError(f"bad index {parts[0].strip()!r}", lineno) from None
        if n != len(coeffs) + 1:
            raise ParseError(f"expected n = {len(coeffs) + 1}, got {n}", lineno)
        coeffs.append(_parse_number(parts[1], lineno))
    if r is None:
        raise ParseError(f"{source}: no r= line (empty file?)", None)
    if not coeffs:
        raise ParseError(f"{source}: no coefficient lines", None)
    return r, (parity or 1), np.array(coeffs)


def ingest_maass_text(text: str, source: str = "<text>", tol: float = HECKE_TOL) -> MaassForm:
    r, parity, c = parse_maass_text(text, source)
    failures = []
    if r <= 0:
        failures.append(f"r = {r} is not positive")
    if c.size < MIN_COEFFS:
        failures.append(f"only {c.size} coefficients, need {MIN_COEFFS}")
    if c[0] == 0.0:
        failures.append("rho(1) = 0")
    if failures:
        raise DataValidationError(failures)
    c = c / c[0]
    failures = hecke_failures(c, tol)
    if failures:
        raise DataValidationError(failures)
    return MaassForm(r, c, parity, source)


def ingest_maass_csv(path, tol: float = HECKE_TOL) -> MaassForm:
    """Read, validate (Hecke relations within ``tol``) and normalise a coefficient file."""
    path = os.fspath(path)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return ingest_maass_text(text, path, tol)


def builtin_form(name: str) -> MaassForm:
    """One of the shipped forms: ``r9.53`` (odd) or ``r13.78`` (even)."""
    if name not in BUILTIN_FORMS:
        raise DomainError(f"unknown builtin form {name!r}; choose from {sorted(BUILTIN_FORMS)}")
    text = resources.files("zetawork.data").joinpath(BUILTIN_FORMS[name]).read_text(encoding="utf-8")
    return ingest_maass_text(text, f"builtin:{name}")


def load_form(ref: str) -> MaassForm:
    """A builtin name or a path to a coefficient file."""
    if ref in BUILTIN_FORMS:
        return builtin_form(ref)
    return ingest_maass_csv(ref)


def delta_form(r: float = 1.0, N_coeff: int = 64, parity: int = 1) -> MaassForm:
    """Synthetic form with rho(n) = 1 if n = 1 else 0."""
    c = np.zeros(N_coeff)
    c[0] = 1.0
    return MaassForm(r, c, parity, "synthetic:delta")


def inverse_square_form(r: float = 1.0, N_coeff: int = 64, parity: int = 1) -> MaassForm:
    """Synthetic form with rho(n) = 1/n^2."""
    n = np.arange(1, N_coeff + 1, dtype=np.float64)
    return MaassForm(r, 1.0 / (n * n), parity, "synthetic:inverse-square")


def coefficient_envelope(n):
    """|rho(n)| <= d(n) n^{7/64} <= 2 n^{1/2 + 7/64} for Hecke-normalised forms."""
    return 2.0 * np.asarray(n, dtype=np.float64) ** 0.61
