"""Critical-line zeta values, zeta-sums, the Weyl square and moment integrals.

Two independent evaluators of zeta(1/2 + it) are provided:

* ``euler_maclaurin``: Euler-Maclaurin summation with an adjustable number
  of Bernoulli correction terms.  Valid for every s != 1; it is the
  reference oracle.
* ``riemann_siegel``: the Riemann-Siegel main sum plus a remainder.  By
  default the remainder is Riemann's contour integral evaluated by the
  trapezoidal rule on a steepest-descent line, which is accurate to
  rounding for every t >= 10.  ``remainder="asymptotic"`` uses the
  classical C0..C4 correction series instead.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

import numpy as np

from . import kernels
from .errors import DomainError, PoleError, RangeWarning
from .quadrature import QuadratureSpec, oscillatory_quadrature
from .special import bernoulli, loggamma

T_VALIDATED = 1.0e6
RS_MIN_T = 10.0
_EM_TERMS = 15
_LOG_PI = math.log(math.pi)


class ExperimentalWarning(UserWarning):
    """Raised for computations outside the validated parameter range."""


# ---------------------------------------------------------------------------
# Euler-Maclaurin

def _em_coefficients(K: int) -> np.ndarray:
    return np.array([float(bernoulli(2 * k) / math.factorial(2 * k)) for k in range(1, K + 2)])


def _em_block(sigma: float, t: np.ndarray, n_terms: int, order: int):
    """zeta(sigma + i t) for an array of t sharing one truncation point."""
    N = n_terms
    s = sigma + 1j * t
    partial = kernels.dirichlet_partial(t, sigma, N - 1)
    logN = math.log(N)
    Ns = np.exp(-s * logN)
    val = partial + N * Ns / (s - 1.0) + 0.5 * Ns
    coef = _em_coefficients(order)
    poch = s.copy()
    pw = Ns / N
    for k in range(1, order + 1):
        val = val + coef[k - 1] * poch * pw
        poch = poch * (s + 2 * k - 1) * (s + 2 * k)
        pw = pw / (N * N)
    # first omitted term, inflated by the usual remainder factor
    nxt = np.abs(coef[order] * poch * pw)
    err = nxt * np.abs(s + 2 * order + 1) / (sigma + 2 * order + 1)
    return val, err


def default_em_terms(t_abs: float) -> int:
    return int(t_abs / math.pi) + 16


def zeta_em(s, order: int = _EM_TERMS, n_terms: Optional[int] = None):
    """zeta(s) by Euler-Maclaurin.  Returns (value, error estimate).

    ``order`` is the number of Bernoulli corrections and ``n_terms`` the
    truncation point N (default ~|Im s|/pi + 16, which keeps successive
    corrections shrinking by at least a factor 4).
    """
    s = complex(s)
    if s == 1.0:
        raise PoleError("zeta has a pole at s = 1")
    if order < 1:
        raise DomainError("order must be >= 1")
    if s.real < -2 * order + 1:
        raise DomainError("Re s too negative for the requested order")
    N = n_terms if n_terms is not None else default_em_terms(abs(s))
    if N < 2:
        raise DomainError("n_terms must be >= 2")
    val, err = _em_block(s.real, np.array([s.imag]), N, order)
    return complex(val[0]), float(err[0])


# ---------------------------------------------------------------------------
# Riemann-Siegel

def riemann_siegel_theta(t):
    """theta(t) = arg Gamma(1/4 + it/2) - (t/2) log pi.

    Scalars go through log Gamma.  Arrays with all |t| >= 10 use the
    asymptotic expansion, whose sixth term is below 1e-17 there.
    """
    if np.ndim(t) == 0:
        t = float(t)
        return loggamma(complex(0.25, 0.5 * t)).imag - 0.5 * t * _LOG_PI
    t = np.asarray(t, dtype=np.float64)
    out = np.empty_like(t)
    big = np.abs(t) >= RS_MIN_T
    if big.any():
        ta = np.abs(t[big])
        inv = 1.0 / ta
        inv2 = inv * inv
        corr = inv * (1 / 48 + inv2 * (7 / 5760 + inv2 * (31 / 80640 + inv2 * (127 / 430080 + inv2 * 511 / 1216512))))
        val = 0.5 * ta * np.log(ta / (2 * math.pi)) - 0.5 * ta - math.pi / 8 + corr
        out[big] = np.sign(t[big]) * val
    for i in np.flatnonzero(~big):
        out.flat[i] = riemann_siegel_theta(float(t.flat[i]))
    return out


_OMEGA = cmath.exp(0.25j * math.pi)
_RS_H = 1.0 / 32.0
_RS_U = np.arange(-6.5, 6.5 + _RS_H / 2, _RS_H)
_CHUNK = 1 << 18


def _rs_integral(t: np.ndarray, N: np.ndarray) -> np.ndarray:
    """Riemann's remainder integral for s = 1/2 + it, one row per t.

    The contour is the line x = N + 1/2 + u e^{i pi/4}, traversed from the
    upper right to the lower left; the integrand decays like e^{-pi u^2}
    and is analytic in a strip of half-width ~0.35 around the line, so the
    trapezoidal rule with step 1/32 converges to rounding.
    """
    out = np.empty(t.shape, dtype=np.complex128)
    rows = max(1, _CHUNK // _RS_U.size)
    for lo in range(0, t.size, rows):
        tt = t[lo:lo + rows, None]
        c = N[lo:lo + rows, None] + 0.5
        x = c + _RS_U[None, :] * _OMEGA
        s = 0.5 + 1j * tt
        base = -s * np.log(x) + 1j * math.pi * x * x
        up = x.imag >= 0
        dn = ~up
        # 1/(e^{i pi x} - e^{-i pi x}) written so that no exponential overflows
        F = np.empty_like(x)
        F[up] = np.exp(base[up] + 1j * math.pi * x[up]) / (np.exp(2j * math.pi * x[up]) - 1.0)
        F[dn] = -np.exp(base[dn] - 1j * math.pi * x[dn]) / (np.exp(-2j * math.pi * x[dn]) - 1.0)
        out[lo:lo + rows] = -_RS_H * _OMEGA * F.sum(axis=1)
    return out


# C_k coefficients: list of (derivative order, coefficient, power of pi^{-2})
_RS_C = (
    ((0, 1.0, 0),),
    ((3, -1.0 / 96, 1),),
    ((2, 1.0 / 64, 1), (6, 1.0 / 18432, 2)),
    ((1, -1.0 / 64, 1), (5, -1.0 / 3840, 2), (9, -1.0 / 5308416, 3)),
    ((0, 1.0 / 128, 1), (4, 19.0 / 24576, 2), (8, 11.0 / 5898240, 3), (12, 1.0 / 2038431744, 4)),
)


def _psi(z):
    return np.cos(2 * np.pi * (z * z - z - 1.0 / 16)) / np.cos(2 * np.pi * z)


def _psi_taylor(p: np.ndarray, order: int = 12, radius: float = 0.5, points: int = 64) -> np.ndarray:
    """Derivatives Psi^{(k)}(p), k <= order, by the trapezoidal Cauchy integral."""
    phi = 2 * np.pi * np.arange(points) / points
    z = p[:, None] + radius * np.exp(1j * phi)[None, :]
    coeffs = np.fft.fft(_psi(z), axis=1) / points
    k = np.arange(order + 1)
    fact = np.array([math.factorial(int(j)) for j in k], dtype=np.float64)
    return (coeffs[:, : order + 1] * fact / radius ** k).real


def _rs_asymptotic(t: np.ndarray, N: np.ndarray) -> np.ndarray:
    a = np.sqrt(t / (2 * math.pi))
    p = a - N
    d = _psi_taylor(p)
    tau = 1.0 / a
    acc = np.zeros_like(t)
    for k, terms in enumerate(_RS_C):
        ck = sum(coef * d[:, j] / math.pi ** (2 * pw) for j, coef, pw in terms)
        acc += ck * tau ** k
    sign = np.where(N % 2 == 1, 1.0, -1.0)
    return sign * np.sqrt(tau) * acc


def _rs_block(t: np.ndarray, remainder: str) -> np.ndarray:
    """zeta(1/2 + it) for t >= 10 (array)."""
    theta = riemann_siegel_theta(t)
    N = np.floor(np.sqrt(t / (2 * math.pi))).astype(np.int64)
    main = 2.0 * kernels.rs_main(t, theta, N)
    if remainder == "integral":
        R = _rs_integral(t, N.astype(np.float64))
        Z = main + 2.0 * (np.exp(1j * theta) * R).real
    else:
        Z = main + _rs_asymptotic(t, N)
    return np.exp(-1j * theta) * Z


def hardy_z(t, remainder: str = "integral"):
    """Hardy's Z(t) = e^{i theta(t)} zeta(1/2 + it), real for real t >= 10."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    z = (np.exp(1j * riemann_siegel_theta(t_arr)) * zeta_critical(t_arr, "riemann_siegel", remainder=remainder)).real
    return float(z[0]) if np.ndim(t) == 0 else z


METHODS = ("euler_maclaurin", "riemann_siegel", "auto")
_ALIASES = {"em": "euler_maclaurin", "rs": "riemann_siegel"}
_AUTO_SWITCH = 200.0


def zeta_critical(t, method: str = "auto", *, remainder: str = "integral", order: int = _EM_TERMS):
    """zeta(1/2 + it) for a scalar or an array of real t.

    ``method`` is ``euler_maclaurin``, ``riemann_siegel`` (needs |t| >= 10)
    or ``auto`` (Euler-Maclaurin below |t| = 200, Riemann-Siegel above).
    Values for |t| > 1e6 are computed but flagged with a RangeWarning.
    """
    method = _ALIASES.get(method, method)
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}")
    if remainder not in ("integral", "asymptotic"):
        raise DomainError(f"unknown remainder {remainder!r}")
    scalar = np.ndim(t) == 0
    ta = np.atleast_1d(np.asarray(t, dtype=np.float64)).ravel()
    if not np.all(np.isfinite(ta)):
        raise DomainError("t must be finite")
    if ta.size and np.max(np.abs(ta)) > T_VALIDATED:
        warnings.warn("t beyond the validated range |t| <= 1e6", RangeWarning, stacklevel=2)
    out = np.empty(ta.shape, dtype=np.complex128)
    if method == "riemann_siegel":
        use_rs = np.ones(ta.shape, dtype=bool)
        if np.any(np.abs(ta) < RS_MIN_T):
            raise DomainError("riemann_siegel requires |t| >= 10")
    elif method == "auto":
        use_rs = np.abs(ta) >= _AUTO_SWITCH
    else:
        use_rs = np.zeros(ta.shape, dtype=bool)
    if use_rs.any():
        tr = ta[use_rs]
        val = _rs_block(np.abs(tr), remainder)
        out[use_rs] = np.where(tr < 0, val.conj(), val)
    em = ~use_rs
    if em.any():
        te = ta[em]
        val, _ = _em_block(0.5, te, default_em_terms(float(np.max(np.abs(te)))), order)
        out[em] = val
    if scalar:
        return complex(out[0])
    return out.reshape(np.shape(t))


# ---------------------------------------------------------------------------
# zeta-sums and the Weyl square

def _check_weights(weights: Mapping[int, float], min_n: int) -> tuple[np.ndarray, np.ndarray]:
    items = sorted((int(n), float(w)) for n, w in weights.items())
    n = np.array([i[0] for i in items], dtype=np.int64)
    w = np.array([i[1] for i in items], dtype=np.float64)
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise DomainError("weights must be finite and non-negative")
    if n.size and n[0] < min_n:
        raise DomainError(f"weight table indices must be >= {min_n}")
    return n, w


def indicator_weights(lo: int, hi: int) -> dict[int, float]:
    """Indicator of the integer range [lo, hi]."""
    if hi < lo:
        raise DomainError("empty indicator range")
    return {n: 1.0 for n in range(lo, hi + 1)}


@dataclass(frozen=True)
class ZetaSumSpec:
    """Sum over N < n <= 2N of w(n) n^{it}; missing table entries count as 0."""

    N: int
    t: float
    weights: Optional[Mapping[int, float]] = None

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise DomainError("N must be an integer >= 1")
        if not math.isfinite(self.t):
            raise DomainError("t must be finite")
        if self.weights is not None:
            _check_weights(self.weights, 1)


def zeta_sum(spec: ZetaSumSpec) -> complex:
    """Direct compensated summation of sum_{N<n<=2N} w(n) n^{it}."""
    N, t = int(spec.N), float(spec.t)
    if spec.weights is None:
        return complex(kernels.unimodular_sum(N + 1, 2 * N, t))
    n, w = _check_weights(spec.weights, 1)
    keep = (n > N) & (n <= 2 * N)
    n, w = n[keep], w[keep]
    ph = t * np.log(n.astype(np.float64))
    return complex(math.fsum(w * np.cos(ph)), math.fsum(w * np.sin(ph)))


@dataclass(frozen=True)
class WeylSquare:
    total: float
    diagonal: float
    off_diagonal: float


def weyl_square(M: int, t: float, weights: Optional[Mapping[int, float]] = None) -> WeylSquare:
    """sum_n w(n) |sum_{0<m<=M} (m+n)^{it}|^2 with its diagonal/off-diagonal split.

    The off-diagonal part 2 sum_{m<m'} Re (m+n)^{it} (m'+n)^{-it} is summed
    independently of the total, so ``diagonal + off_diagonal == total`` is
    a genuine check.  Default weights: indicator of [1, 50].
    """
    if int(M) != M or M < 1:
        raise DomainError("M must be an integer >= 1")
    if not math.isfinite(t):
        raise DomainError("t must be finite")
    n, w = _check_weights(indicator_weights(1, 50) if weights is None else weights, 0)
    tot, dia, off = kernels.weyl_parts(int(M), float(t), n, w)
    return WeylSquare(float(tot), float(dia), float(off))


# ---------------------------------------------------------------------------
# Atkinson-style reindexing of a finite double sum

@dataclass
class ReindexReport:
    raw: object
    offsets: dict
    offset_nonneg: object
    offset_neg: object
    offset_total: object
    diagonal: object
    above: object
    below: object
    axis_total: object
    consistent: bool
    exact: bool


def _as_table(f) -> dict:
    if isinstance(f, Mapping):
        table = {}
        for (m, n), v in f.items():
            if int(m) != m or int(n) != n or m < 1 or n < 1:
                raise DomainError("table indices must be positive integers")
            table[(int(m), int(n))] = v
        return table
    arr = np.asarray(f)
    if arr.ndim != 2:
        raise DomainError("table must be 2-d (f[m-1, n-1]) or a mapping")
    return {(i + 1, j + 1): arr[i, j].item() for i in range(arr.shape[0]) for j in range(arr.shape[1])}


def _total(values, exact):
    if exact:
        return sum(values, 0)
    return math.fsum(values)


def atkinson_reindex(f) -> ReindexReport:
    """Sum a finitely supported f(m, n) three ways.

    Routes: the raw double sum in row order; the offset classification
    sum_d sum_n f(n, n + d) split into d >= 0 and d < 0; and the split at
    the symmetric axis into diagonal, above (n > m) and below (n < m).
    Integer (or Fraction) tables are summed exactly and must agree exactly.
    """
    table = _as_table(f)
    vals = list(table.values())
    exact = all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in vals)
    if not exact:
        vals_f = [float(v) for v in vals]
        if not all(math.isfinite(v) for v in vals_f):
            raise DomainError("table values must be finite")
        table = {k: float(v) for k, v in table.items()}
    keys = sorted(table)
    raw = _total([_total([table[k] for k in keys if k[0] == m], exact) for m in sorted({k[0] for k in keys})], exact)
    offsets = {}
    for d in sorted({n - m for m, n in keys}):
        offsets[d] = _total([table[(a, a + d)] for a in sorted({m for m, n in keys}) if (a, a + d) in table], exact)
    nonneg = _total([v for d, v in offsets.items() if d >= 0], exact)
    neg = _total([v for d, v in offsets.items() if d < 0], exact)
    off_total = _total([nonneg, neg], exact)
    diag = _total([table[k] for k in keys if k[0] == k[1]], exact)
    above = _total([table[k] for k in keys if k[1] > k[0]], exact)
    below = _total([table[k] for k in keys if k[1] < k[0]], exact)
    axis = _total([diag, above, below], exact)
    if exact:
        ok = raw == off_total == axis
    else:
        scale = math.fsum(abs(v) for v in table.values()) or 1.0
        ok = abs(raw - off_total) <= 1e-13 * scale and abs(raw - axis) <= 1e-13 * scale
    return ReindexReport(raw, offsets, nonneg, neg, off_total, diag, above, below, axis, ok, exact)


# ---------------------------------------------------------------------------
# Moment integrals

@dataclass(frozen=True)
class WeightSpec:
    """Gaussian weight amplitude * exp(-(t - center)^2 / width^2)."""

    center: float
    width: float
    kind: str = "gaussian"
    amplitude: float = 1.0

    def __post_init__(self):
        if self.kind != "gaussian":
            raise DomainError(f"unsupported weight kind {self.kind!r}")
        if not (self.width > 0 and math.isfinite(self.width)):
            raise DomainError("width must be positive")
        if not math.isfinite(self.center) or not (self.amplitude >= 0 and math.isfinite(self.amplitude)):
            raise DomainError("invalid weight parameters")

    def __call__(self, t):
        u = (np.asarray(t, dtype=np.float64) - self.center) / self.width
        return self.amplitude * np.exp(-u * u)

    def scaled(self, factor: float) -> "WeightSpec":
        return WeightSpec(self.center, self.width, self.kind, self.amplitude * factor)

    def support(self, tol: float, power: float = 0.0) -> tuple[float, float]:
        """[T0 - c*width, T0 + c*width] outside which the weighted tail of a
        function bounded by ``zeta_envelope(t)**power`` is below ``tol``."""
        c = 1.0
        while _gauss_tail(self, c, power) > tol:
            c += 0.25
        return self.center - c * self.width, self.center + c * self.width


def zeta_envelope(t):
    """Upper bound for |zeta(1/2+it)|: explicit t^{1/6} log t bound, padded."""
    ta = np.abs(np.asarray(t, dtype=np.float64))
    return 2.0 + 0.732 * (ta + 3.0) ** (1.0 / 6.0) * np.log(ta + 3.0)


def _gauss_tail(g: WeightSpec, c: float, power: float) -> float:
    # both tails of amplitude*int_{|t-T0|>c*width} e^{-(..)^2}, times the
    # envelope at a point beyond which the Gaussian has lost another factor e^{-4c}
    far = abs(g.center) + (c + 2.0) * g.width
    mass = g.amplitude * g.width * math.sqrt(math.pi) * math.erfc(c)
    return mass * float(zeta_envelope(far)) ** power + g.amplitude * g.width * math.exp(-(c + 2.0) ** 2) * float(zeta_envelope(far * 4)) ** power


def oscillation_breakpoints(a: float, b: float) -> list[float]:
    """Panel edges spaced at half the local oscillation scale 2 pi / log(|t|/2pi)."""
    pts = []
    x = a
    while True:
        L = 2 * math.pi / math.log(max(abs(x), 2 * math.pi * math.e) / (2 * math.pi))
        x += 0.5 * L
        if x >= b:
            break
        pts.append(x)
    return pts


@dataclass
class MomentResult:
    value: float
    error: float
    support: tuple
    evaluations: int

    def __iter__(self):
        return iter((self.value, self.error))


def _abs_zeta_power(k: int):
    def f(t):
        return np.abs(zeta_critical(t, "auto")) ** (2 * k)
    return f


def moment_integral(k: int, weight: WeightSpec, spec: Optional[QuadratureSpec] = None) -> MomentResult:
    """int |zeta(1/2+it)|^{2k} g(t) dt over the weight's effective support.

    k in {1, 2} is the validated range; k >= 3 runs with an ExperimentalWarning.
    The quadrature tolerance applies per unit of weight amplitude.
    """
    if int(k) != k or k < 1:
        raise DomainError("k must be a positive integer")
    if k >= 3:
        warnings.warn("moments with k >= 3 are experimental", ExperimentalWarning, stacklevel=2)
    spec = spec or QuadratureSpec()
    if weight.amplitude == 0:
        return MomentResult(0.0, 0.0, (weight.center, weight.center), 0)
    # integrate the unit-amplitude weight and scale afterwards, so scaling g scales the
    # result exactly; the tolerance therefore applies per unit of amplitude
    unit = weight.scaled(1.0 / weight.amplitude)
    lo, hi = unit.support(spec.abs_tol / 10, 2 * k)
    zk = _abs_zeta_power(int(k))

    def f(t):
        return zk(t) * unit(t)

    res = oscillatory_quadrature(f, lo, hi, spec, points=oscillation_breakpoints(lo, hi))
    tail = _gauss_tail(unit, (hi - unit.center) / unit.width, 2 * k)
    a = weight.amplitude
    return MomentResult(a * float(res.value), a * (res.error + tail), (lo, hi), res.evaluations)


def plain_fourth_moment(T: float, spec: Optional[QuadratureSpec] = None) -> MomentResult:
    """int_{-T}^{T} |zeta(1/2+it)|^4 dt, computed as 2 int_0^T by reflection."""
    if not (T >= 0 and math.isfinite(T)):
        raise DomainError("T must be finite and >= 0")
    if T == 0:
        return MomentResult(0.0, 0.0, (0.0, 0.0), 0)
    spec = spec or QuadratureSpec()
    half = spec.with_tol(spec.abs_tol / 2)
    res = oscillatory_quadrature(_abs_zeta_power(2), 0.0, float(T), half, points=oscillation_breakpoints(0.0, T))
    return MomentResult(2.0 * float(res.value), 2.0 * res.error, (-T, T), res.evaluations)


# ---------------------------------------------------------------------------
# Subconvexity scan

@dataclass
class ScanReport:
    max_ratio: float
    argmax_t: float
    min_ratio: float
    t: np.ndarray = field(repr=False)
    ratio: np.ndarray = field(repr=False)


def subconvexity_ratio_scan(t_lo: float, t_hi: float, samples: int) -> ScanReport:
    """max over equally spaced t in [t_lo, t_hi] of |zeta(1/2+it)| / (t^{1/6} log t).

    A single sample evaluates at t_lo.
    """
    if not (2.0 <= t_lo and (t_lo < t_hi or samples == 1)):
        raise DomainError("need 2 <= t_lo < t_hi")
    if int(samples) != samples or samples < 1:
        raise DomainError("samples must be a positive integer")
    t = np.linspace(t_lo, t_hi, int(samples)) if samples > 1 else np.array([float(t_lo)])
    mag = np.empty_like(t)
    small = t < RS_MIN_T
    if small.any():
        mag[small] = np.abs(zeta_critical(t[small], "euler_maclaurin"))
    if (~small).any():
        mag[~small] = np.abs(zeta_critical(t[~small], "riemann_siegel"))
    ratio = mag / (t ** (1.0 / 6.0) * np.log(t))
    i = int(np.argmax(ratio))
    return ScanReport(float(ratio[i]), float(t[i]), float(ratio.min()), t, ratio)
