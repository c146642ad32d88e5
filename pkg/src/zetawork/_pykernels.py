"""Pure numpy implementations of the hot kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same branch logic; the two backends agree to rounding.  This
module is used when the compiled extension is missing or when
``ZETAWORK_PURE_PYTHON=1`` is set.
"""

import math

import numpy as np

from .errors import IntegerOverflowError

_INT64_MAX = 2**63 - 1
_CHUNK = 1 << 20


def dirichlet_partial(t, sigma, n_max):
    """sum_{n=1}^{n_max} n^{-sigma - i t} for each entry of ``t``."""
    t = np.ascontiguousarray(t, dtype=np.float64)
    out = np.empty(t.shape, dtype=np.complex128)
    if n_max < 1:
        out[:] = 0.0
        return out
    logn = np.log(np.arange(1, n_max + 1, dtype=np.float64))
    amp = np.exp(-sigma * logn)
    rows = max(1, _CHUNK // n_max)
    for lo in range(0, t.size, rows):
        tt = t[lo:lo + rows]
        phase = -np.outer(tt, logn)
        re = amp * np.cos(phase)
        im = amp * np.sin(phase)
        out[lo:lo + rows] = re.sum(axis=1) + 1j * im.sum(axis=1)
    return out


def rs_main(t, theta, m):
    """sum_{n<=m} n^{-1/2} cos(theta - t log n), elementwise."""
    t = np.ascontiguousarray(t, dtype=np.float64)
    theta = np.ascontiguousarray(theta, dtype=np.float64)
    m = np.ascontiguousarray(m, dtype=np.int64)
    out = np.zeros(t.shape, dtype=np.float64)
    for i in range(t.size):
        n = np.arange(1, m[i] + 1, dtype=np.float64)
        out[i] = np.sum(np.cos(theta[i] - t[i] * np.log(n)) / np.sqrt(n))
    return out


def unimodular_sum(start, stop, t):
    """Compensated sum_{n=start}^{stop} n^{i t}."""
    if stop < start:
        return 0j
    re = 0.0
    im = 0.0
    for lo in range(start, stop + 1, _CHUNK):
        n = np.arange(lo, min(stop, lo + _CHUNK - 1) + 1, dtype=np.float64)
        ph = t * np.log(n)
        re += math.fsum(np.cos(ph))
        im += math.fsum(np.sin(ph))
    return complex(re, im)


def weyl_parts(M, t, n_values, w):
    """Return (total, diagonal, off_diagonal) of sum_n w(n)|sum_{m<=M}(m+n)^{it}|^2."""
    n_values = np.asarray(n_values, dtype=np.int64)
    w = np.asarray(w, dtype=np.float64)
    m = np.arange(1, M + 1, dtype=np.float64)
    tot_terms = []
    diag_terms = []
    off_terms = []
    iu = np.triu_indices(M, k=1)
    for n, wn in zip(n_values, w):
        ph = t * np.log(m + float(n))
        z = np.cos(ph) + 1j * np.sin(ph)
        inner = complex(math.fsum(z.real), math.fsum(z.imag))
        tot_terms.append(wn * (inner.real * inner.real + inner.imag * inner.imag))
        diag_terms.append(wn * math.fsum(z.real * z.real + z.imag * z.imag))
        cross = (np.outer(z, z.conj()))[iu].real
        off_terms.append(wn * 2.0 * math.fsum(cross))
    return math.fsum(tot_terms), math.fsum(diag_terms), math.fsum(off_terms)


def divisor_counts(n_max):
    """d(n) for 0 <= n <= n_max (d(0) is set to 0) by multiple marking."""
    d = np.zeros(n_max + 1, dtype=np.int32)
    for k in range(1, n_max + 1):
        d[k::k] += 1
    return d


def det_partition(table, B):
    """Exact sums of an int64 table over the box, split by sign of k*m - l*n.

    ``table[k+B, l+B, n+B, m+B]`` holds f at the matrix (k l; n m).
    """
    table = np.asarray(table, dtype=np.int64)
    r = np.arange(-B, B + 1, dtype=np.int64)
    k, l, n, m = np.meshgrid(r, r, r, r, indexing="ij")
    det = k * m - l * n
    sums = []
    for mask in (det == 0, det > 0, det < 0):
        vals = table[mask]
        bound = int(np.abs(vals).max(initial=0)) * vals.size
        s = int(vals.sum()) if bound <= _INT64_MAX else sum(vals.tolist())
        if abs(s) > _INT64_MAX:
            raise IntegerOverflowError("partition sum left the int64 range")
        sums.append(s)
    total = sum(sums)
    if abs(total) > _INT64_MAX:
        raise IntegerOverflowError("partition total left the int64 range")
    return sums[0], sums[1], sums[2], total


def _k_series(r, x, amp, arg_gamma):
    q = 0.25 * x * x
    term = np.ones_like(x) + 0j
    s = term.copy()
    k = 1
    while True:
        term = term * q / (k * (k + 1j * r))
        s = s + term
        if np.all(np.abs(term) <= 1e-17 * np.abs(s)) or k > 400:
            break
        k += 1
    phase = r * np.log(0.5 * x) - arg_gamma
    return -amp * (np.sin(phase) * s.real + np.cos(phase) * s.imag)


def _k_trapezoid(r, x):
    h = 2.0 * math.pi / (abs(r) + 0.46 * x + 45.0)
    tmax = math.acosh(1.0 + 40.0 / x)
    t = np.arange(0.0, tmax + h, h)
    f = np.exp(-x * np.cosh(t)) * np.cos(r * t)
    f[0] *= 0.5
    return h * f.sum()


def bessel_kir(r, x, amp, arg_gamma):
    """K_{ir}(x) for an array of x > 0 and r >= 0.

    ``amp`` = sqrt(pi / (r sinh(pi r))) and ``arg_gamma`` = arg Gamma(1 + i r)
    are supplied by the caller; they are only used on the series branch.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty_like(x)
    use_series = (r >= 0.5) & (x <= max(2.0, r))
    if use_series.any():
        out[use_series] = _k_series(r, x[use_series], amp, arg_gamma)
    for i in np.flatnonzero(~use_series):
        out[i] = _k_trapezoid(r, x[i])
    return out
