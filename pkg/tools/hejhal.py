"""Generate Hecke-Maass coefficient tables for SL(2, Z) by Hejhal's method.

Writes a coefficient file in the format read by ``zetawork.automorphic.ingest_maass_csv``.

    python3 tools/hejhal.py --r 9.53369526135355755434 --parity -1 \
        --n-out 200 --out src/zetawork/data/maass_r9.53.csv

A cusp form f(x+iy) = sum_n c(n) sqrt(y) K_{ir}(2 pi n y) cs(2 pi n x),
with cs = cos (even) or sin (odd), is sampled on a horizontal line below
the fundamental domain.  Each sample equals the value at its pullback,
which lies high enough for the truncated series to converge quickly.
Discrete orthogonality of cs on the sample points turns this into a
linear system for c(2..M0) with c(1) = 1.  The spectral parameter is
refined by a secant iteration on the disagreement between two sample
heights, which vanishes only at a true eigenvalue.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from zetawork.special import bessel_k_imag


def pullback(x: float, y: float) -> tuple[float, float]:
    """Map x + iy into the standard fundamental domain of SL(2, Z)."""
    z = complex(x, y)
    for _ in range(1000):
        z = complex(z.real - math.floor(z.real + 0.5), z.imag)
        if abs(z) >= 1.0 - 1e-15:
            return z.real, z.imag
        z = -1.0 / z
    raise RuntimeError("pullback did not terminate")


def solve(r: float, parity: int, M0: int, Y: float, Q: int | None = None) -> np.ndarray:
    """Coefficients c(1..M0) (c(1) = 1) for spectral parameter r at height Y."""
    Q = Q or M0 + 10
    cs = np.cos if parity == 1 else np.sin
    m = np.arange(1, Q + 1)
    xm = (1.0 - 2.0 * m) / (4.0 * Q)
    star = np.array([pullback(x, Y) for x in xm])
    xs, ys = star[:, 0], star[:, 1]
    n = np.arange(1, M0 + 1)
    # A[m, l] = sqrt(y*) K(2 pi l y*) cs(2 pi l x*)
    A = np.empty((Q, M0))
    for j, l in enumerate(n):
        A[:, j] = np.sqrt(ys) * bessel_k_imag(r, 2 * math.pi * l * ys) * cs(2 * math.pi * l * xs)
    C = cs(2 * math.pi * np.outer(n, xm))
    V = (2.0 / Q) * C @ A
    V[np.arange(M0), np.arange(M0)] -= np.sqrt(Y) * bessel_k_imag(r, 2 * math.pi * n * Y)
    # drop equation n = 1, move the c(1) column to the right-hand side
    rhs = -V[1:, 0]
    c = np.linalg.solve(V[1:, 1:], rhs)
    return np.concatenate([[1.0], c])


def default_height(r: float, M0: int, eps: float = 1e-15) -> float:
    """Largest Y with sqrt(Y) K(2 pi M0 Y) below eps * max|K| (bisection)."""
    scale = math.exp(-math.pi * r / 2)
    lo, hi = 1e-4, 0.8
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if abs(bessel_k_imag(r, 2 * math.pi * M0 * mid)) < eps * scale:
            hi = mid
        else:
            lo = mid
    return hi


def mismatch(r: float, parity: int, M0: int, Y1: float, Y2: float) -> float:
    a = solve(r, parity, M0, Y1)
    b = solve(r, parity, M0, Y2)
    return float(a[1] - b[1])


def refine(r0: float, parity: int, M0: int, steps: int = 8, tol: float = 1e-13):
    Y1 = default_height(r0, M0)
    Y2 = 0.97 * Y1
    ra, rb = r0, r0 + 1e-7
    fa, fb = mismatch(ra, parity, M0, Y1, Y2), mismatch(rb, parity, M0, Y1, Y2)
    for _ in range(steps):
        if fb == fa:
            break
        rc = rb - fb * (rb - ra) / (fb - fa)
        ra, fa = rb, fb
        rb, fb = rc, mismatch(rc, parity, M0, Y1, Y2)
        print(f"  r = {rb:.15f}  mismatch = {fb:.3e}", file=sys.stderr)
        if abs(rb - ra) < tol:
            break
    return rb, fb


def hecke_defect(c: np.ndarray, limit: int) -> float:
    worst = 0.0
    for a in range(2, limit + 1):
        for b in range(2, limit // a + 1):
            if math.gcd(a, b) == 1:
                worst = max(worst, abs(c[a - 1] * c[b - 1] - c[a * b - 1]))
    return worst


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--parity", type=int, choices=(1, -1), required=True)
    p.add_argument("--n-out", type=int, default=200)
    p.add_argument("--m0", type=int, default=None)
    p.add_argument("--refine", action="store_true")
    p.add_argument("--out", default=None)
    args = p.parse_args(argv)

    M0 = args.m0 or int(args.n_out * 2.6)
    r = args.r
    if args.refine:
        r, f = refine(r, args.parity, M0)
        print(f"refined r = {r!r} (mismatch {f:.2e})", file=sys.stderr)
    Y = default_height(r, M0)
    c1 = solve(r, args.parity, M0, Y)
    c2 = solve(r, args.parity, M0, 0.97 * Y)
    spread = np.abs(c1 - c2)[: args.n_out]
    print(f"M0 = {M0}, Y = {Y:.5f}, max |c_Y1 - c_Y2| on n <= {args.n_out}: {spread.max():.2e}", file=sys.stderr)
    print(f"Hecke defect (coprime ab <= {args.n_out}): {hecke_defect(c1, args.n_out):.2e}", file=sys.stderr)
    lines = [
        "# Hecke-Maass cusp form for SL(2, Z), generated by tools/hejhal.py",
        f"# M0 = {M0}, Y = {Y:.6f}, height-to-height spread {spread.max():.1e}",
        f"r={float(r)!r}",
        f"parity={'+1' if args.parity == 1 else '-1'}",
    ]
    lines += [f"{i},{float(c1[i - 1])!r}" for i in range(1, args.n_out + 1)]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
