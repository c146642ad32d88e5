"""Exact integer combinatorics of 2x2 matrices.

Determinant-sign partition of box sums, the rank <= 1 stratum, Hecke coset
representatives with the unique factorisation M = gamma * rep, and
truncated Poincare series over SL(2, Z).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Union

import numpy as np

from . import kernels
from .automorphic.iwasawa import GroupPoint
from .errors import DomainError, IntegerOverflowError, TruncationError

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1
MAX_BOX_CELLS = 2 * 10**8


def _check64(v: int) -> int:
    if not INT64_MIN <= v <= INT64_MAX:
        raise IntegerOverflowError(f"{v} does not fit in 64 bits")
    return v


@dataclass(frozen=True)
class IntMatrix2:
    """M = (k l; n m) with 64-bit integer entries."""

    k: int
    l: int
    n: int
    m: int

    def __post_init__(self):
        for name in ("k", "l", "n", "m"):
            v = getattr(self, name)
            if isinstance(v, (bool, float)) or int(v) != v:
                raise DomainError(f"entry {name} must be an integer")
            object.__setattr__(self, name, _check64(int(v)))

    @property
    def det(self) -> int:
        return _check64(self.k * self.m - self.l * self.n)

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.k * other.k + self.l * other.n,
            self.k * other.l + self.l * other.m,
            self.n * other.k + self.m * other.n,
            self.n * other.l + self.m * other.m,
        )

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.k, self.l, self.n, self.m)

    def as_array(self) -> np.ndarray:
        return np.array([[self.k, self.l], [self.n, self.m]], dtype=np.int64)

    @staticmethod
    def identity() -> "IntMatrix2":
        return IntMatrix2(1, 0, 0, 1)


@dataclass(frozen=True)
class BoxSpec:
    """All IntMatrix2 with max(|k|, |l|, |n|, |m|) <= B."""

    B: int

    def __post_init__(self):
        if int(self.B) != self.B or self.B < 0:
            raise DomainError("B must be an integer >= 0")
        if self.cells > MAX_BOX_CELLS:
            raise DomainError(f"box with B = {self.B} has {self.cells} cells, above the memory guard")

    @property
    def side(self) -> int:
        return 2 * self.B + 1

    @property
    def cells(self) -> int:
        return (2 * self.B + 1) ** 4

    def coordinates(self):
        """Broadcastable int64 grids (k, l, n, m) indexed [k+B, l+B, n+B, m+B]."""
        r = np.arange(-self.B, self.B + 1, dtype=np.int64)
        return np.meshgrid(r, r, r, r, indexing="ij", sparse=True)


@dataclass(frozen=True)
class DetPartition:
    sum_zero: int
    sum_pos: int
    sum_neg: int
    total: int


FunctionSpec = Union[int, np.ndarray, Callable]


def box_table(box: BoxSpec, f: FunctionSpec) -> np.ndarray:
    """Tabulate f on the box as an int64 array indexed [k+B, l+B, n+B, m+B].

    ``f`` may be an integer constant, a ready table of that shape, or a
    callable taking broadcastable arrays (k, l, n, m).
    """
    shape = (box.side,) * 4
    if callable(f):
        vals = np.broadcast_to(np.asarray(f(*box.coordinates())), shape)
    elif np.ndim(f) == 0:
        vals = np.full(shape, f)
    else:
        vals = np.asarray(f)
        if vals.shape != shape:
            raise DomainError(f"table shape {vals.shape} does not match the box {shape}")
    if vals.dtype.kind not in "iub":
        raise DomainError("partition sums need an integer-valued function")
    if vals.dtype.kind == "u" and vals.size and vals.max() > INT64_MAX:
        raise IntegerOverflowError("table entries exceed the int64 range")
    return np.array(vals, dtype=np.int64, order="C")


def partition_by_det(box: BoxSpec, f: FunctionSpec) -> DetPartition:
    """Exact sums of f over the box split by the sign of det M = km - ln."""
    if 2 * box.B * box.B > INT64_MAX:
        raise IntegerOverflowError("determinants in this box exceed 64 bits")
    table = box_table(box, f)
    z, p, n, t = kernels.det_partition(table, box.B)
    return DetPartition(z, p, n, t)


def enumerate_det_zero(box: BoxSpec) -> Iterator[IntMatrix2]:
    """Every matrix of the box with km = ln, each exactly once.

    For the first row (k, l) = 0 the second row is arbitrary; otherwise it
    is an integer multiple j (k, l)/gcd(k, l) of the primitive first row.
    Order: first row lexicographic, then j ascending (zero first row: second
    row lexicographic).
    """
    B = box.B
    rng = range(-B, B + 1)
    for k in rng:
        for l in rng:
            if k == 0 and l == 0:
                for n in rng:
                    for m in rng:
                        yield IntMatrix2(0, 0, n, m)
                continue
            g = math.gcd(k, l)
            pk, pl = k // g, l // g
            jmax = B // max(abs(pk), abs(pl))
            for j in range(-jmax, jmax + 1):
                yield IntMatrix2(k, l, j * pk, j * pl)


def count_det_zero(box: BoxSpec) -> int:
    """Size of the det-zero stratum, from the same structure without materialising it."""
    B = box.B
    total = (2 * B + 1) ** 2
    for k in range(-B, B + 1):
        for l in range(-B, B + 1):
            if k or l:
                g = math.gcd(k, l)
                total += 2 * (B // max(abs(k // g), abs(l // g))) + 1
    return total


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def hecke_coset_reps(n: int) -> list[IntMatrix2]:
    """Upper-triangular representatives (a b; 0 d), ad = n, 0 <= b < d, sorted by (a, b)."""
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    n = int(n)
    return [IntMatrix2(a, b, 0, n // a) for a in divisors(n) for b in range(n // a)]


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a x + b y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def factor_det_n(M: IntMatrix2) -> tuple[IntMatrix2, IntMatrix2]:
    """The unique gamma in SL(2, Z) and representative rep with M = gamma rep."""
    det = M.det
    if det <= 0:
        raise DomainError("factorisation needs det M >= 1")
    g, x, y = _ext_gcd(M.k, M.n)
    # gamma^{-1} = (x y; -n/g k/g) kills the lower-left entry; a = g > 0
    u, v = -M.n // g, M.k // g
    b = x * M.l + y * M.m
    d = u * M.l + v * M.m
    q = b // d
    b -= q * d
    x, y = x - q * u, y - q * v
    gamma = IntMatrix2(v, -y, -u, x)
    rep = IntMatrix2(g, b, 0, d)
    return gamma, rep


# ---------------------------------------------------------------------------
# Poincare series

@dataclass(frozen=True)
class GaussianNormTest:
    """f(h) = amplitude * exp(-beta (||h||_F^2 - 2)) on SL(2, R); ||h||_F^2 >= 2."""

    beta: float = 1.0
    amplitude: float = 1.0

    def __post_init__(self):
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise DomainError("beta must be positive")
        if not math.isfinite(self.amplitude):
            raise DomainError("amplitude must be finite")

    def __call__(self, norm2):
        return self.amplitude * np.exp(-self.beta * (np.asarray(norm2) - 2.0))


# #{M in SL(2, Z) : ||M||_F^2 <= Y} <= A Y + B sqrt(Y) + C.  For each primitive
# bottom row v (|v| <= sqrt Y) the admissible top rows lie on a line at
# spacing |v|, giving <= 2 sqrt(Y)/|v| + 1 of them; summing 1/|v| and 1 over
# lattice points by comparison with integrals over unit squares gives the
# constants below.
_COUNT_A = 7.0 * math.pi
_COUNT_B = 8.0 + 1.48 * math.pi
_COUNT_C = 0.5041 * math.pi


def sl2z_count_bound(Y: float) -> float:
    """Upper bound for the number of M in SL(2, Z) with ||M||_F^2 <= Y."""
    return _COUNT_A * Y + _COUNT_B * math.sqrt(max(Y, 0.0)) + _COUNT_C


@dataclass
class PoincareResult:
    value: float
    tail_bound: float
    terms: int
    cutoff: float


def _tail_bound(test: GaussianNormTest, kappa: float, X: float) -> float:
    # sum over ||Mg||^2 > X  <=  beta int_X^inf e^{-beta(u-2)} N(kappa u) du
    b = test.beta
    e = math.exp(-b * (X - 2.0))
    lin = X + 1.0 / b
    root = math.sqrt(X) + 1.0 / (2.0 * b * math.sqrt(X))
    return abs(test.amplitude) * e * (_COUNT_A * kappa * lin + _COUNT_B * math.sqrt(kappa) * root + _COUNT_C)


def sl2z_shell(g: np.ndarray, X: float) -> Iterator[tuple[int, int, int, int]]:
    """All M = (a b; c d) in SL(2, Z) with ||M g||_F^2 <= X.

    Coprime bottom rows inside the ellipse q(c, d) <= X are found by a gcd
    filter over the bounding box; each is lifted by the extended gcd and the
    admissible translates along (c, d) are solved from a quadratic in j.
    """
    Q = g @ g.T
    Qi = np.linalg.inv(Q)

    def q(r0, r1):
        return Q[0, 0] * r0 * r0 + 2 * Q[0, 1] * r0 * r1 + Q[1, 1] * r1 * r1

    cmax = int(math.floor(math.sqrt(X * Qi[0, 0]))) + 1
    for c in range(-cmax, cmax + 1):
        # d range from Q11 d^2 + 2 Q01 c d + Q00 c^2 <= X
        A, Bq, C = Q[1, 1], 2 * Q[0, 1] * c, Q[0, 0] * c * c - X
        disc = Bq * Bq - 4 * A * C
        if disc < 0:
            continue
        sq = math.sqrt(disc)
        for d in range(math.floor((-Bq - sq) / (2 * A)) - 1, math.ceil((-Bq + sq) / (2 * A)) + 2):
            if math.gcd(c, d) != 1:
                continue
            qb = q(c, d)
            if qb > X:
                continue
            # a d - b c = 1
            _, x, y = _ext_gcd(d, -c)
            a0, b0 = x, y
            # q(a0 + j c, b0 + j d) = q0 + 2 j s + j^2 qb <= X - qb
            q0 = q(a0, b0)
            s = Q[0, 0] * a0 * c + Q[0, 1] * (a0 * d + b0 * c) + Q[1, 1] * b0 * d
            rem = X - qb
            disc2 = s * s - qb * (q0 - rem)
            if disc2 < 0:
                continue
            r = math.sqrt(disc2)
            for j in range(math.floor((-s - r) / qb) - 1, math.ceil((-s + r) / qb) + 2):
                a, b = a0 + j * c, b0 + j * d
                if q(a, b) + qb <= X:
                    yield a, b, c, d


def poincare_series(test: GaussianNormTest, g: GroupPoint, cutoff: float,
                    tol: Optional[float] = None) -> PoincareResult:
    """F(g) = sum_{M in SL(2, Z)} f(M g), truncated at ||M g||_F^2 <= cutoff.

    The returned tail bound is rigorous for the Gaussian-norm family.  If
    ``tol`` is given and the bound exceeds it, TruncationError is raised.
    """
    if not (cutoff >= 2.0 and math.isfinite(cutoff)):
        raise DomainError("cutoff must be >= 2 (the minimum of ||h||_F^2)")
    gm = g.matrix()
    kappa = float(np.linalg.norm(np.linalg.inv(gm), 2)) ** 2
    tail = _tail_bound(test, kappa, cutoff)
    if tol is not None and tail > tol:
        raise TruncationError(f"cutoff {cutoff} too small: tail bound {tail:.3e} exceeds {tol:.3e}", tail=tail)
    norms = []
    for a, b, c, d in sl2z_shell(gm, cutoff):
        h = np.array([[a, b], [c, d]], dtype=np.float64) @ gm
        norms.append(float(np.sum(h * h)))
    norms.sort()
    vals = test(np.array(norms)) if norms else np.zeros(0)
    return PoincareResult(math.fsum(vals), tail, len(norms), cutoff)
