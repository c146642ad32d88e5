"""Time the compiled and pure-numpy kernel backends on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--quick]

Each kernel is run on identical arguments through both backends; the table
reports the best-of-``repeat`` wall time, the speed-up and the largest
disagreement between the two results.
"""

import argparse
import math
import sys
import timeit

import numpy as np

from zetawork import kernels
from zetawork.special import loggamma


def cases(quick: bool):
    s = 0.2 if quick else 1.0
    rng = np.random.default_rng(1)
    t = np.linspace(10.0, 1000.0, int(200 * s))
    theta = rng.uniform(0, 2 * math.pi, t.size)
    m = np.floor(np.sqrt(t / (2 * math.pi))).astype(np.int64)
    B = 4 if quick else 8
    side = 2 * B + 1
    table = rng.integers(-1000, 1001, size=(side,) * 4)
    r = 9.53369526135356
    amp = math.sqrt(math.pi / (r * math.sinh(math.pi * r)))
    argg = loggamma(1 + 1j * r).imag
    x = np.linspace(0.05, 50.0, int(2000 * s))
    nvals = np.arange(1, 51)
    return [
        ("dirichlet_partial", (t, 0.5, int(2000 * s))),
        ("rs_main", (t * 1000, theta, m * 30)),
        ("unimodular_sum", (1, int(2_000_000 * s), 1234.5)),
        ("weyl_parts", (50, 7.3, nvals, np.ones(50))),
        ("divisor_counts", (int(2_000_000 * s),)),
        ("det_partition", (table, B)),
        ("bessel_kir", (r, x, amp, argg)),
    ]


def disagreement(a, b) -> float:
    a = np.asarray(a, dtype=np.complex128 if np.iscomplexobj(a) else np.float64)
    b = np.asarray(b, dtype=a.dtype)
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--quick", action="store_true", help="smaller inputs")
    args = p.parse_args(argv)

    backends = kernels.backends()
    if "compiled" not in backends:
        print("compiled extension not built; only the python backend is available", file=sys.stderr)
    names = list(backends)
    print(f"{'kernel':<18}" + "".join(f"{n + ' [s]':>14}" for n in names) + f"{'speed-up':>10}{'max |diff|':>12}")
    for name, call_args in cases(args.quick):
        times, results = {}, {}
        for b in names:
            fn = getattr(backends[b], name)
            results[b] = fn(*call_args)
            times[b] = min(timeit.repeat(lambda: fn(*call_args), number=1, repeat=args.repeat))
        speed = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        diff = disagreement(results["python"], results.get("compiled", results["python"]))
        print(f"{name:<18}" + "".join(f"{times[b]:>14.5f}" for b in names) + f"{speed:>10.1f}{diff:>12.2e}")


if __name__ == "__main__":
    main()
