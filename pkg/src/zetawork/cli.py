"""Command-line front end.

    zetawork <command> [flags] [--config FILE] [--out PATH] [--format csv|jsonl] [--timing]

Every command writes ResultRecords (csv with a header row, or json-lines).
Without ``--out`` the records go to ``$ZETAWORK_OUTPUT_DIR/<command>-<id>.<ext>``
when that variable is set, else to stdout.  A config file holds ``key=value``
lines (``#`` comments allowed) naming the same parameters as the flags;
explicit flags win.

Exit codes: 0 success, 2 validation error (bad flag, key, value or
precondition), 1 numerical non-convergence.  Errors are reported as one
JSON line on stderr.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
import time
import warnings
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from . import divisor, lattice, zeta
from .automorphic import expansion, forms, kirillov, lfunction, whittaker
from .automorphic.iwasawa import GroupPoint
from .errors import NumericalError, ValidationError
from .quadrature import QuadratureSpec

FORMATS = ("csv", "jsonl")
ENV_OUTPUT_DIR = "ZETAWORK_OUTPUT_DIR"


class CLIError(ValidationError):
    """Bad command line or config file."""


# ---------------------------------------------------------------------------
# Records and serialisation

@dataclass
class ResultRecord:
    experiment_id: str
    command: str
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)
    duration_s: Optional[float] = None

    def to_row(self) -> dict:
        row = {"experiment_id": self.experiment_id, "command": self.command}
        for prefix, d in (("in", self.inputs), ("out", self.outputs), ("diag", self.diagnostics)):
            for k, v in d.items():
                v = _plain(v)
                if isinstance(v, complex):
                    row[f"{prefix}.{k}.re"] = v.real
                    row[f"{prefix}.{k}.im"] = v.imag
                else:
                    row[f"{prefix}.{k}"] = v
        if self.duration_s is not None:
            row["duration_s"] = self.duration_s
        return row

    @classmethod
    def from_row(cls, row: dict) -> "ResultRecord":
        parts = {"in": {}, "out": {}, "diag": {}}
        for key, v in row.items():
            if key in ("experiment_id", "command", "duration_s"):
                continue
            prefix, _, name = key.partition(".")
            parts[prefix][name] = v
        for d in parts.values():
            for name in [k for k in d if k.endswith(".re")]:
                base = name[:-3]
                if base + ".im" in d:
                    d[base] = complex(d.pop(name), d.pop(base + ".im"))
        return cls(row["experiment_id"], row["command"], parts["in"], parts["out"], parts["diag"],
                   row.get("duration_s"))


def _plain(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    if isinstance(v, (complex, np.complexfloating)):
        return complex(v)
    return v


def format_number(x: float) -> str:
    """17 significant digits; always carries a '.' or exponent so it reads back as a float."""
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    s = format(x, ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format_number(v)
    return str(v)


def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format_number(v)
    return json.dumps(str(v), ensure_ascii=False)


def _parse_cell(s: str):
    if s == "":
        return None
    if s in ("true", "false"):
        return s == "true"
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def _columns(rows: list[dict]) -> list[str]:
    cols = {"experiment_id": None, "command": None}
    for row in rows:
        for k in row:
            cols.setdefault(k, None)
    return list(cols)


def emit_text(records: list[ResultRecord], fmt: str) -> str:
    if fmt not in FORMATS:
        raise CLIError(f"unknown format {fmt!r}")
    rows = [r.to_row() for r in records]
    if fmt == "jsonl":
        lines = ["{" + ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in row.items()) + "}" for row in rows]
        return "".join(line + "\n" for line in lines)
    buf = io.StringIO()
    cols = _columns(rows)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([_cell(row.get(c)) for c in cols])
    return buf.getvalue()


def emit_results(records: list[ResultRecord], fmt: str, path) -> None:
    """Write records to ``path`` ('-' or None for stdout)."""
    text = emit_text(records, fmt)
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def parse_results(text: str, fmt: str) -> list[ResultRecord]:
    """Inverse of :func:`emit_text`."""
    if fmt == "jsonl":
        return [ResultRecord.from_row(json.loads(line)) for line in text.splitlines() if line.strip()]
    if fmt != "csv":
        raise CLIError(f"unknown format {fmt!r}")
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None:
        return []
    out = []
    for cells in reader:
        row = {k: _parse_cell(c) for k, c in zip(header, cells) if c != ""}
        out.append(ResultRecord.from_row(row))
    return out


def experiment_id(command: str, inputs: dict) -> str:
    blob = json.dumps({"command": command, "inputs": {k: _cell(_plain(v)) for k, v in inputs.items()}},
                      sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# Parameters and command registry

def _bool(s) -> bool:
    if isinstance(s, bool):
        return s
    t = str(s).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


@dataclass(frozen=True)
class Param:
    name: str
    type: Callable = float
    default: Any = None
    help: str = ""
    choices: Optional[tuple] = None
    required: bool = False

    @property
    def dest(self) -> str:
        return self.name.replace("-", "_")


@dataclass(frozen=True)
class Command:
    name: str
    summary: str
    description: str
    params: tuple
    run: Callable
    quadrature: bool = False


COMMANDS: dict[str, Command] = {}


def command(name: str, summary: str, description: str, params, quadrature: bool = False):
    def deco(fn):
        COMMANDS[name] = Command(name, summary, description, tuple(params), fn, quadrature)
        return fn
    return deco


QUAD_PARAMS = (
    Param("quad-tol", float, None, "absolute quadrature tolerance override"),
    Param("quad-depth", int, None, "maximum bisection depth override"),
)


def _quad_spec(p: dict, default: Optional[QuadratureSpec] = None) -> Optional[QuadratureSpec]:
    tol, depth = p.get("quad_tol"), p.get("quad_depth")
    if tol is None and depth is None:
        return default
    base = default or QuadratureSpec()
    return QuadratureSpec(base.scheme, tol if tol is not None else base.abs_tol,
                          depth if depth is not None else base.max_depth, base.rel_tol, base.panels,
                          base.max_intervals)


def _form(ref: str) -> forms.MaassForm:
    if ref == "synthetic:delta":
        return forms.delta_form()
    if ref == "synthetic:inverse-square":
        return forms.inverse_square_form()
    return forms.load_form(ref)


FORM = Param("form", str, "r9.53", "builtin name (r9.53, r13.78), synthetic:delta, synthetic:inverse-square, or a coefficient file")
POINT = (Param("x", float, 0.0, "Iwasawa x"), Param("y", float, 1.0, "Iwasawa y > 0"),
         Param("theta", float, 0.0, "Iwasawa angle"))
WINDOW = (
    Param("window", str, "constant", "window kind", ("constant", "indicator", "gaussian", "rational")),
    Param("w-value", float, 1.0, "window level"),
    Param("w-lo", float, 0.0, "indicator lower end (in u = n/m)"),
    Param("w-hi", float, math.inf, "indicator upper end (in u = n/m)"),
    Param("w-center", float, 1.0, "gaussian centre"),
    Param("w-width", float, 1.0, "gaussian width"),
    Param("w-scale", float, 1.0, "rational-decay scale"),
    Param("w-power", float, 2.0, "rational-decay power"),
)


def _window(p: dict) -> divisor.WindowSpec:
    kind = p["window"]
    if kind == "constant":
        return divisor.WindowSpec.constant(p["w_value"])
    if kind == "indicator":
        return divisor.WindowSpec.indicator(p["w_lo"], p["w_hi"], p["w_value"])
    if kind == "gaussian":
        return divisor.WindowSpec.gaussian(p["w_center"], p["w_width"], p["w_value"])
    return divisor.WindowSpec.rational(p["w_scale"], p["w_power"], p["w_value"])


def _point(p: dict) -> GroupPoint:
    return GroupPoint(p["x"], p["y"], p["theta"])


# Each runner returns a list of (outputs, diagnostics) pairs.

@command("zeta-eval", "zeta(1/2 + it) on the critical line",
         "Evaluate zeta(1/2+it) by Euler-Maclaurin summation or the Riemann-Siegel formula "
         "(main sum plus contour-integral remainder).",
         [Param("t", float, required=True, help="height t"),
          Param("method", str, "auto", "evaluator", ("auto", "euler_maclaurin", "riemann_siegel")),
          Param("remainder", str, "integral", "Riemann-Siegel remainder", ("integral", "asymptotic"))])
def _zeta_eval(p):
    v = zeta.zeta_critical(p["t"], p["method"], remainder=p["remainder"])
    return [({"value": complex(v), "abs": abs(v)}, {})]


@command("zeta-sum", "the zeta-sum over N < n <= 2N of n^{it}",
         "Direct compensated summation of sum_{N<n<=2N} w(n) n^{it}; w is the indicator of "
         "[w-lo, w-hi] when given, else 1.",
         [Param("N", int, required=True, help="start of the range"), Param("t", float, required=True, help="frequency"),
          Param("w-lo", int, None, "weight indicator lower end"), Param("w-hi", int, None, "weight indicator upper end")])
def _zeta_sum(p):
    w = None
    if p["w_lo"] is not None or p["w_hi"] is not None:
        w = zeta.indicator_weights(p["w_lo"] or 1, p["w_hi"] or 2 * p["N"])
    v = zeta.zeta_sum(zeta.ZetaSumSpec(p["N"], p["t"], w))
    return [({"value": v, "abs": abs(v)}, {})]


@command("weyl-square", "Cauchy-squared short sums with diagonal split",
         "sum_n w(n) |sum_{0<m<=M} (m+n)^{it}|^2 with w the indicator of [w-lo, w-hi], returned "
         "together with its diagonal and off-diagonal parts.",
         [Param("M", int, required=True, help="inner length"), Param("t", float, required=True, help="frequency"),
          Param("w-lo", int, 1, "weight indicator lower end"), Param("w-hi", int, 50, "weight indicator upper end")])
def _weyl_square(p):
    r = zeta.weyl_square(p["M"], p["t"], zeta.indicator_weights(p["w_lo"], p["w_hi"]))
    return [({"total": r.total, "diagonal": r.diagonal, "off_diagonal": r.off_diagonal},
             {"split_residual": abs(r.diagonal + r.off_diagonal - r.total)})]


@command("moment", "weighted moment int |zeta|^{2k} g",
         "Adaptive quadrature of int |zeta(1/2+it)|^{2k} g(t) dt for the Gaussian weight "
         "g(t) = exp(-(t - center)^2 / width^2).  k >= 3 is experimental.",
         [Param("k", int, 2, "half the power"), Param("center", float, 50.0, "weight centre T0"),
          Param("width", float, 10.0, "weight width")], quadrature=True)
def _moment(p):
    r = zeta.moment_integral(p["k"], zeta.WeightSpec(p["center"], p["width"]), _quad_spec(p))
    return [({"value": r.value}, {"error": r.error, "support_lo": r.support[0], "support_hi": r.support[1],
                                  "evaluations": r.evaluations})]


@command("fourth-moment", "plain fourth power mean over [-T, T]",
         "int_{-T}^{T} |zeta(1/2+it)|^4 dt, computed as twice the integral over [0, T].",
         [Param("T", float, required=True, help="half-length of the interval")], quadrature=True)
def _fourth_moment(p):
    r = zeta.plain_fourth_moment(p["T"], _quad_spec(p))
    return [({"value": r.value}, {"error": r.error, "evaluations": r.evaluations})]


@command("subconvexity-scan", "scan of |zeta(1/2+it)| / (t^{1/6} log t)",
         "Sample the ratio of |zeta(1/2+it)| to the van der Corput shape t^{1/6} log t on an equally "
         "spaced grid and report its maximum.  --series also emits one record per sample.",
         [Param("t-lo", float, 2.0, "lower end (>= 2)"), Param("t-hi", float, 1e4, "upper end"),
          Param("samples", int, 10000, "number of samples"),
          Param("series", _bool, False, "emit the sampled curve")])
def _scan(p):
    r = zeta.subconvexity_ratio_scan(p["t_lo"], p["t_hi"], p["samples"])
    out = [({"max_ratio": r.max_ratio, "argmax_t": r.argmax_t, "min_ratio": r.min_ratio}, {})]
    if p["series"]:
        out += [({"t": float(t), "ratio": float(q)}, {}) for t, q in zip(r.t, r.ratio)]
    return out


@command("lattice-partition", "sums over integer 2x2 matrices split by det sign",
         "Exact sums of f(k, l, n, m) over the box max|entry| <= B split into det = 0, det > 0 and "
         "det < 0.  f is 1, det, or a seeded random integer table.",
         [Param("B", int, required=True, help="box bound"),
          Param("f", str, "one", "summand", ("one", "det", "random")),
          Param("seed", int, 0, "seed for f = random")])
def _lattice_partition(p):
    box = lattice.BoxSpec(p["B"])
    if p["f"] == "one":
        f = 1
    elif p["f"] == "det":
        f = lambda k, l, n, m: k * m - l * n  # noqa: E731
    else:
        f = np.random.default_rng(p["seed"]).integers(-1000, 1001, size=(box.side,) * 4)
    r = lattice.partition_by_det(box, f)
    return [({"sum_zero": r.sum_zero, "sum_pos": r.sum_pos, "sum_neg": r.sum_neg, "total": r.total},
             {"identity_exact": r.sum_zero + r.sum_pos + r.sum_neg == r.total})]


@command("hecke-cosets", "coset representatives of determinant-n matrices",
         "The upper-triangular representatives (a b; 0 d), ad = n, 0 <= b < d, one record each; "
         "their count is sigma_1(n).",
         [Param("n", int, required=True, help="determinant")])
def _hecke_cosets(p):
    reps = lattice.hecke_coset_reps(p["n"])
    sigma1 = sum(lattice.divisors(p["n"]))
    return [({"index": i, "k": M.k, "l": M.l, "n_entry": M.n, "m": M.m},
             {"count": len(reps), "sigma1": sigma1}) for i, M in enumerate(reps)]


def _matrix(s: str) -> lattice.IntMatrix2:
    parts = [q.strip() for q in str(s).split(",")]
    if len(parts) != 4:
        raise ValueError("expected k,l,n,m")
    return lattice.IntMatrix2(*(int(q) for q in parts))


@command("hecke-factor", "factor M = gamma * rep with gamma in SL(2, Z)",
         "Unique factorisation of an integer matrix of positive determinant into an SL(2, Z) "
         "element and an upper-triangular coset representative.",
         [Param("matrix", _matrix, required=True, help="entries k,l,n,m of M = (k l; n m)")])
def _hecke_factor(p):
    M = p["matrix"]
    g, rep = lattice.factor_det_n(M)
    return [({"gamma": "{},{},{},{}".format(*g.as_tuple()), "rep": "{},{},{},{}".format(*rep.as_tuple()),
              "det": M.det}, {"reconstructs": (g @ rep) == M, "gamma_det": g.det})]


@command("poincare", "truncated Poincare series over SL(2, Z)",
         "F(g) = sum_M f(Mg) for the Gaussian test function f(h) = A exp(-beta(||h||^2 - 2)), "
         "truncated at ||Mg||^2 <= cutoff, with a rigorous tail bound.",
         [*POINT, Param("beta", float, 1.0, "Gaussian decay"), Param("amplitude", float, 1.0, "Gaussian amplitude"),
          Param("cutoff", float, 30.0, "norm-squared cutoff"), Param("tol", float, None, "maximum tail bound")])
def _poincare(p):
    r = lattice.poincare_series(lattice.GaussianNormTest(p["beta"], p["amplitude"]), _point(p), p["cutoff"], p["tol"])
    return [({"value": r.value}, {"tail_bound": r.tail_bound, "terms": r.terms})]


@command("divisor-sum", "additive divisor sum sum d(n) d(n+m) W(n/m)",
         "sum_{n<=N} d(n) d(n+m) W(n/m) (note the window argument n/m), with the Ingham leading "
         "term (6/pi^2) sigma_{-1}(m) N log^2 N for comparison.",
         [Param("N", int, required=True, help="summation length"), Param("m", int, required=True, help="shift >= 1"),
          Param("backend", str, "sieve", "divisor counts", ("sieve", "trial")), *WINDOW])
def _divisor_sum(p):
    W = _window(p)
    v = divisor.additive_divisor_sum(p["N"], p["m"], None if W.is_unit else W, backend=p["backend"])
    out = {"value": v}
    diag = {}
    if p["N"] >= 2:
        main = divisor.ingham_main_term(p["N"], p["m"])
        out["ingham_main_term"] = main
        diag["ratio"] = float(v) / main
    return [(out, diag)]


@command("divisor-sieve", "divisor counts d(n) for n <= N",
         "Sieve d(n) for n <= N.  The summary record carries sum d(n) and max d(n); --table also "
         "emits one record per n.",
         [Param("N", int, required=True, help="table size"), Param("table", _bool, False, "emit d(n) per n")])
def _divisor_sieve(p):
    t = divisor.divisor_sieve(p["N"])
    d = t.d[1:]
    out = [({"N": t.N_max, "sum_d": int(d.sum()), "max_d": int(d.max()), "argmax_n": int(np.argmax(d)) + 1}, {})]
    if p["table"]:
        out += [({"n": i, "d": int(d[i - 1])}, {}) for i in range(1, t.N_max + 1)]
    return out


@command("maass-ingest", "read and validate a Maass coefficient file",
         "Parse a coefficient file, normalise rho(1) = 1 and check Hecke multiplicativity "
         "within --tol.",
         [FORM, Param("tol", float, forms.HECKE_TOL, "Hecke relation tolerance")])
def _maass_ingest(p):
    ref = p["form"]
    f = forms.ingest_maass_csv(ref, p["tol"]) if os.path.exists(ref) else _form(ref)
    return [({"r": f.r, "parity": f.parity, "N_coeff": f.N_coeff, "eigenvalue": f.eigenvalue,
              "rho2": f.rho(2), "rho3": f.rho(3), "rho6": f.rho(6)},
             {"source": f.source, "hecke_defect_rho6": abs(f.rho(2) * f.rho(3) - f.rho(6))})]


@command("maass-eval", "truncated Fourier expansion of a Maass form",
         "Evaluate the Maass form at g = n[x] a[y] k[theta] through its Whittaker expansion, "
         "with the closed K-Bessel Whittaker functions or per-term Jacquet quadrature.",
         [FORM, *POINT, Param("ell", int, 0, "K-type"), Param("N-trunc", int, None, "truncation (default: automatic)"),
          Param("backend", str, "bessel", "Whittaker evaluation", ("bessel", "jacquet")),
          Param("tol", float, 1e-10, "tail tolerance")], quadrature=True)
def _maass_eval(p):
    r = expansion.maass_eval(_form(p["form"]), _point(p), p["ell"], p["N_trunc"], p["backend"], p["tol"], _quad_spec(p))
    return [({"value": r.value}, {"tail_bound": r.tail_bound, "n_trunc": r.n_trunc})]


@command("jacquet", "Jacquet transform of phi_ell",
         "A^delta phi_ell(g, nu) = int e(-delta xi) phi_ell(w n[xi] g, nu) d xi by contour-deformed "
         "quadrature; for ell = 0 and imaginary nu the K-Bessel closed form is reported alongside.",
         [Param("nu-re", float, 0.0, "Re nu"), Param("nu-im", float, 1.0, "Im nu"),
          Param("ell", int, 0, "K-type"), Param("delta", int, 1, "sign", (1, -1)), *POINT], quadrature=True)
def _jacquet(p):
    nu = complex(p["nu_re"], p["nu_im"])
    g = _point(p)
    v = whittaker.jacquet_transform(nu, p["ell"], p["delta"], g, _quad_spec(p))
    out, diag = {"value": v}, {}
    if p["ell"] == 0 and nu.real == 0.0:
        c = whittaker.jacquet_closed_form(nu, p["delta"], g)
        out["closed_form"] = c
        diag["difference"] = abs(v - c)
    return [(out, diag)]


@command("casimir-check", "finite-difference Casimir eigenvalue",
         "Apply Omega = -y^2 (d_x^2 + d_y^2) + y d_x d_theta by Richardson-extrapolated central "
         "differences to the truncated Maass expansion and compare (Omega f)/f with 1/4 + r^2.",
         [FORM, *POINT, Param("h", float, None, "step (default y/200)"),
          Param("N-trunc", int, None, "fixed truncation (default: automatic at 0.9 y)"),
          Param("tol", float, 1e-6, "Richardson tolerance")])
def _casimir(p):
    f = _form(p["form"])
    g = _point(p)
    N = p["N_trunc"] or expansion.auto_truncation(f, 0.9 * g.y, 1e-13)
    r = expansion.casimir_apply_fd(lambda q: expansion.maass_eval(f, q, 0, N, tol=math.inf).value, g, p["h"], p["tol"])
    est = r.eigenvalue
    return [({"omega_value": r.value, "fn_value": r.fn_value, "eigenvalue_estimate": est,
              "expected": f.eigenvalue},
             {"relative_error": abs(est - f.eigenvalue) / f.eigenvalue, "richardson_gap": r.richardson_gap,
              "h": r.h, "n_trunc": N})]


@command("lfun-eval", "L_V(s) by direct or Gaussian-smoothed series",
         "sum rho(n) n^{-s} directly (Re s > 1) or with damping exp(-(n/X)^2); the smoothed value "
         "is heuristic on Re s <= 1.",
         [FORM, Param("sigma", float, 0.5, "Re s"), Param("t", float, 0.0, "Im s"),
          Param("scheme", str, "smoothed", "series", ("direct", "smoothed")),
          Param("X", float, 100.0, "smoothing cutoff"), Param("tol", float, 1e-10, "damping tolerance at N_coeff")])
def _lfun_eval(p):
    s = complex(p["sigma"], p["t"])
    X = p["X"] if p["scheme"] == "smoothed" else None
    r = lfunction.l_function_eval(_form(p["form"]), s, p["scheme"], X, p["tol"])
    return [({"value": r.value}, {"last_block": r.last_block, "tail_bound": r.tail_bound, "heuristic": r.heuristic})]


@command("lfun-moment", "weighted second moment of L_V on the critical line",
         "int |L_V(1/2+it)|^2 g(t) dt with L_V from the smoothed series (heuristic) and g Gaussian.",
         [FORM, Param("center", float, 20.0, "weight centre T0"), Param("width", float, 5.0, "weight width"),
          Param("X", float, 100.0, "smoothing cutoff"), Param("tol", float, 1e-10, "damping tolerance")],
         quadrature=True)
def _lfun_moment(p):
    r = lfunction.l_moment(_form(p["form"]), zeta.WeightSpec(p["center"], p["width"]), p["X"], _quad_spec(p), p["tol"])
    return [({"value": r.value}, {"error": r.error, "support_lo": r.support[0], "support_hi": r.support[1],
                                  "evaluations": r.evaluations, "heuristic": True})]


SEED = Param("alpha", float, 2.0, "seed decay exponent (>= 1)")


@command("kirillov-expand", "the function generated by the Kirillov seed",
         "y^{alpha+1/2} sum_n rho(n) n^alpha e(n(x+iy)), the vector whose Kirillov image is "
         "u^{alpha+1/2} exp(-2 pi u).",
         [FORM, SEED, Param("x", float, 0.0, "x"), Param("y", float, 0.5, "y > 0"),
          Param("N-trunc", int, None, "truncation (default: automatic)"), Param("tol", float, kirillov.DEFAULT_TOL, "tail tolerance")])
def _kirillov(p):
    r = kirillov.kirillov_seed_expansion(_form(p["form"]), kirillov.SeedSpec(p["alpha"]), p["x"], p["y"],
                                         p["N_trunc"], p["tol"])
    return [({"value": r.value}, {"tail_bound": r.tail_bound, "n_trunc": r.n_trunc})]


@command("shifted-coefficient", "m-th Fourier coefficient of |F|^2 by two routes",
         "The closed shifted sum y^{2a+1} sum rho(n) rho(n+m) (n(n+m))^a e^{-2 pi (2n+m) y} and the "
         "x-quadrature of |F(x+iy)|^2 e(-mx) for the seed-generated F.",
         [FORM, SEED, Param("m", int, 1, "shift >= 0"), Param("y", float, 0.1, "height"),
          Param("N-trunc", int, None, "truncation (default: automatic)"), Param("tol", float, kirillov.DEFAULT_TOL, "tail tolerance"),
          Param("scheme", str, "fixed", "x-quadrature: exact periodic trapezoid or adaptive", ("fixed", "adaptive"))],
         quadrature=True)
def _shifted_coefficient(p):
    spec = None
    if p["scheme"] == "adaptive":
        spec = _quad_spec(p, QuadratureSpec(abs_tol=1e-13))
    r = kirillov.shifted_fourier_coefficient(_form(p["form"]), kirillov.SeedSpec(p["alpha"]), p["m"], p["y"],
                                             p["N_trunc"], p["tol"], spec)
    return [({"closed_form": r.closed_form, "quadrature": r.quadrature},
             {"difference": r.difference, "n_trunc": r.n_trunc, "tail_bound": r.tail_bound})]


@command("shifted-convolution", "shifted convolution sum rho(n) rho(n+m) W(n/m)",
         "sum_{n<=N} rho(n) rho(n+m) W(n/m).  --window induced uses the window generated by "
         "integrating the shifted Fourier coefficient against a Gaussian h(y) and also reports that "
         "y-integrated route.",
         [FORM, Param("m", int, 1, "shift >= 1"), Param("N-trunc", int, None, "truncation (default: N_coeff - m)"),
          *(Param(q.name, q.type, q.default, q.help, ("constant", "indicator", "gaussian", "rational", "induced"))
            if q.name == "window" else q for q in WINDOW),
          SEED, Param("h-center", float, 0.15, "induced: centre of h(y)"),
          Param("h-width", float, 0.03, "induced: width of h(y)")])
def _shifted_convolution(p):
    f = _form(p["form"])
    if p["window"] != "induced":
        W = _window(p)
        return [({"value": kirillov.shifted_convolution(f, p["m"], W, p["N_trunc"])}, {})]
    seed = kirillov.SeedSpec(p["alpha"])
    h = kirillov.HeightWeight("gaussian", center=p["h_center"], width=p["h_width"])
    N = p["N_trunc"] or min(300, f.N_coeff - p["m"])
    v = kirillov.shifted_convolution(f, p["m"], kirillov.induced_window(seed, p["m"], h), N)
    y_route = kirillov.integrated_shifted_coefficient(f, seed, p["m"], h, N)
    return [({"value": v, "y_integrated": y_route}, {"difference": abs(v - y_route), "n_trunc": N})]


@command("orthogonality", "int_0^1 e(nx) conj(e((n+m)x)) dx",
         "Quadrature of the additive-character inner product, which equals 1 for m = 0 and 0 otherwise.",
         [Param("n", int, required=True, help="frequency n"), Param("m", int, required=True, help="shift m")],
         quadrature=True)
def _orthogonality(p):
    v = kirillov.fourier_orthogonality(p["n"], p["m"], _quad_spec(p))
    expected = 1.0 if p["m"] == 0 else 0.0
    return [({"value": v}, {"deviation": abs(v - expected)})]


# ---------------------------------------------------------------------------
# Parsing and dispatch

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CLIError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zetawork", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key=value parameter file (flags win)")
    common.add_argument("--out", help="output path ('-' for stdout)")
    common.add_argument("--format", choices=FORMATS, default="csv", help="output format (default csv)")
    common.add_argument("--timing", action="store_true", help="record wall-clock duration (breaks byte-identical reruns)")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    for cmd in COMMANDS.values():
        sp = sub.add_parser(cmd.name, help=cmd.summary, description=cmd.description, parents=[common])
        for prm in cmd.params + (QUAD_PARAMS if cmd.quadrature else ()):
            default = "" if prm.default is None else f" (default {prm.default})"
            if prm.choices:
                default = " {" + ",".join(map(str, prm.choices)) + "}" + default
            sp.add_argument(f"--{prm.name}", dest=prm.dest, type=prm.type, default=None, choices=prm.choices,
                            metavar=prm.name.upper().replace("-", "_"),
                            help=prm.help + (" [required]" if prm.required else default))
    return parser


def read_config(path: str) -> dict[str, str]:
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise CLIError(f"cannot read config {path}: {exc.strerror or exc}") from None
    for i, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise CLIError(f"config line {i}: expected key=value")
        out[key.strip().lstrip("-").replace("-", "_")] = val.strip()
    return out


def resolve_params(cmd: Command, args: argparse.Namespace) -> dict:
    params = cmd.params + (QUAD_PARAMS if cmd.quadrature else ())
    config = read_config(args.config) if args.config else {}
    known = {prm.dest for prm in params}
    unknown = sorted(set(config) - known)
    if unknown:
        raise CLIError(f"unknown config key(s) for {cmd.name}: {', '.join(unknown)}")
    resolved = {}
    for prm in params:
        v = getattr(args, prm.dest)
        if v is None and prm.dest in config:
            try:
                v = prm.type(config[prm.dest])
            except (ValueError, TypeError, ValidationError) as exc:
                raise CLIError(f"config key {prm.dest}: {exc}") from None
            if prm.choices is not None and v not in prm.choices:
                raise CLIError(f"config key {prm.dest}: {v!r} not in {list(prm.choices)}")
        if v is None:
            if prm.required:
                raise CLIError(f"missing required parameter --{prm.name}")
            v = prm.default
        resolved[prm.dest] = v
    return resolved


def _echo(v):
    if isinstance(v, lattice.IntMatrix2):
        return "{},{},{},{}".format(*v.as_tuple())
    return v


def run(argv: list[str]) -> tuple[list[ResultRecord], argparse.Namespace]:
    args = build_parser().parse_args(argv)
    if args.command is None:
        raise CLIError("no command given")
    cmd = COMMANDS[args.command]
    params = resolve_params(cmd, args)
    inputs = {k: _echo(v) for k, v in params.items()}
    eid = experiment_id(cmd.name, inputs)
    t0 = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        results = cmd.run(params)
    elapsed = time.perf_counter() - t0 if args.timing else None
    notes = "; ".join(sorted({str(w.message) for w in caught}))
    records = []
    for outputs, diag in results:
        if notes:
            diag = {**diag, "warnings": notes}
        records.append(ResultRecord(eid, cmd.name, inputs, outputs, diag, elapsed))
    return records, args


def _output_path(args, records) -> Optional[str]:
    if args.out:
        return args.out
    base = os.environ.get(ENV_OUTPUT_DIR)
    if base:
        eid = records[0].experiment_id if records else "empty"
        return os.path.join(base, f"{args.command}-{eid}.{args.format}")
    return None


def _fail(kind: str, command: Optional[str], reason: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "command": command, "reason": reason}) + "\n")
    return code


def main(argv: Optional[list[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    command_name = next((a for a in argv if a in COMMANDS), None)
    try:
        records, args = run(argv)
        emit_results(records, args.format, _output_path(args, records))
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except ValidationError as exc:
        return _fail("validation", command_name, str(exc), 2)
    except NumericalError as exc:
        return _fail("numerical", command_name, str(exc), 1)
    except OSError as exc:
        return _fail("io", command_name, str(exc), 2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
