"""Command-line front end.

Every command writes CSV or JSON to ``--out`` (stdout by default); floats are
printed with 15 significant digits, JSON keys are sorted and lines end in LF.
Exit status: 0 success, 1 numerical failure, 2 invalid input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from . import curves, equilibrium, polyeval, regimes, transition, verify, zerofind
from .params import (
    ParameterError,
    ParamsClassical,
    ParamsFirst,
    ParamsSecond,
    rec_coeffs_classical,
    rec_coeffs_first,
    rec_coeffs_second,
)

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2

DEFAULTS: Dict[str, Any] = {
    "kind": "first",
    "beta": 1.0,
    "beta1": 1.2,
    "beta2": 1.9,
    "c": None,
    "c1": None,
    "c2": None,
    "n": None,
    "grid": 96,
    "tol": 1e-3,
    "out": None,
    "format": None,
    "t": None,
    "suite": None,
    "what": "density",
    "step": 0.01,
}


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    kind: str
    beta: float
    beta1: float
    beta2: float
    c: Optional[float]
    c1: Optional[float]
    c2: Optional[float]
    n: Optional[List[int]]
    grid: int
    tol: float
    out: Optional[str]
    format: Optional[str]
    t: Optional[List[float]] = None
    suite: Optional[str] = None
    what: str = "density"
    step: float = 0.01
    extra: Dict[str, Any] = field(default_factory=dict)

    def params(self):
        if self.kind == "first":
            if self.c1 is None or self.c2 is None:
                raise UsageError("first kind needs --c1 and --c2")
            return ParamsFirst(self.beta, self.c1, self.c2)
        if self.kind == "second":
            if self.c is None:
                raise UsageError("second kind needs --c")
            return ParamsSecond(self.beta1, self.beta2, self.c)
        if self.kind == "classical":
            if self.c is None:
                raise UsageError("classical kind needs --c")
            return ParamsClassical(self.beta, self.c)
        raise UsageError(f"unknown kind {self.kind!r}")

    def single_n(self, default: Optional[int] = None) -> int:
        if not self.n:
            if default is None:
                raise UsageError("--n is required")
            return default
        if len(self.n) != 1:
            raise UsageError("this command takes a single --n")
        if self.n[0] < 0:
            raise UsageError("--n must be nonnegative")
        return self.n[0]


# ---------------------------------------------------------------------------
# formatting


def fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if math.isnan(v):
        return "nan"
    s = f"{v:.15g}"
    return "0" if s == "-0" else s


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (complex, np.complexfloating)):
        return [_jsonable(v.real), _jsonable(v.imag)]
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if not math.isfinite(v):
            return None
        return float(f"{v:.15g}")
    return v


def to_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def to_csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows([fmt(v) for v in r] for r in rows)
    return buf.getvalue()


def _emit(cfg: RunConfig, text: str, path: Optional[str] = None) -> None:
    path = path or cfg.out
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)


def _branch_summary(bs: curves.BranchSet) -> dict:
    return {"real": list(bs.real_points),
            "complex_pair": None if bs.complex_pair is None else list(bs.complex_pair)}


# ---------------------------------------------------------------------------
# commands


def cmd_coeffs(cfg: RunConfig) -> int:
    p = cfg.params()
    n = cfg.single_n()
    rows = []
    for k in range(n + 1):
        if cfg.kind == "classical":
            b, c, d = rec_coeffs_classical(k, p)
            rows.append((k, 0, b, c, d))
        else:
            rf = rec_coeffs_first if cfg.kind == "first" else rec_coeffs_second
            rows.append((k, k, *rf((k, k), p)))
    _emit(cfg, to_csv(("n1", "n2", "b", "c", "d"), rows))
    return EXIT_OK


def _degree(cfg: RunConfig, n: int) -> int:
    return n if cfg.kind == "classical" else 2 * n


def cmd_gen(cfg: RunConfig) -> int:
    p = cfg.params()
    N = _degree(cfg, cfg.single_n())
    if N > polyeval.COEFF_DEGREE_LIMIT:
        raise UsageError(f"coefficient form is limited to degree {polyeval.COEFF_DEGREE_LIMIT}")
    seq = polyeval.build_stepline(cfg.kind, p, N)
    rows = []
    for k, poly in enumerate(seq.polys):
        n1, n2 = seq.index(k)
        rows.extend((k, n1, n2, j, a) for j, a in enumerate(poly.coeffs))
    _emit(cfg, to_csv(("k", "n1", "n2", "power", "coeff"), rows))
    return EXIT_OK


def cmd_zeros(cfg: RunConfig) -> int:
    p = cfg.params()
    n = cfg.single_n()
    k = _degree(cfg, n)
    z = zerofind.zeros_of(polyeval.build_stepline(cfg.kind, p, k), k)
    rows = [(i, x, x / z.scale_n) for i, x in enumerate(z.zeros)]
    _emit(cfg, to_csv(("index", "x", "t"), rows))
    return EXIT_OK


def cmd_density(cfg: RunConfig) -> int:
    p = cfg.params()
    d = curves.density_lambda(p, cfg.kind, cfg.grid)
    order = np.argsort(d.xs)
    xs, vals = d.xs[order], d.values[order]
    summary = {"kind": cfg.kind, "e_points": list(d.e_points), "mass": d.mass,
               "saturation_end": d.saturation_end, "support": list(d.support)}
    if cfg.format == "json":
        summary.update({"x": list(xs), "density": list(vals)})
        _emit(cfg, to_json(summary))
        return EXIT_OK
    _emit(cfg, to_csv(("x", "density"), zip(xs, vals)))
    if cfg.out is not None:
        _emit(cfg, to_json(summary), cfg.out + ".summary.json")
    return EXIT_OK


def cmd_classify(cfg: RunConfig) -> int:
    if cfg.c1 is None or cfg.c2 is None:
        raise UsageError("classify needs --c1 and --c2")
    ParamsFirst(cfg.beta, cfg.c1, cfg.c2)
    lab = regimes.classify(cfg.c1, cfg.c2, cfg.tol)
    _emit(cfg, to_json({"label": lab.label, "branch_points": _branch_summary(lab.branch_summary),
                        "n_boundary_residual": regimes.n_boundary_residual(cfg.c1, cfg.c2),
                        "c1": cfg.c1, "c2": cfg.c2, "tol": cfg.tol}))
    return EXIT_OK


def cmd_gamma(cfg: RunConfig) -> int:
    if cfg.c1 is None or cfg.c2 is None:
        raise UsageError("gamma needs --c1 and --c2")
    ParamsFirst(cfg.beta, cfg.c1, cfg.c2)
    g = curves.trace_gamma(cfg.c1, cfg.c2, cfg.step)
    rows = [(z.real, z.imag, s, f) for z, s, f in zip(g.points, g.arclength, g.density)]
    _emit(cfg, to_csv(("re", "im", "arclength", "density"), rows))
    return EXIT_OK


def cmd_asymptotics(cfg: RunConfig) -> int:
    p = cfg.params()
    if cfg.kind == "classical":
        raise UsageError("asymptotics are implemented for the multiple kinds")
    ns = cfg.n or [50, 100, 200]
    ts = cfg.t or [-1.0]
    rows = []
    for t in ts:
        for n in ns:
            if n <= 0:
                raise UsageError("--n must be positive")
            mt = transition.main_term(n * t, n, p, cfg.kind)
            err = transition.asymptotic_discrepancy(t, n, p, cfg.kind)
            rows.append((t, n, mt, err))
    _emit(cfg, to_csv(("t", "n", "main_term", "error"), rows))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    names = list(verify.SUITES) if cfg.suite == "all" else [cfg.suite]
    if cfg.suite is None or any(s not in verify.SUITES for s in names):
        raise UsageError(f"unknown suite {cfg.suite!r}; choose from "
                         f"{', '.join(['all', *verify.SUITES])}")
    reports = [verify.run_suite(s) for s in names]
    ok = all(r["passed"] for r in reports)
    _emit(cfg, to_json({"passed": ok, "suites": reports}))
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_plot(cfg: RunConfig) -> int:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "multimeixner"
    matplotlib.rcParams["svg.fonttype"] = "none"
    fig, ax = plt.subplots(figsize=(6, 4))
    if cfg.what == "density":
        p = cfg.params()
        d = curves.density_lambda(p, cfg.kind, cfg.grid)
        o = np.argsort(d.xs)
        ax.plot(d.xs[o], d.values[o], lw=1.2)
        for e in d.e_points:
            ax.axvline(e, ls=":", lw=0.8, color="gray")
            ax.annotate(f"{e:.4g}", (e, 1.02), ha="center", fontsize=7)
        ax.set_xlabel("x")
        ax.set_ylabel("density")
    elif cfg.what == "gamma":
        if cfg.c1 is None or cfg.c2 is None:
            raise UsageError("plot --what gamma needs --c1 and --c2")
        g = curves.trace_gamma(cfg.c1, cfg.c2, cfg.step)
        bs = curves.branch_points(ParamsFirst(cfg.beta, cfg.c1, cfg.c2))
        ax.plot(g.points.real, g.points.imag, lw=1.2)
        ax.plot([0, bs.e2], [0, 0], lw=2.0, color="k")
        for e in bs.all_points():
            ax.plot(e.real, e.imag, "o", ms=3, color="C3")
            ax.annotate(f"{e.real:.3g}{e.imag:+.3g}i", (e.real, e.imag), fontsize=7)
        ax.set_aspect("equal", adjustable="datalim")
        ax.set_xlabel("Re z")
        ax.set_ylabel("Im z")
    elif cfg.what == "regimes":
        pts = np.array(regimes.gn_boundary_points(samples=400))
        ax.plot(pts[:, 0], pts[:, 1], lw=1.0, label="GN boundary")
        ax.plot(pts[:, 1], pts[:, 0], lw=1.0, color="C0")
        c2 = np.linspace(1e-3, 0.999, 400)
        lo, hi = regimes.nikishin_bounds(c2)
        m = hi < 1
        ax.plot(hi[m], c2[m], lw=1.0, color="C1", label="N boundary")
        ax.plot(lo, c2, lw=1.0, color="C1")
        ax.set_xlim(0, 1)
        ax.set_ylim(0, 1)
        ax.set_xlabel("c1")
        ax.set_ylabel("c2")
        ax.legend(fontsize=7)
    else:
        raise UsageError(f"unknown plot {cfg.what!r}")
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    _emit(cfg, buf.getvalue())
    return EXIT_OK


COMMANDS = {
    "coeffs": cmd_coeffs,
    "gen": cmd_gen,
    "zeros": cmd_zeros,
    "density": cmd_density,
    "classify": cmd_classify,
    "gamma": cmd_gamma,
    "asymptotics": cmd_asymptotics,
    "verify": cmd_verify,
    "plot": cmd_plot,
}


# ---------------------------------------------------------------------------
# argument handling


def _int_list(s: str) -> List[int]:
    return [int(v) for v in s.split(",") if v.strip()]


def _float_list(s: str) -> List[float]:
    return [float(v) for v in s.split(",") if v.strip()]


def _shared(p: argparse.ArgumentParser) -> None:
    # defaults stay None so that config-file values can fill the gaps
    p.add_argument("--kind", choices=("first", "second", "classical"))
    p.add_argument("--beta", type=float)
    p.add_argument("--beta1", type=float)
    p.add_argument("--beta2", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--c1", type=float)
    p.add_argument("--c2", type=float)
    p.add_argument("--n", type=_int_list, help="index n, or a comma list for asymptotics")
    p.add_argument("--grid", type=int, help="quadrature nodes per panel")
    p.add_argument("--tol", type=float)
    p.add_argument("--out", help="output file (stdout if omitted)")
    p.add_argument("--format", choices=("csv", "json", "svg"))
    p.add_argument("--config", help="JSON file with flag values; flags win")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="multimeixner",
                                 description="Multiple Meixner polynomials: recurrences, zeros, "
                                             "spectral curves and limiting densities.")
    sub = ap.add_subparsers(dest="command", required=True)
    helps = {
        "coeffs": "recurrence coefficients along the diagonal",
        "gen": "coefficients of the stepline polynomials",
        "zeros": "zeros of M_{n,n} (or the classical M_n)",
        "density": "limiting zero density",
        "classify": "regime of a first-kind pair (c1, c2)",
        "gamma": "S-curve joining the complex branch pair",
        "asymptotics": "main term of the nth-root asymptotics",
        "verify": "run a named check suite",
        "plot": "SVG figure of a density, the S-curve or the regime map",
    }
    for name, h in helps.items():
        sp = sub.add_parser(name, help=h)
        _shared(sp)
        if name == "asymptotics":
            sp.add_argument("--t", type=_float_list, help="comma list of t = x/n values")
        if name == "verify":
            sp.add_argument("--suite")
        if name in ("gamma", "plot"):
            sp.add_argument("--step", type=float, help="relative step of the curve tracer")
        if name == "plot":
            sp.add_argument("--what", choices=("density", "gamma", "regimes"))
    return ap


def make_config(ns: argparse.Namespace) -> RunConfig:
    values = dict(DEFAULTS)
    if getattr(ns, "config", None):
        try:
            with open(ns.config, encoding="utf-8") as fh:
                filed = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        if not isinstance(filed, dict):
            raise UsageError("config must be a JSON object")
        unknown = set(filed) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        if isinstance(filed.get("n"), int):
            filed["n"] = [filed["n"]]
        if isinstance(filed.get("t"), (int, float)):
            filed["t"] = [float(filed["t"])]
        values.update(filed)
    for k in DEFAULTS:
        v = getattr(ns, k, None)
        if v is not None:
            values[k] = v
    return RunConfig(command=ns.command, **values)


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        cfg = make_config(ns)
        if cfg.grid is not None and cfg.grid < 4:
            raise UsageError("--grid must be at least 4")
        return COMMANDS[cfg.command](cfg)
    except (UsageError, ParameterError, curves.SingularInput, zerofind.ComparisonError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (zerofind.ZeroCountError, curves.CurveError, equilibrium.QuadratureError,
            polyeval.TruncationError, ArithmeticError, np.linalg.LinAlgError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
