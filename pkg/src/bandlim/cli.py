"""Command-line front end: reproducible experiments with CSV/JSON output.

All floats are printed with 17 significant digits; output is UTF-8 with LF
line endings so identical configurations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import analysis, approximation, functions, kernels
from .quadrature import QuadratureNonConvergence, QuadratureSpec

_SUBCOMMANDS = ("converge", "lemma2", "counterexample", "inequalities",
                "coeffs", "lewitan")

_LEMMA2_DEFAULT_SIGMAS = (0.5, 1.0, math.pi, 5.0)
_LEMMA2_DEFAULT_TAUS = (1.0, 5.0, 10.0, 40.0)
_LEMMA2_DEFAULT_DELTAS = (0.0, 0.25, 0.5, 0.9)


class UsageError(ValueError):
    """Invalid flags or parameter values; maps to exit status 2."""


@dataclass
class RunConfig:
    subcommand: str
    function_id: Optional[str] = None
    p: float = 2.0
    delta: float = 0.5
    tau_list: list = field(default_factory=list)
    m_list: list = field(default_factory=list)
    sigma: Optional[float] = None
    x_list: list = field(default_factory=list)
    K: int = 0
    n_points: int = 1000
    normalization: str = "verbatim"
    output_path: Optional[str] = None
    format: str = "csv"
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _parse_float_list(text: str, flag: str) -> list:
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            out.append(_parse_number(item))
        except ValueError as exc:
            raise UsageError(f"{flag}: {exc}") from exc
    if not out:
        raise UsageError(f"{flag} requires at least one value")
    return out


def _parse_number(item: str) -> float:
    # Accept pi-expressions like "pi/2+2*pi" for convenience in tau lists.
    if any(ch not in "0123456789.+-*/()pie " for ch in item):
        raise ValueError(f"malformed number {item!r}")
    if "pi" in item or "e" in item:
        try:
            return float(eval(item, {"__builtins__": {}},
                              {"pi": math.pi, "e": math.e}))
        except Exception as exc:
            raise ValueError(f"malformed number {item!r}") from exc
    return float(item)


def _parse_m_list(text: str) -> list:
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ".." in item:
            lo, _, hi = item.partition("..")
            try:
                lo_i, hi_i = int(lo), int(hi)
            except ValueError as exc:
                raise UsageError(f"--m: malformed range {item!r}") from exc
            if hi_i < lo_i:
                raise UsageError(f"--m: empty range {item!r}")
            out.extend(range(lo_i, hi_i + 1))
        else:
            try:
                out.append(int(item))
            except ValueError as exc:
                raise UsageError(f"--m: malformed integer {item!r}") from exc
    if not out:
        raise UsageError("--m requires at least one value")
    if any(m < 1 for m in out):
        raise UsageError("--m values must be positive integers")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bandlim",
        description="Trigonometric-sum approximation experiments for "
                    "bandlimited functions")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(sp):
        sp.add_argument("--output", dest="output_path", default=None,
                        help="output file path (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--abs-tol", type=float, default=1e-10)
        sp.add_argument("--rel-tol", type=float, default=1e-10)
        sp.add_argument("--max-depth", type=int, default=40)

    sp = sub.add_parser("converge", help="truncation-error decay study")
    sp.add_argument("--fn", required=True, help="catalog id, e.g. sinc:sigma=1")
    sp.add_argument("--p", type=float, default=2.0)
    sp.add_argument("--tau", required=True, help="comma-separated tau ladder")
    add_common(sp)

    sp = sub.add_parser("lemma2", help="kernel-gap bound scan")
    sp.add_argument("--sigma", default=None)
    sp.add_argument("--tau", default=None)
    sp.add_argument("--delta", default=None)
    sp.add_argument("--n-points", type=int, default=1000)
    add_common(sp)

    sp = sub.add_parser("counterexample", help="p = inf counterexample run")
    sp.add_argument("--m", required=True, help="e.g. 1..5 or 1,3,7")
    add_common(sp)

    sp = sub.add_parser("inequalities", help="inequality checker matrix")
    add_common(sp)

    sp = sub.add_parser("coeffs", help="Fourier coefficients of f_tau")
    sp.add_argument("--fn", required=True)
    sp.add_argument("--tau", required=True)
    add_common(sp)

    sp = sub.add_parser("lewitan", help="Lewitan periodization values")
    sp.add_argument("--fn", required=True)
    sp.add_argument("--tau", required=True)
    sp.add_argument("--x", required=True, help="comma-separated abscissae")
    sp.add_argument("--K", type=int, default=0, help="cutoff (0 = auto)")
    sp.add_argument("--normalization", choices=("verbatim", "classical"),
                    default="verbatim")
    add_common(sp)

    return parser


def parse_args(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    try:
        quad = QuadratureSpec(abs_tol=ns.abs_tol, rel_tol=ns.rel_tol,
                              max_depth=ns.max_depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    cfg = RunConfig(subcommand=ns.subcommand, output_path=ns.output_path,
                    format=ns.format, quad=quad)

    if ns.subcommand == "converge":
        cfg.function_id = ns.fn
        cfg.p = ns.p
        if not 1 < cfg.p < math.inf:
            raise UsageError("p must satisfy 1 < p < inf")
        cfg.tau_list = _parse_float_list(ns.tau, "--tau")
        if cfg.tau_list != sorted(cfg.tau_list):
            raise UsageError("--tau values must be increasing")
        if any(t <= 0 for t in cfg.tau_list):
            raise UsageError("--tau values must be positive")
    elif ns.subcommand == "lemma2":
        given = (ns.sigma, ns.tau, ns.delta)
        if any(v is not None for v in given) and not all(v is not None
                                                        for v in given):
            raise UsageError("lemma2 needs --sigma, --tau and --delta "
                             "together (or none for the default matrix)")
        if ns.sigma is not None:
            cfg.sigma = _parse_float_list(ns.sigma, "--sigma")[0]
            cfg.tau_list = [_parse_float_list(ns.tau, "--tau")[0]]
            cfg.delta = _parse_float_list(ns.delta, "--delta")[0]
            if cfg.sigma <= 0 or cfg.tau_list[0] <= 0:
                raise UsageError("sigma and tau must be positive")
            if not 0 <= cfg.delta < 1:
                raise UsageError("delta must lie in [0, 1)")
        if ns.n_points < 1000:
            raise UsageError("--n-points must be at least 1000")
        cfg.n_points = ns.n_points
    elif ns.subcommand == "counterexample":
        cfg.m_list = _parse_m_list(ns.m)
    elif ns.subcommand == "coeffs":
        cfg.function_id = ns.fn
        cfg.tau_list = [_parse_float_list(ns.tau, "--tau")[0]]
        if cfg.tau_list[0] <= 0:
            raise UsageError("--tau must be positive")
    elif ns.subcommand == "lewitan":
        cfg.function_id = ns.fn
        cfg.tau_list = [_parse_float_list(ns.tau, "--tau")[0]]
        if cfg.tau_list[0] <= 0:
            raise UsageError("--tau must be positive")
        cfg.x_list = _parse_float_list(ns.x, "--x")
        if ns.K < 0:
            raise UsageError("--K must be nonnegative")
        cfg.K = ns.K
        cfg.normalization = ns.normalization

    if cfg.function_id is not None:
        try:
            functions.from_id(cfg.function_id)
        except functions.UnknownFunctionError as exc:
            raise UsageError(f"--fn: {exc}") from exc
    return cfg


def _run_converge(cfg: RunConfig):
    f = functions.from_id(cfg.function_id)
    records = analysis.convergence_study(f, cfg.p, cfg.tau_list, cfg.quad)
    columns = ["tau", "p", "interior", "interior_err", "tail", "total",
               "sup_cert", "sup_grid"]
    rows = [[r.tau, r.p, r.interior_error.value, r.interior_error.error_bound,
             r.tail_error.value, r.total_error,
             r.sup_error.certified_bound, r.sup_error.grid_max]
            for r in records]
    return columns, rows


def _run_lemma2(cfg: RunConfig):
    if cfg.sigma is not None:
        cells = [(cfg.sigma, cfg.tau_list[0], cfg.delta)]
    else:
        cells = [(s, t, d)
                 for s in _LEMMA2_DEFAULT_SIGMAS
                 for t in _LEMMA2_DEFAULT_TAUS
                 for d in _LEMMA2_DEFAULT_DELTAS]
    columns = ["sigma", "tau", "delta", "n_points", "observed_max", "argmax",
               "bound", "ratio"]
    rows = []
    for s, t, d in cells:
        rep = kernels.kernel_gap_scan(s, t, d, cfg.n_points)
        rows.append([rep.sigma, rep.tau, rep.delta, rep.n_points,
                     rep.observed_max, rep.argmax, rep.bound, rep.ratio])
    return columns, rows


def _run_counterexample(cfg: RunConfig):
    results = analysis.counterexample_run(cfg.m_list)
    columns = ["m", "tau", "imag_gap"]
    rows = [[m, tau, gap] for m, (tau, gap) in zip(cfg.m_list, results)]
    return columns, rows


def _inequality_matrix(quad: QuadratureSpec):
    sinc1 = functions.make_sinc(1.0)
    fejer2 = functions.make_fejer_square(2.0)
    checks = []
    for f in (sinc1, fejer2):
        for y in (0.0, 0.5, 1.0, 2.0):
            checks.append(analysis.check_plancherel_polya(f, y, 2.0, quad))
    for r1, r2 in ((2.0, 2.0), (2.0, 4.0), (2.0, math.inf)):
        checks.append(analysis.check_nikolskii(sinc1, r1, r2, quad))
    for r1, r2 in ((1.0, 1.0), (1.0, 2.0), (1.0, math.inf), (2.0, math.inf)):
        checks.append(analysis.check_nikolskii(fejer2, r1, r2, quad))
    for tau in (10.0, 40.0):
        a = analysis.exp_coefficients(tau)
        checks.append(analysis.check_poly_nikolskii(a, 2.0, quad))
    for p in (1.5, 2.0):
        a = approximation.fourier_coefficients(sinc1, 10.0, quad)
        checks.append(analysis.check_poly_nikolskii(a, p, quad))
    return checks


def _run_inequalities(cfg: RunConfig):
    columns = ["check", "function", "params", "lhs", "rhs", "margin"]
    rows = []
    for c in _inequality_matrix(cfg.quad):
        params = ";".join(f"{k}={_fmt(float(v))}" for k, v in c.params.items())
        rows.append([c.name, c.function_id, params, c.lhs, c.rhs, c.margin])
    return columns, rows


def _run_coeffs(cfg: RunConfig):
    f = functions.from_id(cfg.function_id)
    a = approximation.fourier_coefficients(f, cfg.tau_list[0], cfg.quad)
    columns = ["k", "re", "im", "abs_error"]
    rows = [[k - a.N, float(c.real), float(c.imag), cfg.quad.abs_tol]
            for k, c in enumerate(a.coefficients)]
    return columns, rows, a


def _run_lewitan(cfg: RunConfig):
    f = functions.from_id(cfg.function_id)
    columns = ["x", "re", "im", "tail_bound"]
    rows = []
    for x in cfg.x_list:
        value, tail = approximation.lewitan(f, cfg.tau_list[0], x, cfg.K,
                                            cfg.normalization)
        value = complex(value)
        rows.append([x, value.real, value.imag, tail])
    return columns, rows


def _write_csv(out, columns, rows):
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def _json_document(cfg: RunConfig, columns, rows) -> dict:
    params = {"quad": {"abs_tol": cfg.quad.abs_tol,
                       "rel_tol": cfg.quad.rel_tol,
                       "max_depth": cfg.quad.max_depth}}
    if cfg.function_id is not None:
        params["fn"] = cfg.function_id
    if cfg.tau_list:
        params["tau"] = cfg.tau_list
    if cfg.m_list:
        params["m"] = cfg.m_list
    return {"subcommand": cfg.subcommand, "params": params,
            "columns": columns,
            "rows": [[v if not isinstance(v, float) else float(_fmt(v))
                      for v in row] for row in rows]}


def run(cfg: RunConfig) -> int:
    """Execute a validated config; returns the process exit status."""
    try:
        approximant = None
        if cfg.subcommand == "converge":
            columns, rows = _run_converge(cfg)
        elif cfg.subcommand == "lemma2":
            columns, rows = _run_lemma2(cfg)
        elif cfg.subcommand == "counterexample":
            columns, rows = _run_counterexample(cfg)
        elif cfg.subcommand == "inequalities":
            columns, rows = _run_inequalities(cfg)
        elif cfg.subcommand == "coeffs":
            columns, rows, approximant = _run_coeffs(cfg)
        elif cfg.subcommand == "lewitan":
            columns, rows = _run_lewitan(cfg)
        else:
            raise UsageError(f"unknown subcommand {cfg.subcommand!r}")
    except (QuadratureNonConvergence, ValueError) as exc:
        print(f"bandlim {cfg.subcommand}: {exc}", file=sys.stderr)
        return 1

    buf = io.StringIO()
    if cfg.format == "json":
        if cfg.subcommand == "coeffs":
            # The coeffs JSON form is the approximant save/load document.
            json.dump(approximant.to_json_dict(), buf, indent=2)
        else:
            json.dump(_json_document(cfg, columns, rows), buf, indent=2)
        buf.write("\n")
    else:
        _write_csv(buf, columns, rows)

    text = buf.getvalue()
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(f"bandlim: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
