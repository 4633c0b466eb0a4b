"""Command-line surface: batch checkers with machine-readable reports.

Every subcommand writes a JSON report embedding its configuration, seed,
library versions, and wall time.  Exit codes: 0 all checks passed, 1 a
mathematical check failed (bound violated or residual over tolerance),
2 usage or input error.  Number formatting and key order are fixed, so
identical configurations reproduce identical reports (modulo the wall_time_s
field) and identical CSV files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import __version__, _jsonio, disk, embedding, hankel, rkt, search
from ._jsonio import SchemaError
from ._kernels import BACKEND
from .hardy import TrigPolynomial

__all__ = ["main", "run", "emit_heatmap"]

SUBCOMMANDS = (
    "gen-symbol",
    "verify-rkt",
    "lp-check",
    "green-check",
    "uchiyama-check",
    "proof-check",
    "search-extremal",
    "embed-test",
    "carleson-check",
)

USAGE_ERROR = 2


def _versions() -> dict:
    return {
        "hankelrkt": __version__,
        "numpy": np.__version__,
        "python": ".".join(map(str, sys.version_info[:3])),
        "kernel_backend": BACKEND,
    }


def _write_report(report: dict, path: str | None):
    text = _jsonio.dumps(report) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def emit_heatmap(entries, path: str):
    """CSV of (re(lambda), im(lambda), value) rows in deterministic order."""
    entries = list(entries)
    if not entries:
        raise ValueError("heatmap grid is empty")
    lines = ["re_lambda,im_lambda,value"]
    for lam, value in entries:
        lines.append(
            ",".join(
                _jsonio.format_float(x, _jsonio.CSV_FLOAT_DIGITS)
                for x in (lam.real, lam.imag, float(value))
            )
        )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError("$", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON in {path} at line {exc.lineno} column {exc.colno}") from exc


def _positive(kind):
    def parse(text):
        value = kind(text)
        if value <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return value

    return parse


def _nonnegative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _grid_from_args(args) -> rkt.LambdaGrid:
    kwargs = {}
    if getattr(args, "max_angles", None):
        kwargs["max_angles"] = args.max_angles
    if getattr(args, "refine_steps", None) is not None:
        kwargs["refine_steps"] = args.refine_steps
    return rkt.LambdaGrid(**kwargs)


def _symbol_from_args(args) -> hankel.HankelSymbol:
    if args.symbol is not None:
        return _jsonio.parse_symbol(_load_json(args.symbol))
    if not args.random:
        raise SchemaError("$", "provide --symbol FILE or --random")
    return rkt.random_symbol(args.seed, args.m, args.d, args.decay)


def _add_random_symbol_flags(p, default_m=8):
    p.add_argument("--symbol", help="path to a symbol JSON file")
    p.add_argument("--random", action="store_true", help="draw a random symbol instead")
    p.add_argument("--seed", type=_nonnegative_int, default=0)
    p.add_argument("--m", type=_positive(int), default=default_m)
    p.add_argument("--d", type=_positive(int), default=1)
    p.add_argument("--decay", type=float, default=0.0)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hankelrkt",
        description="Hankel-operator reproducing-kernel-testing laboratory",
    )
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("gen-symbol", help="emit a random symbol as JSON")
    p.add_argument("--seed", type=_nonnegative_int, default=0)
    p.add_argument("--m", type=_positive(int), default=8)
    p.add_argument("--d", type=_positive(int), default=1)
    p.add_argument("--decay", type=float, default=0.0)
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify-rkt", help="norm vs. kernel testing bound")
    _add_random_symbol_flags(p)
    p.add_argument("--max-angles", dest="max_angles", type=_positive(int), default=None)
    p.add_argument("--refine-steps", dest="refine_steps", type=_nonnegative_int, default=None)
    p.add_argument("--heatmap", default=None, help="also write a lambda-grid CSV heatmap")
    p.add_argument("--out", default=None)

    p = sub.add_parser("lp-check", help="Littlewood-Paley identity residual")
    p.add_argument("--degree", type=_positive(int), default=16)
    p.add_argument("--d", type=_positive(int), default=1)
    p.add_argument("--seed", type=_nonnegative_int, default=0)
    p.add_argument("--nr", type=_positive(int), default=disk.DEFAULT_NR)
    p.add_argument("--tolerance", type=_positive(float), default=1e-8)
    p.add_argument("--out", default=None)

    p = sub.add_parser("green-check", help="Green identity residual on a random polynomial")
    p.add_argument("--radial-degree", dest="radial_degree", type=_positive(int), default=40)
    p.add_argument("--seed", type=_nonnegative_int, default=0)
    p.add_argument("--nr", type=_positive(int), default=disk.DEFAULT_NR)
    p.add_argument("--tolerance", type=_positive(float), default=1e-8)
    p.add_argument("--out", default=None)

    p = sub.add_parser("uchiyama-check", help="subharmonic-weight ratio against e")
    _add_random_symbol_flags(p)
    p.add_argument("--f-degree", dest="f_degree", type=_nonnegative_int, default=8)
    p.add_argument("--nr", type=_positive(int), default=disk.DEFAULT_NR)
    p.add_argument("--out", default=None)

    p = sub.add_parser("proof-check", help="boundary-vs-area identity residual")
    _add_random_symbol_flags(p, default_m=4)
    p.add_argument("--degree", type=_positive(int), default=8)
    p.add_argument("--nr", type=_positive(int), default=disk.DEFAULT_NR)
    p.add_argument("--tolerance", type=_positive(float), default=1e-7)
    p.add_argument("--out", default=None)

    p = sub.add_parser("search-extremal", help="hill-climb the norm/testing-bound ratio")
    p.add_argument("--config", help="path to a search config JSON file")
    p.add_argument("--m", type=_positive(int), default=None)
    p.add_argument("--d", type=_positive(int), default=1)
    p.add_argument("--restarts", type=_positive(int), default=5)
    p.add_argument("--steps", type=_nonnegative_int, default=200)
    p.add_argument("--seed", type=_nonnegative_int, default=0)
    p.add_argument("--csv", default=None, help="write per-restart (step, ratio) CSV")
    p.add_argument("--out", default=None)

    p = sub.add_parser("embed-test", help="generalized embedding vs. 4e testing bound")
    p.add_argument("--measure", required=True, help="path to a measure JSON file")
    p.add_argument("--N", type=_positive(int), default=64)
    p.add_argument("--max-angles", dest="max_angles", type=_positive(int), default=None)
    p.add_argument("--refine-steps", dest="refine_steps", type=_nonnegative_int, default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("carleson-check", help="dyadic Carleson box constant of a measure")
    p.add_argument("--measure", required=True, help="path to a measure JSON file")
    p.add_argument("--out", default=None)

    return ap


def _report_shell(subcommand: str, config: dict) -> dict:
    return {
        "subcommand": subcommand,
        "config": config,
        "versions": _versions(),
    }


def _cmd_gen_symbol(args) -> tuple[dict, bool]:
    s = rkt.random_symbol(args.seed, args.m, args.d, args.decay)
    report = s.to_json_dict()
    return report, True


def _cmd_verify_rkt(args) -> tuple[dict, bool]:
    s = _symbol_from_args(args)
    if s.is_zero:
        raise SchemaError("$.gamma", "zero symbol: the ratio is undefined")
    grid = _grid_from_args(args)
    rep = rkt.verify_rkt(s, grid)
    if args.heatmap:
        pts = grid.points()
        vals = hankel.garsia_values(s, pts)
        emit_heatmap(zip(pts, vals), args.heatmap)
    report = _report_shell(
        "verify-rkt",
        {"seed": args.seed, "m": s.m, "d": s.dim, "grid_size": grid.size},
    )
    report.update(rep.to_json_dict())
    return report, rep.passed


def _cmd_lp_check(args) -> tuple[dict, bool]:
    rng = np.random.default_rng(args.seed)
    coeffs = (rng.standard_normal((args.degree + 1, args.d)) + 1j * rng.standard_normal((args.degree + 1, args.d)))
    f = TrigPolynomial(coeffs, 0)
    Q = disk.DiskQuadrature(n_r=args.nr, n_t=2 * args.degree + 8)
    residual = disk.littlewood_paley_residual(f, Q)
    passed = residual <= args.tolerance
    report = _report_shell(
        "lp-check",
        {"degree": args.degree, "d": args.d, "seed": args.seed, "nr": args.nr},
    )
    report.update({"identity": "littlewood-paley", "residual": residual, "tolerance": args.tolerance, "passed": passed})
    return report, passed


def _random_hermitian_poly(rng, half_degree: int) -> disk.PolyZZbar:
    raw = rng.standard_normal((half_degree + 1, half_degree + 1)) + 1j * rng.standard_normal(
        (half_degree + 1, half_degree + 1)
    )
    herm = 0.5 * (raw + np.conj(raw.T))
    return disk.PolyZZbar(herm)


def _cmd_green_check(args) -> tuple[dict, bool]:
    rng = np.random.default_rng(args.seed)
    U = _random_hermitian_poly(rng, args.radial_degree // 2)
    Q = disk.DiskQuadrature(n_r=args.nr, n_t=2 * U.max_angular_frequency + 8)
    residual = disk.green_residual(U, Q)
    passed = residual <= args.tolerance
    report = _report_shell(
        "green-check",
        {"radial_degree": args.radial_degree, "seed": args.seed, "nr": args.nr},
    )
    report.update({"identity": "green", "residual": residual, "tolerance": args.tolerance, "passed": passed})
    return report, passed


def _cmd_uchiyama_check(args) -> tuple[dict, bool]:
    s = _symbol_from_args(args)
    if s.is_zero:
        raise SchemaError("$.gamma", "zero symbol has no normalization")
    A, _ = rkt.sup_garsia(s)
    s = s.scaled(1.0 / A)
    rng = np.random.default_rng(args.seed + 1)
    f = TrigPolynomial(rng.standard_normal(args.f_degree + 1) + 1j * rng.standard_normal(args.f_degree + 1), 0)
    ratio = disk.uchiyama_ratio(s, f, n_r=args.nr)
    tolerance = 1e-6
    passed = -tolerance <= ratio <= math.e + tolerance
    report = _report_shell(
        "uchiyama-check",
        {"seed": args.seed, "m": s.m, "d": s.dim, "f_degree": args.f_degree, "nr": args.nr},
    )
    report.update({"identity": "uchiyama", "ratio": ratio, "bound": math.e, "tolerance": tolerance, "passed": passed})
    return report, passed


def _cmd_proof_check(args) -> tuple[dict, bool]:
    s = _symbol_from_args(args)
    rng = np.random.default_rng(args.seed + 2)
    f = TrigPolynomial(rng.standard_normal(args.degree + 1) + 1j * rng.standard_normal(args.degree + 1), 0)
    gc = rng.standard_normal((args.degree, s.dim)) + 1j * rng.standard_normal((args.degree, s.dim))
    g = TrigPolynomial(gc, 1)  # g(0) = 0
    residual = disk.proof_identity_residual(s, f, g, n_r=args.nr)
    passed = residual <= args.tolerance
    report = _report_shell(
        "proof-check",
        {"seed": args.seed, "m": s.m, "d": s.dim, "degree": args.degree, "nr": args.nr},
    )
    report.update({"identity": "boundary-vs-area", "residual": residual, "tolerance": args.tolerance, "passed": passed})
    return report, passed


def _cmd_search_extremal(args) -> tuple[dict, bool]:
    if args.config is not None:
        cfg = _jsonio.parse_search_config(_load_json(args.config))
    else:
        if args.m is None:
            raise SchemaError("$.m", "provide --config FILE or --m")
        cfg = search.SearchConfig(
            m=args.m, d=args.d, restarts=args.restarts, steps=args.steps, seed=args.seed
        )
    trace = search.search(cfg)
    if args.csv:
        lines = ["restart,step,ratio,accepted"]
        for r in trace.steps:
            lines.append(
                f"{r.restart},{r.step},{_jsonio.format_float(r.ratio, _jsonio.CSV_FLOAT_DIGITS)},{int(r.accepted)}"
            )
        with open(args.csv, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    report = _report_shell("search-extremal", cfg.to_json_dict())
    report.update(trace.to_json_dict())
    passed = not trace.bound_violated
    return report, passed


def _cmd_embed_test(args) -> tuple[dict, bool]:
    mu, family = _jsonio.parse_embedding_problem(_load_json(args.measure))
    grid = _grid_from_args(args)
    rep = embedding.rkt_embedding_test(mu, family, grid, args.N)
    report = _report_shell("embed-test", {"measure": args.measure, "N": args.N, "natoms": mu.natoms})
    report.update(rep.to_json_dict())
    return report, rep.passed


def _cmd_carleson_check(args) -> tuple[dict, bool]:
    mu, _family = _jsonio.parse_embedding_problem(_load_json(args.measure))
    constant = embedding.carleson_box_constant(mu)
    report = _report_shell("carleson-check", {"measure": args.measure, "natoms": mu.natoms})
    report.update({"dyadic_box_constant": constant, "passed": True})
    return report, True


_HANDLERS = {
    "gen-symbol": _cmd_gen_symbol,
    "verify-rkt": _cmd_verify_rkt,
    "lp-check": _cmd_lp_check,
    "green-check": _cmd_green_check,
    "uchiyama-check": _cmd_uchiyama_check,
    "proof-check": _cmd_proof_check,
    "search-extremal": _cmd_search_extremal,
    "embed-test": _cmd_embed_test,
    "carleson-check": _cmd_carleson_check,
}


def run(argv) -> int:
    """Execute one subcommand; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    started = time.perf_counter()
    try:
        report, passed = _HANDLERS[args.subcommand](args)
    except (SchemaError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR
    if args.subcommand != "gen-symbol":
        report["wall_time_s"] = time.perf_counter() - started
    _write_report(report, args.out)
    return 0 if passed else 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
