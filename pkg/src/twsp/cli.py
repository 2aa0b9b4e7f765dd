"""Command-line interface.

Subcommands::

    twsp decompose INPUT --k1 K --k2 K [--method twsp|sp|leverage|random|brute]
    twsp benchmark [--n N --m M --rank R --noise RATIO --k-min --k-max --k-step --seeds S]
    twsp convergence [INPUT | --n N --m M --rank R --noise RATIO] --k1 K --k2 K --seeds S
    twsp assign-channels INPUT --k1 K --k2 K --f F
    twsp kernel CLASS1 CLASS2 [CLASS2 ...] --output PATH

All indices written by these commands are 0-based. Data goes to files or
stdout, diagnostics to stderr. Exit status is 0 on success, 1 on a data or
validation failure and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from contextlib import contextmanager

import numpy as np

from . import __version__
from .applications import assign_top_f, cross_class_kernel
from .benchmark import BENCHMARK_FIELDS, CONVERGENCE_FIELDS, METHODS, run_method, trace_rows
from .cur import reconstruction_error
from .io import MatrixFormatError, read_matrix, write_matrix
from .synth import DEFAULT_NOISE_RATIO, SynthSpec, low_rank_plus_noise

logger = logging.getLogger("twsp")


@contextmanager
def _open_out(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=int, default=None, help="default 30*max(k1,k2)")
    p.add_argument("--tol", type=float, default=1e-8, help="saturation tolerance")
    p.add_argument("--window", type=int, default=None, help="saturation window, default 4*max(k1,k2)")
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument(
        "--matching-target", choices=("data", "residual", "null"), default=None,
        help="default: null for twsp, residual for sp",
    )
    p.add_argument("--residual", choices=("projected", "coupled"), default="projected")
    p.add_argument("--redraw", choices=("both", "accepted"), default="both")


def _input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "bin"), default=None,
                   help="matrix format; guessed from the extension when omitted")
    p.add_argument("--header", action="store_true", help="skip one CSV header row")


def _synth_flags(p: argparse.ArgumentParser, n=200, m=400, rank=10) -> None:
    p.add_argument("--n", type=int, default=n)
    p.add_argument("--m", type=int, default=m)
    p.add_argument("--rank", type=int, default=rank)
    p.add_argument("--noise", type=float, default=DEFAULT_NOISE_RATIO,
                   help="expected ||noise||_F / ||signal||_F")


def _run_kwargs(args) -> dict:
    return dict(
        max_iter=args.max_iter, saturation_tol=args.tol, saturation_window=args.window,
        matching_target=args.matching_target, restarts=args.restarts,
        residual=args.residual, redraw=args.redraw,
    )


def cmd_decompose(args) -> int:
    X = read_matrix(args.input, args.format, args.header)
    dec, rec, trace = run_method(X, args.method, args.k1, args.k2, args.seed, **_run_kwargs(args))
    result = {
        "method": args.method,
        "shape": list(X.shape),
        "k1": args.k1,
        "k2": args.k2,
        "seed": args.seed,
        "col_indices": dec.col_indices,
        "row_indices": dec.row_indices,
        "core": dec.core.tolist(),
        "normalized_error": rec.normalized_error,
        "reconstruction_error": reconstruction_error(X, dec.col_indices, dec.row_indices),
        "ms": rec.ms,
        "iterations": rec.iterations,
        "termination": rec.termination or None,
        "trace": None,
    }
    if trace is not None:
        result["trace"] = [
            {**row, "cols": list(r.cols), "rows": list(r.rows)}
            for row, r in zip(trace_rows(trace), trace.records)
        ]
    with _open_out(args.output) as fh:
        json.dump(result, fh, indent=1)
        fh.write("\n")
    return 0


def _k_values(args) -> list[int]:
    if args.k_min < 1 or args.k_max < args.k_min or args.k_step < 1:
        raise ValueError(f"invalid k sweep {args.k_min}..{args.k_max} step {args.k_step}")
    return list(range(args.k_min, args.k_max + 1, args.k_step))


def cmd_benchmark(args) -> int:
    ks = _k_values(args)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
    if args.seeds < 1:
        raise ValueError("--seeds must be positive")
    if ks[-1] > min(args.n, args.m):
        raise ValueError(f"k up to {ks[-1]} exceeds min(n, m) = {min(args.n, args.m)}")
    rows = []
    for seed in range(args.seed, args.seed + args.seeds):
        X = low_rank_plus_noise(SynthSpec.with_noise_ratio(args.n, args.m, args.rank, args.noise, seed))
        for k in ks:
            for method in methods:
                dec, rec, _ = run_method(X, method, k, k, seed, **_run_kwargs(args))
                rows.append((rec, dec))
                logger.info("%s k=%d seed=%d err=%.6g", method, k, seed, rec.normalized_error)
    rows.sort(key=lambda p: (p[0].method, p[0].k1, p[0].k2, p[0].seed))
    with _open_out(args.output) as fh:
        writer = csv.DictWriter(fh, fieldnames=BENCHMARK_FIELDS, lineterminator="\n")
        writer.writeheader()
        for rec, _ in rows:
            writer.writerow(rec.as_row())
    if args.emit_indices:
        with open(args.emit_indices, "w") as fh:
            for rec, dec in rows:
                fh.write(json.dumps({
                    "method": rec.method, "k1": rec.k1, "k2": rec.k2, "seed": rec.seed,
                    "col_indices": dec.col_indices, "row_indices": dec.row_indices,
                }) + "\n")
    return 0


def cmd_convergence(args) -> int:
    if args.seeds < 1:
        raise ValueError("--seeds must be positive")
    X = read_matrix(args.input, args.format, args.header) if args.input else None
    out_rows, selections = [], []
    for seed in range(args.seed, args.seed + args.seeds):
        data = X
        if data is None:
            data = low_rank_plus_noise(
                SynthSpec.with_noise_ratio(args.n, args.m, args.rank, args.noise, args.data_seed)
            )
        kwargs = _run_kwargs(args)
        kwargs["restarts"] = 1
        _, _, trace = run_method(data, "twsp", args.k1, args.k2, seed, **kwargs)
        out_rows.extend(trace_rows(trace))
        selections.extend(
            {"seed": seed, "iteration": r.iteration, "col_indices": list(r.cols), "row_indices": list(r.rows)}
            for r in trace.records
        )
    with _open_out(args.output) as fh:
        writer = csv.DictWriter(fh, fieldnames=CONVERGENCE_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(out_rows)
    if args.emit_indices:
        with open(args.emit_indices, "w") as fh:
            for sel in selections:
                fh.write(json.dumps(sel) + "\n")
    return 0


def cmd_assign_channels(args) -> int:
    X = read_matrix(args.input, args.format, args.header)
    dec, _, _ = run_method(X, "twsp", args.k1, args.k2, args.seed, **_run_kwargs(args))
    # core rows follow selected columns (channels); transpose so each
    # selected row (sensor) becomes a row of the table
    assignment = assign_top_f(dec.core.T, args.f, row_ids=dec.row_indices, col_ids=dec.col_indices)
    with _open_out(args.output) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["sensor_row_index", "channel_col_index", "u_value", "rank"])
        for sensor, channel, value, rank in assignment.rows():
            writer.writerow([sensor, channel, repr(value), rank])
    return 0


def cmd_kernel(args) -> int:
    X1 = read_matrix(args.class1, args.format, args.header)
    others = [read_matrix(p, args.format, args.header) for p in args.class2]
    X2 = np.hstack(others) if len(others) > 1 else others[0]
    write_matrix(args.output, cross_class_kernel(X1, X2), args.out_format)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twsp", description="Two-way spectrum pursuit CUR tools")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="select columns/rows of a matrix file")
    p.add_argument("input")
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="twsp")
    p.add_argument("--output", "-o", default=None, help="result JSON (default stdout)")
    _input_flags(p)
    _solver_flags(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("benchmark", help="error-vs-k sweep on synthetic data (CSV)")
    _synth_flags(p)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=20)
    p.add_argument("--k-step", type=int, default=2)
    p.add_argument("--seeds", type=int, default=10, help="number of seeds, starting at --seed")
    p.add_argument("--methods", default="twsp,sp,leverage,random")
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--emit-indices", default=None, help="JSON-lines file of selections")
    _solver_flags(p)
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("convergence", help="per-iteration TWSP traces (CSV)")
    p.add_argument("input", nargs="?", default=None)
    _input_flags(p)
    _synth_flags(p)
    p.add_argument("--data-seed", type=int, default=0, help="seed of the synthetic matrix")
    p.add_argument("--k1", type=int, default=20)
    p.add_argument("--k2", type=int, default=20)
    p.add_argument("--seeds", type=int, default=100, help="number of solver seeds, starting at --seed")
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--emit-indices", default=None, help="JSON-lines file of per-iteration selections")
    _solver_flags(p)
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("assign-channels", help="top-F channels per selected sensor row")
    p.add_argument("input")
    p.add_argument("--k1", type=int, required=True, help="columns (channels) to select")
    p.add_argument("--k2", type=int, required=True, help="rows (sensors) to select")
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--output", "-o", default=None)
    _input_flags(p)
    _solver_flags(p)
    p.set_defaults(func=cmd_assign_channels)

    p = sub.add_parser("kernel", help="cross-class kernel X2^T X1")
    p.add_argument("class1")
    p.add_argument("class2", nargs="+", help="one file, or several concatenated (one-vs-all)")
    p.add_argument("--output", "-o", required=True)
    p.add_argument("--out-format", choices=("csv", "bin"), default=None)
    _input_flags(p)
    p.set_defaults(func=cmd_kernel)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s", stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (OSError, MatrixFormatError, ValueError, IndexError) as exc:
        print(f"twsp: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
