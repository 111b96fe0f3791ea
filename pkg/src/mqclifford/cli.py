"""Command line: ``mqclifford compile | verify | bench``.

Exit codes: 0 ok, 1 verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import oracle
from .bench import METHODS, BenchConfig, format_csv, format_summary, run_bench
from .circuit import parse, serialize, to_symplectic
from .exceptions import DegenerateFitError, ParseError
from .power import total_nuclear_norm, walker_optimize
from .synth import compile_clifford

DENSE_CHECK_MAX = 6


def _read(path):
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _generator_name(k, n):
    return f"X{k}" if k < n else f"Z{k - n}"


def cmd_compile(args) -> int:
    circuit = parse(_read(args.input))
    op = to_symplectic(circuit)
    selector = None
    if args.budget:
        rng = np.random.default_rng(args.seed)
        selector = lambda b: walker_optimize(  # noqa: E731
            b, args.budget, rng, variant="alternate", include_diagonal=not args.no_diagonal_power
        )[0]
    result = compile_clifford(op, selector)
    report = total_nuclear_norm(result.circuit, include_diagonal=not args.no_diagonal_power)
    text = serialize(result.circuit) + f"# mq_count={result.mq_count} omega_nuc={report.total_nuc:.9f}\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    a, b = parse(_read(args.input)), parse(_read(args.compiled))
    if a.n != b.n:
        print(f"qubit count differs: {a.n} vs {b.n}", file=sys.stderr)
        return 1
    op_a, op_b = to_symplectic(a), to_symplectic(b)
    if op_a != op_b:
        diff = np.flatnonzero(np.any(op_a.S != op_b.S, axis=0) | (op_a.r != op_b.r))
        print(f"mismatch on generator {_generator_name(int(diff[0]), a.n)}", file=sys.stderr)
        return 1
    if a.n <= DENSE_CHECK_MAX:
        if not oracle.equal_up_to_global_phase(oracle.dense_unitary(a), oracle.dense_unitary(b)):
            print("dense unitaries differ", file=sys.stderr)
            return 1
    print("equivalent")
    return 0


def cmd_bench(args) -> int:
    cfg = BenchConfig(
        n_values=args.n_values,
        instances_per_n=args.instances,
        seed=args.seed,
        walker_budget=args.budget,
        permutation_candidates=args.perms,
        methods=tuple(args.method or METHODS),
        output_path=args.output,
        include_diagonal=not args.no_diagonal_power,
        workers=args.workers,
    )
    rows, fits = run_bench(cfg)
    text = format_csv(rows)
    if cfg.output_path:
        with open(cfg.output_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(format_summary(fits), file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mqclifford", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a Clifford circuit to <= 6 MQ gates")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("-o", "--output")
    p.add_argument("--budget", type=int, default=0, help="walker steps for power reduction")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-diagonal-power", action="store_true")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("verify", help="check two circuits implement the same Clifford")
    p.add_argument("input")
    p.add_argument("compiled")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="power sweep over random CNOT layers")
    p.add_argument("--n-values", type=int, nargs="+", default=list(range(3, 64, 4)))
    p.add_argument("--instances", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None, help="walker steps (default 200*n)")
    p.add_argument("--perms", type=int, default=8)
    p.add_argument("--method", action="append", choices=METHODS)
    p.add_argument("--no-diagonal-power", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError, DegenerateFitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
