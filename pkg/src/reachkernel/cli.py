"""Command-line driver: gen, kernelize, verify, solve, bench."""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
import warnings

from . import __version__
from .dispatch import ALGORITHMS, KernelRunner, kernelize
from .generators import INSTANCE_KINDS, generate
from .io import dumps_instance, kernel_file, parse_instance, read_kernel
from .verify import Budget, BudgetExceededError, FeasibilityTable, run_trials, solve, verify_kernel

SEED_ENV = "REACHKERNEL_SEED"
BENCH_COLUMNS = ["instance", "algorithm", "k", "T", "kernel_size", "wall_time_s", "success_fraction"]


class CLIError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CLIError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load(args):
    inst = parse_instance(args.input)
    if getattr(args, "k", None) is not None:
        inst = inst.with_k(args.k)
    return inst


def _budget(args) -> Budget:
    return Budget(args.max_elements, args.max_k)


def cmd_gen(args) -> int:
    params = {"n": args.n, "d": args.d, "k": args.k, "wmax": args.wmax}
    for name in ("vertices", "colors", "levels", "degree", "m0"):
        value = getattr(args, name)
        if value is not None:
            params[name] = value
    inst = generate(args.kind, params, args.seed)
    _emit(dumps_instance(inst), args.output)
    return 0


def cmd_kernelize(args) -> int:
    inst = _load(args)
    seed = _default_seed() if args.seed is None else args.seed
    kernel = kernelize(inst, args.alg, seed, args.rounds, args.repeat)
    _emit(kernel_file(inst, kernel).dumps(), args.output)
    return 0


def cmd_verify(args) -> int:
    inst = _load(args)
    kf = read_kernel(args.kernel)
    kf.check_instance(inst)
    report = verify_kernel(inst, kf.elements, budget=_budget(args))
    doc = dict(report.to_dict(), algorithm=kf.algorithm, kernel_size=len(kf.elements))
    if args.json:
        _emit(json.dumps(doc, sort_keys=True) + "\n", args.output)
    else:
        lines = [
            f"algorithm: {kf.algorithm}",
            f"kernel size: {len(kf.elements)}",
            f"single-exchange violations: {len(report.single_exc_violations)}",
            f"reachability failures: {len(report.reachability_failures)}",
            f"opt full: {report.opt_full}",
            f"opt kernel: {report.opt_kernel}",
            f"reachable: {'yes' if report.successes else 'no'}",
        ]
        for X, x in report.single_exc_violations[:10]:
            lines.append(f"  no exchange for x={x} in X={list(X)}")
        for X in report.reachability_failures[:10]:
            lines.append(f"  no exchange sequence for X={list(X)}")
        _emit("\n".join(lines) + "\n", args.output)
    failed = report.single_exc_violations or report.reachability_failures
    return 1 if (failed and args.fail_on_violation) else 0


def cmd_solve(args) -> int:
    inst = _load(args)
    value, best = solve(inst, inst.k, budget=_budget(args))
    _emit(f"opt: {value}\nset: {' '.join(map(str, best))}\n", args.output)
    return 0


def cmd_bench(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    budget = _budget(args)
    algs = args.alg or list(ALGORITHMS)
    rows = []
    for path in args.instances:
        inst = parse_instance(path)
        if args.k is not None:
            inst = inst.with_k(args.k)
        table = None
        for alg in algs:
            start = time.perf_counter()
            kernel = kernelize(inst, alg, seed, args.rounds, args.repeat)
            elapsed = time.perf_counter() - start
            fraction = ""
            if args.trials > 0:
                if table is None:
                    table = FeasibilityTable(inst, inst.k, budget)
                runner = KernelRunner(alg, args.rounds, args.repeat)
                report = run_trials(runner, inst, args.trials, seed, table, budget)
                fraction = f"{report.success_fraction:.4f}"
            rows.append({"instance": path, "algorithm": alg, "k": inst.k, "T": kernel.rounds,
                         "kernel_size": len(kernel), "wall_time_s": f"{elapsed:.6f}",
                         "success_fraction": fraction})
    out = sys.stdout if args.output in (None, "-") else open(args.output, "w", newline="")
    try:
        writer = csv.DictWriter(out, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _add_budget(p):
    p.add_argument("--max-elements", type=int, default=40, help="brute-force limit on |E| (default 40)")
    p.add_argument("--max-k", type=int, default=5, help="brute-force limit on k (default 5)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reachkernel",
                                     description="Reachable kernels for weighted matroid intersection.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("kind", choices=INSTANCE_KINDS)
    p.add_argument("--n", type=int, default=12, help="number of elements")
    p.add_argument("--d", type=int, default=2, help="number of matroids including M0")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--wmax", type=int, default=10, help="weights are drawn from 0..wmax")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vertices", type=int)
    p.add_argument("--colors", type=int, help="rainbow: number of colour classes")
    p.add_argument("--levels", type=int, help="laminar: depth of the family")
    p.add_argument("--degree", type=int, help="transversal: maximum left degree")
    p.add_argument("--m0", help="class of the arbitrary matroid (random by default)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("kernelize", help="compute a reachable kernel")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--alg", choices=ALGORITHMS, required=True)
    p.add_argument("--k", type=int, help="override the instance's k")
    p.add_argument("--seed", type=int, help=f"random seed (default: ${SEED_ENV} or 0)")
    p.add_argument("--rounds", type=int, help="number of sampling rounds T (default: the algorithm's bound)")
    p.add_argument("--repeat", type=int, default=1, help="independent repetitions to union")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("verify", help="check a kernel by brute force")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--kernel", required=True)
    p.add_argument("--k", type=int, help="override the instance's k")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--fail-on-violation", action="store_true", help="exit 1 if the kernel is not reachable")
    p.add_argument("-o", "--output")
    _add_budget(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="exact optimum by brute force")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--k", type=int, help="override the instance's k")
    p.add_argument("-o", "--output")
    _add_budget(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="time kernels and estimate success rates, as CSV")
    p.add_argument("instances", nargs="+")
    p.add_argument("--alg", action="append", choices=ALGORITHMS,
                   help="algorithm to run (repeatable; default: all)")
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--rounds", type=int)
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--trials", type=int, default=0, help="trials for the success fraction (0 to skip)")
    p.add_argument("-o", "--output")
    _add_budget(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return args.func(args)
    except BudgetExceededError as exc:
        print(f"reachkernel: refused: {exc}", file=sys.stderr)
        return 2
    except (CLIError, ValueError, TypeError, OverflowError, OSError, KeyError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"reachkernel: error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
