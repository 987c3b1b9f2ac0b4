"""Command-line front end: solve an instance, benchmark operators, compute
exact optima on small instances, and validate instance/tour files.

Every subcommand takes --instance. Parameter precedence for the GA
subcommands is CLI flag > --config file > built-in default. All error paths
print a single ``error: ...`` line on stderr and exit nonzero. Output files
go through atomic writes, and stdout carries no timing, so repeated runs
with the same seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .bench import ExperimentPlan, run_comparison, write_report, write_text_atomic
from .engine import GaParams, parse_config, run_ga
from .exact import DEFAULT_MAX_N, brute_force_optimum
from .operators import CROSSOVER_NAMES, MUTATION_NAMES
from .tsp import load_instance, read_tour_file, tour_length, validate_tour

INIT_NAMES = ("random", "mutate-first", "heuristic-nn")


class _Parser(argparse.ArgumentParser):
    # argparse prints usage plus a message on bad flags; collapse that to the
    # one-line diagnostic everything else in the CLI emits
    def error(self, message):
        raise SystemExit(_fail(message))


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _fmt(value: float) -> str:
    """Render a length without trailing noise: ints stay ints."""
    f = float(value)
    return str(int(f)) if f.is_integer() else repr(f)


def _add_param_flags(sub):
    sub.add_argument("--config", metavar="PATH", help="key=value parameter file")
    sub.add_argument("--crossover", choices=CROSSOVER_NAMES)
    sub.add_argument("--px", type=float, metavar="P")
    sub.add_argument("--mutation", choices=MUTATION_NAMES)
    sub.add_argument("--pm", type=float, metavar="P")
    sub.add_argument("--population", type=int, metavar="N")
    sub.add_argument("--iterations", type=int, metavar="N")
    sub.add_argument("--init", choices=INIT_NAMES)
    sub.add_argument("--seed", type=int)
    sub.add_argument("--upmx-p", type=float, metavar="P", dest="upmx_p")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gatsp", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="subcommand", required=True)

    solve = subs.add_parser("solve", help="run the GA once and print the best tour")
    solve.add_argument("--instance", required=True)
    solve.add_argument("--metric", choices=("rounded", "real"), default="rounded")
    _add_param_flags(solve)
    solve.add_argument("--out", metavar="PATH", help="write the best-length trace here")
    solve.add_argument("--format", choices=("csv", "json"), default="csv")

    bench = subs.add_parser("bench", help="compare crossover operators over seeded runs")
    bench.add_argument("--instance", required=True)
    bench.add_argument("--metric", choices=("rounded", "real"), default="rounded")
    _add_param_flags(bench)
    bench.add_argument("--operators", metavar="A,B,...", help="comma-separated crossover names")
    bench.add_argument("--populations", type=int, default=50, metavar="N")
    bench.add_argument("--workers", type=int, default=1, metavar="N")
    bench.add_argument("--out", default="bench", metavar="PATH")
    bench.add_argument("--format", choices=("csv", "json"), default="csv")

    exact = subs.add_parser("exact", help="brute-force optimum for a small instance")
    exact.add_argument("--instance", required=True)
    exact.add_argument("--metric", choices=("rounded", "real"), default="rounded")
    exact.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, dest="max_n")
    exact.add_argument("--no-symmetry", action="store_false", dest="symmetry",
                       help="enumerate all (n-1)! tours instead of halving by reversal")

    validate = subs.add_parser("validate", help="check an instance file, optionally a tour")
    validate.add_argument("--instance", required=True)
    validate.add_argument("--metric", choices=("rounded", "real"), default="rounded")
    validate.add_argument("--tour", metavar="PATH", help="TSPLIB tour file to check against the instance")

    return parser


def _merged_params(args) -> GaParams:
    values = {}
    if args.config:
        values.update(parse_config(Path(args.config).read_text()))
    for key in ("population", "crossover", "px", "mutation", "pm",
                "iterations", "init", "seed", "upmx_p"):
        flag = getattr(args, key)
        if flag is not None:
            values[key] = flag
    params = GaParams(**values)
    params.validate()
    return params


def _cmd_solve(args) -> int:
    instance = load_instance(args.instance, metric=args.metric)
    params = _merged_params(args)
    record = run_ga(instance, params)
    print(f"instance {instance.name}: {instance.n} cities, {instance.metric} metric")
    print(f"best length {_fmt(record.best_length)}")
    print("tour " + " ".join(str(c) for c in record.best_tour))
    if args.out:
        if args.format == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["generation", "best_length"])
            for gen, best in enumerate(record.trace):
                writer.writerow([gen, _fmt(best)])
            text = buf.getvalue()
        else:
            text = json.dumps(
                {
                    "instance": instance.name,
                    "seed": record.seed,
                    "best_length": record.best_length,
                    "best_tour": record.best_tour,
                    "trace": record.trace,
                },
                indent=2,
            ) + "\n"
        write_text_atomic(args.out, text)
        print(f"trace written to {args.out}")
    return 0


def _cmd_bench(args) -> int:
    instance = load_instance(args.instance, metric=args.metric)
    params = _merged_params(args)
    plan = ExperimentPlan(instance=instance, base=params, populations=args.populations)
    if args.operators:
        names = tuple(name.strip() for name in args.operators.split(","))
        plan = ExperimentPlan(instance=instance, operators=names, base=params,
                              populations=args.populations)
    report = run_comparison(plan, workers=args.workers)
    for op in report.operators:
        s = report.summary[op]
        print(f"{op}: best {_fmt(s.best)} mean {_fmt(round(s.mean, 3))} std {_fmt(round(s.std, 3))}")
    for path in write_report(report, args.out, format=args.format):
        print(f"wrote {path}")
    return 0


def _cmd_exact(args) -> int:
    instance = load_instance(args.instance, metric=args.metric)
    result = brute_force_optimum(instance, max_n=args.max_n, symmetry=args.symmetry)
    print(f"instance {instance.name}: {instance.n} cities, {instance.metric} metric")
    print(f"optimal length {_fmt(result.optimal_length)}")
    print("tour " + " ".join(str(c) for c in result.optimal_tour))
    print(f"permutations examined {result.permutations_examined}")
    return 0


def _cmd_validate(args) -> int:
    instance = load_instance(args.instance, metric=args.metric)
    print(f"instance {instance.name}: {instance.n} cities, {instance.metric} metric")
    if not args.tour:
        return 0
    tour = read_tour_file(Path(args.tour).read_text())
    report = validate_tour(tour, instance.n)
    if not report.ok:
        return _fail(f"invalid tour: {report.describe()}")
    print(f"tour ok: length {_fmt(tour_length(tour, instance))}")
    return 0


_COMMANDS = {
    "solve": _cmd_solve,
    "bench": _cmd_bench,
    "exact": _cmd_exact,
    "validate": _cmd_validate,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.subcommand](args)
    except SystemExit as exc:  # raised by _Parser.error with our exit code
        code = exc.code
        return code if isinstance(code, int) else 2
    except FileNotFoundError as exc:
        return _fail(f"no such file: {exc.filename}")
    except (ValueError, OSError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
