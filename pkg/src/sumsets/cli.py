"""Command-line entry point: ``sumsets <subcommand> ...``.

Exit status is 0 on success or when every checked inequality holds, 2 when a
verdict is "violated" (a counterexample was reproduced), and 1 on errors,
including malformed input.  Reports are written without timings unless
``--timings`` is given, so equal commands produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .config import CONFIG_ENV_VAR, Config
from .convexify import NotInSumOfHulls, balance_signs, lp_guarantee_factor, sf_decompose
from .fileio import InputError, Report, dump_set, load_set, load_vectors, measure_to_dict, verifier_to_dict
from .gauges import parse_gauge
from .lp import ConvexCombination
from .measures import measure_suite
from .plot import emit_plot
from .rational import format_fraction, to_fraction
from .reports import VIOLATED
from .sequence import KNOWN, sequence_report
from .sets import BoxUnion, CapExceeded, PointSet, average_boxes, average_set, sum_of_sets
from .verify import COUNTEREXAMPLES, REGISTRY, generators, run_verifier

EXIT_OK, EXIT_ERROR, EXIT_VIOLATED = 0, 1, 2

log = logging.getLogger("sumsets")


class UsageError(Exception):
    pass


def _measures(text: str) -> List[str]:
    names = [m.strip() for m in text.split(",") if m.strip()]
    bad = [m for m in names if m not in KNOWN]
    if bad:
        raise UsageError(f"unknown measure(s) {bad}; choose from {', '.join(KNOWN)}")
    return names


def _point(text: str) -> tuple:
    try:
        return tuple(to_fraction(t) for t in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot read point {text!r}: {exc}") from None


def _params(items: Sequence[str]) -> Dict[str, str]:
    out = {}
    for item in items:
        if "=" not in item:
            raise UsageError(f"--param expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _emit(report: Report, args) -> None:
    """Write the report to --out (or the output directory) and/or stdout."""
    text = report.to_json(timings=args.timings)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    if args.json or not args.out:
        sys.stdout.write(text)


def _table(text: str, args) -> None:
    """The human-readable table; it moves to stderr when stdout carries JSON."""
    (sys.stderr if args.json else sys.stdout).write(text)


def _fmt_side(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return f"[{value[0]:.6g}, {value[1]:.6g}]"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def summary_table(reports) -> str:
    lines = [f"{'verifier':32s} {'verdict':13s} {'lhs':>24s} rel {'rhs':<24s} counts"]
    for rep in reports:
        counts = rep.details.get("counts") if isinstance(rep.details, dict) else None
        count_text = "" if not counts else " ".join(f"{k}={v}" for k, v in counts.items() if v)
        lines.append(
            f"{rep.name:32s} {rep.verdict:13s} {_fmt_side(rep.lhs):>24s} {rep.relation:3s} "
            f"{_fmt_side(rep.rhs):<24s} {count_text}"
        )
    return "\n".join(lines) + "\n"


# -- subcommands ------------------------------------------------------------------


def cmd_measure(args, config: Config) -> int:
    a = load_set(args.input)
    gauge = parse_gauge(args.gauge, a.dim)
    row = measure_suite(a, gauge, config, measures=_measures(args.measures))
    cells = {name: measure_to_dict(val) if not isinstance(val, (int, float)) else val for name, val in row.items()}
    report = Report(args.argv, rows=[cells], meta={"input": str(args.input), "gauge": args.gauge})
    _emit(report, args)
    return EXIT_OK


def cmd_sum(args, config: Config) -> int:
    sets = [load_set(p) for p in args.input]
    kinds = {type(s) for s in sets}
    if len(kinds) != 1:
        raise UsageError("all summands must be of the same kind (points or boxes)")
    total = sum_of_sets(sets)
    if args.average:
        if len(sets) != 1:
            raise UsageError("--average takes a single input set")
        total = average_boxes(sets[0], args.average, config.average_cap) if isinstance(total, BoxUnion) else average_set(
            sets[0], args.average, config.average_cap
        )
    text = dump_set(total)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_sequence(args, config: Config) -> int:
    a = load_set(args.input)
    gauge = parse_gauge(args.gauge, a.dim)
    report = sequence_report(a, args.kmax, _measures(args.measures), gauge, config, command=args.argv)
    out_dir = Path(args.out_dir or config.output_dir)
    sys.stdout.write(report.to_csv())
    if args.out:
        Path(args.out).write_text(report.to_json(timings=args.timings), encoding="utf-8")
    if args.plot or config.plot:
        out_dir.mkdir(parents=True, exist_ok=True)
        columns = [m for m in report.meta["measures"]]
        svg = emit_plot(report, columns, title=f"measures of A(k), k = 1..{args.kmax}")
        target = out_dir / (Path(args.input).stem + "-sequence.svg")
        target.write_text(svg, encoding="utf-8")
        log.info("wrote %s", target)
    return EXIT_OK


def _verdict_code(reports) -> int:
    return EXIT_VIOLATED if any(r.verdict == VIOLATED for r in reports) else EXIT_OK


def cmd_verify(args, config: Config) -> int:
    names = sorted(REGISTRY) if args.name == "all" else [args.name]
    if args.name != "all" and args.name not in REGISTRY:
        raise UsageError(f"unknown verifier {args.name!r}; choose from all, {', '.join(sorted(REGISTRY))}")
    params = _params(args.param)
    if params and len(names) > 1:
        raise UsageError("--param needs a single verifier name")
    seed = config.seed if args.seed is None else args.seed
    reports = [run_verifier(n, seed, args.trials, params) for n in names]
    _table(summary_table(reports), args)
    report = Report(args.argv, results=[verifier_to_dict(r) for r in reports], meta={"seed": seed, "trials": args.trials})
    if args.out:
        Path(args.out).write_text(report.to_json(timings=args.timings), encoding="utf-8")
    if args.json:
        sys.stdout.write(report.to_json(timings=args.timings))
    return _verdict_code(reports)


def cmd_counterexample(args, config: Config) -> int:
    params: Dict[str, str] = {}
    for key in ("k", "d", "f", "n"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    name = args.name
    if name not in COUNTEREXAMPLES and name != "simplex-ratio":
        raise UsageError(f"unknown counterexample {name!r}; choose from {', '.join(COUNTEREXAMPLES)}, simplex-ratio")
    rep = run_verifier(name, config.seed, 1, params)
    _table(summary_table([rep]), args)
    report = Report(args.argv, results=[verifier_to_dict(rep)])
    if args.out:
        Path(args.out).write_text(report.to_json(timings=args.timings), encoding="utf-8")
    if args.json:
        sys.stdout.write(report.to_json(timings=args.timings))
    return _verdict_code([rep])


def cmd_balance(args, config: Config) -> int:
    vectors = load_vectors(args.input)
    n = len(vectors[0])
    gauge = parse_gauge(args.gauge, n)
    res = balance_signs(vectors, gauge)
    p = {"l1": 1.0, "l2": 2.0}.get(args.gauge.lower(), float("inf"))
    row = {
        "signs": list(res.signs.signs),
        "achieved": res.achieved,
        "achieved_exact": res.achieved_exact,
        "achieved_is_squared": res.squared,
        "guarantee": res.guarantee,
        "lp_factor": lp_guarantee_factor(n, p),
        "rounding_steps": res.rounding_steps,
    }
    _emit(Report(args.argv, rows=[row], meta={"gauge": args.gauge, "k": len(vectors), "n": n}), args)
    return EXIT_OK


def cmd_decompose(args, config: Config) -> int:
    sets = [load_set(p) for p in args.input]
    if any(not isinstance(s, PointSet) for s in sets):
        raise UsageError("decompose takes point sets")
    dim = sets[0].dim
    if any(s.dim != dim for s in sets):
        raise UsageError("all sets must share the dimension")
    if args.point:
        x = _point(args.point)
    else:
        # default target: the sum of the centroids
        x = tuple(
            sum((sum((p[j] for p in s.points), Fraction(0)) / len(s.points) for s in sets), Fraction(0)) for j in range(dim)
        )
    try:
        dec = sf_decompose(sets, x)
    except NotInSumOfHulls as exc:
        raise UsageError(str(exc)) from None
    summands = []
    for i, item in enumerate(dec.payload):
        if isinstance(item, ConvexCombination):
            summands.append({"set": i, "points": item.points, "weights": item.weights})
        else:
            summands.append({"set": i, "point": item})
    row = {"target": dec.target, "fractional": list(dec.fractional), "summands": summands}
    _emit(Report(args.argv, rows=[row], meta={"k": len(sets), "n": dim}), args)
    return EXIT_OK


def cmd_gen(args, config: Config) -> int:
    seed = config.seed if args.seed is None else args.seed
    rng = generators.rng_for(seed)
    if args.kind == "points":
        obj = generators.point_set(rng, args.dim, args.size, args.span)
    elif args.kind == "boxes":
        obj = generators.box_union(rng, args.dim, args.size, args.span)
    else:
        raise UsageError(f"unknown kind {args.kind!r}")
    text = dump_set(obj)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sumsets", description="Non-convexity of Minkowski sums, measured exactly.")
    parser.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV_VAR} if set)")
    parser.add_argument("--verbose", "-v", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out=True):
        if out:
            p.add_argument("--out", help="write the JSON report here")
            p.add_argument("--json", action="store_true", help="also print the JSON report")
        p.add_argument("--timings", action="store_true", help="include timings in the report")

    p = sub.add_parser("measure", help="Delta, d, c and v of one set")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--gauge", default="l2")
    p.add_argument("--measures", default="delta,d,c,v")
    common(p)
    p.set_defaults(run=cmd_measure)

    p = sub.add_parser("sum", help="Minkowski sum of the inputs (or the average A(k) of one input)")
    p.add_argument("--in", dest="input", action="append", required=True)
    p.add_argument("--average", type=int, help="output A(k) = (A + ... + A)/k instead")
    p.add_argument("--out")
    p.set_defaults(run=cmd_sum)

    p = sub.add_parser("sequence", help="measures of A(k) for k = 1..kmax")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--measures", default="c,d,delta")
    p.add_argument("--gauge", default="l2")
    p.add_argument("--plot", action="store_true", help="write an SVG chart to the output directory")
    p.add_argument("--out-dir")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(run=cmd_sequence)

    p = sub.add_parser("verify", help="run a verifier on seeded random instances")
    p.add_argument("name", help="verifier name, or 'all'")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    common(p)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("counterexample", help="rebuild a named counterexample")
    p.add_argument("name", choices=list(COUNTEREXAMPLES) + ["simplex-ratio"])
    for key in ("k", "d", "f", "n"):
        p.add_argument(f"--{key}")
    common(p)
    p.set_defaults(run=cmd_counterexample)

    p = sub.add_parser("balance", help="signs with a short signed sum")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--gauge", default="l2")
    common(p)
    p.set_defaults(run=cmd_balance)

    p = sub.add_parser("decompose", help="Shapley-Folkman decomposition of a point of the sum of hulls")
    p.add_argument("--in", dest="input", action="append", required=True)
    p.add_argument("--point", help="comma-separated target; default is the sum of centroids")
    common(p)
    p.set_defaults(run=cmd_decompose)

    p = sub.add_parser("gen", help="a seeded random set")
    p.add_argument("kind", choices=["points", "boxes"])
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--size", type=int, default=5)
    p.add_argument("--span", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(run=cmd_gen)
    return parser


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    args.argv = argv
    try:
        config = Config.load(args.config)
        return args.run(args, config)
    except (InputError, UsageError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # an internal failure still maps to the error status
        if args.verbose:
            raise
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
