"""Command-line interface.

Subcommands: classify, reduce, orbit, equidist, diverge, sample, lift,
verify.  All output is deterministic given the subcommand, options and
seed.  Exit codes: 0 success, 1 precondition violation (including bad
usage), 2 exhausted budget, 3 verification failure.

Row-stream commands (orbit, sample, lift, verify) support CSV output;
the orbit CSV schema is fixed: step,letter,x,y,z,kappa,level.  Report
commands emit a single JSON object {"config": ..., "results": ...}.
"""

import argparse
import io
import json
import sys

from . import chars, harness, verify
from .errors import BudgetError, PreconditionError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(1)


def _fmt(v):
    return f"{v:.17g}"


def _add_common(p, steps_default=1000):
    p.add_argument("--t", type=float, required=True, help="commutator trace level")
    p.add_argument("--level", type=int, default=None, help="fiber level filter")
    p.add_argument("--steps", type=int, default=steps_default)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bins", type=int, default=8)
    p.add_argument("--window", type=float, default=2.0)
    p.add_argument("--ceiling", type=float, default=harness.DEFAULT_CEILING,
                   help="magnitude ceiling for the bounded random walk")
    p.add_argument("--box", type=float, default=4.0, help="fiber sampling box")
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--scheme", choices=["uniform-random", "fixed-word"],
                   default="uniform-random")
    p.add_argument("--word", default="T1,T2", help="letters for fixed-word walks")
    p.add_argument("--seed-b", type=int, default=None, dest="seed_b")
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.add_argument("--out", default=None, help="output path (default stdout)")


def _config(args):
    return harness.ExperimentConfig(
        t=args.t, steps=args.steps, seed=args.seed, level=args.level,
        walk_scheme=args.scheme, word=args.word, seed_b=args.seed_b,
        bins=args.bins, window=args.window, ceiling=args.ceiling,
        box=args.box, budget=args.budget)


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, config, results):
    _emit(args, json.dumps({"config": config, "results": results},
                           sort_keys=True, indent=2) + "\n")


def cmd_classify(args):
    regime = chars.trichotomy(args.t)
    results = {
        "t": args.t,
        "regime": regime.value,
        "boundary_flag": abs(args.t - 2.0) <= 1e-9 or abs(args.t - 18.0) <= 1e-9,
    }
    _emit_json(args, {"t": args.t}, results)
    return 0


def cmd_reduce(args):
    cfg = _config(args)
    triple = tuple(args.triple) if args.triple else None
    results = harness.run_reduce(cfg, triple=triple, mode=args.mode)
    _emit_json(args, cfg.as_dict() | {"mode": args.mode}, results)
    return 0


def cmd_orbit(args):
    cfg = _config(args)
    rec = harness.run_orbit(cfg)
    if args.format == "csv":
        buf = io.StringIO()
        buf.write(harness.CSV_HEADER + "\n")
        xyz, kap = rec["xyz"], rec["kappa"]
        for i, letter in enumerate(rec["letters"]):
            buf.write(f"{i + 1},{letter},{_fmt(xyz[i, 0])},{_fmt(xyz[i, 1])},"
                      f"{_fmt(xyz[i, 2])},{_fmt(kap[i])},{rec['level']}\n")
        _emit(args, buf.getvalue())
    else:
        results = {
            "start": rec["start"],
            "steps_done": rec["steps_done"],
            "kappa_rel_drift": rec["kappa_rel_drift"],
            "level": rec["level"],
            "rows": [
                {"step": i + 1, "letter": letter,
                 "x": rec["xyz"][i, 0], "y": rec["xyz"][i, 1],
                 "z": rec["xyz"][i, 2], "kappa": rec["kappa"][i],
                 "level": rec["level"]}
                for i, letter in enumerate(rec["letters"])
            ],
        }
        _emit_json(args, cfg.as_dict(), results)
    return 0


def cmd_equidist(args):
    cfg = _config(args)
    results = harness.run_equidistribution(cfg)
    _emit_json(args, cfg.as_dict(), results)
    return 0


def cmd_diverge(args):
    cfg = _config(args)
    results = harness.run_divergence(cfg, start=args.start)
    _emit_json(args, cfg.as_dict() | {"start": args.start}, results)
    return 0


def _rows_csv(args, rows, columns):
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        cells = []
        for col in columns:
            v = row[col]
            if isinstance(v, float):
                cells.append(_fmt(v))
            elif isinstance(v, list):
                cells.append(";".join(_fmt(x) for x in v))
            else:
                cells.append(str(v))
        buf.write(",".join(cells) + "\n")
    _emit(args, buf.getvalue())


def cmd_sample(args):
    cfg = _config(args)
    rows = harness.run_sample(cfg, args.count)
    if args.format == "csv":
        _rows_csv(args, rows, ["g", "h", "triple", "kappa",
                               "commutator_trace", "t", "level"])
    else:
        _emit_json(args, cfg.as_dict() | {"count": args.count}, rows)
    return 0


def cmd_lift(args):
    cfg = _config(args)
    rows = harness.run_lift(cfg, args.count)
    if args.format == "csv":
        _rows_csv(args, rows, ["commutator", "lift_value", "t", "level"])
    else:
        _emit_json(args, cfg.as_dict() | {"count": args.count}, rows)
    return 0


def cmd_verify(args):
    names = args.suites.split(",") if args.suites else None
    records = verify.run_suites(args.seed, names=names)
    if args.format == "csv":
        buf = io.StringIO()
        buf.write("name,passed\n")
        for r in records:
            buf.write(f"{r['name']},{int(r['passed'])}\n")
        _emit(args, buf.getvalue())
    else:
        _emit_json(args, {"seed": args.seed, "suites": [r["name"] for r in records]},
                   records)
    return 0 if all(r["passed"] for r in records) else 3


def build_parser():
    parser = _Parser(prog="holtorus",
                     description="twist dynamics on one-holed-torus "
                                 "representation pairs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[], help="regime of a trace level")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("reduce", help="reduce a triple to a target region")
    _add_common(p)
    p.add_argument("--triple", type=float, nargs=3, default=None,
                   metavar=("X", "Y", "Z"))
    p.add_argument("--mode", choices=["full", "twists"], default="full")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("orbit", help="record a twist walk in trace coordinates")
    _add_common(p, steps_default=10_000)
    p.set_defaults(fn=cmd_orbit)

    p = sub.add_parser("equidist", help="two-walk histogram distance (2 < t < 18)")
    _add_common(p, steps_default=100_000)
    p.set_defaults(fn=cmd_equidist)

    p = sub.add_parser("diverge", help="orbit separation and escape growth")
    _add_common(p, steps_default=10_000)
    p.add_argument("--start", choices=["fiber", "octant"], default="fiber")
    p.set_defaults(fn=cmd_diverge)

    p = sub.add_parser("sample", help="sample pairs on a fiber")
    _add_common(p)
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("lift", help="lifted commutator data for sampled pairs")
    _add_common(p)
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(fn=cmd_lift)

    p = sub.add_parser("verify", help="run the identity suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suites", default=None,
                   help="comma-separated suite names (default: all)")
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except PreconditionError as exc:
        sys.stderr.write(f"precondition error: {exc}\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except BudgetError as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
