"""Command-line entry point: ``rwattach {grow,ensemble,urn,bounds-table,validate}``."""

import argparse
import os
import sys

import numpy as np

from . import bounds, runner
from .audit import audit_run
from .config import ConfigError, load_initial, parse_config
from .core import BACKEND
from .graph import GraphError, InvariantViolation
from .growth import BernoulliWalk, FixedWalk, Preferential, Uniform

EXIT_OK, EXIT_VALIDATION, EXIT_INVARIANT, EXIT_IO = 0, 1, 2, 3


def _int_list(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _float_list(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _experiment_flags(p):
    p.add_argument("--config", help="JSON config file; flags override its keys")
    p.add_argument("--g0", help="initial graph, e.g. path:4, cycle:4, star:5, "
                               "complete_bipartite:2,3, directed_cycle:3, file:edges.txt")
    p.add_argument("--rule", help="fixed_walk | bernoulli_walk | preferential | uniform")
    p.add_argument("--l", type=int, help="walk length for fixed_walk (default 1)")
    p.add_argument("--p", type=float, help="P(walk length 0) for bernoulli_walk")
    p.add_argument("--steps", type=int)
    p.add_argument("--seed", type=int, help="64-bit master seed (default 0)")
    p.add_argument("--coloring", help="off | bipartite | kcolor")
    p.add_argument("--k", type=int, help="number of colors for kcolor")
    p.add_argument("--degrees", action="store_true", default=None,
                   help="snapshot degree histograms at checkpoints")
    p.add_argument("--checkpoints", type=_int_list, help="extra checkpoints, comma separated")
    p.add_argument("--out", help="output directory (default: results)")
    p.add_argument("--threads", type=int, help="worker threads (env RWA_THREADS otherwise)")


def build_parser():
    parser = argparse.ArgumentParser(prog="rwattach", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s (backend: {BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("grow", help="one replica with full trajectory, degree snapshots and trace")
    _experiment_flags(g)
    g.add_argument("--trace", action="store_true", help="also write per-step trace.csv")
    g.add_argument("--audit", action="store_true",
                   help="replay the run in pure Python checking every invariant at every step")

    e = sub.add_parser("ensemble", help="many replicas; writes summary.csv")
    _experiment_flags(e)
    e.add_argument("--replicas", type=int)
    e.add_argument("--keep-samples", dest="keep_samples", action="store_true", default=None,
                   help="also write per-replica trajectories")

    u = sub.add_parser("urn", help="Pólya / Friedman urn oracle ensembles")
    u.add_argument("--urn", choices=sorted(runner.URN_CODES), default="polya")
    u.add_argument("--red", type=int, required=True)
    u.add_argument("--blue", type=int, required=True)
    u.add_argument("--steps", type=int, required=True)
    u.add_argument("--replicas", type=int, default=1)
    u.add_argument("--seed", type=int, default=0)
    u.add_argument("--checkpoints", type=_int_list, default=[])
    u.add_argument("--keep-samples", dest="keep_samples", action="store_true")
    u.add_argument("--threads", type=int)
    u.add_argument("--out", default="results")

    b = sub.add_parser("bounds-table", help="leaf-fraction thresholds over a grid of p")
    b.add_argument("--p-step", type=float, default=0.05)
    b.add_argument("--p", dest="ps", type=_float_list, help="explicit p values, comma separated")
    b.add_argument("--out", help="CSV file (default: stdout)")

    v = sub.add_parser("validate", help="check an initial graph (and coloring) only")
    v.add_argument("--g0", required=True)
    v.add_argument("--coloring", default="off")
    v.add_argument("--k", type=int)
    return parser


def _config_from(args, **forced):
    keys = ("g0", "rule", "l", "p", "steps", "seed", "coloring", "k", "degrees", "checkpoints",
            "out", "threads", "replicas", "keep_samples")
    overrides = {k: getattr(args, k, None) for k in keys}
    overrides.update(forced)
    return parse_config(args.config, overrides)


def _rule_object(cfg):
    return {
        "fixed_walk": lambda: FixedWalk(cfg.l),
        "bernoulli_walk": lambda: BernoulliWalk(cfg.p),
        "preferential": Preferential,
        "uniform": Uniform,
    }[cfg.rule]()


def cmd_grow(args):
    cfg = _config_from(args, replicas=1, degrees=True)
    out = cfg.out or "results"
    if args.audit:
        if cfg.coloring == "kcolor":
            from .audit import audit_kcolor_run
            audit_kcolor_run(cfg.g0, cfg.k, cfg.l, cfg.steps, runner.replica_seeds(cfg.seed, 1)[0])
        else:
            audit_run(cfg.g0, _rule_object(cfg), cfg.steps, int(runner.replica_seeds(cfg.seed, 1)[0]),
                      coloring=cfg.coloring == "bipartite")
        print(f"audit passed: {cfg.steps} steps")
    res = runner.run_ensemble(cfg, want_trace=args.trace)
    runner.write_trajectories(os.path.join(out, "trajectory.csv"), res)
    if res.hists is not None:
        runner.write_degrees(os.path.join(out, "degrees.csv"), res)
    if res.color_counts is not None:
        runner.write_colors(os.path.join(out, "colors.csv"), res)
    if args.trace:
        runner.write_trace(os.path.join(out, "trace.csv"), res)
    _report(res.summary)
    return EXIT_OK


def cmd_ensemble(args):
    cfg = _config_from(args)
    out = cfg.out or "results"
    res = runner.run_ensemble(cfg, threads=args.threads)
    runner.write_summary(os.path.join(out, "summary.csv"), res.summary)
    if cfg.keep_samples:
        runner.write_trajectories(os.path.join(out, "trajectories.csv"), res)
        if res.color_counts is not None:
            runner.write_colors(os.path.join(out, "colors.csv"), res)
    if res.hists is not None:
        runner.write_degrees(os.path.join(out, "degrees.csv"), res)
    _report(res.summary)
    return EXIT_OK


def cmd_urn(args):
    if args.steps < 1 or args.replicas < 1:
        raise ConfigError("steps and replicas must be >= 1")
    try:
        res = runner.run_urn(args.red, args.blue, args.urn, args.steps, args.replicas, args.seed,
                             threads=args.threads, extra_checkpoints=args.checkpoints,
                             keep_samples=args.keep_samples)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    runner.write_summary(os.path.join(args.out, "summary.csv"), res.summary)
    if args.keep_samples:
        runner.write_urn_trajectories(os.path.join(args.out, "trajectories.csv"), res)
    _report(res.summary)
    return EXIT_OK


def cmd_bounds_table(args):
    if args.ps is not None:
        ps = args.ps
    else:
        if not 0 < args.p_step <= 1:
            raise ConfigError(f"p-step must be in (0, 1], got {args.p_step}")
        count = int(round(1 / args.p_step))
        ps = [i / count for i in range(count + 1)]
    if any(not 0 <= p <= 1 for p in ps):
        raise ConfigError("probability out of range in p grid")
    rows = bounds.bounds_table(ps)
    if args.out:
        runner.write_bounds(args.out, rows)
    else:
        print("p,threshold_lower_root,threshold_upper,gap")
        for row in rows:
            print(",".join(runner.fmt(x) for x in row))
    return EXIT_OK


def cmd_validate(args):
    cfg = parse_config(None, {"g0": args.g0, "steps": 1, "coloring": args.coloring, "k": args.k,
                              "rule": "fixed_walk"})
    g, coloring = load_initial(cfg)
    print(f"vertices {g.n_vertices}  edges {len(g.initial_edges)}")
    if hasattr(g, "degree_histogram"):
        print(f"degree histogram {g.degree_histogram()}  star {g.is_star()}")
    if coloring is not None:
        counts = [coloring.red_count, g.n_vertices - coloring.red_count] \
            if cfg.coloring == "bipartite" else coloring.counts
        print(f"color counts {counts}")
    print("ok")
    return EXIT_OK


def _report(summary):
    n = summary.checkpoints[-1]
    for name, s in summary.observables.items():
        i = -1
        se = "" if np.isnan(s.se[i]) else f" ± {s.se[i]:.3g} (SE)"
        print(f"n={n} {name}: mean {s.mean[i]:.6g}{se} over {summary.replicas} replica(s)")


COMMANDS = {
    "grow": cmd_grow,
    "ensemble": cmd_ensemble,
    "urn": cmd_urn,
    "bounds-table": cmd_bounds_table,
    "validate": cmd_validate,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
