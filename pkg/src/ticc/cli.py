"""Command-line interface: ``ticc <subcommand> ...``."""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import __version__
from .channel import erase
from .code_ensemble import constraint_length, has_distinct_vectors, load, memory, sample, save, serialize
from .decode import map_oracle, peel
from .encode import encode, find_staircase, syndrome
from .errors import InvalidParameters, TiccError
from .harness import SweepConfig, fit_floor_slope, read_csv, sweep, threshold_estimate, write_csv
from .seeding import derive_seed, make_rng
from .stopping import lemma_bound, sample_stopping_sets, search_min_stopping_set
from .tanner import build


def _eps_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad epsilon list {text!r}") from None


def _window(text):
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like lo:hi, got {text!r}") from None


def cmd_sample(args):
    spec = sample(args.n, args.k, args.w, args.seed)
    if args.output in (None, "-"):
        sys.stdout.write(serialize(spec))
    else:
        save(spec, args.output)
        print(f"wrote {args.output} ({spec.spec_hash()})")
    return 0


def cmd_inspect(args):
    spec = load(args.spec)
    order = find_staircase(spec)
    print(f"hash {spec.spec_hash()}")
    print(f"n {spec.n}  k {spec.k}  w {spec.w}  rate {spec.k}/{spec.n}")
    print(f"memory {memory(spec)}")
    print(f"constraint_length {constraint_length(spec)}")
    print(f"description_bits {spec.description_bits():.2f}")
    print(f"staircase {order if order is not None else 'none'}")
    print(f"distinct_vectors {'yes' if has_distinct_vectors(spec) else 'no'}")
    print(f"lemma_bound {lemma_bound(spec.n, spec.k)}")
    dup = spec.identical_rows()
    print("identical_rows " + (" ".join(f"{a}={b}" for a, b in dup) if dup else "none"))
    return 0


def cmd_sweep(args):
    fixed = load(args.fixed_code) if args.fixed_code else None
    if fixed is None and None in (args.n, args.k, args.w):
        raise InvalidParameters("--n, --k and --w are required without --fixed-code")
    config = SweepConfig(
        n=args.n or (fixed.n if fixed else 0),
        k=args.k or (fixed.k if fixed else 0),
        w=args.w or (fixed.w if fixed else 0),
        stream_len=args.len,
        epsilons=tuple(args.eps),
        trials=args.trials,
        fixed_code=fixed,
        seed=args.seed,
        workers=args.workers,
        max_seconds=args.max_seconds,
    )
    report = sweep(config)
    write_csv(report, args.output, timing=args.timing)
    for r in report.rows:
        p = "0" if r.bit_erasure_probability == 0 else f"{r.bit_erasure_probability:.6g}"
        print(f"eps {r.epsilon:.6g}  p_bit {p}  trials {r.trials}  failures {r.failures}")
    if report.truncated:
        print("TRUNCATED", file=sys.stderr)
        return 4
    return 0


def cmd_floor(args):
    report = read_csv(args.csv)
    fit = fit_floor_slope(report, args.window)
    print(f"alpha {fit.alpha:.6g}")
    print(f"d {fit.d:.6g}")
    print(f"r_squared {fit.r_squared:.6g}")
    print(f"points {fit.points}  excluded_zero {fit.excluded_zero}")
    return 0


def cmd_threshold(args):
    report = read_csv(args.csv)
    print(f"threshold {threshold_estimate(report, args.level):.6g}")
    return 0


def _pairs(graph, ids):
    return " ".join(f"({s},{p})" for s, p in (graph.var_pos(v) for v in ids))


def cmd_stopping(args):
    spec = load(args.spec)
    graph = build(spec, args.len)
    out = {
        "spec_hash": spec.spec_hash(),
        "lemma_bound": lemma_bound(spec.n, spec.k),
    }
    if args.sample:
        sizes = sample_stopping_sets(graph, args.eps, args.trials, args.seed)
        smallest = min(sizes) if sizes else None
        out.update(
            mode="sample",
            epsilon=args.eps,
            trials=args.trials,
            failures=sum(sizes.values()),
            min_residual=smallest if smallest is not None else "none",
        )
        row = [out["spec_hash"], out["lemma_bound"], "", out["min_residual"], ""]
    else:
        res = search_min_stopping_set(graph, args.max_size, node_budget=args.budget)
        found = _pairs(graph, res.found) if res.found else "none"
        out.update(
            mode="exact",
            scope=res.scope,
            proved_bound=res.size_bound_proved,
            found_size=len(res.found) if res.found else 0,
            found=found,
            nodes_expanded=res.nodes_expanded,
        )
        row = [out["spec_hash"], out["lemma_bound"], res.size_bound_proved, found, res.nodes_expanded]
    for k, v in out.items():
        print(f"{k}: {v}")
    if args.csv:
        with open(args.csv, "a", encoding="utf-8") as fh:
            fh.write(",".join(f'"{x}"' if " " in str(x) else str(x) for x in row) + "\n")
    return 0


def cmd_oracle_check(args):
    spec = load(args.spec)
    graph = build(spec, args.len)
    successes = uniques = violations = 0
    for t in range(args.trials):
        pattern = erase(graph, args.eps, derive_seed(args.seed, "oracle", t))
        ok = peel(graph, pattern).success
        unique = map_oracle(graph, pattern, budget=args.budget) == "unique"
        successes += ok
        uniques += unique
        if ok and not unique:
            violations += 1
            print(f"violation: trial {t}", file=sys.stderr)
    print(f"trials {args.trials}")
    print(f"peel_success {successes}")
    print(f"map_unique {uniques}")
    print(f"violations {violations}")
    return 1 if violations else 0


def cmd_encode(args):
    spec = load(args.spec)
    order = find_staircase(spec)
    if order is None:
        print("staircase none")
        return 1
    graph = build(spec, args.len)
    info = make_rng(args.seed).integers(0, 2, size=(spec.k, args.len))
    bits = encode(graph, order, info, boundary=args.boundary)
    bad = int(syndrome(graph, bits).sum())
    print(f"staircase {order}")
    print(f"weight {int(bits.sum())}")
    print(f"violated_checks {bad}")
    return 0 if bad == 0 else 1


def build_parser(debug=False):
    p = argparse.ArgumentParser(prog="ticc", description=__doc__)
    p.add_argument("--version", action="version", version=f"ticc {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--debug", action="store_true", help="enable debug-only commands")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sample", help="draw a code from the (n, k, W) ensemble")
    s.add_argument("n", type=int)
    s.add_argument("k", type=int)
    s.add_argument("w", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("inspect", help="print structural properties of a code spec")
    s.add_argument("spec")
    s.set_defaults(func=cmd_inspect)

    s = sub.add_parser("sweep", help="Monte Carlo sweep of bit erasure probability")
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--w", type=int)
    s.add_argument("--len", type=int, default=10_000)
    s.add_argument("--eps", type=_eps_list, required=True)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--fixed-code")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--max-seconds", type=float)
    s.add_argument("--timing", action="store_true", help="write per-row seconds into the data rows")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("floor", help="fit P_b = alpha * eps^d over a window")
    s.add_argument("csv")
    s.add_argument("--window", type=_window, required=True)
    s.set_defaults(func=cmd_floor)

    s = sub.add_parser("threshold", help="epsilon where P_b crosses a level")
    s.add_argument("csv")
    s.add_argument("--level", type=float, default=1e-2)
    s.set_defaults(func=cmd_threshold)

    s = sub.add_parser("stopping", help="minimum stopping-set search or sampling")
    s.add_argument("spec")
    s.add_argument("--len", type=int, required=True)
    s.add_argument("--max-size", type=int, default=4)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--sample", action="store_true")
    s.add_argument("--eps", type=float, default=0.5)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int, default=5_000_000)
    s.add_argument("--csv", help="append one CSV row to this file")
    s.set_defaults(func=cmd_stopping)

    s = sub.add_parser("oracle-check", help="audit peel success against exact decoding")
    s.add_argument("spec")
    s.add_argument("--len", type=int, required=True)
    s.add_argument("--eps", type=float, required=True)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int, default=5000)
    s.set_defaults(func=cmd_oracle_check)

    if debug:
        s = sub.add_parser("encode", help="encode random information bits (debug)")
        s.add_argument("spec")
        s.add_argument("--len", type=int, default=100)
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--boundary", choices=("strict", "open"), default="open")
        s.set_defaults(func=cmd_encode)
    return p


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    # debug-only subcommands are not even registered without --debug
    args = build_parser(debug="--debug" in argv).parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except TiccError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 10


if __name__ == "__main__":
    sys.exit(main())
