"""Compare the compiled and pure-Python peeling kernels on the same patterns.

    python3 benchmarks/bench_peel.py --len 20000 --eps 0.3,0.45 --reps 5
"""

import argparse
import statistics
import time

from ticc import _kernels
from ticc.channel import erase
from ticc.code_ensemble import sample
from ticc.decode import peel
from ticc.tanner import build


def best_of(fn, reps):
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--w", type=int, default=40)
    ap.add_argument("--len", type=int, default=20_000)
    ap.add_argument("--eps", default="0.3,0.45")
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    kernels = [("python", _kernels.python_peel_kernel)]
    if _kernels.compiled_peel_kernel is None:
        print("compiled kernel unavailable; timing the fallback only")
    else:
        kernels.append(("cython", _kernels.compiled_peel_kernel))

    graph = build(sample(args.n, args.k, args.w, args.seed), args.len)
    print(f"n={args.n} k={args.k} w={args.w} L={args.len} edges={graph.num_edges}")
    print(f"{'eps':>6} {'kernel':>8} {'best_s':>10} {'median_s':>10} {'Medges/s':>10} {'speedup':>8}")
    for eps in (float(e) for e in args.eps.split(",")):
        pattern = erase(graph, eps, args.seed)
        residuals = set()
        base = None
        for name, kern in kernels:
            residuals.add(peel(graph, pattern, kernel=kern).residual.tobytes())
            best, med = best_of(lambda: peel(graph, pattern, kernel=kern), args.reps)
            base = base or best
            rate = graph.num_edges / best / 1e6
            print(f"{eps:>6.3g} {name:>8} {best:>10.4f} {med:>10.4f} {rate:>10.2f} {base / best:>7.1f}x")
        if len(residuals) != 1:
            raise SystemExit("kernels disagree on the residual")


if __name__ == "__main__":
    main()
