"""Compare the compiled core against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--steps N] [--replicas R]

Both backends are first checked for identical output, then timed per rule.
"""

import argparse
import time

import numpy as np

from rwattach import _pycore, core
from rwattach.runner import replica_seeds

PATH4 = np.array([(0, 1), (1, 2), (2, 3)], dtype=np.int64)
CASES = [
    ("fixed_walk l=1", core.RULE_FIXED, 1, 0.0),
    ("fixed_walk l=3", core.RULE_FIXED, 3, 0.0),
    ("bernoulli p=0.5", core.RULE_BERNOULLI, 0, 0.5),
    ("preferential", core.RULE_PREFERENTIAL, 0, 0.0),
    ("uniform", core.RULE_UNIFORM, 0, 0.0),
]


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=20_000)
    ap.add_argument("--replicas", type=int, default=4)
    args = ap.parse_args()
    if core.BACKEND != "cython":
        raise SystemExit("compiled core not available; build with `pip install -e . --no-build-isolation`")

    seeds = replica_seeds(1, args.replicas)
    cps = np.array([args.steps], dtype=np.int64)
    total = args.steps * args.replicas
    print(f"{'rule':<18}{'python ns/step':>16}{'cython ns/step':>16}{'speedup':>10}")
    for name, rule, ell, p in CASES:
        fast, tc = timed(core.backend.simulate_undirected, PATH4, 4, rule, ell, p, args.steps, seeds, cps)
        slow, tp = timed(_pycore.simulate_undirected, PATH4, 4, rule, ell, p, args.steps, seeds, cps)
        if not np.array_equal(fast["leaves"], slow["leaves"]):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<18}{tp / total * 1e9:>16.0f}{tc / total * 1e9:>16.1f}{tp / tc:>9.0f}x")

    edges = np.array([(0, 1), (1, 2), (2, 0)], dtype=np.int64)
    colors = np.array([0, 1, 2])
    _, tc = timed(core.backend.simulate_directed, edges, 3, 1, args.steps, seeds, cps, colors, 3)
    _, tp = timed(_pycore.simulate_directed, edges, 3, 1, args.steps, seeds, cps, colors, 3)
    print(f"{'kcolor k=3 l=1':<18}{tp / total * 1e9:>16.0f}{tc / total * 1e9:>16.1f}{tp / tc:>9.0f}x")
    _, tc = timed(core.backend.urn_ensemble, 2, 3, core.URN_POLYA, args.steps, seeds, cps)
    _, tp = timed(_pycore.urn_ensemble, 2, 3, core.URN_POLYA, args.steps, seeds, cps)
    print(f"{'polya urn':<18}{tp / total * 1e9:>16.0f}{tc / total * 1e9:>16.1f}{tp / tc:>9.0f}x")


if __name__ == "__main__":
    main()
