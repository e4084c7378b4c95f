"""Which solution weights are cheap to reach.

Runs the steered-GI weight experiment on a random [500, 250] code over F_2
and F_3 and prints the covered interval next to r(q-1)/q, the typical
weight of the Prange solution.
"""

import sys

from gid.experiment import ExperimentConfig, run_easy_weights

decomps = int(sys.argv[1]) if len(sys.argv) > 1 else 1
for q in (2, 3):
    cfg = ExperimentConfig(500, 250, q, iterations=10, decompositions=decomps, seed=2024)
    rep = run_easy_weights(cfg)
    r = cfg.n - cfg.k
    base = r * (q - 1) // q
    lo, hi = rep.summary
    print(f"q={q}: reached [{lo}, {hi}] with {decomps} decomposition(s) in {rep.elapsed:.1f}s")
    print(f"      r(q-1)/q = {base}, r(q-1)/q + k = {base + cfg.k}, gaps inside: {rep.gaps()}")
    for it in (1, 5, 10):
        print(f"      after {it:2d} iterations {len(rep.missing(it))} of {cfg.n} weights unreached")
