"""Time the enumeration and activity kernels compiled vs. plain Python.

Each mode runs in its own interpreter because the fallback is chosen at
import time from BICONED_DISABLE_NUMBA.

    python benchmarks/bench_kernels.py            # both modes, side by side
    python benchmarks/bench_kernels.py --worker   # one mode, JSON on stdout
"""

import argparse
import json
import os
import subprocess
import sys
import time

CASES = [
    ("complete-bipartite", [2, 2]),
    ("complete-bipartite", [3, 3]),
    ("complete", [7]),
    ("complete-multipartite", [2, 2, 2]),
]


def worker(repeat):
    import numpy as np

    from biconed import _kernels
    from biconed.biconing import gen_family

    out = {"numba": _kernels.USE_NUMBA, "cases": []}
    for kind, params in CASES:
        g = gen_family(kind, params).full
        n = len(g.vertices)
        eu, ev, _ = g.arrays()
        # first call pays for compilation (or the cache load)
        trees = _kernels.spanning_trees(n, eu, ev)
        _kernels.activity_flags(n, eu, ev, trees[:1])
        _kernels.forest_counts(n, eu, ev)
        best = {"trees": np.inf, "activity": np.inf, "forests": np.inf}
        for _ in range(repeat):
            t0 = time.perf_counter()
            trees = _kernels.spanning_trees(n, eu, ev)
            t1 = time.perf_counter()
            _kernels.activity_flags(n, eu, ev, trees)
            t2 = time.perf_counter()
            _kernels.forest_counts(n, eu, ev)
            t3 = time.perf_counter()
            best["trees"] = min(best["trees"], t1 - t0)
            best["activity"] = min(best["activity"], t2 - t1)
            best["forests"] = min(best["forests"], t3 - t2)
        out["cases"].append({"case": f"{kind} {params}", "n_trees": int(trees.shape[0]), **best})
    json.dump(out, sys.stdout)


def run_mode(disable, repeat):
    env = dict(os.environ)
    if disable:
        env["BICONED_DISABLE_NUMBA"] = "1"
    else:
        env.pop("BICONED_DISABLE_NUMBA", None)
    res = subprocess.run(
        [sys.executable, __file__, "--worker", "--repeat", str(repeat)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--worker", action="store_true")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if args.worker:
        worker(args.repeat)
        return
    fast = run_mode(False, args.repeat)
    slow = run_mode(True, 1)
    print(f"{'case':34s} {'trees':>8s} {'kernel':>9s} {'numba s':>9s} {'python s':>9s} {'speedup':>8s}")
    for a, b in zip(fast["cases"], slow["cases"]):
        assert a["n_trees"] == b["n_trees"]
        for k in ("trees", "activity", "forests"):
            ratio = b[k] / a[k] if a[k] > 0 else float("inf")
            print(f"{a['case']:34s} {a['n_trees']:8d} {k:>9s} {a[k]:9.4f} {b[k]:9.4f} {ratio:7.1f}x")


if __name__ == "__main__":
    main()
