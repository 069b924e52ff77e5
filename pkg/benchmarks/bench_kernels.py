"""Compare the compiled kernels against the numpy / pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one row per (kernel, backend) with the best wall time over the
repeats and the speedup of the compiled core.
"""
import argparse
import time

import numpy as np

from diverge import _kernels
from diverge.capacity import build_difference_graph, clique_search, max_clique
from diverge.graphs import Distance


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(core):
    rng = np.random.default_rng(0)
    diffs = rng.integers(0, 200, size=2_000_000).astype(np.int64)
    diffs[-1_000_000:] += 100
    ths = np.array([1, 2, 5, 10, 50, 100], dtype=np.int64)
    g5 = build_difference_graph(5, Distance(1))
    dense = np.triu(rng.random((150, 150)) < 0.7, 1)
    dense |= dense.T
    name = "cython" if core is _kernels.BACKENDS.get("cython") else "python"

    return [
        ("fill_divergent 1e6", lambda: core.fill_divergent(1, 1_000_001, 3)),
        ("fill_blockswap 1e6", lambda: core.fill_blockswap(1, 1_000_001, 7)),
        ("fill_residue 1e6", lambda: core.fill_residue(1, 1_000_001, 3, 5)),
        ("first_passage 2e6", lambda: core.first_passage(diffs, ths)),
        ("omega n=5", lambda: max_clique(g5, backend=name)),
        ("max clique G(150, 0.7)", lambda: clique_search(dense, deterministic=False, backend=name)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    backends = _kernels.BACKENDS
    if "cython" not in backends:
        print("compiled core not built; only the fallback is timed")
    results = {}
    for name, core in backends.items():
        for label, fn in cases(core):
            results[label, name] = best_of(fn, args.repeat)

    labels = list(dict.fromkeys(lbl for lbl, _ in results))
    print(f"{'kernel':<32}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for lbl in labels:
        py = results[lbl, "python"]
        cy = results.get((lbl, "cython"))
        if cy is None:
            print(f"{lbl:<32}{py:>12.4f}{'-':>12}{'-':>10}")
        else:
            print(f"{lbl:<32}{py:>12.4f}{cy:>12.4f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
