"""Benchmark the numba kernels against their pure-numpy fallbacks.

Run with `python3 benchmarks/bench_kernels.py`.  JIT compilation is triggered
once up front so timings exclude compile cost.  Sizes mirror real workloads:
anchor sets of ~10-90 rows, archives of a few hundred elites, NSGA-II
populations of 400-800, and emitter batches of 200 genomes.
"""

import time

import numpy as np

from tdomino import kernels

if not kernels.USE_NUMBA:
    raise SystemExit("numba path disabled (TDOMINO_NUMBA=0); nothing to compare")


def bench(fn, *args, repeats=200):
    fn(*args)  # warmup / JIT
    start = time.perf_counter()
    for _ in range(repeats):
        fn(*args)
    return (time.perf_counter() - start) / repeats


def check_equal(a, b, exact=True):
    a, b = np.asarray(a), np.asarray(b)
    if exact:
        assert np.array_equal(a, b), "paths disagree"
    else:  # float kernels: summation order differs between the two paths
        assert np.allclose(a, b, rtol=1e-12, atol=1e-9), "paths disagree"


def main():
    rng = np.random.default_rng(0)
    cases = []

    x = rng.uniform(-5, 5, 5)
    anchors = rng.uniform(-5, 5, (90, 5))
    cases.append(("tdomino_score (1x90x5)",
                  kernels._tdomino_score_nb, kernels._tdomino_score_np,
                  (x, anchors), True))

    xs = rng.uniform(-5, 5, (400, 5))
    cases.append(("tdomino_scores_batch (400x400x5)",
                  kernels._tdomino_scores_batch_nb, kernels._tdomino_scores_batch_np,
                  (xs, xs), True))

    objs = rng.integers(0, 20, (800, 5)).astype(float)
    cases.append(("front_ranks (800x5)",
                  kernels._front_ranks_nb, kernels._front_ranks_np,
                  (objs,), True))

    genomes = rng.uniform(-2, 2, (200, 10))
    cases.append(("rastrigin_pair (200x10)",
                  kernels._rastrigin_pair_nb, kernels._rastrigin_pair_np,
                  (genomes, 0.0, 2.2), False))

    print(f"{'kernel':<36} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for name, nb, np_fn, args, exact in cases:
        check_equal(nb(*args), np_fn(*args), exact)
        t_nb = bench(nb, *args)
        t_np = bench(np_fn, *args)
        print(f"{name:<36} {t_nb * 1e6:>8.1f}us {t_np * 1e6:>8.1f}us "
              f"{t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
