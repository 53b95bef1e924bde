#!/usr/bin/env python3
"""Compare the numba kernels against the pure-numpy fallbacks.

Runs both code paths in one process (the compiled kernels and the numpy
implementations are both importable when numba is present) and prints a
table of per-call timings.  Set NETINFER_NO_NUMBA=1 to check what the
fallback-only configuration feels like end to end.

Usage: python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from netinfer import Protocol, SamplerConfig, generate_labellings, \
    oracle_predictions, transform_from_arrays
from netinfer import _kernels


def _bench(fn, args, inner, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def _waterfall_args(n, m, seed):
    truth = tuple(int(j) for j in
                  np.random.default_rng(seed).choice(n, size=max(2, n // 5),
                                                     replace=False))
    labels = generate_labellings(n, m, SamplerConfig(seed=seed))
    preds = oracle_predictions(truth, Protocol.majority(), labels)
    M = transform_from_arrays(labels, preds)
    order = np.arange(n, dtype=np.int64)
    init = np.zeros(n, dtype=np.bool_)
    return (M.entries, M.predictions, 0, order, 1, 12345, init, False)


def _brute_args(n, m, seed):
    rng = np.random.default_rng(seed)
    entries = rng.integers(0, 2, size=(m, n), dtype=np.int8) * 2 - 1
    preds = rng.random(m) < 0.5
    return (entries, preds, 0, 0)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if not _kernels._HAVE_NUMBA:
        print("numba backend inactive (NETINFER_NO_NUMBA set or numba "
              "missing); only the numpy path can be timed.")

    rows = []
    cases = [("waterfall n=30 m=30", _waterfall_args(30, 30, 1),
              "_waterfall_nb", "_waterfall_np", 50),
             ("waterfall n=100 m=100", _waterfall_args(100, 100, 2),
              "_waterfall_nb", "_waterfall_np", 10),
             ("brute force n=14 m=8", _brute_args(14, 8, 3),
              "_brute_nb", "_brute_np", 5),
             ("brute force n=18 m=8", _brute_args(18, 8, 4),
              "_brute_nb", "_brute_np", 2)]

    for name, call_args, nb_name, np_name, inner in cases:
        np_fn = getattr(_kernels, np_name)
        t_np = _bench(np_fn, call_args, inner, args.repeat)
        if _kernels._HAVE_NUMBA:
            nb_fn = getattr(_kernels, nb_name)
            nb_fn(*call_args)  # compile before timing
            t_nb = _bench(nb_fn, call_args, inner, args.repeat)
            rows.append((name, t_nb, t_np, t_np / t_nb))
        else:
            rows.append((name, None, t_np, None))

    print(f"{'case':28s} {'numba':>12s} {'numpy':>12s} {'speedup':>9s}")
    for name, t_nb, t_np, ratio in rows:
        nb_txt = f"{t_nb*1e6:10.1f}us" if t_nb is not None else "         -"
        ratio_txt = f"{ratio:8.1f}x" if ratio is not None else "        -"
        print(f"{name:28s} {nb_txt:>12s} {t_np*1e6:10.1f}us {ratio_txt:>9s}")


if __name__ == "__main__":
    main()
