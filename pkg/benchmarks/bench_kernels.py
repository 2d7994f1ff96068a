#!/usr/bin/env python
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs both backends in-process on the same inputs and reports timings
plus the speedup, also asserting result equality (the two backends must
consume identical RNG streams).

    python benchmarks/bench_kernels.py [--trials 200000] [--n 60]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from inquest._kernels import _fallback

try:
    from inquest._kernels import _core
except ImportError:
    _core = None


def _time(fn, *args, repeats: int = 5) -> tuple[float, object]:
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_count_failures(trials: int, n: int, epsilon: float) -> None:
    print(f"count_failures: trials={trials:,} n={n} eps={epsilon}")
    t_py, r_py = _time(
        lambda: _fallback.count_failures(np.random.PCG64(42), epsilon, n, trials)
    )
    print(f"  python   {t_py * 1e3:9.2f} ms  -> {r_py}")
    if _core is None:
        print("  compiled backend not built; skipping")
        return
    t_c, r_c = _time(
        lambda: _core.count_failures(np.random.PCG64(42), epsilon, n, trials)
    )
    print(f"  compiled {t_c * 1e3:9.2f} ms  -> {r_c}")
    assert r_py == r_c, f"backend mismatch: {r_py} != {r_c}"
    print(f"  speedup  {t_py / t_c:9.2f}x")


def bench_scan(turns: int) -> None:
    rng = np.random.default_rng(7)
    progressive = (rng.random(turns) < 0.5).astype(np.uint8)
    text_changed = (rng.random(turns) < 0.9).astype(np.uint8)
    print(f"scan_nongain_runs: turns={turns:,}")
    t_py, r_py = _time(lambda: _fallback.scan_nongain_runs(progressive, text_changed, 3))
    print(f"  python   {t_py * 1e3:9.2f} ms  -> {len(r_py)} runs")
    if _core is None:
        print("  compiled backend not built; skipping")
        return
    t_c, r_c = _time(lambda: _core.scan_nongain_runs(progressive, text_changed, 3))
    print(f"  compiled {t_c * 1e3:9.2f} ms  -> {len(r_c)} runs")
    assert list(r_py) == list(r_c), "backend mismatch in run boundaries"
    print(f"  speedup  {t_py / t_c:9.2f}x")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=200_000)
    parser.add_argument("--n", type=int, default=60)
    parser.add_argument("--epsilon", type=float, default=0.05)
    parser.add_argument("--turns", type=int, default=2_000_000)
    args = parser.parse_args()
    bench_count_failures(args.trials, args.n, args.epsilon)
    bench_scan(args.turns)


if __name__ == "__main__":
    main()
