"""Fallback kernel implementations (numpy-vectorized / plain Python).

Draw-order contract for `count_failures`: each trial consumes exactly `n`
doubles from the bit generator, trial-major. The vectorized path below
fills row-major (trials, n) blocks, which matches that order; the compiled
backend walks the same sequence one double at a time.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_CHUNK_ROWS = 65536


def count_failures(bit_generator, epsilon: float, n: int, trials: int) -> int:
    """Number of trials in which at least one of n draws falls below epsilon."""
    if n == 0 or trials == 0:
        return 0
    rng = np.random.Generator(bit_generator)
    failures = 0
    done = 0
    while done < trials:
        rows = min(_CHUNK_ROWS, trials - done)
        draws = rng.random((rows, n))
        failures += int(np.count_nonzero((draws < epsilon).any(axis=1)))
        done += rows
    return failures


def scan_nongain_runs(progressive, text_changed, min_len: int):
    """Maximal runs of indices where text changed but no unit was gained.

    Inputs are equal-length sequences of 0/1 flags, one per turn. Returns
    (start, end) index pairs, inclusive, for runs of length >= min_len.
    """
    runs: list[tuple[int, int]] = []
    start = -1
    n = len(progressive)
    for i in range(n):
        if not progressive[i] and text_changed[i]:
            if start < 0:
                start = i
        else:
            if start >= 0 and i - start >= min_len:
                runs.append((start, i - 1))
            start = -1
    if start >= 0 and n - start >= min_len:
        runs.append((start, n - 1))
    return runs
