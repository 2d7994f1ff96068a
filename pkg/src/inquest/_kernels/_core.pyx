# cython: language_level=3
"""Compiled kernels. Same contracts and draw order as `_fallback`."""

from cpython.pycapsule cimport PyCapsule_GetPointer, PyCapsule_IsValid
from numpy.random cimport bitgen_t

BACKEND = "compiled"


def count_failures(bit_generator, double epsilon, Py_ssize_t n, Py_ssize_t trials):
    """Number of trials in which at least one of n draws falls below epsilon."""
    cdef const char *capsule_name = "BitGenerator"
    cdef bitgen_t *rng
    cdef Py_ssize_t i, j
    cdef long failures = 0
    cdef bint hit

    if n == 0 or trials == 0:
        return 0
    capsule = bit_generator.capsule
    if not PyCapsule_IsValid(capsule, capsule_name):
        raise ValueError("invalid BitGenerator capsule")
    rng = <bitgen_t *> PyCapsule_GetPointer(capsule, capsule_name)
    with bit_generator.lock, nogil:
        for i in range(trials):
            hit = 0
            # All n draws are consumed even after a hit so the stream
            # position matches the vectorized fallback exactly.
            for j in range(n):
                if rng.next_double(rng.state) < epsilon:
                    hit = 1
            failures += hit
    return failures


def scan_nongain_runs(const unsigned char[::1] progressive,
                      const unsigned char[::1] text_changed,
                      Py_ssize_t min_len):
    """Maximal runs of indices where text changed but no unit was gained."""
    cdef Py_ssize_t i, start = -1
    cdef Py_ssize_t n = progressive.shape[0]
    runs = []
    for i in range(n):
        if progressive[i] == 0 and text_changed[i] != 0:
            if start < 0:
                start = i
        else:
            if start >= 0 and i - start >= min_len:
                runs.append((start, i - 1))
            start = -1
    if start >= 0 and n - start >= min_len:
        runs.append((start, n - 1))
    return runs
