"""Matrix permanents.

``permanent_ryser`` is the production engine: Ryser's inclusion-exclusion
formula walked in Gray-code order so each subset step updates the running
row sums with a single column, O(2^n n) work overall.  The subset range is
cut into fixed-size blocks that depend only on ``n``; blocks are grouped
into chunks handed to threads, each summed by a numba kernel that releases
the GIL, and the per-block sums are combined with ``math.fsum``.  Results
are therefore bit-identical for any thread or chunk count.

Error growth for adversarial inputs is roughly ``2**n * eps`` relative to
the largest subset term; there is no extended-precision fallback.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable

import numba
import numpy as np

from .errors import InvalidDimensionError, TooLargeError

RYSER_MAX_N = 30
NAIVE_MAX_N = 9
THREADS_ENV = "LINOPTSIM_THREADS"

# below this size threading overhead outweighs the work
_PARALLEL_MIN_N = 14
_BLOCK_BITS = 10


@numba.njit(cache=True, nogil=True)
def _ryser_blocks(A, block_size, first_block, out):
    """Fill ``out[b]`` with the signed Ryser sum over Gray-code block ``first_block + b``.

    Block ``c`` covers indices ``c*block_size <= k < (c+1)*block_size``
    (index 0, the empty subset, is skipped).  Row sums are rebuilt from
    scratch at the start of every block, so each block's value does not
    depend on how blocks are grouped into work chunks.
    """
    n = A.shape[0]
    last = (1 << n) - 1
    rowsums = np.empty(n, dtype=np.complex128)
    for b in range(out.shape[0]):
        start = (first_block + b) * block_size
        stop = min(start + block_size, last + 1)
        if start == 0:
            start = 1
        rowsums[:] = 0
        g = start ^ (start >> 1)
        parity = 0
        for j in range(n):
            if (g >> j) & 1:
                parity ^= 1
                for i in range(n):
                    rowsums[i] += A[i, j]
        sign = -1.0 if parity else 1.0
        total = 0j
        k = start
        while True:
            prod = 1.0 + 0j
            for i in range(n):
                prod *= rowsums[i]
            total += sign * prod
            k += 1
            if k >= stop:
                break
            # gray(k-1) and gray(k) differ in the lowest set bit of k
            j = 0
            while not (k >> j) & 1:
                j += 1
            if ((k ^ (k >> 1)) >> j) & 1:
                for i in range(n):
                    rowsums[i] += A[i, j]
            else:
                for i in range(n):
                    rowsums[i] -= A[i, j]
            sign = -sign
        out[b] = total


def _square(A) -> np.ndarray:
    A = np.ascontiguousarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidDimensionError(f"permanent needs a square matrix, got shape {A.shape}")
    return A


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _block_size(n: int) -> int:
    return 1 << min(n, _BLOCK_BITS)


def chunk_bounds(n: int, chunks: int | None = None) -> list[tuple[int, int]]:
    """Group the Gray-code blocks for size ``n`` into contiguous ``[first, stop)`` ranges."""
    nblocks = (1 << n) // _block_size(n)
    if chunks is None:
        chunks = 1 if n < _PARALLEL_MIN_N else 64
    chunks = max(1, min(chunks, nblocks))
    edges = [(nblocks * c) // chunks for c in range(chunks + 1)]
    return [(edges[c], edges[c + 1]) for c in range(chunks) if edges[c] < edges[c + 1]]


def permanent_ryser(A, threads: int | None = None, chunks: int | None = None) -> complex:
    """Permanent of a square complex matrix by Gray-code Ryser.

    Args:
        A: n x n matrix, n <= 30.  The 0 x 0 matrix has permanent 1.
        threads: worker threads; defaults to ``$LINOPTSIM_THREADS`` or the
            CPU count for large n.  Does not change the result.
        chunks: number of work units the blocks are grouped into.  Does not
            change the result either.

    Returns:
        The permanent as a Python complex.
    """
    A = _square(A)
    n = A.shape[0]
    if n > RYSER_MAX_N:
        raise TooLargeError(f"n={n} exceeds the Ryser limit of {RYSER_MAX_N}")
    if n == 0:
        return 1 + 0j
    bs = _block_size(n)
    bounds = chunk_bounds(n, chunks)
    sums = np.empty((1 << n) // bs, dtype=np.complex128)
    if threads is None:
        threads = default_threads() if n >= _PARALLEL_MIN_N else 1

    def work(ab):
        a, b = ab
        _ryser_blocks(A, bs, a, sums[a:b])

    if threads <= 1 or len(bounds) == 1:
        for ab in bounds:
            work(ab)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, bounds))
    # correctly rounded, hence independent of block order
    total = complex(math.fsum(sums.real), math.fsum(sums.imag))
    return total if n % 2 == 0 else -total


def permanent_naive(A) -> complex:
    """Sum over all n! permutations.  Test oracle only, n <= 9."""
    A = _square(A)
    n = A.shape[0]
    if n > NAIVE_MAX_N:
        raise TooLargeError(f"n={n} exceeds the naive limit of {NAIVE_MAX_N}")
    rows = range(n)
    return complex(sum(math.prod(A[i, s[i]] for i in rows) for s in itertools.permutations(rows)))


def benchmark_permanent(
    sizes: Iterable[int],
    repetitions: int = 3,
    threads: int = 1,
    seed: int = 0,
) -> list[tuple[int, int]]:
    """Time ``permanent_ryser`` on random complex matrices.

    Returns ``(n, nanoseconds)`` rows holding the best of ``repetitions`` runs.
    """
    rng = np.random.default_rng(seed)
    permanent_ryser(np.eye(1))  # trigger JIT outside the timing
    rows = []
    for n in sizes:
        A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        best = None
        for _ in range(repetitions):
            t0 = time.perf_counter_ns()
            permanent_ryser(A, threads=threads)
            dt = time.perf_counter_ns() - t0
            best = dt if best is None else min(best, dt)
        rows.append((n, best))
    return rows


def benchmark_csv(rows: list[tuple[int, int]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "nanoseconds"])
    writer.writerows(rows)
    return buf.getvalue()
