"""Photon-number configurations and the repeated-index submatrices used in
permanent amplitudes.

A configuration is a plain tuple of per-mode photon counts.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import InvalidDimensionError, PhotonNumberMismatchError, TooLargeError

Config = tuple[int, ...]

_MAX_COUNT = 2**63 - 1


def config_count(n: int, m: int) -> int:
    """Number of ways to place ``n`` identical photons in ``m`` modes, C(n+m-1, n)."""
    if m < 1:
        raise InvalidDimensionError(f"mode count must be >= 1, got {m}")
    if n < 0:
        raise InvalidDimensionError(f"photon count must be >= 0, got {n}")
    count = math.comb(n + m - 1, n)
    if count > _MAX_COUNT:
        raise TooLargeError(f"C({n + m - 1}, {n}) does not fit in 64 bits")
    return count


def enumerate_configs(n: int, m: int) -> list[Config]:
    """All configurations of ``n`` photons over ``m`` modes in ascending lexicographic order."""
    config_count(n, m)  # validates arguments

    def rec(left: int, modes: int):
        if modes == 1:
            yield (left,)
            return
        for first in range(left + 1):
            for rest in rec(left - first, modes - 1):
                yield (first, *rest)

    return list(rec(n, m))


def mode_list(config: Sequence[int]) -> list[int]:
    """Expand counts into a sorted list of occupied mode indices, e.g. (2,0,1) -> [0,0,2]."""
    return [k for k, c in enumerate(config) for _ in range(c)]


def submatrix(U, inp: Sequence[int], out: Sequence[int]) -> np.ndarray:
    """Build U_{S,T}: rows follow the input occupations, columns the output ones.

    Row block for input mode i is repeated ``inp[i]`` times and column block
    for output mode j is repeated ``out[j]`` times, so the result is k x k
    with ``k`` the common photon number.
    """
    if sum(inp) != sum(out):
        raise PhotonNumberMismatchError(
            f"input carries {sum(inp)} photons but output carries {sum(out)}"
        )
    U = np.asarray(U)
    if len(inp) > U.shape[0] or len(out) > U.shape[1]:
        raise InvalidDimensionError("configuration longer than the matrix dimension")
    return U[np.ix_(mode_list(inp), mode_list(out))]


def factorial_product(config: Sequence[int]) -> int:
    return math.prod(math.factorial(c) for c in config)
