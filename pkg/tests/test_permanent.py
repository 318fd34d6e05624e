import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linoptsim.errors import InvalidDimensionError, TooLargeError
from linoptsim.permanent import benchmark_csv, benchmark_permanent, permanent_naive, permanent_ryser

from conftest import random_complex


def test_one_by_one():
    assert permanent_ryser([[3 - 2j]]) == 3 - 2j


def test_empty_matrix():
    assert permanent_ryser(np.zeros((0, 0))) == 1


def test_all_ones_2x2():
    assert permanent_ryser([[1, 1], [1, 1]]) == 2


def test_naive_small_values():
    assert permanent_naive(np.eye(3)) == 1
    assert permanent_naive([[1, 2], [3, 4]]) == 10
    assert permanent_naive(np.ones((4, 4))) == 24


def test_ryser_all_ones_is_factorial():
    for n in range(1, 11):
        assert permanent_ryser(np.ones((n, n))).real == pytest.approx(math.factorial(n), rel=1e-12)


def test_ryser_matches_naive_6x6(rng):
    A = random_complex(rng, 6)
    ref = permanent_naive(A)
    assert abs(permanent_ryser(A) - ref) <= 1e-10 * abs(ref)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 8), seed=st.integers(0, 2**32 - 1))
def test_ryser_matches_naive_property(n, seed):
    A = random_complex(np.random.default_rng(seed), n)
    ref = permanent_naive(A)
    assert abs(permanent_ryser(A) - ref) <= 1e-10 * (1 + abs(ref))


@pytest.mark.parametrize("engine", [permanent_ryser, permanent_naive])
def test_row_and_column_permutation_invariance(engine, rng):
    A = random_complex(rng, 6)
    ref = engine(A)
    rows, cols = rng.permutation(6), rng.permutation(6)
    assert abs(engine(A[rows]) - ref) <= 1e-10 * abs(ref)
    assert abs(engine(A[:, cols]) - ref) <= 1e-10 * abs(ref)
    assert abs(engine(A.T) - ref) <= 1e-10 * abs(ref)


@pytest.mark.parametrize("engine", [permanent_ryser, permanent_naive])
def test_row_scaling_multilinearity(engine, rng):
    A = random_complex(rng, 5)
    c = 0.7 - 1.3j
    B = A.copy()
    B[2] *= c
    assert abs(engine(B) - c * engine(A)) <= 1e-10 * abs(engine(B))


def test_result_independent_of_chunks_and_threads(rng):
    A = random_complex(rng, 18)
    ref = permanent_ryser(A, threads=1, chunks=1)
    for chunks, threads in [(3, 1), (64, 1), (7, 4), (256, 3)]:
        assert permanent_ryser(A, threads=threads, chunks=chunks) == ref


def test_repeated_rows_give_known_permanent():
    # Per of k identical rows u with k columns equals k! * prod(u)
    u = np.array([0.3 + 0.1j, -0.5j, 1.2, 0.4 - 0.4j])
    A = np.tile(u, (4, 1))
    assert abs(permanent_ryser(A) - 24 * np.prod(u)) < 1e-13


def test_errors():
    with pytest.raises(InvalidDimensionError):
        permanent_ryser(np.ones((2, 3)))
    with pytest.raises(TooLargeError):
        permanent_ryser(np.ones((31, 31)))
    with pytest.raises(TooLargeError):
        permanent_naive(np.ones((10, 10)))


def test_benchmark_harness():
    rows = benchmark_permanent([4, 6], repetitions=2)
    assert [n for n, _ in rows] == [4, 6]
    assert all(ns > 0 for _, ns in rows)
    text = benchmark_csv(rows)
    assert text.splitlines()[0] == "n,nanoseconds"
    assert len(text.splitlines()) == 3
