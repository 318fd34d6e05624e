import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linoptsim.errors import InvalidDimensionError, InvalidOpError, InvalidUnitaryError
from linoptsim.numerics import (
    Beamsplitter,
    PhaseShifter,
    as_unitary,
    compose_interferometer,
    haar_random_unitary,
    matrix_from_json,
    matrix_to_json,
    reck_decompose,
    unitarity_defect,
)


def test_haar_1x1_is_a_phase():
    U = haar_random_unitary(1, seed=42)
    assert U.shape == (1, 1)
    assert abs(abs(U[0, 0]) - 1) < 1e-15


def test_haar_is_seed_deterministic():
    np.testing.assert_array_equal(haar_random_unitary(4, seed=7), haar_random_unitary(4, seed=7))
    assert not np.allclose(haar_random_unitary(4, seed=7), haar_random_unitary(4, seed=8))


def test_haar_unitarity_and_column_norms():
    U = haar_random_unitary(5, seed=3)
    # direct product, independent of unitarity_defect
    assert np.max(np.abs(U.conj().T @ U - np.eye(5))) < 1e-12
    assert unitarity_defect(U) < 1e-12
    np.testing.assert_allclose(np.linalg.norm(U, axis=0), 1.0, atol=1e-12)


def test_haar_rejects_zero_dimension():
    with pytest.raises(InvalidDimensionError):
        haar_random_unitary(0, seed=1)


def test_haar_phases_are_uniform():
    # Haar measure: U[0,0] phase is uniform, so its mean over many draws vanishes
    vals = np.array([haar_random_unitary(3, seed=s)[0, 0] for s in range(4000)])
    assert abs(np.mean(vals / np.abs(vals))) < 0.05
    # and E|U_00|^2 = 1/m
    assert abs(np.mean(np.abs(vals) ** 2) - 1 / 3) < 0.02


def test_compose_empty_is_identity():
    np.testing.assert_array_equal(compose_interferometer([], 3), np.eye(3))


def test_compose_single_phase_shifter():
    U = compose_interferometer([PhaseShifter(np.pi, 0)], 2)
    np.testing.assert_allclose(U, np.diag([-1, 1]), atol=1e-15)


def test_compose_balanced_beamsplitter():
    U = compose_interferometer([Beamsplitter(np.pi / 4, 0.0, 0, 1)], 2)
    np.testing.assert_allclose(np.linalg.norm(U, axis=0), 1.0, atol=1e-15)
    np.testing.assert_allclose(np.abs(U), 1 / np.sqrt(2), atol=1e-15)
    # block convention [[c, -e^{-i phi} s], [e^{i phi} s, c]]
    np.testing.assert_allclose(U, np.array([[1, -1], [1, 1]]) / np.sqrt(2), atol=1e-15)


def test_compose_is_product_in_application_order():
    a = Beamsplitter(0.3, 0.7, 0, 1)
    b = Beamsplitter(1.1, -0.2, 1, 2)
    Ea, Eb = np.eye(3, dtype=complex), np.eye(3, dtype=complex)
    Ea[np.ix_([0, 1], [0, 1])] = a.block()
    Eb[np.ix_([1, 2], [1, 2])] = b.block()
    np.testing.assert_allclose(compose_interferometer([a, b], 3), Ea @ Eb, atol=1e-15)


@pytest.mark.parametrize(
    "op",
    [Beamsplitter(0.1, 0.0, 0, 3), Beamsplitter(0.1, 0.0, 1, 1), PhaseShifter(0.2, -1)],
)
def test_compose_rejects_bad_modes(op):
    with pytest.raises(InvalidOpError):
        compose_interferometer([op], 3)


def test_reck_identity():
    ops = reck_decompose(np.eye(3))
    assert np.max(np.abs(compose_interferometer(ops, 3) - np.eye(3))) < 1e-10


def test_reck_diagonal_gives_phase_shifters_only():
    D = np.diag(np.exp(1j * np.array([0.4, -1.2, 2.5])))
    ops = reck_decompose(D)
    assert ops and all(isinstance(op, PhaseShifter) for op in ops)
    np.testing.assert_allclose(compose_interferometer(ops, 3), D, atol=1e-14)


def test_reck_round_trip_haar4():
    U = haar_random_unitary(4, seed=1)
    assert np.max(np.abs(compose_interferometer(reck_decompose(U), 4) - U)) < 1e-8


@settings(max_examples=40, deadline=None)
@given(m=st.integers(1, 8), seed=st.integers(0, 2**32 - 1))
def test_reck_round_trip_property(m, seed):
    U = haar_random_unitary(m, seed=seed)
    ops = reck_decompose(U)
    n_bs = sum(isinstance(o, Beamsplitter) for o in ops)
    n_ps = sum(isinstance(o, PhaseShifter) for o in ops)
    assert n_bs <= m * (m - 1) // 2
    assert n_ps <= m
    V = compose_interferometer(ops, m)
    assert unitarity_defect(V) < 1e-10
    assert np.max(np.abs(V - U)) < 1e-8


def test_reck_rejects_non_unitary():
    with pytest.raises(InvalidUnitaryError):
        reck_decompose(2 * np.eye(2))


def test_unitarity_defect_values():
    assert unitarity_defect(np.eye(4)) == 0
    assert unitarity_defect(2 * np.eye(3)) == pytest.approx(3.0)
    with pytest.raises(InvalidDimensionError):
        unitarity_defect(np.ones((2, 3)))


def test_as_unitary_rejects_nan():
    with pytest.raises(InvalidUnitaryError):
        as_unitary(np.array([[np.nan]]))


def test_matrix_json_round_trip():
    U = haar_random_unitary(3, seed=5)
    text = matrix_to_json(U)
    data = json.loads(text)
    assert data["dim"] == 3 and len(data["entries"]) == 9
    assert data["entries"][1] == [U[0, 1].real, U[0, 1].imag]  # row-major
    np.testing.assert_array_equal(matrix_from_json(text), U)
