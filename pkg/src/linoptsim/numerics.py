"""Interferometer matrices: Haar sampling, composition from optical elements,
and triangular (Reck) mesh decomposition.

Convention used everywhere in the package: an m x m matrix ``U`` maps input
creation operators to outputs row-wise,

    a_i^dagger  ->  sum_j U[i, j] a_j^dagger,

so a sequence of elements applied in order ``B1, B2, ..., Bk`` composes to
the product ``B1 @ B2 @ ... @ Bk``.

The 2 x 2 beamsplitter block acting on modes ``(a, b)`` is

    [[cos t, -exp(-i p) sin t],
     [exp(i p) sin t, cos t]]

with ``t = theta`` and ``p = phi``.  A phase shifter multiplies one mode's
creation operator by ``exp(i phi)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import InvalidDimensionError, InvalidOpError, InvalidUnitaryError

UNITARITY_TOL = 1e-10

__all__ = [
    "Beamsplitter",
    "PhaseShifter",
    "ElementaryOp",
    "UNITARITY_TOL",
    "as_unitary",
    "balanced_beamsplitter",
    "compose_interferometer",
    "haar_random_unitary",
    "matrix_from_json",
    "matrix_to_json",
    "reck_decompose",
    "unitarity_defect",
]


@dataclass(frozen=True)
class Beamsplitter:
    theta: float
    phi: float
    mode_a: int
    mode_b: int

    def block(self) -> np.ndarray:
        c, s = np.cos(self.theta), np.sin(self.theta)
        return np.array(
            [[c, -np.exp(-1j * self.phi) * s], [np.exp(1j * self.phi) * s, c]],
            dtype=complex,
        )


@dataclass(frozen=True)
class PhaseShifter:
    phi: float
    mode: int

    def block(self) -> np.ndarray:
        return np.array([[np.exp(1j * self.phi)]], dtype=complex)


ElementaryOp = Union[Beamsplitter, PhaseShifter]


def unitarity_defect(A) -> float:
    """Return ``max |A^dagger A - I|`` over all entries."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidDimensionError(f"expected a square matrix, got shape {A.shape}")
    return float(np.max(np.abs(A.conj().T @ A - np.eye(A.shape[0])), initial=0.0))


def as_unitary(U, tol: float = UNITARITY_TOL) -> np.ndarray:
    """Validate ``U`` as a finite unitary matrix and return it as a complex array."""
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1] or U.shape[0] == 0:
        raise InvalidDimensionError(f"expected a non-empty square matrix, got shape {U.shape}")
    if not np.all(np.isfinite(U)):
        raise InvalidUnitaryError("matrix has non-finite entries")
    defect = unitarity_defect(U)
    if defect >= tol:
        raise InvalidUnitaryError(f"unitarity defect {defect:.3e} exceeds {tol:.1e}")
    return U


def haar_random_unitary(m: int, seed: int | None = None) -> np.ndarray:
    """Sample an m x m Haar-random unitary.

    QR-decomposes a complex Ginibre matrix and fixes the phases of R's
    diagonal so the result is distributed according to the Haar measure.
    The generator is numpy's PCG64, seeded with ``seed``.
    """
    if m < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {m}")
    rng = np.random.default_rng(seed)
    Z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2.0)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def balanced_beamsplitter() -> np.ndarray:
    """The 50:50 two-mode beamsplitter (theta = pi/4, phi = 0)."""
    return Beamsplitter(np.pi / 4, 0.0, 0, 1).block()


def _check_op(op: ElementaryOp, m: int) -> None:
    if isinstance(op, Beamsplitter):
        modes = (op.mode_a, op.mode_b)
        if op.mode_a == op.mode_b:
            raise InvalidOpError(f"beamsplitter acts on a single mode: {op}")
    elif isinstance(op, PhaseShifter):
        modes = (op.mode,)
    else:
        raise InvalidOpError(f"unknown optical element {op!r}")
    if any(not 0 <= k < m for k in modes):
        raise InvalidOpError(f"mode index out of range for m={m}: {op}")


def _op_modes(op: ElementaryOp) -> list[int]:
    if isinstance(op, Beamsplitter):
        return [op.mode_a, op.mode_b]
    return [op.mode]


def compose_interferometer(ops: Sequence[ElementaryOp], m: int) -> np.ndarray:
    """Multiply out a sequence of optical elements, first-applied leftmost."""
    if m < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {m}")
    U = np.eye(m, dtype=complex)
    for op in ops:
        _check_op(op, m)
        idx = _op_modes(op)
        # right-multiplication by the embedded block only mixes these columns
        U[:, idx] = U[:, idx] @ op.block()
    return as_unitary(U)


def reck_decompose(U, tol: float = UNITARITY_TOL) -> list[ElementaryOp]:
    """Factor a unitary into a triangular mesh of beamsplitters and phases.

    Each row is cleared right-to-left by beamsplitters on neighbouring
    columns, leaving a diagonal of phases.  The returned list is in
    application order, so ``compose_interferometer(ops, m)`` rebuilds ``U``.
    Uses at most m(m-1)/2 beamsplitters and m phase shifters; beamsplitters
    and phases that would be the identity are omitted.
    """
    W = as_unitary(U, tol).copy()
    m = W.shape[0]
    splitters: list[Beamsplitter] = []
    for i in range(m - 1):
        for j in range(m - 2, i - 1, -1):
            u, v = W[i, j], W[i, j + 1]
            if v == 0:
                continue
            theta = float(np.arctan2(abs(v), abs(u)))
            phi = 0.0 if u == 0 else float(-np.angle(-v / u))
            bs = Beamsplitter(theta, phi, j, j + 1)
            W[:, [j, j + 1]] = W[:, [j, j + 1]] @ bs.block().conj().T
            W[i, j + 1] = 0.0
            splitters.append(bs)
    # W is now diagonal: U = D @ T_k ... T_1 with T_1 the first splitter found
    phases = [
        PhaseShifter(float(np.angle(W[k, k])), k)
        for k in range(m)
        if np.angle(W[k, k]) != 0.0
    ]
    return [*phases, *reversed(splitters)]


def matrix_to_json(U) -> str:
    """Serialize a square matrix as ``{"dim": m, "entries": [[re, im], ...]}``."""
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise InvalidDimensionError(f"expected a square matrix, got shape {U.shape}")
    entries = [[float(z.real), float(z.imag)] for z in U.ravel()]
    return json.dumps({"dim": U.shape[0], "entries": entries})


def matrix_from_json(text: str) -> np.ndarray:
    data = json.loads(text)
    dim = int(data["dim"])
    entries = data["entries"]
    if len(entries) != dim * dim:
        raise InvalidDimensionError(f"expected {dim * dim} entries, got {len(entries)}")
    flat = np.array([complex(re, im) for re, im in entries], dtype=complex)
    if not np.all(np.isfinite(flat)):
        raise InvalidUnitaryError("matrix has non-finite entries")
    return flat.reshape(dim, dim)
