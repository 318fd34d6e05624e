"""Brute-force truncated Fock-space simulator.

States are dense complex tensors of shape ``(cutoff + 1,) * m``.  Inputs are
built from explicit displacement and creation-operator matrices, the
interferometer is applied element by element from its Reck decomposition
(beamsplitters act on each fixed-total-photon block of a mode pair), and
output statistics are read off directly.  No permanents are involved, so
the results independently check :mod:`linoptsim.exact`.

Any norm pushed above the cutoff is dropped and accumulated in
``TruncatedState.leakage``; exceeding ``leakage_tol`` raises
:class:`~linoptsim.errors.CutoffTooSmallError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import eval_genlaguerre, gammaln

from .distributions import OutputDistribution, canonical_json
from .errors import CutoffTooSmallError, InvalidInputError, TooLargeError
from .exact import InputSpec, pacs_normalization, propagate_displacements
from .numerics import Beamsplitter, PhaseShifter, as_unitary, reck_decompose

LEAKAGE_TOL = 1e-8
MAX_TENSOR_ENTRIES = 2**28


@dataclass(frozen=True)
class TruncatedState:
    m: int
    cutoff: int
    amplitudes: np.ndarray
    leakage: float = 0.0
    leakage_tol: float = LEAKAGE_TOL

    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def sector_norms(self) -> np.ndarray:
        """Squared norm carried by each total photon number 0 .. m*cutoff."""
        totals = np.indices(self.amplitudes.shape).sum(axis=0)
        return np.bincount(totals.ravel(), weights=np.abs(self.amplitudes.ravel()) ** 2,
                           minlength=self.m * self.cutoff + 1)

    def to_json(self, threshold: float = 0.0) -> str:
        """Debug dump: occupation tuple -> [re, im] for entries above ``threshold``."""
        entries = [
            {"config": list(idx), "amp": [float(a.real), float(a.imag)]}
            for idx, a in np.ndenumerate(self.amplitudes)
            if abs(a) > threshold
        ]
        return canonical_json({"m": self.m, "cutoff": self.cutoff, "leakage": self.leakage,
                               "entries": entries})


def _check_size(m: int, cutoff: int) -> None:
    if cutoff < 0:
        raise InvalidInputError(f"cutoff must be >= 0, got {cutoff}")
    if (cutoff + 1) ** m > MAX_TENSOR_ENTRIES:
        raise TooLargeError(f"(cutoff+1)^m = {(cutoff + 1) ** m} exceeds {MAX_TENSOR_ENTRIES}")


def _guard(state: TruncatedState, what: str) -> TruncatedState:
    if state.leakage > state.leakage_tol:
        raise CutoffTooSmallError(f"truncation at cutoff {state.cutoff} during {what}", state.leakage)
    return state


def default_cutoff(spec: InputSpec) -> int:
    """n + ceil(b^2 + 6b) + 4 with b the largest displacement any mode can carry.

    No output or intermediate mode amplitude exceeds the 2-norm of the input
    amplitudes, so that bound is used for b.
    """
    b = float(np.linalg.norm(spec.padded_alphas()))
    return spec.n + math.ceil(b * b + 6 * b) + 4


def displacement_matrix(alpha: complex, cutoff: int) -> np.ndarray:
    """Fock matrix elements <k|D(alpha)|l> for 0 <= k, l <= cutoff.

    Uses the closed form with associated Laguerre polynomials,
    ``sqrt(l!/k!) alpha^(k-l) exp(-|alpha|^2/2) L_l^(k-l)(|alpha|^2)`` for
    ``k >= l`` and the conjugate-symmetric expression for ``k < l``.
    """
    _check_size(1, cutoff)
    alpha = complex(alpha)
    x = abs(alpha) ** 2
    k = np.arange(cutoff + 1)[:, None]
    l = np.arange(cutoff + 1)[None, :]
    lo, hi = np.minimum(k, l), np.maximum(k, l)
    ratio = np.exp(0.5 * (gammaln(lo + 1) - gammaln(hi + 1)))
    base = np.where(k >= l, alpha, -alpha.conjugate())
    lag = eval_genlaguerre(lo, hi - lo, x)
    return ratio * base ** (hi - lo) * math.exp(-x / 2) * lag


def creation_matrix(cutoff: int) -> np.ndarray:
    """Truncated a^dagger: <k+1|a^dagger|k> = sqrt(k+1); the top level is lost."""
    return np.diag(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), -1).astype(complex)


def _mode_vector(family: str, occupied: bool, alpha: complex, cutoff: int) -> np.ndarray:
    vac = np.zeros(cutoff + 1, dtype=complex)
    vac[0] = 1.0
    if not occupied:
        return vac
    adag = creation_matrix(cutoff)
    if family == "fock":
        return adag @ vac
    if family == "dspfs":
        return displacement_matrix(alpha, cutoff) @ (adag @ vac)
    # spacs: N a^dagger D(alpha) |0>
    return pacs_normalization(alpha) * (adag @ (displacement_matrix(alpha, cutoff) @ vac))


def prepare_input(spec: InputSpec, cutoff: int | None = None,
                  leakage_tol: float = LEAKAGE_TOL) -> TruncatedState:
    """Product input state for ``spec`` truncated at ``cutoff`` photons per mode."""
    if cutoff is None:
        cutoff = default_cutoff(spec)
    _check_size(spec.m, cutoff)
    alphas = spec.padded_alphas()
    psi = np.ones((), dtype=complex)
    for j in range(spec.m):
        v = _mode_vector(spec.family, j < spec.n, alphas[j], cutoff)
        psi = np.multiply.outer(psi, v)
    state = TruncatedState(spec.m, cutoff, psi, leakage_tol=leakage_tol)
    leak = max(0.0, 1.0 - state.norm_sq())
    return _guard(replace(state, leakage=leak), "input preparation")


def _binomial_powers(x: complex, y: complex, p: int) -> np.ndarray:
    """Coefficients c_k of (x X + y Y)^p as a polynomial in X (Y carries the rest)."""
    k = np.arange(p + 1)
    return np.array([math.comb(p, i) for i in range(p + 1)], dtype=float) * x**k * y ** (p - k)


def two_mode_block(B: np.ndarray, total: int) -> np.ndarray:
    """Matrix of a two-mode element on the ``total``-photon block.

    Basis index p means p photons in the first mode and ``total - p`` in the
    second.  Column p expands
    ``(B00 a^dag + B01 b^dag)^p (B10 a^dag + B11 b^dag)^(total-p) / sqrt(p! (total-p)!)``
    by splitting the photons between the two output modes.
    """
    N = total
    G = np.zeros((N + 1, N + 1), dtype=complex)
    q = np.arange(N + 1)
    log_norm_out = 0.5 * (gammaln(q + 1) + gammaln(N - q + 1))
    for p in range(N + 1):
        col = np.convolve(_binomial_powers(B[0, 0], B[0, 1], p),
                          _binomial_powers(B[1, 0], B[1, 1], N - p))
        log_norm_in = 0.5 * (gammaln(p + 1) + gammaln(N - p + 1))
        G[:, p] = col * np.exp(log_norm_out - log_norm_in)
    return G


def _apply_two_mode(psi: np.ndarray, B: np.ndarray, a: int, b: int, cutoff: int) -> np.ndarray:
    x = np.moveaxis(psi, (a, b), (0, 1))
    shape = x.shape
    x = x.reshape(cutoff + 1, cutoff + 1, -1)
    out = np.zeros_like(x)
    for N in range(2 * cutoff + 1):
        ps = np.arange(max(0, N - cutoff), min(cutoff, N) + 1)
        block = x[ps, N - ps, :]
        if not np.any(block):
            continue
        G = two_mode_block(B, N)
        out[ps, N - ps, :] = G[np.ix_(ps, ps)] @ block
    return np.moveaxis(out.reshape(shape), (0, 1), (a, b))


def _apply_single_mode(psi: np.ndarray, M: np.ndarray, mode: int) -> np.ndarray:
    x = np.moveaxis(psi, mode, 0)
    y = np.tensordot(M, x, axes=(1, 0))
    return np.moveaxis(y, 0, mode)


def apply_unitary(state: TruncatedState, U) -> TruncatedState:
    """Evolve through the interferometer ``U``, one Reck element at a time."""
    U = as_unitary(U)
    if U.shape[0] != state.m:
        raise InvalidInputError(f"state has {state.m} modes, unitary has {U.shape[0]}")
    psi = state.amplitudes
    c = state.cutoff
    leak = state.leakage
    for op in reck_decompose(U):
        before = float(np.vdot(psi, psi).real)
        if isinstance(op, PhaseShifter):
            phases = np.exp(1j * op.phi * np.arange(c + 1))
            psi = _apply_single_mode(psi, np.diag(phases), op.mode)
        elif isinstance(op, Beamsplitter):
            psi = _apply_two_mode(psi, op.block(), op.mode_a, op.mode_b, c)
        leak += max(0.0, before - float(np.vdot(psi, psi).real))
    return _guard(replace(state, amplitudes=psi, leakage=leak), "interferometer evolution")


def counter_displace(state: TruncatedState, betas) -> TruncatedState:
    """Apply D(-beta_j) to every mode j."""
    betas = np.asarray(betas, dtype=complex)
    if betas.shape != (state.m,):
        raise InvalidInputError(f"expected {state.m} displacement amplitudes, got shape {betas.shape}")
    psi = state.amplitudes
    before = state.norm_sq()
    for j, beta in enumerate(betas):
        if beta != 0:
            psi = _apply_single_mode(psi, displacement_matrix(-beta, state.cutoff), j)
    after = float(np.vdot(psi, psi).real)
    leak = state.leakage + max(0.0, before - after)
    return _guard(replace(state, amplitudes=psi, leakage=leak), "counter-displacement")


def measure_distribution(state: TruncatedState, threshold: float = 0.0) -> OutputDistribution:
    """Photon-number statistics over every occupation tuple in the truncated space.

    The probabilities sum to the state's squared norm; entries at or below
    ``threshold`` are left out.
    """
    probs = np.abs(state.amplitudes) ** 2
    out = {tuple(int(i) for i in idx): float(p) for idx, p in np.ndenumerate(probs) if p > threshold}
    return OutputDistribution(state.m, out, tolerance=state.leakage + 1e-9, label="oracle")


def run_protocol(spec: InputSpec, U, cutoff: int | None = None,
                 leakage_tol: float = LEAKAGE_TOL) -> OutputDistribution:
    """Prepare, interfere, counter-displace and measure."""
    U = as_unitary(U)
    if spec.m != U.shape[0]:
        raise InvalidInputError(f"spec has {spec.m} modes, unitary has {U.shape[0]}")
    state = prepare_input(spec, cutoff, leakage_tol)
    state = apply_unitary(state, U)
    betas = propagate_displacements(U, spec.padded_alphas())
    state = counter_displace(state, betas)
    return measure_distribution(state)


__all__ = [
    "LEAKAGE_TOL",
    "TruncatedState",
    "apply_unitary",
    "counter_displace",
    "creation_matrix",
    "default_cutoff",
    "displacement_matrix",
    "measure_distribution",
    "prepare_input",
    "run_protocol",
    "two_mode_block",
]
