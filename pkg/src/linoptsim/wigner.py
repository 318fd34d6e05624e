"""Wigner functions of single-photon-added coherent states and coherent
states, on the complex phase-space plane ``z = x + iy`` with measure dx dy.

The SPACS Wigner function is

    W(z) = 2 (|2z - alpha|^2 - 1) / (pi (1 + |alpha|^2)) * exp(-2 |z - alpha|^2),

so it is negative exactly inside the disk ``|z - alpha/2| < 1/2``.  Other
quadrature conventions rescale the axes.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .distributions import canonical_json, format_float
from .errors import InvalidInputError

KINDS = ("spacs", "coherent")


def spacs_wigner(alpha: complex, z):
    """Wigner function of the SPACS with amplitude ``alpha``; ``z`` may be an array."""
    z = np.asarray(z, dtype=complex)
    a2 = abs(alpha) ** 2
    w = 2.0 * (np.abs(2 * z - alpha) ** 2 - 1.0) / (np.pi * (1.0 + a2)) * np.exp(-2.0 * np.abs(z - alpha) ** 2)
    return w[()] if w.ndim == 0 else w


def coherent_wigner(alpha: complex, z):
    z = np.asarray(z, dtype=complex)
    w = (2.0 / np.pi) * np.exp(-2.0 * np.abs(z - alpha) ** 2)
    return w[()] if w.ndim == 0 else w


def fock1_wigner(z):
    """Single-photon Fock state, the alpha -> 0 limit of the SPACS."""
    z = np.asarray(z, dtype=complex)
    r2 = np.abs(z) ** 2
    w = 2.0 * (4.0 * r2 - 1.0) * np.exp(-2.0 * r2) / np.pi
    return w[()] if w.ndim == 0 else w


def _evaluate(kind: str, alpha: complex, z):
    if kind == "spacs":
        return spacs_wigner(alpha, z)
    if kind == "coherent":
        return coherent_wigner(alpha, z)
    raise InvalidInputError(f"unknown Wigner kind {kind!r}")


@dataclass
class WignerGrid:
    """Values at the cell midpoints of a regular grid; ``values[iy, ix]``."""

    alpha: complex
    kind: str
    x: np.ndarray
    y: np.ndarray
    values: np.ndarray

    @property
    def cell_area(self) -> float:
        return float((self.x[1] - self.x[0]) * (self.y[1] - self.y[0]))

    def integral(self) -> float:
        return float(self.values.sum() * self.cell_area)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y", "W"])
        for iy, yv in enumerate(self.y):
            for ix, xv in enumerate(self.x):
                w.writerow([format_float(xv), format_float(yv), format_float(self.values[iy, ix])])
        return buf.getvalue()

    def to_json(self) -> str:
        return canonical_json({
            "alpha": [self.alpha.real, self.alpha.imag],
            "kind": self.kind,
            "x": self.x.tolist(),
            "y": self.y.tolist(),
            "values": self.values.tolist(),
        })


def wigner_grid(alpha: complex, window=5.0, resolution: int = 400, kind: str = "spacs") -> WignerGrid:
    """Evaluate W on a resolution x resolution midpoint grid.

    ``window`` is either a half-width (the square ``|Re(z - alpha)|,
    |Im(z - alpha)| <= window``) or explicit ``((x0, x1), (y0, y1))`` ranges.
    """
    alpha = complex(alpha)
    if resolution < 2:
        raise InvalidInputError(f"resolution must be >= 2, got {resolution}")
    if np.isscalar(window):
        h = float(window)
        (x0, x1), (y0, y1) = (alpha.real - h, alpha.real + h), (alpha.imag - h, alpha.imag + h)
    else:
        (x0, x1), (y0, y1) = window
    if not (x1 > x0 and y1 > y0):
        raise InvalidInputError(f"degenerate window {window!r}")
    dx, dy = (x1 - x0) / resolution, (y1 - y0) / resolution
    x = x0 + dx * (np.arange(resolution) + 0.5)
    y = y0 + dy * (np.arange(resolution) + 0.5)
    Z = x[None, :] + 1j * y[:, None]
    return WignerGrid(alpha, kind, x, y, np.asarray(_evaluate(kind, alpha, Z)))


def negativity_metrics(grid: WignerGrid) -> dict:
    """Minimum value, where it sits, and the negative volume (midpoint rule)."""
    iy, ix = np.unravel_index(np.argmin(grid.values), grid.values.shape)
    neg = np.clip(-grid.values, 0.0, None).sum() * grid.cell_area
    return {
        "min_value": float(grid.values[iy, ix]),
        "min_location": complex(grid.x[ix], grid.y[iy]),
        "negative_volume": float(neg),
    }


def rotate_to_real(alpha: complex) -> tuple[float, complex]:
    """Return ``(|alpha|, phase)`` such that W_alpha(phase * z) = W_|alpha|(z).

    The SPACS and coherent Wigner functions are covariant under phase-space
    rotation, so a slice along ``alpha``'s direction is the real-axis slice
    for the real amplitude ``|alpha|``.
    """
    alpha = complex(alpha)
    r = abs(alpha)
    return r, (alpha / r if r > 0 else 1.0 + 0j)


def major_axis_slice(alpha, x_range=(-4.0, 6.0), resolution: int = 1001, kind: str = "spacs"):
    """Samples of W along the line through the origin in the direction of ``alpha``.

    For real non-negative alpha this is ``W(x + 0i)``.  Returns ``(x, W)`` arrays.
    """
    if resolution < 2:
        raise InvalidInputError(f"resolution must be >= 2, got {resolution}")
    r, phase = rotate_to_real(alpha)
    x = np.linspace(x_range[0], x_range[1], resolution)
    return x, np.asarray(_evaluate(kind, r, x + 0j))


def slice_csv(x, w) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["x", "W"])
    for a, b in zip(x, w):
        out.writerow([format_float(a), format_float(b)])
    return buf.getvalue()


__all__ = [
    "KINDS",
    "WignerGrid",
    "coherent_wigner",
    "fock1_wigner",
    "major_axis_slice",
    "negativity_metrics",
    "rotate_to_real",
    "slice_csv",
    "spacs_wigner",
    "wigner_grid",
]
