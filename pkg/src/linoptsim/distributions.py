"""Output distributions over photon-number configurations, and their
JSON / CSV forms.

Serialized floats always use 17 significant digits and JSON objects are
written with sorted keys, so identical data produce identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import InvalidInputError
from .fock import Config

NORM_TOL = 1e-9


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x}")
    return format(x, ".17g")


def canonical_json(obj) -> str:
    """JSON text with sorted keys, no whitespace, and 17-digit floats."""
    if isinstance(obj, dict):
        items = sorted(obj.items())
        return "{" + ",".join(f"{json.dumps(str(k))}:{canonical_json(v)}" for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(canonical_json(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class OutputDistribution:
    """Probabilities (and optionally amplitudes) keyed by configuration tuple.

    ``tolerance`` is the normalization slack this distribution is expected
    to meet; it is widened for truncated or post-selected data.
    """

    m: int
    probs: dict[Config, float]
    amplitudes: dict[Config, complex] | None = None
    tolerance: float = NORM_TOL
    label: str = ""

    def __post_init__(self):
        for cfg in self.probs:
            if len(cfg) != self.m:
                raise InvalidInputError(f"config {cfg} does not have {self.m} modes")

    @classmethod
    def from_amplitudes(cls, m: int, amplitudes: Mapping[Config, complex], **kw) -> "OutputDistribution":
        amps = {tuple(int(c) for c in k): complex(v) for k, v in amplitudes.items()}
        probs = {k: abs(v) ** 2 for k, v in amps.items()}
        return cls(m, probs, amps, **kw)

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, config) -> float:
        return self.probs.get(tuple(config), 0.0)

    def configs(self) -> list[Config]:
        """Support (including zero-probability entries) in lexicographic order."""
        return sorted(self.probs)

    def total(self) -> float:
        return math.fsum(self.probs.values())

    def is_normalized(self, tol: float | None = None) -> bool:
        return abs(self.total() - 1.0) <= (self.tolerance if tol is None else tol)

    def sectors(self) -> list[int]:
        """Distinct total photon numbers present in the support."""
        return sorted({sum(c) for c in self.probs})

    def restrict(self, total: int) -> "OutputDistribution":
        """Unnormalized restriction to configurations carrying ``total`` photons."""
        probs = {c: p for c, p in self.probs.items() if sum(c) == total}
        amps = None
        if self.amplitudes is not None:
            amps = {c: self.amplitudes[c] for c in probs}
        return OutputDistribution(self.m, probs, amps, self.tolerance, self.label)

    def max_abs_difference(self, other: "OutputDistribution") -> float:
        keys = set(self.probs) | set(other.probs)
        return max((abs(self[k] - other[k]) for k in keys), default=0.0)

    # ---- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        sectors = self.sectors()
        out: dict = {"m": self.m}
        if len(sectors) == 1:
            out["n"] = sectors[0]
        else:
            out["sectors"] = sectors
        entries = []
        for cfg in self.configs():
            e = {"config": list(cfg), "prob": self.probs[cfg]}
            if self.amplitudes is not None:
                a = self.amplitudes[cfg]
                e["amp_re"] = a.real
                e["amp_im"] = a.imag
            entries.append(e)
        out["entries"] = entries
        return out

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "OutputDistribution":
        data = json.loads(text)
        m = int(data["m"])
        probs: dict[Config, float] = {}
        amps: dict[Config, complex] = {}
        for e in data["entries"]:
            cfg = tuple(int(c) for c in e["config"])
            probs[cfg] = float(e["prob"])
            if "amp_re" in e:
                amps[cfg] = complex(float(e["amp_re"]), float(e["amp_im"]))
        return cls(m, probs, amps if amps else None)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        header = [f"s{k}" for k in range(self.m)] + ["prob"]
        if self.amplitudes is not None:
            header += ["amp_re", "amp_im"]
        w.writerow(header)
        for cfg in self.configs():
            row = [str(c) for c in cfg] + [format_float(self.probs[cfg])]
            if self.amplitudes is not None:
                a = self.amplitudes[cfg]
                row += [format_float(a.real), format_float(a.imag)]
            w.writerow(row)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "OutputDistribution":
        rows = list(csv.reader(io.StringIO(text)))
        header, body = rows[0], rows[1:]
        m = sum(1 for h in header if h.startswith("s"))
        has_amp = "amp_re" in header
        probs, amps = {}, {}
        for r in body:
            cfg = tuple(int(c) for c in r[:m])
            probs[cfg] = float(r[m])
            if has_amp:
                amps[cfg] = complex(float(r[m + 1]), float(r[m + 2]))
        return cls(m, probs, amps if has_amp else None)


__all__ = ["NORM_TOL", "OutputDistribution", "canonical_json", "format_float"]
