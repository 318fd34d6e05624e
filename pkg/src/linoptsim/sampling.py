"""Monte Carlo draws from exact distributions, plus the comparison and
post-selection helpers used to analyse them.

Randomness comes from numpy's PCG64 bit generator (``np.random.default_rng``)
seeded with a 64-bit integer; the canonical draw for a given seed is the
single-threaded path below.  Parallel callers should derive per-worker
streams with ``np.random.SeedSequence(seed).spawn(k)``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .distributions import OutputDistribution, canonical_json
from .errors import EmptyPostselectionError, InvalidDistributionError, InvalidInputError
from .fock import Config

DRAW_NORM_TOL = 1e-6


@dataclass(frozen=True)
class SampleBatch:
    seed: int
    m: int
    draws: np.ndarray  # shape (count, m), int64
    source: str = ""

    def __len__(self) -> int:
        return self.draws.shape[0]

    def configs(self) -> list[Config]:
        return [tuple(int(c) for c in row) for row in self.draws]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"s{k}" for k in range(self.m)])
        w.writerows(self.draws.tolist())
        return buf.getvalue()

    def to_json(self) -> str:
        return canonical_json({"seed": self.seed, "m": self.m, "source": self.source,
                               "draws": self.draws.tolist()})


def draw(dist: OutputDistribution, count: int, seed: int) -> SampleBatch:
    """Draw ``count`` i.i.d. configurations by inverse CDF over the lex-ordered support."""
    if count < 0:
        raise InvalidInputError(f"count must be >= 0, got {count}")
    total = dist.total()
    if abs(total - 1.0) > DRAW_NORM_TOL:
        raise InvalidDistributionError(f"distribution sums to {total!r}, not 1")
    support = [c for c in dist.configs() if dist.probs[c] > 0]
    if any(dist.probs[c] < 0 for c in dist.probs):
        raise InvalidDistributionError("negative probability")
    cdf = np.cumsum([dist.probs[c] for c in support])
    rng = np.random.default_rng(seed)
    u = rng.random(count) * cdf[-1]
    idx = np.minimum(np.searchsorted(cdf, u, side="right"), len(support) - 1)
    table = np.array(support, dtype=np.int64).reshape(len(support), dist.m)
    return SampleBatch(seed, dist.m, table[idx], dist.label)


def empirical_distribution(batch: SampleBatch) -> OutputDistribution:
    if len(batch) == 0:
        raise InvalidInputError("empty sample batch")
    rows, counts = np.unique(batch.draws, axis=0, return_counts=True)
    n = len(batch)
    probs = {tuple(int(c) for c in r): int(k) / n for r, k in zip(rows, counts)}
    return OutputDistribution(batch.m, probs, label="empirical")


def total_variation(p: OutputDistribution, q: OutputDistribution) -> float:
    """Half the L1 distance over the union of both supports."""
    if p.m != q.m:
        raise InvalidInputError(f"mode counts differ: {p.m} vs {q.m}")
    keys = set(p.probs) | set(q.probs)
    return 0.5 * math.fsum(abs(p[k] - q[k]) for k in keys)


def postselect(source, total: int) -> tuple[OutputDistribution, float]:
    """Condition on detecting exactly ``total`` photons.

    ``source`` is an :class:`OutputDistribution` or a :class:`SampleBatch`.
    Returns the renormalized conditional distribution and the retained mass.
    """
    dist = empirical_distribution(source) if isinstance(source, SampleBatch) else source
    kept = dist.restrict(total)
    mass = kept.total()
    if mass <= 0:
        raise EmptyPostselectionError(f"no probability mass with {total} photons")
    probs = {c: p / mass for c, p in kept.probs.items()}
    amps = None
    if kept.amplitudes is not None:
        s = 1.0 / math.sqrt(mass)
        amps = {c: a * s for c, a in kept.amplitudes.items()}
    return OutputDistribution(dist.m, probs, amps, dist.tolerance, dist.label), mass


__all__ = ["SampleBatch", "draw", "empirical_distribution", "postselect", "total_variation"]
