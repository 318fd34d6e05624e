"""Post-selection scaling for equal-amplitude SPACS inputs and the labels
for the hard / intermediate / trivial regimes.

With ``n`` SPACS inputs of equal ``|alpha|^2 = a`` the probability of
detecting ``i`` photons after counter-displacement is binomial,
``C(n, i) a^(n-i) / (1 + a)^n``.  Keeping ``a <= 1/n`` leaves the full
``n``-photon event with probability bounded below (tending to 1/e at
``a = 1/n``), while ``a >= n^2`` makes the vacuum outcome dominate.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable

from .distributions import format_float
from .errors import InvalidInputError

AA_HARD = "AA-hard-like"
INTERMEDIATE = "intermediate"
TRIVIAL = "classically-trivial"

RULES = {
    "1/n": lambda n: 1.0 / n,
    "1/n^2": lambda n: 1.0 / n**2,
    "n^2": lambda n: float(n) ** 2,
}


def postselection_probability(n: int, alpha_sq: float, i: int) -> float:
    """Probability of detecting ``i`` of the ``n`` added photons, evaluated in log space."""
    if not 0 <= i <= n:
        raise InvalidInputError(f"need 0 <= i <= n, got i={i}, n={n}")
    if alpha_sq < 0:
        raise InvalidInputError(f"|alpha|^2 must be non-negative, got {alpha_sq}")
    if alpha_sq == 0:
        return 1.0 if i == n else 0.0
    log_binom = math.lgamma(n + 1) - math.lgamma(i + 1) - math.lgamma(n - i + 1)
    if alpha_sq > 1:
        # a^(n-i) / (1+a)^n = (1 + 1/a)^-(n-i) (1+a)^-i, avoiding cancellation for large a
        log_p = log_binom - (n - i) * math.log1p(1 / alpha_sq) - i * math.log1p(alpha_sq)
    else:
        log_p = log_binom + (n - i) * math.log(alpha_sq) - n * math.log1p(alpha_sq)
    return math.exp(log_p)


def classify_regime(n: int, alpha_sq: float) -> str:
    """Label (not a proof): hard-like for a <= 1/n, trivial for a >= n^2."""
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    if alpha_sq <= 1.0 / n:
        return AA_HARD
    if alpha_sq >= float(n) ** 2:
        return TRIVIAL
    return INTERMEDIATE


@dataclass(frozen=True)
class RegimeReport:
    n: int
    alpha_sq: float
    p_n: float
    p_0: float
    regime: str


def regime_report(n: int, alpha_sq: float) -> RegimeReport:
    return RegimeReport(
        n,
        alpha_sq,
        postselection_probability(n, alpha_sq, n),
        postselection_probability(n, alpha_sq, 0),
        classify_regime(n, alpha_sq),
    )


def limit_sweep(rule: str, n_values: Iterable[int]) -> list[RegimeReport]:
    """One report per ``n`` with ``|alpha|^2`` set by ``rule`` ("1/n", "1/n^2" or "n^2")."""
    try:
        f = RULES[rule]
    except KeyError:
        raise InvalidInputError(f"unknown rule {rule!r}; expected one of {sorted(RULES)}") from None
    reports = []
    for n in n_values:
        if n < 1:
            raise InvalidInputError(f"n values must be positive, got {n}")
        reports.append(regime_report(n, f(n)))
    return reports


def sweep_csv(reports: list[RegimeReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "alpha_sq", "p_n", "p_0", "regime"])
    for r in reports:
        w.writerow([r.n, format_float(r.alpha_sq), format_float(r.p_n), format_float(r.p_0), r.regime])
    return buf.getvalue()


__all__ = [
    "AA_HARD",
    "INTERMEDIATE",
    "RULES",
    "RegimeReport",
    "TRIVIAL",
    "classify_regime",
    "limit_sweep",
    "postselection_probability",
    "regime_report",
    "sweep_csv",
]
