"""Seeded sampling from an exact distribution and how fast the empirical law converges.

Run: python3 demos/sampling.py
"""

import numpy as np

from linoptsim import aa_distribution, haar_random_unitary
from linoptsim.sampling import draw, empirical_distribution, total_variation

exact = aa_distribution(haar_random_unitary(4, seed=1), 2)
for count in [100, 1_000, 10_000, 100_000, 1_000_000]:
    tvds = [total_variation(empirical_distribution(draw(exact, count, seed)), exact) for seed in range(5)]
    print(f"{count:>8} draws: median TVD {np.median(tvds):.4f}")

a, b = draw(exact, 1000, seed=42), draw(exact, 1000, seed=42)
print("same seed, same bytes:", a.to_csv() == b.to_csv())
print(a.to_csv().splitlines()[:4])
