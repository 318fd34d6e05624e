"""Photon-added coherent states split into photon-number sectors after counter-displacement.

Run: python3 demos/spacs_sectors.py
"""

import numpy as np

from linoptsim import InputSpec, haar_random_unitary, spacs_distribution, spacs_sector_weights
from linoptsim.oracle import run_protocol
from linoptsim.sampling import postselect, total_variation

n, m = 2, 3
U = haar_random_unitary(m, seed=5)

for a2 in [0.01, 0.25, 1.0, 4.0]:
    dec = spacs_distribution(U, [np.sqrt(a2)] * n)
    print(f"|alpha|^2={a2:<5} sector weights {np.round(dec.weights, 4)}"
          f"  (binomial law {np.round(spacs_sector_weights(n, a2), 4)})")

# Cross-check one point against the truncated simulation.
spec = InputSpec.spacs([0.5, 0.5], m)
oracle = run_protocol(spec, U)
exact = spacs_distribution(U, spec.alphas).joint()
print("\noracle vs closed form TVD:", f"{total_variation(oracle, exact):.2e}")

cond, mass = postselect(exact, n)
print(f"post-selecting {n} photons keeps {mass:.4f} of the runs")
for cfg in cond.configs():
    print(f"  {cfg}: {cond[cfg]:.5f}")
