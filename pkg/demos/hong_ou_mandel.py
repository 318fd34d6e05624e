"""Two photons on a balanced beamsplitter never leave in different ports.

Run: python3 demos/hong_ou_mandel.py
"""

from linoptsim import aa_distribution, balanced_beamsplitter, haar_random_unitary, permanent_ryser
from linoptsim.fock import submatrix

bs = balanced_beamsplitter()
dist = aa_distribution(bs, 2)
print("balanced beamsplitter, input (1,1):")
for cfg in dist.configs():
    print(f"  {cfg}: {dist[cfg]:.6f}")

# The coincidence amplitude is the permanent of the whole 2x2 matrix.
print("Per(U) =", permanent_ryser(bs))

# A larger instance: 3 photons in 6 modes of a Haar-random interferometer.
U = haar_random_unitary(6, seed=7)
d = aa_distribution(U, 3)
top = sorted(d.probs.items(), key=lambda kv: -kv[1])[:5]
print(f"\n3 photons, 6 modes: {len(d)} outcomes, total {d.total():.15f}")
for cfg, p in top:
    print(f"  {cfg}: {p:.5f}")
print("amplitude of (1,1,1,0,0,0) -> (0,0,0,1,1,1):",
      permanent_ryser(submatrix(U, (1, 1, 1, 0, 0, 0), (0, 0, 0, 1, 1, 1))))
