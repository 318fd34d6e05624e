"""Displaced single photons, undone by counter-displacement, sample like plain photons.

The truncated Fock-space simulation below is fully independent of the
permanent formula; both are printed side by side.

Run: python3 demos/displaced_fock_oracle.py
"""

from linoptsim import InputSpec, aa_distribution, haar_random_unitary, propagate_displacements
from linoptsim.oracle import default_cutoff, run_protocol
from linoptsim.sampling import total_variation

U = haar_random_unitary(3, seed=2024)
reference = aa_distribution(U, 2)

for alpha in [0.0, 0.3, 0.7, 0.7j]:
    spec = InputSpec.dspfs([alpha, alpha], 3)
    cutoff = default_cutoff(spec)
    d = run_protocol(spec, U, cutoff=cutoff)
    beta = propagate_displacements(U, spec.padded_alphas())
    print(f"alpha={alpha!s:>6}  cutoff={cutoff:2d}  |beta|={abs(beta).round(3)}  "
          f"TVD to permanent law = {total_variation(d, reference):.2e}")
