"""How the post-selection probability behaves as n grows for three amplitude rules.

Run: python3 demos/transition_sweep.py
"""

import math

from linoptsim.transition import limit_sweep

ns = [10, 100, 1000, 10000, 100000]
for rule in ["1/n", "1/n^2", "n^2"]:
    print(f"rule |alpha|^2 = {rule}")
    for r in limit_sweep(rule, ns):
        print(f"  n={r.n:>6}  p_n={r.p_n:.6f}  p_0={r.p_0:.6f}  {r.regime}")
print(f"\n1/e = {math.exp(-1):.6f}")
