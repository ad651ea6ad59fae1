"""Failure curves and threshold crossings (light desk-scale run).

Fixed-weight failure rates are estimated by Monte Carlo, binomially mixed
into curves against the depolarizing rate p, and the threshold is read
off where curves of adjacent radii cross.  This demo uses modest trial
counts so it finishes in about a minute; scale --trials up (or use the
`holocode reproduce fig3a` pipeline) for publication-grade curves.
"""

import numpy as np

from holocode import build_code, estimate_threshold, simulate_code

TRIALS = 400
curves = []
for radius in (2, 3):
    code = build_code("heptagon", "max", radius)
    print(f"simulating heptagon R={radius} ([[{code.n},{code.k}]]) ...")
    curve = simulate_code(code, trials_per_weight=TRIALS, seed=42,
                          weights="auto")
    sampled = [r.a for r in curve.records]
    print(f"  sampled {len(sampled)} weights: {sampled[:8]} ...")
    curves.append(curve)

print(f"\n{'p':>6s} {'P_fail(R=2)':>12s} {'P_fail(R=3)':>12s}")
for p in np.linspace(0.02, 0.14, 7):
    v2, s2 = curves[0].mixed(p)
    v3, s3 = curves[1].mixed(p)
    marker = "  <- R=3 wins" if v3 < v2 else ""
    print(f"{p:6.3f} {v2:12.4f} {v3:12.4f}{marker}")

p_th, bracket, pairs = estimate_threshold(curves)
print(f"\nestimated crossing: p = {p_th:.4f} "
      f"(bracket {bracket[0]:.4f}..{bracket[1]:.4f})")
print("below the crossing the larger code protects the central qubit "
      "better; above, worse - the signature of a threshold.")
