"""Seed tensors: the small codes that tile the hyperbolic plane.

Each seed is stored as a stabilizer state on n + k legs: the physical legs
plus one extra leg per logical qubit, stabilized by the extended
stabilizers and extended logical operators.  A seed is usable for tiling
when it stays an isometry for contiguous blocks of legs (block-perfect);
the five-qubit code is even perfect (any bipartition works).
"""

from holocode import (
    blank_tile,
    five_qubit_tensor,
    fixed_tile,
    is_block_perfect,
    is_isometry,
    is_perfect,
    scf_tensor,
    steane_tensor,
)

for make in (steane_tensor, scf_tensor, five_qubit_tensor):
    seed = make()
    print(f"== {seed.name}: [[{seed.n},{seed.k}]] on {seed.total_legs} legs")
    print("   leg order:", " ".join(seed.leg_order))
    for g in seed.generators:
        print("  ", g.to_string())
    print("   block-perfect:", is_block_perfect(seed))
    print("   perfect:      ", is_perfect(seed))
    print()

# Block-perfectness in action: the Steane tensor read as a map from the
# bulk leg plus leg 7 into legs 1..6 is still an isometry, so the same
# tensor can absorb two contracted legs at once.
steane = steane_tensor()
print("steane isometry from legs {L,7} to the rest:",
      is_isometry(steane, [6, 7]))

# Tiles without a logical input: reflag the bulk leg as a planar one
# (a hexagon made from a pentagon seed) or fix it to the logical zero.
hexagon = blank_tile(scf_tensor())
print("blank scf tile:", f"[[{hexagon.n},{hexagon.k}]]",
      [g.to_string() for g in hexagon.generators[:2]], "...")
pinned = fixed_tile(scf_tensor())
print("fixed scf tile:", f"[[{pinned.n},{pinned.k}]]",
      [g.to_string() for g in pinned.generators])
