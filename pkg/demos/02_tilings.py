"""Hyperbolic tile graphs: boundary growth and code rates.

Three families are built layer by layer from a central tile.  Boundary
qubit counts grow geometrically (the mark of negative curvature) and the
ratio of logical to physical qubits approaches a finite rate that depends
on which tiles carry bulk legs.
"""

from holocode import build_tiling, counts
from holocode.tiling import REFERENCE_BOUNDARY_COUNTS

print(f"{'family':22s} {'R':>2s} {'n':>6s} {'k':>5s} {'rate':>7s}  tiles edges")
for (family, variant) in (("heptagon", "max"), ("pentagon", "reduced"),
                          ("pentagon", "zero")):
    for radius in range(1, 7):
        g = build_tiling(family, radius, variant)
        n, k, rate = counts(g)
        print(f"{family + '/' + variant:22s} {radius:2d} {n:6d} {k:5d} "
              f"{rate:7.4f}  {len(g.tiles):5d} {len(g.edges):5d}")
    print()

print("reference boundary counts reproduced:",
      all(
          counts(build_tiling(f, R, v))[0] == expect
          for (f, v), row in REFERENCE_BOUNDARY_COUNTS.items()
          for R, expect in enumerate(row, start=1)
      ))

# The graph itself is plain combinatorics: tiles, contracted leg pairs,
# and an ordered boundary; it serializes to JSON for external tools.
g = build_tiling("pentagon", 2, "reduced")
print("\npentagon/reduced R=2 tiles:")
for t in g.tiles:
    print(f"  tile {t.id}: {t.sides}-gon, layer {t.layer}, {t.kind}, "
          f"role {t.role}")
print("first three edges:", g.edges[:3])
print("boundary legs (first five):", g.boundary_legs[:5])
