"""Contract a tile network into a boundary stabilizer code.

Contraction of a tensor-network edge is realized in the stabilizer
formalism as projection onto the +1 eigenspace of X_a X_b and Z_a Z_b
followed by removal of the two legs.  Since phases are never tracked the
projection cannot be inconsistent, and each contraction removes exactly
two generators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .gf2 import (
    Decomposer,
    Gf2Matrix,
    PauliVector,
    kernel,
    parse_tableau,
    solve,
    symplectic_product,
    vec_from_bits,
)
from .seeds import CATALOG, SeedCode, blank_tile, fixed_tile, symplectic_rank
from .tiling import TileGraph, build_tiling


class NotIsometryError(RuntimeError):
    """The contracted network is not an encoding isometry."""


class NotCssError(ValueError):
    """Operation requires a CSS code."""


@dataclass
class NetworkState:
    """A stabilizer state on a set of named legs during contraction."""

    legs: list  # leg names, e.g. (tile, slot); index = bit position
    generators: list  # PauliVectors of width len(legs)

    def copy(self) -> "NetworkState":
        return NetworkState(list(self.legs), list(self.generators))


def contract_pair(state: NetworkState, leg_a, leg_b) -> NetworkState:
    """Contract two open legs; generator count decreases by exactly two."""
    out = state.copy()
    try:
        a = out.legs.index(leg_a)
        b = out.legs.index(leg_b)
    except ValueError:
        raise ValueError(f"leg not open: {leg_a} / {leg_b}")
    _project_pair(out.generators, len(out.legs), a, b)
    keep_cols = [i for i in range(len(out.legs)) if i not in (a, b)]
    out.legs = [out.legs[i] for i in keep_cols]
    out.generators = [_restrict(g, keep_cols) for g in out.generators]
    return out


def _project_pair(gens: list, width: int, a: int, b: int):
    """Project onto the +1 eigenspaces of X_a X_b and Z_a Z_b, in place.

    Afterwards every remaining generator acts as identity on legs a and b;
    the two rows that held the pair operators are removed.  Columns a, b
    are left in place (all zero) for the caller to drop.
    """
    if a == b:
        raise ValueError("cannot contract a leg with itself")
    mask = (1 << a) | (1 << b)
    m1 = PauliVector(width, mask, 0)  # X_a X_b
    m2 = PauliVector(width, 0, mask)  # Z_a Z_b
    # Anticommutation with X_aX_b (Z_aZ_b) only needs the z (x) bits at a, b.
    anti = [i for i, g in enumerate(gens)
            if ((g.z >> a) ^ (g.z >> b)) & 1]
    i1 = _swap_in(gens, m1, anti, set())
    anti = [i for i, g in enumerate(gens)
            if ((g.x >> a) ^ (g.x >> b)) & 1]
    i2 = _swap_in(gens, m2, anti, {i1})
    for i, g in enumerate(gens):
        if i in (i1, i2):
            continue
        if (g.x >> a) & 1:
            g = g.mul(m1)
        if (g.z >> a) & 1:
            g = g.mul(m2)
        gens[i] = g
        if g.support & mask:
            raise AssertionError("leg not cleared by pair projection")
    for i in sorted((i1, i2), reverse=True):
        del gens[i]


def _swap_in(gens: list, m: PauliVector, anti: list, forbidden: set) -> int:
    """Make m a generator row: standard measurement update when some row
    anticommutes, else swap m for a participant of its decomposition."""
    anti = [i for i in anti if i not in forbidden]
    if anti:
        first = anti[0]
        g0 = gens[first]
        for i in anti[1:]:
            gens[i] = gens[i].mul(g0)
        gens[first] = m
        return first
    width = m.n
    rows = [g.x | (g.z << width) for g in gens]
    combo = Decomposer(rows, 2 * width).coefficients(m.x | (m.z << width))
    if combo is None:
        raise AssertionError("operator neither anticommutes nor decomposes")
    pick = None
    c = combo
    while c:
        i = c.bit_length() - 1
        if i not in forbidden:
            pick = i
            break
        c ^= 1 << i
    if pick is None:
        raise AssertionError("no replaceable generator for measurement")
    gens[pick] = m
    return pick


def _restrict(g: PauliVector, cols) -> PauliVector:
    x = vec_from_bits((g.x >> c) & 1 for c in cols)
    z = vec_from_bits((g.z >> c) & 1 for c in cols)
    return PauliVector(len(cols), x, z)


def seed_for_tile(base: SeedCode, kind: str, sides: int) -> SeedCode:
    """Resolve a tile kind/shape to a catalog tensor."""
    if kind == "logical":
        if base.n != sides:
            raise ValueError(f"seed {base.name} has {base.n} planar legs, tile has {sides}")
        return base
    if sides == base.n + base.k:
        return blank_tile(base)
    if sides == base.n:
        return fixed_tile(base)
    raise ValueError(f"no blank tile with {sides} legs for seed {base.name}")


def network_state(graph: TileGraph, seed_map: dict,
                  orientations: dict | None = None) -> NetworkState:
    """Direct-sum all tile tableaus, then contract every graph edge.

    ``seed_map`` maps tile id to a SeedCode whose planar leg count matches
    the tile.  ``orientations`` maps a tile role to (rotation, reflect):
    tile slot j is matched to the seed's planar leg at cyclic position
    rotation + j (or rotation - j when reflected).  Block-perfect seeds
    make every orientation a valid isometry, but the resulting code does
    depend on the convention.  Returns the state on all remaining open
    legs (boundary plus bulk), with one generator per open leg.
    """
    orientations = orientations or {}
    legs = []
    for t in graph.tiles:
        seed = seed_map[t.id]
        legs.extend((t.id, j) for j in range(t.sides))
        legs.extend((t.id, "L") for _ in range(seed.k))
    width = len(legs)
    index = {leg: i for i, leg in enumerate(legs)}

    gens = []
    for t in graph.tiles:
        seed = seed_map[t.id]
        planar = seed.planar_positions
        bulk = seed.bulk_positions
        if len(planar) != t.sides:
            raise ValueError(f"tile {t.id}: seed planar legs != tile sides")
        rot, reflect = orientations.get(t.role, (0, False))
        # seed position -> global bit
        pos_map = {}
        for slot in range(t.sides):
            cyc = (rot - slot) % t.sides if reflect else (rot + slot) % t.sides
            pos_map[planar[cyc]] = index[(t.id, slot)]
        for p in bulk:
            pos_map[p] = index[(t.id, "L")]
        for g in seed.generators:
            x = z = 0
            for p, bit in pos_map.items():
                x |= ((g.x >> p) & 1) << bit
                z |= ((g.z >> p) & 1) << bit
            gens.append(PauliVector(width, x, z))

    # Contract every edge at full width, then drop dead columns once.
    for (ea, eb) in graph.edges:
        _project_pair(gens, width, index[ea], index[eb])
    dead = set()
    for (ea, eb) in graph.edges:
        dead.add(index[ea])
        dead.add(index[eb])
    keep = [i for i in range(width) if i not in dead]
    state = NetworkState(
        [legs[i] for i in keep], [_restrict(g, keep) for g in gens]
    )
    if len(state.generators) != len(state.legs):
        raise AssertionError("generator count != open leg count")
    return state


@dataclass(frozen=True)
class LogicalQubit:
    id: int
    layer: int
    x_rep: PauliVector
    z_rep: PauliVector


@dataclass
class HolographicCode:
    """Boundary parity checks and per-bulk-qubit logical representatives."""

    family: str
    variant: str
    radius: int
    seed_name: str
    n: int
    stabilizers: list
    logicals: list  # LogicalQubit, ordered by bulk qubit id
    css: bool = False

    @property
    def k(self) -> int:
        return len(self.logicals)

    def validate(self):
        if len(self.stabilizers) != self.n - self.k:
            raise ValueError("stabilizer count != n - k")
        for a, b in combinations(self.stabilizers, 2):
            if symplectic_product(a, b):
                raise ValueError("stabilizers do not commute")
        if symplectic_rank(self.stabilizers) != len(self.stabilizers):
            raise ValueError("stabilizers dependent")
        for lq in self.logicals:
            for s in self.stabilizers:
                if symplectic_product(lq.x_rep, s) or symplectic_product(lq.z_rep, s):
                    raise ValueError("logical rep anticommutes with a stabilizer")
        for i, li in enumerate(self.logicals):
            for j, lj in enumerate(self.logicals):
                want = 1 if i == j else 0
                if symplectic_product(li.x_rep, lj.z_rep) != want:
                    raise ValueError("logical X/Z pairing broken")
                if i != j and (
                    symplectic_product(li.x_rep, lj.x_rep)
                    or symplectic_product(li.z_rep, lj.z_rep)
                ):
                    raise ValueError("logical reps of distinct qubits anticommute")
        if self.css != all(s.x == 0 or s.z == 0 for s in self.stabilizers):
            raise ValueError("css flag inconsistent with stabilizers")

    # -- persistence ------------------------------------------------------

    def save(self, prefix: str):
        """Write ``prefix.tab`` (tableau text) and ``prefix.json`` (metadata)."""
        lines = ["# stabilizers"]
        lines += [s.to_string() for s in self.stabilizers]
        for lq in self.logicals:
            lines.append(f"# logical {lq.id} layer {lq.layer} X,Z")
            lines.append(lq.x_rep.to_string())
            lines.append(lq.z_rep.to_string())
        with open(prefix + ".tab", "w") as fh:
            fh.write("\n".join(lines) + "\n")
        meta = {
            "family": self.family,
            "variant": self.variant,
            "radius": self.radius,
            "seed": self.seed_name,
            "n": self.n,
            "k": self.k,
            "css": self.css,
            "logical_layers": [lq.layer for lq in self.logicals],
        }
        with open(prefix + ".json", "w") as fh:
            json.dump(meta, fh, indent=1)
            fh.write("\n")

    @classmethod
    def load(cls, prefix: str) -> "HolographicCode":
        with open(prefix + ".json") as fh:
            meta = json.load(fh)
        with open(prefix + ".tab") as fh:
            gens = parse_tableau(fh.read())
        n_stab = meta["n"] - meta["k"]
        stabs = gens[:n_stab]
        logicals = []
        reps = gens[n_stab:]
        for i in range(meta["k"]):
            logicals.append(
                LogicalQubit(i, meta["logical_layers"][i], reps[2 * i], reps[2 * i + 1])
            )
        code = cls(
            meta["family"], meta["variant"], meta["radius"], meta["seed"],
            meta["n"], stabs, logicals, meta["css"],
        )
        code.validate()
        return code


def _coeff_kernel(vectors: list, width: int) -> list:
    """Coefficient masks c with XOR over set bits of c of vectors == 0."""
    cols = Gf2Matrix(
        [vec_from_bits((v >> j) & 1 for v in vectors) for j in range(width)],
        len(vectors),
    )
    return kernel(cols)


def _coeff_solve(vectors: list, width: int, target: int):
    cols = Gf2Matrix(
        [vec_from_bits((v >> j) & 1 for v in vectors) for j in range(width)],
        len(vectors),
    )
    return solve(cols, target)


def _greedy_reduce(rep: PauliVector, rows: list) -> PauliVector:
    """Multiply by rows while it lowers the Pauli weight.

    Rows with disjoint support can only grow the weight, so they are
    skipped without forming the product."""
    improved = True
    while improved:
        improved = False
        sup = rep.support
        for s in rows:
            if not (sup & s.support):
                continue
            cand = rep.mul(s)
            if cand.weight() < rep.weight():
                rep = cand
                sup = rep.support
                improved = True
    return rep


def extract_code(state: NetworkState, graph: TileGraph,
                 seed_name: str = "") -> HolographicCode:
    """Read off the boundary code from a fully contracted network state.

    Stabilizers are the generator combinations acting as identity on every
    bulk leg, restricted to the boundary; logical representatives act as a
    single X (or Z) on one bulk leg.
    """
    order = list(graph.boundary_legs) + list(graph.bulk_legs)
    index = {leg: i for i, leg in enumerate(state.legs)}
    cols = [index[leg] for leg in order]
    gens = [_restrict(g, cols) for g in state.generators]
    n = len(graph.boundary_legs)
    k = len(graph.bulk_legs)
    if len(gens) != n + k:
        raise NotIsometryError("open leg count mismatch")
    bmask = ((1 << k) - 1) << n

    pure = all(g.x == 0 or g.z == 0 for g in gens)
    if pure and k >= 0:
        x_rows = [g for g in gens if g.z == 0]
        z_rows = [g for g in gens if g.z != 0]
        stab_parts = []
        reps = {}
        for rows, part in ((x_rows, "x"), (z_rows, "z")):
            vecs = [(g.x if part == "x" else g.z) for g in rows]
            bulk_vecs = [v >> n for v in vecs]
            for c in _coeff_kernel(bulk_vecs, k):
                v = 0
                cc = c
                while cc:
                    i = cc.bit_length() - 1
                    cc ^= 1 << i
                    v ^= vecs[i]
                stab_parts.append((part, v & ((1 << n) - 1)))
            for ell in range(k):
                c = _coeff_solve(bulk_vecs, k, 1 << ell)
                if c is None:
                    raise NotIsometryError("missing logical representative")
                v = 0
                while c:
                    i = c.bit_length() - 1
                    c ^= 1 << i
                    v ^= vecs[i]
                reps[(part, ell)] = v & ((1 << n) - 1)
        stabilizers = [
            PauliVector(n, v, 0) if part == "x" else PauliVector(n, 0, v)
            for part, v in stab_parts
            if v
        ]
        logicals = []
        for ell in range(k):
            logicals.append(
                (PauliVector(n, reps[("x", ell)], 0), PauliVector(n, 0, reps[("z", ell)]))
            )
    else:
        vecs = [g.x | (g.z << (n + k)) for g in gens]
        # bulk action of a generator: (x on bulk | z on bulk), 2k bits
        bulk_vecs = [((v >> n) & ((1 << k) - 1)) | (((v >> (2 * n + k)) & ((1 << k) - 1)) << k)
                     for v in vecs]
        nmask = (1 << n) - 1

        def combine(c):
            v = 0
            while c:
                i = c.bit_length() - 1
                c ^= 1 << i
                v ^= vecs[i]
            return PauliVector(n, v & nmask, (v >> (n + k)) & nmask)

        stabilizers = []
        for c in _coeff_kernel(bulk_vecs, 2 * k):
            p = combine(c)
            if p.x or p.z:
                stabilizers.append(p)
        logicals = []
        for ell in range(k):
            cx = _coeff_solve(bulk_vecs, 2 * k, 1 << ell)
            cz = _coeff_solve(bulk_vecs, 2 * k, 1 << (k + ell))
            if cx is None or cz is None:
                raise NotIsometryError("missing logical representative")
            logicals.append((combine(cx), combine(cz)))

    if len(stabilizers) != n - k:
        raise NotIsometryError(
            f"{len(stabilizers)} independent stabilizers, expected {n - k}"
        )
    # Light greedy weight reduction of the basis, then of the reps.
    # Disjoint-support pairs never reduce weight and are skipped.
    for _ in range(2):
        changed = False
        for i in range(len(stabilizers)):
            si = stabilizers[i]
            sup = si.support
            for j in range(len(stabilizers)):
                if i == j or not (sup & stabilizers[j].support):
                    continue
                cand = si.mul(stabilizers[j])
                if cand.weight() < si.weight():
                    si = cand
                    sup = si.support
                    changed = True
            stabilizers[i] = si
        if not changed:
            break

    layer = {t.id: t.layer for t in graph.tiles}
    out_logicals = []
    for ell, (xr, zr) in enumerate(logicals):
        xr = _greedy_reduce(xr, stabilizers)
        zr = _greedy_reduce(zr, stabilizers)
        tile_id = graph.bulk_legs[ell][0]
        out_logicals.append(LogicalQubit(ell, layer[tile_id], xr, zr))

    css = all(s.x == 0 or s.z == 0 for s in stabilizers)
    code = HolographicCode(
        graph.family, graph.variant, graph.radius, seed_name,
        n, stabilizers, out_logicals, css,
    )
    code.validate()
    return code


def css_split(code: HolographicCode):
    """(S_X, S_Z, sector logical reps) for a CSS code.

    S_X rows are the x-parts of X-type stabilizers (they detect Z errors);
    S_Z rows are the z-parts of Z-type stabilizers (they detect X errors).
    Logical sector reps are returned as (x_rep_vectors, z_rep_vectors).
    """
    if not code.css:
        raise NotCssError("not CSS")
    sx = Gf2Matrix([s.x for s in code.stabilizers if s.x], code.n)
    sz = Gf2Matrix([s.z for s in code.stabilizers if s.z], code.n)
    x_reps = []
    z_reps = []
    for lq in code.logicals:
        if lq.x_rep.z != 0 or lq.z_rep.x != 0:
            raise NotCssError("logical representatives are not sector-pure")
        x_reps.append(lq.x_rep.x)
        z_reps.append(lq.z_rep.z)
    return sx, sz, (x_reps, z_reps)


DEFAULT_SEEDS = {
    ("heptagon", "max"): "steane",
    ("heptagon", "zero"): "steane",
    ("pentagon", "max"): "scf",
    ("pentagon", "reduced"): "scf",
    ("pentagon", "zero"): "five_qubit",
}

# Tile-attachment conventions per seed, calibrated against the reference
# distance table at small radii.  Rotation picks which seed leg faces
# inward; reflect flips the winding.  The five-qubit tensor is cyclic so
# its network is orientation-independent.
ORIENTATIONS = {
    "steane": {"edge": (6, False)},
    "five_qubit": {"corner": (1, False)},
    "scf": {"corner": (1, False)},
}


def build_code(family: str, variant: str, radius: int,
               seed_name: str | None = None,
               orientations: dict | None = None) -> HolographicCode:
    """Tile, contract and extract the boundary code in one call."""
    graph = build_tiling(family, radius, variant)
    if seed_name is None:
        seed_name = DEFAULT_SEEDS[(family, variant)]
    base = CATALOG[seed_name]()
    seed_map = {t.id: seed_for_tile(base, t.kind, t.sides) for t in graph.tiles}
    if orientations is None:
        orientations = ORIENTATIONS.get(seed_name, {})
    state = network_state(graph, seed_map, orientations)
    return extract_code(state, graph, seed_name)
