"""Catalog of seed-code tensors and isometry (perfect / block-perfect) checks.

A seed code is a small [[n, k]] stabilizer code presented as a stabilizer
*state* on n + k legs: the n physical legs plus one extra leg per logical
qubit, with the logical operators extended onto the extra legs.  The state
is the joint +1 eigenspace of its n + k commuting generators (phases are
never tracked).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .gf2 import (
    Gf2Matrix,
    PauliVector,
    parse_tableau,
    rank,
    symplectic_product,
    vec_from_bits,
)


@dataclass(frozen=True)
class SeedCode:
    """An ordered extended tableau on n + k legs.

    ``leg_order`` lists leg labels in the tensor's cyclic order; ``bulk``
    flags which of those legs are logical (bulk) legs.  Generators act on
    legs in ``leg_order`` position order.
    """

    name: str
    leg_order: tuple
    bulk: tuple  # booleans, parallel to leg_order
    generators: tuple  # PauliVectors on len(leg_order) legs

    @property
    def total_legs(self) -> int:
        return len(self.leg_order)

    @property
    def k(self) -> int:
        return sum(self.bulk)

    @property
    def n(self) -> int:
        return self.total_legs - self.k

    @property
    def planar_positions(self) -> tuple:
        """Positions (into leg_order) of planar legs, in cyclic order."""
        return tuple(i for i, b in enumerate(self.bulk) if not b)

    @property
    def bulk_positions(self) -> tuple:
        return tuple(i for i, b in enumerate(self.bulk) if b)

    def validate(self):
        """Check the stabilizer-state invariants; raises on violation."""
        m = self.total_legs
        if len(self.generators) != m:
            raise ValueError(f"{self.name}: expected {m} generators")
        for a, b in combinations(self.generators, 2):
            if symplectic_product(a, b):
                raise ValueError(f"{self.name}: generators do not all commute")
        if symplectic_rank(self.generators) != m:
            raise ValueError(f"{self.name}: generators are GF(2)-dependent")

    def to_text(self) -> str:
        """Serialize with a `name n k leg_order bulk_flags` header line."""
        legs = ",".join(str(l) for l in self.leg_order)
        flags = "".join("1" if b else "0" for b in self.bulk)
        lines = [f"# {self.name} {self.n} {self.k} {legs} {flags}"]
        lines += [g.to_string() for g in self.generators]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SeedCode":
        header = None
        for line in text.splitlines():
            if line.startswith("#"):
                header = line[1:].split()
                break
        if header is None or len(header) != 5:
            raise ValueError("missing seed header line")
        name, _n, _k, legs, flags = header
        leg_order = tuple(legs.split(","))
        bulk = tuple(c == "1" for c in flags)
        gens = tuple(parse_tableau(text))
        seed = cls(name, leg_order, bulk, gens)
        seed.validate()
        return seed


def symplectic_rank(gens) -> int:
    """Rank of a generator list in its 2m-column (x || z) binary form."""
    if not gens:
        return 0
    m = gens[0].n
    rows = [g.x | (g.z << m) for g in gens]
    return rank(Gf2Matrix(rows, 2 * m))


def _seed(name, leg_order, bulk_label, rows) -> SeedCode:
    legs = tuple(leg_order)
    bulk = tuple(l == bulk_label for l in legs)
    gens = tuple(PauliVector.from_string(r.replace(" ", "")) for r in rows)
    seed = SeedCode(name, legs, bulk, gens)
    seed.validate()
    return seed


def steane_tensor() -> SeedCode:
    """The 8-leg extended Steane tableau, legs (1,2,3,4,5,6,L,7), L bulk."""
    return _seed(
        "steane",
        ("1", "2", "3", "4", "5", "6", "L", "7"),
        "L",
        [
            "X X I I I X I X",
            "I X X X I I I X",
            "I I I X X X I X",
            "Z Z I I I Z I Z",
            "I Z Z Z I I I Z",
            "I I I Z Z Z I Z",
            "X X X X X X X X",
            "Z Z Z Z Z Z Z Z",
        ],
    )


def scf_tensor() -> SeedCode:
    """The 6-leg surface-code-fragment tableau, legs (1,2,3,4,L,5), L bulk."""
    return _seed(
        "scf",
        ("1", "2", "3", "4", "L", "5"),
        "L",
        [
            "X X I X I I",
            "I I X X I X",
            "Z I Z Z I I",
            "I Z I Z I Z",
            "X I X I X I",
            "I I Z I Z Z",
        ],
    )


def five_qubit_tensor() -> SeedCode:
    """The 6-leg extended five-qubit-code tableau, legs (1..5, L), L bulk.

    Four cyclic shifts of XZZXI plus the extended logicals X^6 and Z^6.
    """
    return _seed(
        "five_qubit",
        ("1", "2", "3", "4", "5", "L"),
        "L",
        [
            "X Z Z X I I",
            "I X Z Z X I",
            "X I X Z Z I",
            "Z X I X Z I",
            "X X X X X X",
            "Z Z Z Z Z Z",
        ],
    )


CATALOG = {
    "steane": steane_tensor,
    "scf": scf_tensor,
    "five_qubit": five_qubit_tensor,
}


def blank_tile(seed: SeedCode) -> SeedCode:
    """Reflag every bulk leg as planar; the [[n+k, 0]] state of the seed.

    Generator bit patterns are unchanged; only the leg roles move.
    """
    if seed.k < 1:
        raise ValueError("seed has no bulk leg to reflag")
    return SeedCode(
        seed.name + "_blank",
        seed.leg_order,
        tuple(False for _ in seed.bulk),
        seed.generators,
    )


def fixed_tile(seed: SeedCode) -> SeedCode:
    """Project every bulk leg onto the +1 eigenspace of Z and drop the leg.

    The result is the [[n, 0]] state of the seed's logical-zero codeword:
    the tile shape stays an n-gon, with no bulk input.  Used by zero-rate
    tilings where interior tiles carry no logical qubit.
    """
    gens = list(seed.generators)
    m = seed.total_legs
    keep = [i for i, b in enumerate(seed.bulk) if not b]
    for pos in seed.bulk_positions:
        meas = PauliVector.single(m, pos, "Z")
        anti = [i for i, g in enumerate(gens) if symplectic_product(meas, g)]
        if anti:
            first = anti[0]
            for i in anti[1:]:
                gens[i] = gens[i].mul(gens[first])
            gens[first] = meas
        else:
            # Z on the bulk leg is already in the group; locate a combination
            # and swap one participating generator for the measured operator.
            rows = [g.x | (g.z << m) for g in gens]
            from .gf2 import Decomposer

            combo = Decomposer(rows, 2 * m).coefficients(meas.x | (meas.z << m))
            pick = combo.bit_length() - 1
            gens[pick] = meas
            first = pick
        # Clear the measured column from every other generator.
        for i, g in enumerate(gens):
            if i != first and ((g.z >> pos) & 1):
                gens[i] = g.mul(gens[first])
        gens[first] = None
        gens = [g for g in gens if g is not None]
    # Drop bulk columns.
    out = []
    for g in gens:
        x = vec_from_bits((g.x >> i) & 1 for i in keep)
        z = vec_from_bits((g.z >> i) & 1 for i in keep)
        out.append(PauliVector(len(keep), x, z))
    seed_out = SeedCode(
        seed.name + "_fixed",
        tuple(seed.leg_order[i] for i in keep),
        tuple(False for _ in keep),
        tuple(out),
    )
    seed_out.validate()
    return seed_out


def is_isometry(seed: SeedCode, A) -> bool:
    """True iff the tensor is an isometry from legs A to their complement.

    Equivalent stabilizer-state condition: no nonzero product of generators
    acts as identity everywhere outside A.
    """
    m = seed.total_legs
    A = set(A)
    if len(A) * 2 > m:
        raise ValueError("input subset larger than half the legs")
    outside = [i for i in range(m) if i not in A]
    rows = []
    for g in seed.generators:
        x = vec_from_bits((g.x >> i) & 1 for i in outside)
        z = vec_from_bits((g.z >> i) & 1 for i in outside)
        rows.append(x | (z << len(outside)))
    return rank(Gf2Matrix(rows, 2 * len(outside))) == len(seed.generators)


def is_block_perfect(seed: SeedCode) -> bool:
    """Isometry for every contiguous block of at most half the legs."""
    m = seed.total_legs
    for size in range(1, m // 2 + 1):
        for start in range(m):
            block = [(start + i) % m for i in range(size)]
            if not is_isometry(seed, block):
                return False
    return True


def is_perfect(seed: SeedCode) -> bool:
    """Isometry for every subset of at most half the legs."""
    m = seed.total_legs
    for size in range(1, m // 2 + 1):
        for subset in combinations(range(m), size):
            if not is_isometry(seed, subset):
                return False
    return True
