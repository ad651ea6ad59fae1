"""Network contraction and boundary-code extraction."""

import itertools

import pytest

from holocode.builder import (
    HolographicCode,
    NetworkState,
    NotCssError,
    NotIsometryError,
    build_code,
    contract_pair,
    css_split,
    extract_code,
    network_state,
    seed_for_tile,
)
from holocode.gf2 import Decomposer, PauliVector, rref, Gf2Matrix
from holocode.seeds import CATALOG, scf_tensor, steane_tensor
from holocode.tiling import build_tiling


def P(s):
    return PauliVector.from_string(s)


def same_group(gens_a, gens_b):
    """Row spaces of two symplectic generator sets coincide."""
    if not gens_a and not gens_b:
        return True
    n = gens_a[0].n
    rows_a = [g.x | (g.z << n) for g in gens_a]
    dec = Decomposer(rows_a, 2 * n)
    if dec.rank != len(rows_a):
        return False
    return len(gens_a) == len(gens_b) and all(
        dec.contains(g.x | (g.z << n)) for g in gens_b
    )


# -- contract_pair ----------------------------------------------------------


def test_contract_two_x_states_gives_empty_state():
    state = NetworkState(["a", "b"], [P("XI"), P("IX")])
    out = contract_pair(state, "a", "b")
    assert out.legs == [] and out.generators == []


def test_contract_bell_with_bell_swaps_entanglement():
    # legs: a,b form one Bell pair, c,d another; contract b-c
    state = NetworkState(
        ["a", "b", "c", "d"],
        [P("XXII"), P("ZZII"), P("IIXX"), P("IIZZ")],
    )
    out = contract_pair(state, "b", "c")
    assert out.legs == ["a", "d"]
    assert same_group(out.generators, [P("XX"), P("ZZ")])


def test_contract_is_pure_function():
    state = NetworkState(["a", "b"], [P("XI"), P("IX")])
    contract_pair(state, "a", "b")
    assert len(state.generators) == 2  # input untouched


def test_contract_unknown_leg_raises():
    state = NetworkState(["a", "b"], [P("XI"), P("IX")])
    with pytest.raises(ValueError):
        contract_pair(state, "a", "z")


def test_two_steane_tiles_one_edge():
    seed = steane_tensor()
    graph = build_tiling("heptagon", 1, "max")
    # two disjoint single tiles joined on one leg, built by hand
    state = NetworkState([], [])
    legs = [("t0", j) for j in range(7)] + [("t0", "L")]
    legs += [("t1", j) for j in range(7)] + [("t1", "L")]
    gens = []
    for tile in ("t0", "t1"):
        base = 0 if tile == "t0" else 8
        for g in seed.generators:
            x = z = 0
            for pos, leg in enumerate(seed.leg_order):
                bit = base + (7 if leg == "L" else
                              [l for l in seed.leg_order if l != "L"].index(leg))
                x |= ((g.x >> pos) & 1) << bit
                z |= ((g.z >> pos) & 1) << bit
            gens.append(PauliVector(16, x, z))
    state = NetworkState(legs, gens)
    out = contract_pair(state, ("t0", 0), ("t1", 0))
    assert len(out.generators) == 14
    assert len(out.legs) == 14
    for a, b in itertools.combinations(out.generators, 2):
        from holocode.gf2 import symplectic_product

        assert symplectic_product(a, b) == 0


# -- network_state / extract_code -------------------------------------------


def test_single_steane_network_has_table_generators():
    graph = build_tiling("heptagon", 1, "max")
    seed = steane_tensor()
    state = network_state(graph, {0: seed})
    assert len(state.generators) == 8
    assert len(state.legs) == 8
    # network leg order is planar 1..7 then L; the printed tableau has L
    # between legs 6 and 7
    remapped = []
    for g in seed.generators:
        text = g.to_string()
        remapped.append(P(text[:6] + text[7] + text[6]))
    assert same_group(state.generators, remapped)


def test_heptagon_r2_network_counts():
    graph = build_tiling("heptagon", 2, "max")
    seed = steane_tensor()
    state = network_state(graph, {t.id: seed for t in graph.tiles})
    # 8 tiles x 8 legs = 64, minus 2 per contracted edge
    assert len(state.legs) == 64 - 2 * len(graph.edges)
    assert len(state.generators) == len(state.legs)
    assert len(graph.boundary_legs) == 42


def test_extract_single_steane_code():
    code = build_code("heptagon", "max", 1)
    assert (code.n, code.k, code.css) == (7, 1, True)
    expected = [P(s) for s in
                ["XXIIIXX", "IXXXIIX", "IIIXXXX",
                 "ZZIIIZZ", "IZZZIIZ", "IIIZZZZ"]]
    assert same_group(code.stabilizers, expected)
    # logical representatives are the all-X / all-Z classes
    stab_rows = [s.x | (s.z << 7) for s in code.stabilizers]
    dec = Decomposer(stab_rows, 14)
    xref = P("XXXXXXX")
    diff = code.logicals[0].x_rep.mul(xref)
    assert dec.contains(diff.x | (diff.z << 7))
    zref = P("ZZZZZZZ")
    diff = code.logicals[0].z_rep.mul(zref)
    assert dec.contains(diff.x | (diff.z << 7))


def test_extract_single_scf_code():
    code = build_code("pentagon", "max", 1, "scf")
    assert (code.n, code.k, code.css) == (5, 1, True)
    expected = [P(s) for s in ["XXIXI", "IIXXX", "ZIZZI", "IZIZZ"]]
    assert same_group(code.stabilizers, expected)
    # X rep is the restriction of the extended logical: X on legs 1 and 3
    stab_rows = [s.x | (s.z << 5) for s in code.stabilizers]
    dec = Decomposer(stab_rows, 10)
    diff = code.logicals[0].x_rep.mul(P("XIXII"))
    assert dec.contains(diff.x | (diff.z << 5))
    assert code.logicals[0].x_rep.weight() == 2  # distance-2 code


def test_extract_five_qubit_not_css():
    code = build_code("pentagon", "max", 1, "five_qubit")
    assert not code.css
    assert code.logicals[0].x_rep.weight() == 3


def test_codes_validate_at_radius_two():
    for fam, var, seed in (("heptagon", "max", None),
                           ("pentagon", "reduced", None),
                           ("pentagon", "zero", None),
                           ("pentagon", "max", "scf"),
                           ("heptagon", "zero", None)):
        code = build_code(fam, var, 2, seed)
        code.validate()
        assert len(code.stabilizers) == code.n - code.k


def test_heptagon_r2_shape():
    code = build_code("heptagon", "max", 2)
    assert (code.n, code.k) == (42, 8)
    assert code.css
    assert len(code.stabilizers) == 34


def test_css_flag_per_family():
    assert build_code("heptagon", "max", 2).css
    assert build_code("pentagon", "reduced", 2).css
    assert not build_code("pentagon", "zero", 2).css


def test_css_split_steane_self_dual():
    code = build_code("heptagon", "max", 1)
    sx, sz, (x_reps, z_reps) = css_split(code)
    assert rref(sx)[0].rows[:3] == rref(sz)[0].rows[:3]
    assert sx.n_rows == sz.n_rows == 3
    assert len(x_reps) == len(z_reps) == 1


def test_css_split_scf_dimensions():
    code = build_code("pentagon", "max", 1, "scf")
    sx, sz, _ = css_split(code)
    assert (sx.n_rows, sx.cols) == (2, 5)
    assert (sz.n_rows, sz.cols) == (2, 5)


def test_css_split_rejects_five_qubit():
    code = build_code("pentagon", "max", 1, "five_qubit")
    with pytest.raises(NotCssError):
        css_split(code)


def test_extract_detects_non_isometry():
    # |0>|0> network: no combination acts as X on the "bulk" leg
    graph = build_tiling("heptagon", 1, "max")
    state = NetworkState([graph.boundary_legs[0], (0, "L")],
                         [P("ZI"), P("IZ")])
    graph2 = build_tiling("heptagon", 1, "max")
    graph2.boundary_legs = [graph.boundary_legs[0]]
    with pytest.raises(NotIsometryError):
        extract_code(state, graph2)


def test_seed_for_tile_resolution():
    base = scf_tensor()
    assert seed_for_tile(base, "logical", 5) is base
    assert seed_for_tile(base, "blank", 6).k == 0
    assert seed_for_tile(base, "blank", 5).n == 5
    with pytest.raises(ValueError):
        seed_for_tile(base, "logical", 6)
    with pytest.raises(ValueError):
        seed_for_tile(base, "blank", 7)


def test_save_load_roundtrip(tmp_path):
    code = build_code("pentagon", "reduced", 2)
    prefix = str(tmp_path / "code")
    code.save(prefix)
    again = HolographicCode.load(prefix)
    assert again.n == code.n and again.k == code.k
    assert again.stabilizers == code.stabilizers
    assert [l.x_rep for l in again.logicals] == [l.x_rep for l in code.logicals]
    assert again.css == code.css
    assert [l.layer for l in again.logicals] == [l.layer for l in code.logicals]


def test_logical_layers_recorded():
    code = build_code("heptagon", "max", 2)
    assert code.logicals[0].layer == 0
    assert all(l.layer == 1 for l in code.logicals[1:])


def test_every_seed_matches_every_family_radius_two():
    for seed_name in CATALOG:
        fam = "heptagon" if seed_name == "steane" else "pentagon"
        code = build_code(fam, "max", 2, seed_name)
        code.validate()
