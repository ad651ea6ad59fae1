"""GF(2) linear algebra and binary symplectic representation."""

import random

import pytest

from holocode.gf2 import (
    Decomposer,
    Gf2Matrix,
    PauliVector,
    format_tableau,
    kernel,
    parse_tableau,
    rank,
    right_inverse,
    rref,
    solve,
    symplectic_product,
    vec_from_bits,
    vec_to_bits,
)

# X-check rows of the single-tile Steane code (bulk column dropped);
# rank 3 verified by hand elimination: pivots in columns 1, 2, 4.
STEANE_X_CHECKS = ["1100011", "0111001", "0001111"]


def P(s):
    return PauliVector.from_string(s)


def test_symplectic_product_examples():
    assert symplectic_product(P("X"), P("Z")) == 1
    assert symplectic_product(P("XI"), P("IZ")) == 0
    for s in ("X", "ZZ", "XYZI", "YYXZ"):
        assert symplectic_product(P(s), P(s)) == 0


def test_symplectic_product_length_mismatch():
    with pytest.raises(ValueError):
        symplectic_product(P("X"), P("XX"))


def test_symplectic_bilinearity():
    rng = random.Random(11)
    n = 13
    for _ in range(200):
        a = PauliVector(n, rng.getrandbits(n), rng.getrandbits(n))
        b = PauliVector(n, rng.getrandbits(n), rng.getrandbits(n))
        c = PauliVector(n, rng.getrandbits(n), rng.getrandbits(n))
        lhs = symplectic_product(a.mul(b), c)
        rhs = symplectic_product(a, c) ^ symplectic_product(b, c)
        assert lhs == rhs


def test_pauli_weights_and_strings():
    p = P("IXYZ")
    assert p.weight() == 3
    assert p.sector_weight() == 4
    assert p.to_string() == "IXYZ"
    assert P("XX").mul(P("XZ")).to_string() == "IY"


def test_vec_helpers_roundtrip():
    bits = [1, 0, 1, 1, 0, 0, 1]
    assert vec_to_bits(vec_from_bits(bits), 7) == bits


def test_rref_identity():
    m = Gf2Matrix.from_rows(["100", "010", "001"])
    R, rk, piv = rref(m)
    assert R == m and rk == 3 and piv == [0, 1, 2]


def test_rref_zero():
    m = Gf2Matrix([0, 0], 4)
    R, rk, piv = rref(m)
    assert rk == 0 and piv == [] and R.rows == [0, 0]


def test_rref_steane_x_checks_rank3():
    m = Gf2Matrix.from_rows(STEANE_X_CHECKS)
    _, rk, _ = rref(m)
    assert rk == 3


def test_rref_idempotent():
    rng = random.Random(5)
    for _ in range(50):
        m = Gf2Matrix([rng.getrandbits(9) for _ in range(6)], 9)
        R1, _, _ = rref(m)
        R2, _, _ = rref(R1)
        assert R1 == R2


def test_solve_identity():
    m = Gf2Matrix.from_rows(["10", "01"])
    assert solve(m, 0b10) == 0b10


def test_solve_underdetermined():
    m = Gf2Matrix.from_rows(["11"])
    x = solve(m, 1)
    assert x is not None and m.mul_vec(x) == 1


def test_solve_inconsistent():
    m = Gf2Matrix([0], 1)
    assert solve(m, 1) is None


def test_solve_never_inconsistent_in_image():
    rng = random.Random(17)
    for _ in range(100):
        m = Gf2Matrix([rng.getrandbits(10) for _ in range(7)], 10)
        x = rng.getrandbits(10)
        y = m.mul_vec(x)
        x2 = solve(m, y)
        assert x2 is not None and m.mul_vec(x2) == y


def test_right_inverse_identity():
    m = Gf2Matrix.from_rows(["100", "010", "001"])
    f = right_inverse(m)
    assert f.rows == [1, 2, 4] and f.cols == 3


def test_right_inverse_small():
    s = Gf2Matrix.from_rows(["110", "011"])
    f = right_inverse(s)
    for j in range(2):
        col = vec_from_bits((f.rows[i] >> j) & 1 for i in range(3))
        assert s.mul_vec(col) == 1 << j


def test_right_inverse_steane():
    s = Gf2Matrix.from_rows(STEANE_X_CHECKS)
    f = right_inverse(s)
    for j in range(3):
        col = vec_from_bits((f.rows[i] >> j) & 1 for i in range(7))
        assert s.mul_vec(col) == 1 << j


def test_right_inverse_dependent_rows():
    s = Gf2Matrix.from_rows(["11", "11"])
    with pytest.raises(ValueError):
        right_inverse(s)


def test_right_inverse_random_property():
    rng = random.Random(3)
    done = 0
    while done < 30:
        rows = [rng.getrandbits(12) | (1 << rng.randrange(12)) for _ in range(5)]
        s = Gf2Matrix(rows, 12)
        if rank(s) < 5:
            continue
        f = right_inverse(s)
        for j in range(5):
            col = vec_from_bits((f.rows[i] >> j) & 1 for i in range(12))
            assert s.mul_vec(col) == 1 << j
        done += 1


def test_kernel_examples():
    assert kernel(Gf2Matrix.from_rows(["10", "01"])) == []
    assert kernel(Gf2Matrix.from_rows(["11"])) == [0b11]
    assert len(kernel(Gf2Matrix([0], 3))) == 3


def test_rank_plus_kernel_dimension():
    rng = random.Random(23)
    for _ in range(100):
        cols = rng.randrange(1, 14)
        m = Gf2Matrix([rng.getrandbits(cols) for _ in range(rng.randrange(1, 10))], cols)
        assert rank(m) == cols - len(kernel(m))


def test_kernel_vectors_annihilate():
    rng = random.Random(29)
    for _ in range(50):
        m = Gf2Matrix([rng.getrandbits(11) for _ in range(6)], 11)
        for v in kernel(m):
            assert m.mul_vec(v) == 0


def test_decomposer_matches_membership():
    rng = random.Random(31)
    rows = [rng.getrandbits(16) for _ in range(8)]
    dec = Decomposer(rows, 16)
    for _ in range(100):
        mask = rng.getrandbits(8)
        v = 0
        for i in range(8):
            if (mask >> i) & 1:
                v ^= rows[i]
        combo = dec.coefficients(v)
        assert combo is not None
        w = 0
        for i in range(8):
            if (combo >> i) & 1:
                w ^= rows[i]
        assert w == v


def test_tableau_roundtrip():
    gens = [P("XIZY"), P("IIII"), P("ZZZZ")]
    text = format_tableau(gens, comment="three generators")
    parsed = parse_tableau(text)
    assert parsed == gens


def test_tableau_rejects_ragged():
    with pytest.raises(ValueError):
        parse_tableau("XI\nXYZ\n")


def test_tableau_rejects_bad_char():
    with pytest.raises(ValueError):
        parse_tableau("XQ\n")
