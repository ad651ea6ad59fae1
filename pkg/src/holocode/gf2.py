"""Bit-packed GF(2) linear algebra and the binary symplectic Pauli representation.

Bit-vectors are plain Python integers (bit ``i`` is qubit/column ``i``), so
every row operation is a single word-parallel XOR and weights come from
``int.bit_count()``.  An n-qubit Pauli operator, up to phase, is a pair of
such vectors: the X-part and the Z-part.
"""

from __future__ import annotations

from dataclasses import dataclass, field


def vec_from_bits(bits) -> int:
    """Pack an iterable of 0/1 into an integer (index 0 = lowest bit)."""
    v = 0
    for i, b in enumerate(bits):
        if b:
            v |= 1 << i
    return v


def vec_to_bits(v: int, length: int) -> list[int]:
    """Unpack an integer into a list of 0/1 of the given length."""
    return [(v >> i) & 1 for i in range(length)]


def parity(v: int) -> int:
    return v.bit_count() & 1


class PauliVector:
    """An n-qubit Pauli operator (phase ignored) as an (x, z) bit-vector pair.

    Qubit i carries X when bit i of ``x`` is set, Z when bit i of ``z`` is
    set, and Y when both are set.
    """

    __slots__ = ("n", "x", "z")

    def __init__(self, n: int, x: int = 0, z: int = 0):
        mask = (1 << n) - 1
        if x & ~mask or z & ~mask:
            raise ValueError("x/z bits outside qubit range")
        self.n = n
        self.x = x
        self.z = z

    @classmethod
    def from_string(cls, s: str) -> "PauliVector":
        """Parse a tableau string of I/X/Y/Z characters (qubit 0 first)."""
        x = z = 0
        for i, c in enumerate(s.strip().upper()):
            if c == "X":
                x |= 1 << i
            elif c == "Z":
                z |= 1 << i
            elif c == "Y":
                x |= 1 << i
                z |= 1 << i
            elif c != "I":
                raise ValueError(f"invalid Pauli character {c!r}")
        return cls(len(s.strip()), x, z)

    @classmethod
    def single(cls, n: int, qubit: int, kind: str) -> "PauliVector":
        """A single-qubit X, Y or Z on the given qubit."""
        p = cls.from_string("I" * qubit + kind + "I" * (n - qubit - 1))
        return p

    def to_string(self) -> str:
        out = []
        for i in range(self.n):
            xi = (self.x >> i) & 1
            zi = (self.z >> i) & 1
            out.append("IXZY"[xi + 2 * zi])
        return "".join(out)

    @property
    def support(self) -> int:
        """Bit mask of qubits acted on non-trivially."""
        return self.x | self.z

    def weight(self) -> int:
        """Pauli weight: number of qubits with a non-identity factor."""
        return (self.x | self.z).bit_count()

    def sector_weight(self) -> int:
        """popcount(x) + popcount(z); counts Y twice."""
        return self.x.bit_count() + self.z.bit_count()

    def mul(self, other: "PauliVector") -> "PauliVector":
        """Product of two Pauli operators, phase discarded."""
        if self.n != other.n:
            raise ValueError("length mismatch")
        return PauliVector(self.n, self.x ^ other.x, self.z ^ other.z)

    def __mul__(self, other):
        return self.mul(other)

    def __eq__(self, other):
        return (
            isinstance(other, PauliVector)
            and self.n == other.n
            and self.x == other.x
            and self.z == other.z
        )

    def __hash__(self):
        return hash((self.n, self.x, self.z))

    def __repr__(self):
        return f"PauliVector({self.to_string()!r})"


def symplectic_product(a: PauliVector, b: PauliVector) -> int:
    """Symplectic inner product mod 2; 0 iff the two operators commute."""
    if a.n != b.n:
        raise ValueError("length mismatch")
    return parity(a.x & b.z) ^ parity(a.z & b.x)


@dataclass
class Gf2Matrix:
    """Dense GF(2) matrix with word-packed rows (row-major integers)."""

    rows: list = field(default_factory=list)
    cols: int = 0

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "Gf2Matrix":
        """Build from an iterable of rows (ints, strings of 0/1, or bit lists)."""
        packed = []
        width = cols or 0
        for r in rows:
            if isinstance(r, int):
                packed.append(r)
                width = max(width, r.bit_length())
            elif isinstance(r, str):
                packed.append(vec_from_bits(int(c) for c in r))
                width = max(width, len(r))
            else:
                r = list(r)
                packed.append(vec_from_bits(r))
                width = max(width, len(r))
        return cls(packed, cols if cols is not None else width)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def row_bits(self, i: int) -> list[int]:
        return vec_to_bits(self.rows[i], self.cols)

    def to_lists(self) -> list[list[int]]:
        return [self.row_bits(i) for i in range(self.n_rows)]

    def mul_vec(self, v: int) -> int:
        """Matrix-vector product over GF(2); v is a packed column vector."""
        out = 0
        for i, r in enumerate(self.rows):
            out |= parity(r & v) << i
        return out

    def transpose(self) -> "Gf2Matrix":
        rows = []
        for j in range(self.cols):
            rows.append(vec_from_bits((r >> j) & 1 for r in self.rows))
        return Gf2Matrix(rows, self.n_rows)

    def copy(self) -> "Gf2Matrix":
        return Gf2Matrix(list(self.rows), self.cols)

    def __eq__(self, other):
        return (
            isinstance(other, Gf2Matrix)
            and self.cols == other.cols
            and self.rows == other.rows
        )


def rref(M: Gf2Matrix):
    """Reduced row echelon form over GF(2).

    Returns ``(R, rank, pivots)`` where pivots lists the pivot column of each
    of the first ``rank`` rows of R.
    """
    rows = list(M.rows)
    m = len(rows)
    rank = 0
    pivots = []
    for col in range(M.cols):
        bit = 1 << col
        pivot = None
        for r in range(rank, m):
            if rows[r] & bit:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(m):
            if r != rank and rows[r] & bit:
                rows[r] ^= rows[rank]
        pivots.append(col)
        rank += 1
        if rank == m:
            break
    return Gf2Matrix(rows, M.cols), rank, pivots


def rank(M: Gf2Matrix) -> int:
    return rref(M)[1]


def solve(M: Gf2Matrix, y: int):
    """Return some x with M.x = y over GF(2), or None if inconsistent."""
    # Eliminate on rows augmented with the matching bit of y.
    rows = [(M.rows[i], (y >> i) & 1) for i in range(M.n_rows)]
    m = len(rows)
    rank_ = 0
    pivots = []
    for col in range(M.cols):
        bit = 1 << col
        pivot = None
        for r in range(rank_, m):
            if rows[r][0] & bit:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank_], rows[pivot] = rows[pivot], rows[rank_]
        pr, pb = rows[rank_]
        for r in range(m):
            if r != rank_ and rows[r][0] & bit:
                rows[r] = (rows[r][0] ^ pr, rows[r][1] ^ pb)
        pivots.append(col)
        rank_ += 1
    for r in range(rank_, m):
        if rows[r][1]:
            return None
    x = 0
    for i, col in enumerate(pivots):
        if rows[i][1]:
            x |= 1 << col
    return x


def kernel(M: Gf2Matrix) -> list[int]:
    """Basis of the right null space {x : M.x = 0}, as packed vectors."""
    R, rank_, pivots = rref(M)
    pivot_set = set(pivots)
    free_cols = [c for c in range(M.cols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = 1 << fc
        for i, pc in enumerate(pivots):
            if (R.rows[i] >> fc) & 1:
                v |= 1 << pc
        basis.append(v)
    return basis


def right_inverse(S: Gf2Matrix) -> Gf2Matrix:
    """A matrix F with S.F = I, if S has full row rank.

    Column j of F is a vector whose syndrome under S is the j-th unit
    vector.  Raises ValueError when the rows of S are GF(2)-dependent.
    One augmented elimination answers all columns: reducing [S | I] to
    reduced echelon form records T with T.S in pivot form, and column j
    of F scatters column j of T onto the pivot positions.
    """
    m = S.n_rows
    aug = [(S.rows[i], 1 << i) for i in range(m)]
    rank_ = 0
    pivots = []
    for col in range(S.cols):
        bit = 1 << col
        pivot = None
        for r in range(rank_, m):
            if aug[r][0] & bit:
                pivot = r
                break
        if pivot is None:
            continue
        aug[rank_], aug[pivot] = aug[pivot], aug[rank_]
        pr, pt = aug[rank_]
        for r in range(m):
            if r != rank_ and aug[r][0] & bit:
                aug[r] = (aug[r][0] ^ pr, aug[r][1] ^ pt)
        pivots.append(col)
        rank_ += 1
        if rank_ == m:
            break
    if rank_ < m:
        raise ValueError("no right inverse: rows are GF(2)-dependent")
    rows = [0] * S.cols
    for i, pc in enumerate(pivots):
        rows[pc] = aug[i][1]
    F = Gf2Matrix(rows, m)
    for j in range(m):
        col_j = vec_from_bits((rows[i] >> j) & 1 for i in range(S.cols))
        if S.mul_vec(col_j) != 1 << j:
            raise AssertionError("right_inverse verification failed")
    return F


class Decomposer:
    """Repeated-solve helper for a fixed set of generator rows.

    Performs one Gaussian elimination up front; ``coefficients(v)`` then
    answers "which combination of the original rows equals v" in a single
    sweep, or None when v is outside the row space.
    """

    def __init__(self, rows: list, cols: int):
        self.cols = cols
        self.n_gens = len(rows)
        self._pivots = []  # (pivot_col, reduced_row, combo_mask)
        for i, row in enumerate(rows):
            combo = 1 << i
            row, combo = self._reduce(row, combo)
            if row:
                pc = row.bit_length() - 1
                self._pivots.append((pc, row, combo))
                self._pivots.sort(key=lambda t: -t[0])

    def _reduce(self, v: int, combo: int):
        for pc, row, cmb in self._pivots:
            if (v >> pc) & 1:
                v ^= row
                combo ^= cmb
        return v, combo

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def coefficients(self, v: int):
        """Coefficient mask c with XOR of rows[i] over set bits of c equal to v."""
        v, combo = self._reduce(v, 0)
        return None if v else combo

    def contains(self, v: int) -> bool:
        return self.coefficients(v) is not None


def parse_tableau(text: str) -> list[PauliVector]:
    """Read generators from tableau text: one I/X/Y/Z string per line.

    Blank lines and '#' comment lines are skipped.  All generators must act
    on the same number of qubits.
    """
    gens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        gens.append(PauliVector.from_string(line))
    if gens and any(g.n != gens[0].n for g in gens):
        raise ValueError("tableau lines have differing lengths")
    return gens


def format_tableau(gens, comment: str | None = None) -> str:
    """Render generators as tableau text, optionally with a leading comment."""
    lines = []
    if comment:
        for c in comment.splitlines():
            lines.append(f"# {c}")
    lines.extend(g.to_string() for g in gens)
    return "\n".join(lines) + "\n"
