"""Exact most-likely-error decoding.

A syndrome is mapped to a pure error through the inverse syndrome former
(the GF(2) right inverse of the check matrix); the minimum-weight element
of the coset spanned by stabilizer and logical generators is then found
exactly, either by depth-first branch and bound over the binary
combination coefficients or by a Viterbi sweep over a precomputed minimal
trellis (the hot path).  Unless a search times out, the returned weight
carries an optimality certificate.

The same minimization can be phrased as a standard integer linear
program for users who prefer an external solver: minimize sum_i w_i
subject to w = e + G.x - 2t with x in {0,1}^|G|, t integer slack and
0 <= w <= 1 componentwise.  Nothing here requires it; the in-house
solvers are exact.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .gf2 import Decomposer, Gf2Matrix, PauliVector, right_inverse
from .builder import HolographicCode, css_split


@dataclass
class DecodeProblem:
    """Minimum-weight coset search instance over packed bit-vectors.

    The first ``n_stab`` generators are stabilizer rows (lambda
    coefficients); the rest are logical rows (mu coefficients).  When
    ``fold_shift`` is set the vectors are symplectic (x || z) pairs and the
    weight of a vector is the number of active positions after OR-folding
    the two halves (Pauli weight); otherwise plain Hamming weight is used.
    """

    target: int
    gens: list
    width: int
    n_stab: int
    fold_shift: int | None = None

    def weight_of(self, v: int) -> int:
        return self.fold(v).bit_count()

    def fold(self, v: int) -> int:
        if self.fold_shift is None:
            return v
        return (v | (v >> self.fold_shift)) & ((1 << self.fold_shift) - 1)


@dataclass
class Correction:
    """Result of a coset search: vector, weight and the coefficients used."""

    vector: int
    weight: int
    stab_coeffs: int
    logical_coeffs: int
    certificate: bool
    nodes: int = 0

    def coefficient_bits(self, n_stab: int) -> int:
        return self.stab_coeffs | (self.logical_coeffs << n_stab)


class _Timeout(Exception):
    pass


class _Found(Exception):
    def __init__(self, coeffs):
        self.coeffs = coeffs


def pure_error(F: Gf2Matrix, y: int) -> int:
    """Map a syndrome to a pure error, e = F.y."""
    if y >> F.cols:
        raise ValueError("syndrome longer than the ISF accepts")
    return F.mul_vec(y)


def _mat_vec(F: Gf2Matrix, y: int) -> int:
    return F.mul_vec(y)


def min_weight_coset(problem: DecodeProblem, timeout: float | None = 60.0,
                     tie_break: str = "lex") -> Correction:
    """Globally minimize weight(target + sum of chosen generators).

    Exact branch and bound: generators are branched in order of descending
    support overlap with the current residual, and a subtree is cut when
    the residual weight on positions no remaining generator can touch
    already reaches the incumbent.  With ``tie_break="lex"`` a second
    sweep finds the lexicographically smallest coefficient vector among
    the optima (stabilizer coefficients first, in row order).
    """
    gens = problem.gens
    G = len(gens)
    fold = problem.fold
    gfold = [fold(g) for g in gens]
    deadline = None if timeout is None else time.monotonic() + timeout

    best_w = problem.weight_of(problem.target)
    best_c = 0
    used = [False] * G
    nodes = 0
    timed_out = False

    def search(residual, rfold, coeffs):
        nonlocal best_w, best_c, nodes
        nodes += 1
        if deadline is not None and nodes % 4096 == 0 and time.monotonic() > deadline:
            raise _Timeout
        w = rfold.bit_count()
        if w < best_w:
            best_w = w
            best_c = coeffs
        if best_w == 0:
            return
        union = 0
        pick = -1
        pick_ov = -1
        for i in range(G):
            if used[i]:
                continue
            gf = gfold[i]
            union |= gf
            ov = (rfold & gf).bit_count()
            if ov > pick_ov:
                pick_ov = ov
                pick = i
        if (rfold & ~union).bit_count() >= best_w:
            return
        if pick < 0:
            return
        used[pick] = True
        r2 = residual ^ gens[pick]
        rf2 = fold(r2)
        if rf2.bit_count() < w:
            search(r2, rf2, coeffs | (1 << pick))
            search(residual, rfold, coeffs)
        else:
            search(residual, rfold, coeffs)
            search(r2, rf2, coeffs | (1 << pick))
        used[pick] = False

    try:
        search(problem.target, fold(problem.target), 0)
        certified = True
    except _Timeout:
        certified = False
        timed_out = True

    if certified and tie_break == "lex":
        best_c = _lex_optimum(problem, gens, gfold, best_w, deadline)
        if best_c is None:  # timed out during the lex sweep
            certified = False
            timed_out = True
            best_c = 0

    vec = problem.target
    c = best_c
    while c:
        i = c.bit_length() - 1
        c ^= 1 << i
        vec ^= gens[i]
    smask = (1 << problem.n_stab) - 1
    return Correction(
        vector=vec,
        weight=problem.weight_of(vec) if not timed_out else best_w,
        stab_coeffs=best_c & smask,
        logical_coeffs=best_c >> problem.n_stab,
        certificate=certified,
        nodes=nodes,
    )


def _minimal_span(rows, track=False):
    """Row-reduce integer rows so all lowest and all highest set bits are
    distinct (minimal-span generator form).  Exactness of the sweep does
    not depend on this; it only shrinks the state profile.

    With ``track=True`` returns (rows, combos, dropped) where combos[i] is
    the mask of original rows XORed into reduced row i, and dependent
    input rows are dropped instead of raising.
    """
    work = [(r, 1 << i) for i, r in enumerate(rows)]
    dropped = []
    for _ in range(16 * len(rows) + 16):
        changed = False
        by_start = {}
        keep = []
        for r, cmb in work:
            while r:
                s = r & -r
                j = by_start.get(s)
                if j is None:
                    by_start[s] = len(keep)
                    keep.append((r, cmb))
                    break
                r2, c2 = keep[j]
                r ^= r2
                cmb ^= c2
                changed = True
            else:
                if not track:
                    raise ValueError("dependent generators in sweep solver")
                dropped.append(cmb)
                changed = True
        work = keep
        by_end = {}
        for i in range(len(work)):
            r, cmb = work[i]
            while True:
                e = r.bit_length()
                j = by_end.get(e)
                if j is None:
                    by_end[e] = i
                    break
                rj, cj = work[j]
                # Keep the later-starting row as the owner of this end so
                # the replacement inherits the earlier start.
                if (rj & -rj) < (r & -r):
                    work[j] = (r, cmb)
                    r, cmb = rj ^ r, cj ^ cmb
                else:
                    r ^= rj
                    cmb ^= cj
                changed = True
                if r == 0:
                    raise AssertionError("unexpected cancellation in span form")
            work[i] = (r, cmb)
        if not changed:
            if track:
                return [r for r, _ in work], [c for _, c in work], dropped
            return [r for r, _ in work]
    raise AssertionError("minimal-span reduction did not converge")


def min_weight_sweep(problem: DecodeProblem, upper: int | None = None,
                     timeout: float | None = None,
                     state_limit: int = 4_000_000):
    """Exact coset minimum via a column-sweep dynamic program.

    Equivalent to exhausting the 2^|G| combinations, but partial
    combinations that agree on every position still reachable by the
    remaining generators are merged, so the state count is bounded by the
    trellis profile of the generator matrix instead of 2^|G|.  ``upper``
    may give a known achievable weight to tighten pruning.  Returns
    (weight, certified); an uncertified result is only the best bound
    known when the state or time budget ran out.
    """
    target = problem.target
    best = problem.weight_of(target)
    if upper is not None:
        best = min(best, upper)
    if not problem.gens:
        return best, True
    deadline = None if timeout is None else time.monotonic() + timeout

    if problem.fold_shift is None:
        def remap_vec(v):
            return v

        def fold(v):
            return v

        def expand(m):
            return m
    else:
        # Interleave x/z halves so qubit q owns bits 2q (x) and 2q+1 (z);
        # folding and freezing then act on whole qubits.
        n = problem.fold_shift
        even = sum(1 << (2 * i) for i in range(n))
        nmask = (1 << n) - 1

        def remap_vec(v):
            x = v & nmask
            z = v >> n
            out = 0
            while x:
                b = x & -x
                x ^= b
                out |= b * b
            while z:
                b = z & -z
                z ^= b
                out |= 2 * b * b
            return out

        def fold(v):
            return (v | (v >> 1)) & even

        def expand(m):
            return m | (m << 1)

    rows = _minimal_span([remap_vec(g) for g in problem.gens])
    rows.sort(key=lambda r: r & -r)
    t = remap_vec(target)

    suffix = [0] * (len(rows) + 1)
    for i in range(len(rows) - 1, -1, -1):
        suffix[i] = suffix[i + 1] | rows[i]

    act = expand(fold(suffix[0]))
    frozen0 = fold(t & ~act).bit_count()
    states = {t & act: frozen0} if frozen0 < best else {}
    certified = True
    for i, row in enumerate(rows):
        if deadline is not None and time.monotonic() > deadline:
            return best, False
        act_next = expand(fold(suffix[i + 1]))
        new = {}
        get = new.get
        for st, fw in states.items():
            for cand in (st, st ^ row):
                val = fw + fold(cand & ~act_next).bit_count()
                if val >= best:
                    continue
                key = cand & act_next
                old = get(key)
                if old is None or old > val:
                    new[key] = val
        states = new
        if len(states) > state_limit:
            return best, False
        if not states:
            break
    if states:
        best = min(best, min(states.values()))
    return best, certified


class CosetTrellis:
    """Exact coset minimizer with a precomputed minimal trellis.

    The generator rows are put in minimal-span form over the column order;
    a Viterbi sweep over columns then carries one weight per assignment of
    the rows whose span straddles the current column.  Holographic codes
    have arc-local generators in boundary order, so the straddle count
    stays small and a sweep costs milliseconds.  The trellis (branch,
    parity and merge schedules) depends only on the generators and is
    reused across targets; ``minimize`` is exact for every target.
    """

    def __init__(self, gens, width: int, fold_shift: int | None = None,
                 state_limit: int = 1 << 22):
        import numpy as np

        self.np = np
        self.gens = list(gens)
        self.width = width
        self.fold_shift = fold_shift
        if fold_shift is None:
            rows = list(self.gens)
            positions = width
            stride = 1
        else:
            n = fold_shift
            nmask = (1 << n) - 1

            def interleave(v):
                x = v & nmask
                z = v >> n
                out = 0
                while x:
                    b = x & -x
                    x ^= b
                    out |= b * b
                while z:
                    b = z & -z
                    z ^= b
                    out |= 2 * b * b
                return out

            rows = [interleave(g) for g in self.gens]
            positions = n
            stride = 2
            self._interleave = interleave
        self.stride = stride
        self.positions = positions

        rows, combos, dropped = _minimal_span(rows, track=True)
        self.rows = rows
        self.combos = combos
        order = sorted(range(len(rows)),
                       key=lambda i: (rows[i] & -rows[i]).bit_length())
        rows = [rows[i] for i in order]
        self.combos = [combos[i] for i in order]
        starts = [((r & -r).bit_length() - 1) // stride for r in rows]
        ends = [(r.bit_length() - 1) // stride for r in rows]

        # Schedule: per position, rows that start and rows that end there.
        start_at = [[] for _ in range(positions)]
        end_at = [[] for _ in range(positions)]
        for i, r in enumerate(rows):
            start_at[starts[i]].append(i)
            end_at[ends[i]].append(i)

        # Walk the schedule once to freeze the state layout and parity
        # tables.  ``active`` maps state bit -> row id.
        self.schedule = []  # ops: ("branch", row) ("emit", arrays) ("merge", row, bit)
        active = []
        for p in range(positions):
            for i in start_at[p]:
                active.append(i)
                if 1 << len(active) > state_limit:
                    raise ValueError("trellis state limit exceeded")
                self.schedule.append(("branch", i))
            size = 1 << len(active)
            idx = np.arange(size, dtype=np.uint32)
            if stride == 1:
                mask = 0
                for b, i in enumerate(active):
                    if (rows[i] >> p) & 1:
                        mask |= 1 << b
                par = (np.bitwise_count(idx & np.uint32(mask)) & 1).astype(np.int32)
                self.schedule.append(("emit", p, par))
            else:
                mx = mz = 0
                for b, i in enumerate(active):
                    if (rows[i] >> (2 * p)) & 1:
                        mx |= 1 << b
                    if (rows[i] >> (2 * p + 1)) & 1:
                        mz |= 1 << b
                parx = (np.bitwise_count(idx & np.uint32(mx)) & 1).astype(np.int32)
                parz = (np.bitwise_count(idx & np.uint32(mz)) & 1).astype(np.int32)
                self.schedule.append(("emit2", p, parx, parz))
            for i in reversed(end_at[p]):
                b = active.index(i)
                size = 1 << len(active)
                keep = np.array(
                    [s for s in range(size) if not (s >> b) & 1], dtype=np.intp
                )
                self.schedule.append(("merge", i, b, keep, keep | (1 << b)))
                # Remove bit b: remaining bits shift down.
                active.pop(b)
        if active:
            raise AssertionError("rows still active after final position")

    # -- queries ----------------------------------------------------------

    def target_bits(self, target: int):
        if self.fold_shift is not None:
            return self._interleave(target)
        return target

    def minimize(self, target: int):
        """(weight, combo mask over the original generators)."""
        np = self.np
        t = self.target_bits(target)
        W = np.zeros(1, dtype=np.int32)
        sels = []
        for op in self.schedule:
            kind = op[0]
            if kind == "branch":
                W = np.concatenate([W, W])
            elif kind == "emit":
                p, par = op[1], op[2]
                if (t >> p) & 1:
                    W = W + (1 - par)
                else:
                    W = W + par
            elif kind == "emit2":
                p, parx, parz = op[1], op[2], op[3]
                bx = (t >> (2 * p)) & 1
                bz = (t >> (2 * p + 1)) & 1
                cx = (1 - parx) if bx else parx
                cz = (1 - parz) if bz else parz
                W = W + np.maximum(cx, cz)
            else:  # merge
                _, b, keep0, keep1 = op[1], op[2], op[3], op[4]
                W0 = W[keep0]
                W1 = W[keep1]
                sel = W1 < W0
                sels.append(sel)
                W = np.where(sel, W1, W0)
        weight = int(W[0])

        # Backtrace: walk the schedule in reverse recovering each row's
        # coefficient at its merge, and each branch bit when it is removed.
        state = 0
        nbits = 0
        coeff = {}
        si = len(sels) - 1
        for op in reversed(self.schedule):
            kind = op[0]
            if kind == "merge":
                row, b = op[1], op[2]
                bit = int(sels[si][state])
                si -= 1
                coeff[row] = bit
                low = state & ((1 << b) - 1)
                state = ((state >> b) << (b + 1)) | (bit << b) | low
                nbits += 1
            elif kind == "branch":
                row = op[1]
                nbits -= 1
                # bit nbits of the state is this row's coefficient
                coeff[row] = (state >> nbits) & 1
                state &= (1 << nbits) - 1
        combo = 0
        for i, c in coeff.items():
            if c:
                combo ^= self.combos[i]
        return weight, combo


def _lex_optimum(problem, gens, gfold, best_w, deadline):
    """First coefficient vector of weight best_w in lexicographic DFS order."""
    G = len(gens)
    fold = problem.fold
    suffix_union = [0] * (G + 1)
    for i in range(G - 1, -1, -1):
        suffix_union[i] = suffix_union[i + 1] | gfold[i]
    nodes = 0

    def walk(i, residual, rfold, coeffs):
        nonlocal nodes
        nodes += 1
        if deadline is not None and nodes % 4096 == 0 and time.monotonic() > deadline:
            raise _Timeout
        if (rfold & ~suffix_union[i]).bit_count() > best_w:
            return
        if i == G:
            if rfold.bit_count() == best_w:
                raise _Found(coeffs)
            return
        walk(i + 1, residual, rfold, coeffs)
        r2 = residual ^ gens[i]
        walk(i + 1, r2, fold(r2), coeffs | (1 << i))

    try:
        walk(0, problem.target, fold(problem.target), 0)
    except _Found as f:
        return f.coeffs
    except _Timeout:
        return None
    raise AssertionError("lex sweep found no optimum at the certified weight")


class CodeDecoder:
    """Per-code decoding context with precomputed check matrices and ISFs.

    For CSS codes the two sectors are decoded independently and the
    objective flag is irrelevant.  For non-CSS codes the default objective
    is Pauli weight (the most likely single error under depolarizing
    noise); "hamming" minimizes popcount(x) + popcount(z) instead, which
    treats a Y as two errors and cannot always correct single-qubit Ys.
    """

    def __init__(self, code: HolographicCode, objective: str = "pauli",
                 timeout: float | None = 60.0, tie_break: str = "lex",
                 engine: str = "trellis"):
        self.code = code
        self.objective = objective
        self.timeout = timeout
        self.tie_break = tie_break
        self.engine = engine
        n = code.n
        self.n = n
        if code.css:
            self.mode = "css"
            sx, sz, (x_reps, z_reps) = css_split(code)
            self.sx = sx
            self.sz = sz
            self.fx = right_inverse(sx)
            self.fz = right_inverse(sz)
            # Z-error sector: X-type checks, Z-type coset generators.
            self.z_gens = [s.z for s in code.stabilizers if s.z] + z_reps
            self.x_gens = [s.x for s in code.stabilizers if s.x] + x_reps
            self.nz_stab = sum(1 for s in code.stabilizers if s.z)
            self.nx_stab = sum(1 for s in code.stabilizers if s.x)
        else:
            self.mode = "symplectic"
            rows = [s.z | (s.x << n) for s in code.stabilizers]
            self.h = Gf2Matrix(rows, 2 * n)
            self.f = right_inverse(self.h)
            gens = [s.x | (s.z << n) for s in code.stabilizers]
            for lq in code.logicals:
                gens.append(lq.x_rep.x | (lq.x_rep.z << n))
                gens.append(lq.z_rep.x | (lq.z_rep.z << n))
            self.sym_gens = gens
            self.n_stab = len(code.stabilizers)
        self._trellises = None
        if engine == "trellis":
            try:
                if self.mode == "css":
                    self._trellises = (
                        CosetTrellis(self.z_gens, n),
                        CosetTrellis(self.x_gens, n),
                    )
                else:
                    fold = n if objective == "pauli" else None
                    self._trellises = (
                        CosetTrellis(self.sym_gens, 2 * n, fold_shift=fold),
                    )
            except ValueError:
                self._trellises = None  # fall back to the search engine
        rows = [s.x | (s.z << n) for s in code.stabilizers]
        for lq in code.logicals:
            rows.append(lq.x_rep.x | (lq.x_rep.z << n))
        for lq in code.logicals:
            rows.append(lq.z_rep.x | (lq.z_rep.z << n))
        self._decomposer = Decomposer(rows, 2 * n)
        self._stab_rows = [(s.x, s.z) for s in code.stabilizers]

    # -- syndromes ---------------------------------------------------------

    def syndrome(self, err: PauliVector):
        """CSS codes: (x-check syndrome, z-check syndrome); else one vector."""
        if self.mode == "css":
            return self.sx.mul_vec(err.z), self.sz.mul_vec(err.x)
        return self.h.mul_vec(err.x | (err.z << self.n))

    def syndrome_is_zero(self, err: PauliVector) -> bool:
        s = self.syndrome(err)
        return s == (0, 0) if self.mode == "css" else s == 0

    # -- decoding ----------------------------------------------------------

    def decode(self, syndrome, mle: bool = True):
        """Return (correction PauliVector, certificate flag).

        CSS mode expects the (x-check, z-check) syndrome pair and solves
        the two sectors independently; symplectic mode solves one joint
        problem over 2n binary variables.
        """
        if self.mode == "css":
            yx, yz = syndrome
            ez = _mat_vec(self.fx, yx)
            if self.sx.mul_vec(ez) != yx:
                raise AssertionError("pure error does not satisfy the syndrome")
            ex = _mat_vec(self.fz, yz)
            if self.sz.mul_vec(ex) != yz:
                raise AssertionError("pure error does not satisfy the syndrome")
            if self._trellises is not None and mle:
                vz = self._apply(self._trellises[0], self.z_gens, ez)
                vx = self._apply(self._trellises[1], self.x_gens, ex)
                return PauliVector(self.n, vx, vz), True
            zg = self.z_gens if mle else self.z_gens[: self.nz_stab]
            xg = self.x_gens if mle else self.x_gens[: self.nx_stab]
            pz = DecodeProblem(ez, zg, self.n, self.nz_stab)
            px = DecodeProblem(ex, xg, self.n, self.nx_stab)
            cz = min_weight_coset(pz, self.timeout, self.tie_break)
            cx = min_weight_coset(px, self.timeout, self.tie_break)
            corr = PauliVector(self.n, cx.vector, cz.vector)
            return corr, cz.certificate and cx.certificate
        y = syndrome
        e = _mat_vec(self.f, y)
        if self.h.mul_vec(e) != y:
            raise AssertionError("pure error does not satisfy the syndrome")
        if self._trellises is not None and mle:
            v = self._apply(self._trellises[0], self.sym_gens, e)
            nmask = (1 << self.n) - 1
            return PauliVector(self.n, v & nmask, v >> self.n), True
        fold = self.n if self.objective == "pauli" else None
        prob = DecodeProblem(e, self.sym_gens, 2 * self.n, self.n_stab,
                             fold_shift=fold)
        c = min_weight_coset(prob, self.timeout, self.tie_break)
        corr = PauliVector(self.n, c.vector & ((1 << self.n) - 1),
                           c.vector >> self.n)
        return corr, c.certificate

    @staticmethod
    def _apply(trellis: "CosetTrellis", gens, target: int) -> int:
        _, combo = trellis.minimize(target)
        v = target
        while combo:
            i = combo.bit_length() - 1
            combo ^= 1 << i
            v ^= gens[i]
        return v

    def decode_error(self, err: PauliVector):
        return self.decode(self.syndrome(err))

    def decode_corrections(self, syndrome, mle: bool = True):
        """Per-sector Correction objects with coefficient vectors.

        Always uses the reference search engine (with its lexicographic
        tie-break), so the stabilizer/logical coefficients are exposed;
        CSS codes return [Z-error sector, X-error sector], non-CSS codes
        a single joint entry.
        """
        if self.mode == "css":
            yx, yz = syndrome
            ez = _mat_vec(self.fx, yx)
            ex = _mat_vec(self.fz, yz)
            zg = self.z_gens if mle else self.z_gens[: self.nz_stab]
            xg = self.x_gens if mle else self.x_gens[: self.nx_stab]
            return [
                min_weight_coset(DecodeProblem(ez, zg, self.n, self.nz_stab),
                                 self.timeout, "lex"),
                min_weight_coset(DecodeProblem(ex, xg, self.n, self.nx_stab),
                                 self.timeout, "lex"),
            ]
        e = _mat_vec(self.f, syndrome)
        fold = self.n if self.objective == "pauli" else None
        prob = DecodeProblem(e, self.sym_gens, 2 * self.n, self.n_stab,
                             fold_shift=fold)
        return [min_weight_coset(prob, self.timeout, "lex")]

    # -- logical effect ----------------------------------------------------

    def net_logical_effect(self, v: PauliVector):
        """Per-bulk-qubit effect of a Pauli, or "detectable".

        Zero-syndrome operators decompose over stabilizers and logical
        representatives; the logical coefficients give the effect.
        """
        if not self.syndrome_is_zero(v):
            return "detectable"
        combo = self._decomposer.coefficients(v.x | (v.z << self.n))
        if combo is None:
            raise AssertionError("zero-syndrome operator failed to decompose")
        k = self.code.k
        ns = len(self.code.stabilizers)
        effects = []
        for i in range(k):
            a = (combo >> (ns + i)) & 1
            b = (combo >> (ns + k + i)) & 1
            effects.append("IXZY"[a + 2 * b])
        return effects


def decode(code: HolographicCode, syndrome, objective: str = "pauli",
           timeout: float | None = 60.0) -> PauliVector:
    """One-shot decode; prefer CodeDecoder for repeated use."""
    return CodeDecoder(code, objective, timeout).decode(syndrome)[0]
