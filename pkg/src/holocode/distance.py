"""Per-logical-qubit bit and word distances via the coset minimizer.

The bit distance of qubit i is the minimum weight of a representative of
its logical class that acts trivially on all other logical qubits (coset
over stabilizers only).  The word distance also allows non-trivial action
on the other qubits (coset over stabilizers plus the other qubits' logical
rows) and is never larger.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .builder import HolographicCode, css_split
from .decoder import DecodeProblem, min_weight_coset, min_weight_sweep


@dataclass
class DistanceResult:
    qubit: int
    sector: str  # "x", "z" or "pauli"
    kind: str  # "bit" or "word"
    value: int  # exact when certified, else best upper bound
    certified: bool
    lower: int = 1  # trivial lower bound when not certified

    @property
    def bracket(self):
        return (self.value if self.certified else self.lower, self.value)


def _sector_problem(code, qubit, sector, include_other_logicals):
    sx, sz, (x_reps, z_reps) = css_split(code)
    if sector == "x":
        target = x_reps[qubit]
        gens = list(sx.rows)
        others = [x_reps[j] for j in range(code.k) if j != qubit]
    else:
        target = z_reps[qubit]
        gens = list(sz.rows)
        others = [z_reps[j] for j in range(code.k) if j != qubit]
    n_stab = len(gens)
    if include_other_logicals:
        gens += others
    return DecodeProblem(target, gens, code.n, n_stab)


def _symplectic_problem(code, qubit, include_other_logicals, objective):
    n = code.n
    target = code.logicals[qubit].x_rep
    target_v = target.x | (target.z << n)
    gens = [s.x | (s.z << n) for s in code.stabilizers]
    n_stab = len(gens)
    if include_other_logicals:
        for j, lq in enumerate(code.logicals):
            if j != qubit:
                gens.append(lq.x_rep.x | (lq.x_rep.z << n))
                gens.append(lq.z_rep.x | (lq.z_rep.z << n))
    fold = n if objective == "pauli" else None
    return DecodeProblem(target_v, gens, 2 * n, n_stab, fold_shift=fold)


def _run(problem, timeout):
    """Trellis sweep when the profile is manageable, otherwise depth-first
    search followed by the generator-sweep with the search incumbent."""
    import time as _time

    from .decoder import CosetTrellis

    start = _time.monotonic()
    if len(problem.gens) <= 16:
        corr = min_weight_coset(problem, timeout, tie_break="first")
        return corr.weight, corr.certificate
    try:
        trellis = CosetTrellis(problem.gens, problem.width, problem.fold_shift)
        w, _ = trellis.minimize(problem.target)
        return w, True
    except ValueError:
        pass
    budget = 3.0 if timeout is None else min(3.0, timeout / 4)
    corr = min_weight_coset(problem, budget, tie_break="first")
    if corr.certificate:
        return corr.weight, True
    left = None if timeout is None else timeout - (_time.monotonic() - start)
    w, cert = min_weight_sweep(problem, upper=corr.weight, timeout=left)
    return min(w, corr.weight), cert


def bit_distance(code: HolographicCode, qubit: int = 0, sector: str = "min",
                 timeout: float | None = 3600.0,
                 objective: str = "pauli") -> DistanceResult:
    """Minimum weight of qubit i's logical class modulo stabilizers only.

    For CSS codes the X and Z sectors are solved separately; sector "min"
    reports the smaller of the two.  Non-CSS codes use one joint search
    over the full symplectic vector, by default minimizing Pauli weight;
    ``objective="hamming"`` counts a Y as two errors instead.
    """
    return _distance(code, qubit, sector, False, timeout, objective, "bit")


def word_distance(code: HolographicCode, qubit: int = 0, sector: str = "min",
                  timeout: float | None = 3600.0,
                  objective: str = "pauli") -> DistanceResult:
    """Minimum weight of any logical operator with support on qubit i."""
    return _distance(code, qubit, sector, True, timeout, objective, "word")


def _distance(code, qubit, sector, with_others, timeout, objective, kind):
    if not 0 <= qubit < code.k:
        raise ValueError("qubit index out of range")
    if code.css:
        if sector in ("x", "z"):
            prob = _sector_problem(code, qubit, sector, with_others)
            w, cert = _run(prob, timeout)
            return DistanceResult(qubit, sector, kind, w, cert)
        wx, cx = _run(_sector_problem(code, qubit, "x", with_others), timeout)
        wz, cz = _run(_sector_problem(code, qubit, "z", with_others), timeout)
        return DistanceResult(qubit, "min", kind, min(wx, wz), cx and cz)
    prob = _symplectic_problem(code, qubit, with_others, objective)
    w, cert = _run(prob, timeout)
    return DistanceResult(qubit, "pauli", kind, w, cert)


def fit_distance_scaling(points):
    """Least-squares power-law fit of distance against qubit count.

    ``points`` is a list of (n, d); returns (exponent, (lo, hi)) with a
    95% confidence interval from the t-distribution.  Needs >= 3 points.
    """
    from scipy import stats

    if len(points) < 3:
        raise ValueError("need at least 3 points")
    x = np.log([p[0] for p in points])
    y = np.log([p[1] for p in points])
    if np.ptp(x) == 0:
        raise ValueError("degenerate points")
    res = stats.linregress(x, y)
    tcrit = stats.t.ppf(0.975, len(points) - 2)
    half = tcrit * res.stderr if np.isfinite(res.stderr) else 0.0
    return res.slope, (res.slope - half, res.slope + half)
