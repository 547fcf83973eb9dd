"""Closed-form and recursive expected in-degree curves, plus an exact small-n oracle.

Curves are indexed by quality rank i (1-based); values[i-1] is the expected
in-degree of the node ranked i. Two independent evaluations of the meritocracy
curve exist (downward recursion and elementary-symmetric-polynomial sum) and
must agree to float precision; the permutation-enumeration oracle is the
ground truth for small n.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


def _validate(n: int, m_cap: int) -> None:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if not 1 <= m_cap <= n - 1:
        raise ValueError(f"m_cap must be in [1, n-1], got {m_cap} for n={n}")


@dataclass
class TheoryTable:
    """Cumulative link-probability matrix: p_table[m-1, i-1] is the expected
    number of other nodes that link to the rank-i node within their first m
    out-links. Row m_cap is the expected in-degree curve."""

    n: int
    m_cap: int
    p_table: np.ndarray = field(repr=False)

    @property
    def expected_indegree(self) -> np.ndarray:
        return self.p_table[-1]


@dataclass
class CurveSpec:
    """Expected in-degree as a function of quality rank."""

    n: int
    m_cap: int
    values: np.ndarray = field(repr=False)
    name: str = "curve"

    def to_csv(self) -> str:
        lines = [f"# curve: {self.name} n={self.n} m={self.m_cap}",
                 "rank,expected_indegree"]
        lines += [f"{i},{v:.12g}" for i, v in enumerate(self.values, start=1)]
        return "\n".join(lines) + "\n"


def recursion_table(n: int, m_cap: int) -> TheoryTable:
    """Fill the table by downward recursion over ranks:
    row(m) at rank i-1 = row(m) at i + row(m-1) at i / (i-1), with row 1 and
    the last rank pinned to 1."""
    _validate(n, m_cap)
    table = np.empty((m_cap, n))
    table[0] = 1.0
    for m in range(1, m_cap):
        prev = table[m - 1]
        contrib = np.zeros(n)
        contrib[1:] = prev[1:] / np.arange(1, n)
        suffix = np.concatenate([np.cumsum(contrib[::-1])[::-1][1:], [0.0]])
        table[m] = 1.0 + suffix
    return TheoryTable(n=n, m_cap=m_cap, p_table=table)


def exact_expected_indegree(n: int, m_cap: int) -> CurveSpec:
    """Meritocracy expected in-degree at rank i: sum over subset sizes
    k < m_cap of the elementary symmetric polynomial e_k(1/i, ..., 1/(n-1)),
    computed by the incremental e_k recurrence in O(n * m_cap)."""
    _validate(n, m_cap)
    values = np.empty(n)
    values[n - 1] = 1.0
    e = np.zeros(m_cap)
    e[0] = 1.0
    for i in range(n - 1, 0, -1):
        x = 1.0 / i
        if m_cap > 1:
            e[1:] += x * e[:-1]
        values[i - 1] = e.sum()
    return CurveSpec(n=n, m_cap=m_cap, values=values, name="exact")


def merit_approx_curve(n: int, m_cap: int) -> CurveSpec:
    """Large-n meritocracy approximation: sum_{m<m_cap} log(n/i)^m / m!."""
    _validate(n, m_cap)
    i = np.arange(1, n + 1, dtype=float)
    logs = np.log(n / i)
    term = np.ones(n)
    acc = np.ones(n)
    for m in range(1, m_cap):
        term = term * logs / m
        acc = acc + term
    return CurveSpec(n=n, m_cap=m_cap, values=acc, name="merit-approx")


def matthew_approx_curve(n: int, m_cap: int) -> CurveSpec:
    """Mean-field Matthew curve 2(M+1)n^2 / ((n+i-1)(n+i)) - 1; sums to
    exactly M*n over ranks (telescoping)."""
    _validate(n, m_cap)
    i = np.arange(1, n + 1, dtype=float)
    values = 2.0 * (m_cap + 1) * n * n / ((n + i - 1.0) * (n + i)) - 1.0
    return CurveSpec(n=n, m_cap=m_cap, values=values, name="matthew-approx")


def matthew_initial(n: int, i) -> np.ndarray | float:
    """Ranked expected in-degree after the first n Matthew steps:
    4n^2 / ((n+i-1)(n+i)) - 1."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    i = np.asarray(i, dtype=float)
    out = 4.0 * n * n / ((n + i - 1.0) * (n + i)) - 1.0
    return float(out) if out.ndim == 0 else out


def matthew_pdf_prediction(d, m_cap: int):
    """Predicted Matthew in-degree density ((M+1)/2) * (d+1)^(-3/2)."""
    d = np.asarray(d, dtype=float)
    if np.any(d < 0):
        raise ValueError("in-degree must be >= 0")
    out = 0.5 * (m_cap + 1) * (d + 1.0) ** -1.5
    return float(out) if out.ndim == 0 else out


def convergence_lower_bound(n: int, t: int) -> float:
    """Lower bound on the probability that the meritocracy process has reached
    equilibrium within t uniform-pair events: (1 - ((n-2)/(n-1))^t)^n."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    ratio = (n - 2) / (n - 1)
    return float((1.0 - ratio ** t) ** n)


@dataclass
class CrossingReport:
    """Sign-change summary of curve A - curve B, ties ignored."""

    crossing_rank: int | None
    sign_changes: int

    @property
    def is_single(self) -> bool:
        return self.sign_changes == 1


def single_crossing_index(curve_a, curve_b) -> CrossingReport:
    """Count sign changes of A - B over ranks, ignoring exact ties. The
    crossing rank is the rank immediately after the last position holding the
    previous sign. Zero or multiple crossings are reported, not raised."""
    a = np.asarray(curve_a, dtype=float)
    b = np.asarray(curve_b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("curves must be equal-length 1-d arrays")
    diff = a - b
    changes = 0
    crossing = None
    last_sign = 0
    last_rank = 0
    for rank, s in enumerate(np.sign(diff).astype(int), start=1):
        if s == 0:
            continue
        if last_sign != 0 and s != last_sign:
            changes += 1
            if crossing is None:
                crossing = last_rank + 1
        last_sign = s
        last_rank = rank
    return CrossingReport(crossing_rank=crossing, sign_changes=changes)


def brute_force_oracle(n: int, m_cap: int, exact: bool = False) -> CurveSpec:
    """Exact meritocracy expected in-degree by enumerating, for every source,
    all (n-1)! candidate orderings and applying the record rule truncated at
    m_cap followees or at the best-node link. Feasible for n <= 8.

    With exact=True (n <= 6) expectations are accumulated as rationals before
    converting to float.
    """
    if n > 8:
        raise ValueError(f"oracle enumeration limited to n <= 8, got {n}")
    _validate(n, m_cap)
    if exact and n > 6:
        raise ValueError("exact rational mode limited to n <= 6")
    counts = [0] * (n + 1)
    for src in range(1, n + 1):
        candidates = [j for j in range(1, n + 1) if j != src]
        best = candidates[0]                # highest quality available
        for perm in itertools.permutations(candidates):
            record = n + 1
            taken = 0
            for c in perm:
                if c < record:
                    record = c
                    counts[c] += 1
                    taken += 1
                    if c == best or taken == m_cap:
                        break
    denom = math.factorial(n - 1)
    if exact:
        values = np.array([float(Fraction(c, denom)) for c in counts[1:]])
    else:
        values = np.array(counts[1:], dtype=float) / denom
    return CurveSpec(n=n, m_cap=m_cap, values=values, name="oracle")


CURVE_FUNCS = {
    "recursion": lambda n, m: CurveSpec(n, m, recursion_table(n, m).expected_indegree,
                                        name="recursion"),
    "exact": exact_expected_indegree,
    "merit-approx": merit_approx_curve,
    "matthew-approx": matthew_approx_curve,
    "oracle": brute_force_oracle,
}
