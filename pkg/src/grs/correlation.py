"""Exact counting of order-2 (and order-l) correlations of block-additive
sequences, fibre checks, and the explicit bounds for difference matrices.

All sweeps count n in [0, N) and read u_{n+r} past N where needed. Counts are
accumulated chunk by chunk over contiguous ranges and merged by addition, so
any partition of [0, N) gives identical results.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from grs.groups import GroupElement, GroupSpec
from grs.radix import fibre, fibre_ddim, sum_of_digits
from grs.sequence import SequenceSpec, box, check_guard, evaluate_index, segment
from grs.weights import WeightFunction, pi as pi_of

CHUNK = 1 << 20


class BoundViolation(AssertionError):
    """A proven inequality failed on a concrete (g, N, r)."""


def _weight(s) -> WeightFunction:
    return s.weight if isinstance(s, SequenceSpec) else s


def _ulp_up(x: float) -> Fraction:
    return Fraction(math.nextafter(x, math.inf))


def _ulp_down(x: float) -> Fraction:
    return Fraction(math.nextafter(x, -math.inf))


def log_k(N: int, k: int) -> float:
    return math.log(N) / math.log(k)


def difference_bound(r: int, k: int, N: int) -> float:
    """r * k * (1 + log_k N) / N."""
    return r * k * (1 + log_k(N, k)) / N


def _sweep(
    N: int,
    reach: int,
    fold: Callable[[np.ndarray, int], np.ndarray],
    values: Callable[[int, int], np.ndarray],
    chunk: int = CHUNK,
    workers: int = 1,
) -> np.ndarray:
    """Sum ``fold(u[a : b + reach], b - a)`` over contiguous chunks [a, b) of [0, N)."""
    check_guard(N + reach)
    bounds = [(a, min(a + chunk, N)) for a in range(0, N, chunk)]

    def run(ab):
        a, b = ab
        return fold(values(a, b + reach), b - a)

    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, bounds))
    else:
        parts = [run(ab) for ab in bounds]
    return sum(parts[1:], parts[0]) if parts else None


def _check_shift(r: int) -> None:
    if r < 1:
        raise ValueError(f"shift must be a positive integer, got {r}")


# --- difference counts ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DiffReport:
    r: int
    N: int
    k: int
    group: GroupSpec
    counts: np.ndarray  # counts[g] = #{n < N : u_{n+r} - u_n = g}

    @property
    def bound(self) -> float:
        return difference_bound(self.r, self.k, self.N)

    def deviation(self, g: int) -> Fraction:
        return abs(Fraction(int(self.counts[g]), self.N) - Fraction(1, self.group.order))

    @property
    def max_deviation(self) -> Fraction:
        return max(self.deviation(g) for g in range(self.group.order))

    @property
    def within_bound(self) -> bool:
        return self.max_deviation <= _ulp_up(self.bound)

    def as_dict(self) -> dict[GroupElement, int]:
        return {self.group.index_element(g): int(c) for g, c in enumerate(self.counts)}


def diff_correlation(s, r: int, N: int, chunk: int = CHUNK, workers: int = 1) -> DiffReport:
    w = _weight(s)
    if w.dim != 1:
        raise ValueError("use ddim_correlation for d >= 2")
    _check_shift(r)
    if N < 1:
        raise ValueError("N must be >= 1")
    order, sub = w.group.order, w.group.sub_table

    def fold(u, m):
        return np.bincount(sub[u[r : r + m], u[:m]], minlength=order)

    counts = _sweep(N, r, fold, lambda a, b: segment(w, a, b), chunk, workers)
    return DiffReport(r, N, w.k, w.group, counts)


# --- pair and order-l counts -------------------------------------------------


@dataclass(frozen=True, eq=False)
class PairReport:
    r: int | tuple[int, ...]
    N: int | tuple[int, ...]
    group: GroupSpec
    counts: np.ndarray  # counts[i, j] = #{n < N : (u_n, u_{n+r}) = (i, j)}

    @property
    def total(self) -> int:
        return int(np.prod(self.N)) if isinstance(self.N, tuple) else self.N

    @property
    def normalized(self) -> np.ndarray:
        return self.counts / self.total

    def C(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.counts[i, j]), self.total)

    def max_deviation(self) -> float:
        return float(np.abs(self.normalized - 1 / self.group.order**2).max())

    def diff_counts(self) -> np.ndarray:
        order = self.group.order
        out = np.zeros(order, dtype=np.int64)
        sub = self.group.sub_table
        for i in range(order):
            for j in range(order):
                out[sub[j, i]] += self.counts[i, j]
        return out


def _tuple_counts(w: WeightFunction, shifts: Sequence[int], N: int, chunk: int, workers: int) -> np.ndarray:
    order = w.group.order
    span = shifts[-1]
    ell = len(shifts)

    def fold(u, m):
        key = np.zeros(m, dtype=np.int64)
        for t in shifts:
            key = key * order + u[t : t + m]
        return np.bincount(key, minlength=order**ell)

    counts = _sweep(N, span, fold, lambda a, b: segment(w, a, b), chunk, workers)
    return counts.reshape((order,) * ell)


def pair_correlation(s, r: int, N: int, chunk: int = CHUNK, workers: int = 1) -> PairReport:
    w = _weight(s)
    if w.dim != 1:
        raise ValueError("use ddim_correlation for d >= 2")
    _check_shift(r)
    if N < 1:
        raise ValueError("N must be >= 1")
    return PairReport(r, N, w.group, _tuple_counts(w, (0, r), N, chunk, workers))


def order_l_correlation(s, shifts: Sequence[int], N: int, chunk: int = CHUNK, workers: int = 1) -> np.ndarray:
    """counts[i_0, .., i_{l-1}] = #{n < N : (u_n, u_{n+r_1}, ..) = (i_0, ..)}.

    ``shifts`` are r_1 < ... < r_{l-1}, all positive.
    """
    w = _weight(s)
    shifts = [int(r) for r in shifts]
    if not shifts or shifts[0] < 1 or any(b <= a for a, b in zip(shifts, shifts[1:])):
        raise ValueError(f"shifts must be positive and strictly increasing, got {shifts}")
    ell = len(shifts) + 1
    if w.group.order**ell > 10**6:
        raise ValueError(f"|G|^{ell} = {w.group.order**ell} exceeds 10^6 cells")
    if N < 1:
        raise ValueError("N must be >= 1")
    return _tuple_counts(w, [0] + shifts, N, chunk, workers)


def letter_frequencies(s, N: int, chunk: int = CHUNK, workers: int = 1) -> np.ndarray:
    w = _weight(s)
    if N < 1:
        raise ValueError("N must be >= 1")
    order = w.group.order
    return _sweep(
        N, 0, lambda u, m: np.bincount(u[:m], minlength=order), lambda a, b: segment(w, a, b), chunk, workers
    )


def shifted_diagonal_sum(p: PairReport, i: int, j: int) -> Fraction:
    """sum over l in G of C_{i-l, j-l}(N)."""
    sub = p.group.sub_table
    total = sum(int(p.counts[sub[i, l], sub[j, l]]) for l in range(p.group.order))
    return Fraction(total, p.total)


def diagonal_bound(w: WeightFunction, r: int, N: int) -> float:
    """1/|G| - pi * r * k * (1 + log_k N) / N."""
    return 1 / w.group.order - pi_of(w) * difference_bound(r, w.k, N)


# --- fibres ---------------------------------------------------------------------


def nabla_index(s, n, r) -> int:
    """Index of u_{n+r} - u_n (scalars or d-vectors)."""
    w = _weight(s)
    if w.dim == 1:
        m = n + r
    else:
        m = tuple(a + b for a, b in zip(n, r))
    return int(w.group.sub_table[evaluate_index(w, m), evaluate_index(w, n)])


def fibre_equidistribution_check(s, n, r) -> np.ndarray:
    """counts[g] = #{m in F_r(n) : u_{m+r} - u_m = g}."""
    w = _weight(s)
    if w.dim == 1:
        members = fibre(int(n), int(r), w.k).members
    else:
        members = fibre_ddim(tuple(n), tuple(r), w.k).members
    counts = np.zeros(w.group.order, dtype=np.int64)
    for m in members:
        counts[nabla_index(w, m, r)] += 1
    return counts


# --- lower bound -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LowerBoundReport:
    r: int
    N: int
    counts: np.ndarray
    sharp: Fraction  # pi N / k - pi r k - pi r sigma_k(N)
    logarithmic: float  # N / |G| - pi r k (1 + log_k N)


def lower_bound_fibres(s, r: int, N: int, chunk: int = CHUNK, workers: int = 1) -> LowerBoundReport:
    """Count differences and check both lower bounds for every g.

    Raises BoundViolation naming (g, N, r) if either fails.
    """
    w = _weight(s)
    if w.rank != 2 or w.dim != 1:
        raise ValueError("lower bounds are stated for rank 2, d = 1")
    p = pi_of(w)
    k = w.k
    report = diff_correlation(w, r, N, chunk, workers)
    sharp = Fraction(p * N, k) - p * r * k - p * r * sum_of_digits(N, k)
    logarithmic = N / w.group.order - p * r * k * (1 + log_k(N, k))
    for g, c in enumerate(report.counts):
        if c < sharp:
            raise BoundViolation(f"g={g} N={N} r={r}: count {c} < {sharp} (digit-sum form)")
        if c < _ulp_down(logarithmic):
            raise BoundViolation(f"g={g} N={N} r={r}: count {c} < {logarithmic} (log form)")
    return LowerBoundReport(r, N, report.counts, sharp, logarithmic)


# --- d dimensions ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DdimReport:
    pairs: PairReport
    diff: np.ndarray  # diff[g] over the box


def ddim_correlation(s, r: Sequence[int], N: Sequence[int]) -> DdimReport:
    """Pair and difference counts over the box 0 <= n < N."""
    w = _weight(s)
    r, N = tuple(int(x) for x in r), tuple(int(x) for x in N)
    if len(r) != w.dim or len(N) != w.dim:
        raise ValueError(f"r and N must be {w.dim}-vectors")
    if any(x < 0 for x in r) or not any(r):
        raise ValueError("r must be a nonzero vector of nonnegative integers")
    if any(x < 1 for x in N):
        raise ValueError("box extents must be >= 1")
    order = w.group.order
    u = box(w, (0,) * w.dim, tuple(a + b for a, b in zip(N, r)))
    base = u[tuple(slice(0, a) for a in N)]
    shifted = u[tuple(slice(b, a + b) for a, b in zip(N, r))]
    pairs = np.bincount((base * order + shifted).ravel(), minlength=order * order).reshape(order, order)
    diff = np.bincount(w.group.sub_table[shifted, base].ravel(), minlength=order)
    return DdimReport(PairReport(r, N, w.group, pairs), diff)
