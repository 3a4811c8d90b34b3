"""Evaluation of block-additive sequences.

``evaluate`` sums the window weights over the digits of n directly. Bulk
evaluation (``prefix``, ``segment``, ``box``, ``grid``) uses the recurrence

    u[n] = f(lowest L digit columns of n) + u[n // k]

which holds because dropping the lowest digit column removes exactly the
first window. Each level of the recursion works on a box ``k`` times smaller,
so the total cost is linear in the number of values.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from grs.groups import GroupElement
from grs.radix import to_digits
from grs.weights import WeightFunction

MAX_N_ENV = "GRS_MAX_N"
DEFAULT_MAX_N = 10**8


class ResourceGuardError(ValueError):
    """Requested sweep is larger than the configured ceiling."""


def max_n() -> int:
    value = os.environ.get(MAX_N_ENV)
    return int(value) if value else DEFAULT_MAX_N


def check_guard(count: int, what: str = "N") -> None:
    ceiling = max_n()
    if count > ceiling:
        raise ResourceGuardError(f"{what} = {count} exceeds the ceiling {ceiling} (set {MAX_N_ENV} to raise it)")


@dataclass(frozen=True)
class SequenceSpec:
    weight: WeightFunction

    @property
    def k(self) -> int:
        return self.weight.k

    @property
    def dim(self) -> int:
        return self.weight.dim

    @property
    def group(self):
        return self.weight.group


def _as_spec(s) -> SequenceSpec:
    return s if isinstance(s, SequenceSpec) else SequenceSpec(s)


def evaluate_index(s, n) -> int:
    """Canonical index of u_n, computed from the digits of n."""
    w = _as_spec(s).weight
    k, L, K = w.k, w.rank, w.alphabet_size
    if w.dim == 1:
        if isinstance(n, (tuple, list)):
            (n,) = n
        cols = list(to_digits(int(n), k).digits)
    else:
        if len(n) != w.dim:
            raise ValueError(f"expected a {w.dim}-vector, got {n!r}")
        reps = [to_digits(int(a), k).digits for a in n]
        width = max((len(x) for x in reps), default=0)
        cols = [
            sum((x[i] if i < len(x) else 0) * k**t for t, x in enumerate(reps)) for i in range(width)
        ]
    # windows starting at 0..top; later windows are all zero and weigh 0
    padded = cols + [0] * (L - 1)
    add = w.group.add_table
    total = 0
    for i in range(len(cols)):
        flat = 0
        for c in padded[i : i + L]:
            flat = flat * K + c
        total = int(add[total, w.table[flat]])
    return total


def evaluate(s, n) -> GroupElement:
    """u_n for an integer n (d = 1) or a d-vector n."""
    spec = _as_spec(s)
    return spec.group.index_element(evaluate_index(spec, n))


def box(s, lo: Sequence[int], hi: Sequence[int]) -> np.ndarray:
    """Indices of u_n for ``lo <= n < hi`` componentwise, shape ``hi - lo``."""
    w = _as_spec(s).weight
    lo = tuple(int(a) for a in lo)
    hi = tuple(int(b) for b in hi)
    if len(lo) != w.dim or len(hi) != w.dim:
        raise ValueError(f"box corners must be {w.dim}-vectors")
    if any(a < 0 or b < a for a, b in zip(lo, hi)):
        raise ValueError(f"bad box [{lo}, {hi})")
    check_guard(int(np.prod([b - a for a, b in zip(lo, hi)], dtype=object)), "box size")
    return _box(w, w.window_lookup(), lo, hi)


def _box(w: WeightFunction, lookup: np.ndarray, lo: tuple[int, ...], hi: tuple[int, ...]) -> np.ndarray:
    shape = tuple(b - a for a, b in zip(lo, hi))
    if all(b <= 1 for b in hi) or 0 in shape:
        return np.zeros(shape, dtype=np.int64)
    k, block = w.k, w.k**w.rank
    coarse = _box(w, lookup, tuple(a // k for a in lo), tuple((b - 1) // k + 1 for b in hi))
    axes = [np.arange(a, b, dtype=np.int64) for a, b in zip(lo, hi)]
    key = np.zeros(shape, dtype=np.int64)
    parent = []
    for t, ax in enumerate(axes):
        view = [1] * len(shape)
        view[t] = -1
        key = key + ((ax % block) * block**t).reshape(view)
        parent.append(ax // k - lo[t] // k)
    upper = coarse[np.ix_(*parent)]
    return w.group.add_table[lookup[key], upper]


def segment(s, start: int, stop: int) -> np.ndarray:
    """Indices of u_n for start <= n < stop (d = 1)."""
    return box(s, (start,), (stop,))


def prefix(s, N: int) -> np.ndarray:
    """Indices of u_0 .. u_{N-1} (d = 1) as an int64 array."""
    if N < 0:
        raise ValueError("N must be >= 0")
    return segment(s, 0, N)


def grid(s, N: Sequence[int]) -> np.ndarray:
    """Array ``a`` with ``a[n_1, ..., n_d]`` the index of u_(n_1..n_d)."""
    return box(s, (0,) * len(N), tuple(N))


def prefix_elements(s, N: int) -> list[GroupElement]:
    g = _as_spec(s).group
    return [g.index_element(int(i)) for i in prefix(s, N)]
