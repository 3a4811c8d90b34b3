"""Weight functions of block-additive sequences and the difference condition.

A weight function of base ``k``, rank ``L`` and dimension ``d`` assigns a
group element to every window of ``L`` digit columns, each column being a
vector in ``{0..k-1}^d``. A column is addressed by its mixed-radix index
with the first coordinate least significant, and the flat table is indexed
lexicographically by the window with the leftmost slot most significant.
For ``L = 2`` and ``d = 1`` the table is just the ``k x k`` matrix ``f(i, j)``
read row by row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterator, Sequence

import numpy as np

from grs.groups import GroupElement, GroupSpec


@dataclass(frozen=True, eq=False)
class WeightFunction:
    k: int
    group: GroupSpec
    table: np.ndarray  # canonical element indices, length (k**dim)**rank
    rank: int = 2
    dim: int = 1
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"base must be >= 2, got {self.k}")
        if self.rank < 1 or self.dim < 1:
            raise ValueError("rank and dimension must be >= 1")
        table = np.asarray(self.table, dtype=np.int64).ravel().copy()
        if table.size != self.size:
            raise ValueError(f"table must have {self.size} entries, got {table.size}")
        if table.size and (table.min() < 0 or table.max() >= self.group.order):
            raise ValueError(f"table entries must be indices in [0, {self.group.order})")
        if table[0] != 0:
            raise ValueError("the all-zero window must have weight 0")
        table.flags.writeable = False
        object.__setattr__(self, "table", table)

    @classmethod
    def from_indices(cls, k: int, group: GroupSpec, table, rank: int = 2, dim: int = 1, name: str = "") -> WeightFunction:
        return cls(k=k, group=group, table=np.asarray(table), rank=rank, dim=dim, name=name)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]], group: GroupSpec | int, name: str = "") -> WeightFunction:
        """Rank-2 table from a square matrix of element indices (row = first argument)."""
        if isinstance(group, int):
            group = GroupSpec.cyclic(group)
        arr = np.asarray(rows, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("matrix must be square")
        return cls(k=arr.shape[0], group=group, table=arr.ravel(), rank=2, dim=1, name=name)

    @classmethod
    def from_function(cls, k: int, group: GroupSpec, fn, rank: int = 2, dim: int = 1, name: str = "") -> WeightFunction:
        """Tabulate ``fn(*columns)``; columns are ints for d=1 and d-tuples otherwise.

        ``fn`` may return a GroupElement or a canonical index.
        """
        cols = list(iter_columns(k, dim))
        values = []
        for window in product(cols, repeat=rank):
            v = fn(*window)
            values.append(v.index if isinstance(v, GroupElement) else int(v))
        return cls(k=k, group=group, table=np.array(values), rank=rank, dim=dim, name=name)

    @property
    def alphabet_size(self) -> int:
        """Number of digit columns, ``k**d``."""
        return self.k**self.dim

    @property
    def size(self) -> int:
        return self.alphabet_size**self.rank

    def column_index(self, col) -> int:
        if self.dim == 1:
            c = int(col[0]) if isinstance(col, (tuple, list)) else int(col)
            if not 0 <= c < self.k:
                raise ValueError(f"digit {c} out of range for base {self.k}")
            return c
        if len(col) != self.dim or any(not 0 <= x < self.k for x in col):
            raise ValueError(f"bad digit column {col!r}")
        return sum(int(x) * self.k**t for t, x in enumerate(col))

    def window_index(self, *cols) -> int:
        if len(cols) != self.rank:
            raise ValueError(f"need {self.rank} columns, got {len(cols)}")
        i = 0
        for c in cols:
            i = i * self.alphabet_size + self.column_index(c)
        return i

    def __call__(self, *cols) -> GroupElement:
        return self.group.index_element(int(self.table[self.window_index(*cols)]))

    def matrix(self) -> np.ndarray:
        """The table as an array of shape (k^d,) * rank."""
        return self.table.reshape((self.alphabet_size,) * self.rank)

    def window_lookup(self) -> np.ndarray:
        """Weight indexed by the LSB-first packing of a window of residues.

        For a d-vector n, the key is ``sum_t (n_t mod k^L) * (k^L)^t``; the
        digit of ``n_t`` at position s is the t-th coordinate of window slot s.
        """
        k, L, d = self.k, self.rank, self.dim
        block = k**L
        keys = np.arange(block**d)
        residues = [(keys // block**t) % block for t in range(d)]
        flat = np.zeros_like(keys)
        for s in range(L):
            col = np.zeros_like(keys)
            for t in range(d):
                col += ((residues[t] // k**s) % k) * k**t
            flat = flat * self.alphabet_size + col
        return self.table[flat]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightFunction):
            return NotImplemented
        return (
            self.k == other.k
            and self.rank == other.rank
            and self.dim == other.dim
            and self.group == other.group
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        return hash((self.k, self.rank, self.dim, self.group, self.table.tobytes()))

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<WeightFunction{label} k={self.k} L={self.rank} d={self.dim} G={self.group}>"


def iter_columns(k: int, dim: int) -> Iterator:
    """Digit columns in index order (first coordinate least significant)."""
    if dim == 1:
        yield from range(k)
        return
    for i in range(k**dim):
        yield tuple((i // k**t) % k for t in range(dim))


# --- difference condition ------------------------------------------------


@dataclass(frozen=True)
class Violation:
    i: int
    j: int
    context: tuple[int, ...]
    g: int
    observed: int
    expected: float
    reason: str = "count"


@dataclass(frozen=True)
class ValidationReport:
    is_difference: bool
    first_violation: Violation | None = None

    def __bool__(self) -> bool:
        return self.is_difference


def validate_difference_condition(w: WeightFunction) -> ValidationReport:
    """Check that for distinct first arguments i != j (and each fixed middle
    context when the rank exceeds 2) the differences ``f(i, .., h) - f(j, .., h)``
    over the last slot h hit every group element equally often.

    Digit columns (k^d of them) play the role of digits, so the expected
    count is ``k^d / |G|``.
    """
    K, order = w.alphabet_size, w.group.order
    if w.rank < 2:
        return ValidationReport(False, Violation(0, 0, (), 0, 0, 0.0, reason="rank-1 weights have no difference condition"))
    if K % order:
        return ValidationReport(False, Violation(0, 1, (), 0, 0, K / order, reason="divisibility"))
    expected = K // order
    t = w.table.reshape(K, K ** (w.rank - 2), K)
    found = _scan(t, w.group, order, expected)
    if found is None:
        return ValidationReport(True)
    i, j, ctx, g, observed = found
    context = tuple(_digits_msb(ctx, K, w.rank - 2))
    return ValidationReport(False, Violation(i, j, context, g, observed, float(expected)))


def _scan_numpy(t: np.ndarray, group: GroupSpec, order: int, expected: int):
    sub = group.sub_table
    K = t.shape[0]
    for i in range(K - 1):
        # every j > i at once; (j, i) is the negation of (i, j) and has the same balance
        flat = sub[t[i][None, :, :], t[i + 1 :]].reshape(-1, K)
        offsets = np.arange(flat.shape[0])[:, None] * order
        counts = np.bincount((flat + offsets).ravel(), minlength=flat.shape[0] * order).reshape(-1, order)
        bad = np.argwhere(counts != expected)
        if bad.size:
            row, g = (int(x) for x in bad[0])
            j_off, ctx = divmod(row, t.shape[1])
            return i, i + 1 + j_off, ctx, g, int(counts[row, g])
    return None


try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

if njit is not None:

    # A row pair is balanced iff no count exceeds `expected`, since its
    # K = expected * order differences must all land somewhere. Each cell
    # packs (pair stamp, count) so nothing is reset between pairs.

    @njit(cache=True)
    def _scan_cyclic(t, order, expected):
        K, C = t.shape[0], t.shape[1]
        cell = np.zeros(order, dtype=np.int64)
        base = 0
        for i in range(K - 1):
            for j in range(i + 1, K):
                for c in range(C):
                    base += K + 1
                    limit = base + expected
                    for h in range(K):
                        g = t[i, c, h] - t[j, c, h]
                        if g < 0:
                            g += order
                        v = cell[g]
                        if v < base:
                            v = base
                        v += 1
                        cell[g] = v
                        if v > limit:
                            return i, j, c
        return -1, -1, -1

    @njit(cache=True)
    def _scan_table(t, sub, order, expected):
        K, C = t.shape[0], t.shape[1]
        cell = np.zeros(order, dtype=np.int64)
        base = 0
        for i in range(K - 1):
            for j in range(i + 1, K):
                for c in range(C):
                    base += K + 1
                    limit = base + expected
                    for h in range(K):
                        g = sub[t[i, c, h], t[j, c, h]]
                        v = cell[g]
                        if v < base:
                            v = base
                        v += 1
                        cell[g] = v
                        if v > limit:
                            return i, j, c
        return -1, -1, -1

    @njit(cache=True)
    def _scan_xor(t, order, expected):
        # in (Z_2)^m the canonical index of a - b is index(a) XOR index(b)
        K, C = t.shape[0], t.shape[1]
        cell = np.zeros(order, dtype=np.int64)
        base = 0
        for i in range(K - 1):
            for j in range(i + 1, K):
                for c in range(C):
                    base += K + 1
                    limit = base + expected
                    for h in range(K):
                        g = t[i, c, h] ^ t[j, c, h]
                        v = cell[g]
                        if v < base:
                            v = base
                        v += 1
                        cell[g] = v
                        if v > limit:
                            return i, j, c
        return -1, -1, -1

    def _scan(t, group, order, expected):
        t = np.ascontiguousarray(t, dtype=np.int64)
        if len(group.moduli) == 1:
            i, j, c = _scan_cyclic(t, order, expected)
        elif all(m == 2 for m in group.moduli):
            i, j, c = _scan_xor(t, order, expected)
        else:
            i, j, c = _scan_table(t, np.ascontiguousarray(group.sub_table, dtype=np.int64), order, expected)
        if i < 0:
            return None
        counts = np.bincount(group.sub_table[t[i, c], t[j, c]], minlength=order)
        g = int(np.flatnonzero(counts != expected)[0])
        return int(i), int(j), int(c), g, int(counts[g])

else:  # pragma: no cover
    _scan = _scan_numpy


def _digits_msb(x: int, base: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        x, r = divmod(x, base)
        out.append(r)
    return out[::-1]


def is_difference_matrix(w: WeightFunction) -> bool:
    return validate_difference_condition(w).is_difference


def pi(w: WeightFunction) -> int:
    """Per-element hit count k^d / |G| of a difference matrix."""
    q, r = divmod(w.alphabet_size, w.group.order)
    if r:
        raise ValueError(f"|G| = {w.group.order} does not divide {w.alphabet_size}")
    return q


# --- constructions and catalog ---------------------------------------------


def multiplicative_matrix(p: int) -> WeightFunction:
    """``f(i, j) = i*j mod p`` over Z_p."""
    from grs.field import is_prime

    if not is_prime(p) or p > 97:
        raise ValueError(f"multiplicative matrix needs a prime p <= 97, got {p}")
    i = np.arange(p)
    return WeightFunction.from_matrix(np.outer(i, i) % p, GroupSpec.cyclic(p), name=f"queffelec_p{p}")


_Z3_K6 = [
    [0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 2, 2],
    [0, 1, 0, 2, 1, 2],
    [0, 1, 2, 0, 2, 1],
    [0, 2, 1, 2, 0, 1],
    [0, 2, 2, 1, 1, 0],
]

# Planar example tables with rows/columns in lexicographic order of (x^1, x^2), i.e.
# the FIRST coordinate most significant; converted to column indices below.
_FIG1 = {
    "fig1_a": [[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]],
    "fig1_b": [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 1], [0, 1, 1, 0]],
    "fig1_c": [[0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 0, 1], [0, 1, 1, 0]],
    "fig1_d": [[0, 0, 1, 1], [0, 1, 0, 1], [0, 0, 0, 0], [0, 1, 1, 0]],
}


def _lex_to_column_order(rows: Sequence[Sequence[int]], k: int, dim: int) -> np.ndarray:
    K = k**dim
    # lexicographic position of the column with first-coordinate-least-significant index c
    perm = []
    for c in range(K):
        coords = [(c // k**t) % k for t in range(dim)]
        lex = 0
        for x in coords:
            lex = lex * k + x
        perm.append(lex)
    arr = np.asarray(rows, dtype=np.int64)
    return arr[np.ix_(perm, perm)]


CATALOG_NAMES = (
    "thue_morse",
    "rudin_shapiro",
    "queffelec_p3",
    "distinct_digits_k3",
    "z3_k6",
    "rank3_not_constant",
    "fig1_a",
    "fig1_b",
    "fig1_c",
    "fig1_d",
)


def catalog_matrix(name: str) -> WeightFunction:
    z2, z3 = GroupSpec.cyclic(2), GroupSpec.cyclic(3)
    if name == "thue_morse":
        return WeightFunction.from_matrix([[0, 0], [1, 1]], z2, name=name)
    if name == "rudin_shapiro":
        return WeightFunction.from_matrix([[0, 0], [0, 1]], z2, name=name)
    if name == "queffelec_p3":
        return WeightFunction.from_matrix([[0, 0, 0], [0, 1, 2], [0, 2, 1]], z3, name=name)
    if name == "distinct_digits_k3":
        return WeightFunction.from_matrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]], z3, name=name)
    if name == "z3_k6":
        return WeightFunction.from_matrix(_Z3_K6, z3, name=name)
    if name == "rank3_not_constant":
        return WeightFunction.from_function(
            2, z2, lambda x, y, z: 0 if x == y == z else 1, rank=3, name=name
        )
    if name in _FIG1:
        table = _lex_to_column_order(_FIG1[name], 2, 2)
        return WeightFunction(k=2, group=z2, table=table.ravel(), rank=2, dim=2, name=name)
    raise KeyError(f"unknown catalog matrix {name!r}; known: {', '.join(CATALOG_NAMES)}")


# --- exhaustive search -------------------------------------------------------

SEARCH_SPACE_LIMIT = 10**7


def _balanced(a: tuple[int, ...], b: tuple[int, ...], order: int, expected: int, sub: list[list[int]]) -> bool:
    counts = [0] * order
    for x, y in zip(a, b):
        counts[sub[x][y]] += 1
    return all(c == expected for c in counts)


def search_difference_matrices(k: int, group: GroupSpec, limit: int = 1000, normalized: bool = True) -> list[WeightFunction]:
    """All rank-2, d=1 difference matrices of size k over ``group``, up to ``limit``.

    With ``normalized`` (the default) row 0 and column 0 are fixed to zero;
    otherwise only ``f(0, 0) = 0`` is fixed. Rows are filled by backtracking,
    each new row checked against all earlier ones, so the enumeration is
    exhaustive over the restricted space.
    """
    order = group.order
    free = (k - 1) ** 2 if normalized else k * k - 1
    if order**free > SEARCH_SPACE_LIMIT:
        raise ValueError(f"search space {order}^{free} exceeds {SEARCH_SPACE_LIMIT}")
    if k % order:
        return []
    expected = k // order
    sub = group.sub_table.tolist()

    first_rows = [(0,) * k] if normalized else [(0,) + t for t in product(range(order), repeat=k - 1)]
    other_rows = (
        [(0,) + t for t in product(range(order), repeat=k - 1)]
        if normalized
        else list(product(range(order), repeat=k))
    )
    found: list[WeightFunction] = []

    def extend(rows: list[tuple[int, ...]]) -> bool:
        if len(rows) == k:
            found.append(WeightFunction.from_matrix(rows, group))
            return len(found) >= limit
        for cand in other_rows:
            if all(_balanced(r, cand, order, expected, sub) for r in rows):
                rows.append(cand)
                stop = extend(rows)
                rows.pop()
                if stop:
                    return True
        return False

    for row0 in first_rows:
        if extend([row0]):
            break
    return found


def relabel(w: WeightFunction, perm: Sequence[int]) -> WeightFunction:
    """Apply the same digit permutation to every slot of a rank-2, d=1 table."""
    if w.rank != 2 or w.dim != 1:
        raise ValueError("relabel is defined for rank-2, d=1 weights")
    m = w.matrix()
    inv = np.argsort(perm)
    return WeightFunction.from_matrix(m[np.ix_(inv, inv)], w.group)


def zero_fixing_permutations(k: int) -> Iterator[tuple[int, ...]]:
    for rest in permutations(range(1, k)):
        yield (0,) + rest
