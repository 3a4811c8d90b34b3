"""Base-k digits, digit sums, carry lengths and fibres, in one and d dimensions.

Digits are stored least significant first, so ``to_digits(6, 2).digits`` is
``(0, 1, 1)``. Zero has the empty representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence


def _check_base(k: int) -> None:
    if k < 2:
        raise ValueError(f"base must be >= 2, got {k}")


@dataclass(frozen=True)
class Digits:
    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_base(self.base)
        if any(not 0 <= x < self.base for x in self.digits):
            raise ValueError(f"digit out of range for base {self.base}: {self.digits}")
        if self.digits and self.digits[-1] == 0:
            raise ValueError("trailing (most significant) zero digits are not stored")

    def __len__(self) -> int:
        return len(self.digits)

    def __getitem__(self, i: int) -> int:
        # padded with zeros beyond the most significant digit
        return self.digits[i] if 0 <= i < len(self.digits) else 0

    @property
    def top(self) -> int:
        """Index of the most significant nonzero digit; -1 for zero."""
        return len(self.digits) - 1


def to_digits(n: int, k: int) -> Digits:
    _check_base(k)
    if n < 0:
        raise ValueError("negative integers have no base-k representation here")
    out = []
    while n:
        n, x = divmod(n, k)
        out.append(x)
    return Digits(k, tuple(out))


def from_digits(d: Digits) -> int:
    n = 0
    for x in reversed(d.digits):
        n = n * d.base + x
    return n


def sum_of_digits(n: int, k: int) -> int:
    return sum(to_digits(n, k).digits)


def carry_length(n: int, r: int, k: int) -> int:
    """Highest digit position at which ``n`` and ``n + r`` differ."""
    if r < 1:
        raise ValueError("shift r must be positive")
    x = to_digits(n, k)
    y = to_digits(n + r, k)
    for i in range(max(len(x), len(y)) - 1, -1, -1):
        if x[i] != y[i]:
            return i
    raise AssertionError("unreachable: n + r != n")


@dataclass(frozen=True)
class Fibre:
    anchor: int
    shift: int
    base: int
    carry_length: int
    members: tuple[int, ...]

    def __contains__(self, m: int) -> bool:
        return m in self.members


def fibre(n: int, r: int, k: int) -> Fibre:
    c = carry_length(n, r, k)
    place = k ** (c + 1)
    x = (n // place) % k
    members = tuple(n + (a - x) * place for a in range(k))
    return Fibre(n, r, k, c, members)


# d-dimensional variants: n and r are d-vectors, digit "columns" are d-tuples.


def column(xs: Sequence[Digits], i: int) -> tuple[int, ...]:
    return tuple(x[i] for x in xs)


def carry_length_ddim(n: Sequence[int], r: Sequence[int], k: int) -> int:
    if len(n) != len(r):
        raise ValueError("n and r must have the same dimension")
    if any(t < 0 for t in r) or not any(r):
        raise ValueError("shift r must be a nonzero vector of nonnegative integers")
    xs = [to_digits(a, k) for a in n]
    ys = [to_digits(a + b, k) for a, b in zip(n, r)]
    width = max(len(x) for x in xs + ys)
    for i in range(width - 1, -1, -1):
        if column(xs, i) != column(ys, i):
            return i
    raise AssertionError("unreachable: r is nonzero")


@dataclass(frozen=True)
class FibreDdim:
    anchor: tuple[int, ...]
    shift: tuple[int, ...]
    base: int
    carry_length: int
    members: tuple[tuple[int, ...], ...]

    def __contains__(self, m: Sequence[int]) -> bool:
        return tuple(m) in self.members


def fibre_ddim(n: Sequence[int], r: Sequence[int], k: int) -> FibreDdim:
    """Vary the whole digit column ``c_n + 1`` over all ``k**d`` values."""
    c = carry_length_ddim(n, r, k)
    place = k ** (c + 1)
    members = []
    # itertools.product varies the last coordinate fastest; keep the first
    # coordinate fastest to match the column ordering used elsewhere
    for col in product(range(k), repeat=len(n)):
        col = col[::-1]
        members.append(tuple(a + (b - (a // place) % k) * place for a, b in zip(n, col)))
    return FibreDdim(tuple(n), tuple(r), k, c, tuple(members))
