"""Finite abelian groups presented as products of cyclic groups Z_m1 x ... x Z_mt.

Elements are addressed by a mixed-radix index with the first modulus least
significant, so Z2xZ3 index 5 is the element (1, 2).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np


class SpecMismatchError(ValueError):
    """Raised when combining elements of different groups."""


@dataclass(frozen=True)
class GroupSpec:
    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        moduli = tuple(int(m) for m in self.moduli)
        if not moduli:
            raise ValueError("a group needs at least one cyclic factor")
        if any(m < 2 for m in moduli):
            raise ValueError(f"every modulus must be >= 2, got {moduli}")
        object.__setattr__(self, "moduli", moduli)

    @classmethod
    def cyclic(cls, m: int) -> GroupSpec:
        return cls((m,))

    @classmethod
    def parse(cls, text: str) -> GroupSpec:
        """Parse ``"Z2"``, ``"Z3"``, ``"Z2xZ2"``."""
        parts = text.strip().split("x")
        moduli = []
        for part in parts:
            m = re.fullmatch(r"Z(\d+)", part.strip())
            if m is None:
                raise ValueError(f"bad group name {text!r}")
            moduli.append(int(m.group(1)))
        return cls(tuple(moduli))

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    def __str__(self) -> str:
        return "x".join(f"Z{m}" for m in self.moduli)

    @property
    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * len(self.moduli))

    def element(self, *residues: int) -> GroupElement:
        if len(residues) == 1 and not isinstance(residues[0], int):
            residues = tuple(residues[0])
        if len(residues) != len(self.moduli):
            raise ValueError(f"{self} needs {len(self.moduli)} residues, got {len(residues)}")
        return GroupElement(self, tuple(r % m for r, m in zip(residues, self.moduli)))

    def index_element(self, i: int) -> GroupElement:
        if not 0 <= i < self.order:
            raise IndexError(f"index {i} out of range for {self} of order {self.order}")
        residues = []
        for m in self.moduli:
            i, r = divmod(i, m)
            residues.append(r)
        return GroupElement(self, tuple(residues))

    def element_index(self, a: GroupElement) -> int:
        self._check(a)
        i = 0
        for r, m in zip(reversed(a.residues), reversed(self.moduli)):
            i = i * m + r
        return i

    def elements(self) -> Iterator[GroupElement]:
        for i in range(self.order):
            yield self.index_element(i)

    def _check(self, a: GroupElement) -> None:
        if a.group != self:
            raise SpecMismatchError(f"element of {a.group} used with {self}")

    # Index-level tables for vectorised sweeps; entries are canonical indices.

    @cached_property
    def add_table(self) -> np.ndarray:
        n = self.order
        table = np.empty((n, n), dtype=np.int64)
        elems = list(self.elements())
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                table[i, j] = (a + b).index
        table.flags.writeable = False
        return table

    @cached_property
    def neg_table(self) -> np.ndarray:
        table = np.array([(-a).index for a in self.elements()], dtype=np.int64)
        table.flags.writeable = False
        return table

    @cached_property
    def sub_table(self) -> np.ndarray:
        """``sub_table[a, b]`` is the index of ``a - b``."""
        table = self.add_table[:, self.neg_table]
        table.flags.writeable = False
        return table


@dataclass(frozen=True)
class GroupElement:
    group: GroupSpec
    residues: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.residues) != len(self.group.moduli) or any(
            not 0 <= r < m for r, m in zip(self.residues, self.group.moduli)
        ):
            raise ValueError(f"residues {self.residues} not reduced for {self.group}")

    def __add__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.group != self.group:
            raise SpecMismatchError(f"cannot add elements of {self.group} and {other.group}")
        return GroupElement(
            self.group,
            tuple((a + b) % m for a, b, m in zip(self.residues, other.residues, self.group.moduli)),
        )

    def __neg__(self) -> GroupElement:
        return GroupElement(
            self.group, tuple((-a) % m for a, m in zip(self.residues, self.group.moduli))
        )

    def __sub__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self + (-other)

    @property
    def index(self) -> int:
        return self.group.element_index(self)

    def is_zero(self) -> bool:
        return not any(self.residues)

    def __repr__(self) -> str:
        if len(self.residues) == 1:
            return f"{self.residues[0]}"
        return "(" + ",".join(map(str, self.residues)) + ")"


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def neg(a: GroupElement) -> GroupElement:
    return -a


def element_index(a: GroupElement) -> int:
    return a.group.element_index(a)


def index_element(group: GroupSpec, i: int) -> GroupElement:
    return group.index_element(i)


def product(moduli: Sequence[int]) -> GroupSpec:
    return GroupSpec(tuple(moduli))
