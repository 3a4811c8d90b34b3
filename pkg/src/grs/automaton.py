"""DFAO and k-uniform morphism realising a rank-2, one-dimensional
block-additive sequence, plus the primitivity test on the incidence matrix.

States are pairs ``(g, i)`` of a group element and the last digit read. State
``(g, i)`` has number ``element_index(g) * k + i``; the start state is 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from grs.groups import GroupElement
from grs.radix import to_digits
from grs.weights import WeightFunction


def _require_rank2_dim1(w: WeightFunction) -> None:
    if w.rank != 2 or w.dim != 1:
        raise ValueError(f"automaton construction needs rank 2 and d = 1, got L={w.rank}, d={w.dim}")


@dataclass(frozen=True, eq=False)
class Dfao:
    weight: WeightFunction
    transition: np.ndarray  # (n_states, k) -> state number
    output: np.ndarray  # (n_states,) -> element index

    @property
    def k(self) -> int:
        return self.weight.k

    @property
    def n_states(self) -> int:
        return self.transition.shape[0]

    start = 0

    def state(self, number: int) -> tuple[GroupElement, int]:
        g, i = divmod(number, self.k)
        return self.weight.group.index_element(g), i

    def state_number(self, g: GroupElement, i: int) -> int:
        return g.index * self.k + i

    def edges(self) -> list[tuple[int, int, int]]:
        """(source, digit, target) triples in source-then-digit order."""
        return [(q, j, int(self.transition[q, j])) for q in range(self.n_states) for j in range(self.k)]

    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.transition.ravel(), minlength=self.n_states)


def build_dfao(w: WeightFunction) -> Dfao:
    """delta((g, i), j) = (g + f(j, i), j), tau(g, i) = g; digits are read MSB first."""
    _require_rank2_dim1(w)
    k, order = w.k, w.group.order
    f = w.matrix()
    add = w.group.add_table
    n_states = order * k
    transition = np.empty((n_states, k), dtype=np.int64)
    for g in range(order):
        for i in range(k):
            for j in range(k):
                transition[g * k + i, j] = add[g, f[j, i]] * k + j
    output = np.repeat(np.arange(order, dtype=np.int64), k)
    transition.flags.writeable = False
    output.flags.writeable = False
    return Dfao(w, transition, output)


def run_dfao_index(a: Dfao, n: int) -> int:
    q = a.start
    for digit in reversed(to_digits(n, a.k).digits):
        q = int(a.transition[q, digit])
    return int(a.output[q])


def run_dfao(a: Dfao, n: int) -> GroupElement:
    return a.weight.group.index_element(run_dfao_index(a, n))


@dataclass(frozen=True, eq=False)
class Morphism:
    """k-uniform substitution on state numbers; ``images[s]`` is phi(s)."""

    images: np.ndarray  # (n_states, k)
    output: np.ndarray
    k: int

    def __call__(self, word):
        return self.images[np.asarray(word, dtype=np.int64)].ravel()


def build_morphism(w: WeightFunction) -> Morphism:
    # phi((g, i)) = s_0 .. s_{k-1} with s_j = (g + f(j, i), j): the DFAO row of (g, i)
    a = build_dfao(w)
    return Morphism(a.transition, a.output, a.k)


def morphism_prefix(m: Morphism, length: int) -> np.ndarray:
    """First ``length`` letters of the fixed point phi^omega(q_0)."""
    if length < 0:
        raise ValueError("length must be >= 0")
    if length == 0:
        return np.zeros(0, dtype=np.int64)
    if m.images[0, 0] != 0:
        raise ValueError("morphism is not prolongable on the start state")
    word = np.zeros(1, dtype=np.int64)
    while word.size < length:
        word = m(word)
    return word[:length]


def incidence_matrix(w: WeightFunction) -> np.ndarray:
    """0/1 matrix with M[s, t] = 1 iff some digit leads from state s to state t."""
    a = build_dfao(w)
    M = np.zeros((a.n_states, a.n_states), dtype=np.int64)
    for q in range(a.n_states):
        M[q, a.transition[q]] = 1
    return M


@dataclass(frozen=True)
class PrimitivityResult:
    primitive: bool
    exponent: int | None  # smallest e with M^e > 0, searched up to the bound
    bound: int

    def __bool__(self) -> bool:
        return self.primitive


def primitivity_check(w: WeightFunction, max_exponent: int | None = None) -> PrimitivityResult:
    """Smallest e <= 2|G| + 3 (or ``max_exponent``) with M^e entrywise positive."""
    M = incidence_matrix(w) > 0
    bound = 2 * w.group.order + 3 if max_exponent is None else max_exponent
    P = M.copy()
    Mi = M.astype(np.int64)
    for e in range(1, bound + 1):
        if P.all():
            return PrimitivityResult(True, e, bound)
        P = (P.astype(np.int64) @ Mi) > 0
    return PrimitivityResult(False, None, bound)


def _state_label(a: Dfao, q: int) -> str:
    g, i = a.state(q)
    res = g.residues[0] if len(g.residues) == 1 else "(" + ",".join(map(str, g.residues)) + ")"
    return f"({res},{i})|{int(a.output[q])}"


def export_dot(a: Dfao, name: str = "dfao") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  start [shape=point];']
    for q in range(a.n_states):
        lines.append(f'  q{q} [label="{_state_label(a, q)}"];')
    lines.append("  start -> q0;")
    for src, digit, dst in a.edges():
        lines.append(f'  q{src} -> q{dst} [label="{digit}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(a: Dfao) -> str:
    states = []
    for q in range(a.n_states):
        g, i = a.state(q)
        states.append({"id": q, "group": g.index, "digit": i, "output": int(a.output[q])})
    doc = {
        "base": a.k,
        "group": str(a.weight.group),
        "start": a.start,
        "states": states,
        "transitions": [[int(t) for t in row] for row in a.transition],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
