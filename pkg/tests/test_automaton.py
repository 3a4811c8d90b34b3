import json

import numpy as np
import pytest

from grs.automaton import (
    build_dfao,
    build_morphism,
    export_dot,
    export_json,
    incidence_matrix,
    morphism_prefix,
    primitivity_check,
    run_dfao,
    run_dfao_index,
)
from grs.groups import GroupSpec
from grs.sequence import prefix
from grs.weights import CATALOG_NAMES, catalog_matrix, validate_difference_condition

RANK2_D1 = [n for n in CATALOG_NAMES if catalog_matrix(n).rank == 2 and catalog_matrix(n).dim == 1]

# smallest e with M^e > 0, from an initial run of the matrix powering
PRIMITIVITY_EXPONENTS = {
    "thue_morse": 2,
    "rudin_shapiro": 3,
    "queffelec_p3": 3,
    "distinct_digits_k3": 4,
    "z3_k6": 3,
}


def labelled_edges(a):
    out = set()
    for src, digit, dst in a.edges():
        g, i = a.state(src)
        h, j = a.state(dst)
        out.add(((g.index, i), digit, (h.index, j)))
    return out


def test_rudin_shapiro_diagram():
    a = build_dfao(catalog_matrix("rudin_shapiro"))
    drawn = {
        ((0, 0), 0, (0, 0)),
        ((1, 0), 0, (1, 0)),
        ((0, 0), 1, (0, 1)),
        ((0, 1), 1, (1, 1)),
        ((1, 1), 0, (1, 0)),
        ((1, 0), 1, (1, 1)),
        ((1, 1), 1, (0, 1)),
        ((0, 1), 0, (0, 0)),
    }
    assert labelled_edges(a) == drawn
    assert [int(a.output[q]) for q in range(4)] == [0, 0, 1, 1]


def test_thue_morse_matches_two_state_machine():
    a = build_dfao(catalog_matrix("thue_morse"))
    # q0 --1--> q1 --1--> q0, 0 loops, outputs 0 and 1
    two_state = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0}
    for n in range(2**10):
        q = 0
        for bit in bin(n)[2:]:
            q = two_state[(q, int(bit))]
        assert run_dfao_index(a, n) == q


@pytest.mark.parametrize("name", RANK2_D1)
def test_realisations_agree(name):
    w = catalog_matrix(name)
    N = 100_000
    u = prefix(w, N)
    a = build_dfao(w)
    m = build_morphism(w)
    letters = morphism_prefix(m, N)
    assert np.array_equal(m.output[letters], u)
    # the DFAO reads digits one by one; spot-check a stride plus every n < 5000
    for n in list(range(5000)) + list(range(5000, N, 37)):
        assert run_dfao_index(a, n) == u[n]


@pytest.mark.parametrize("name", RANK2_D1)
def test_degrees(name):
    w = catalog_matrix(name)
    a = build_dfao(w)
    assert a.n_states == w.group.order * w.k
    assert a.transition.shape == (a.n_states, w.k)
    assert np.all(a.in_degrees() == w.k)


def test_rudin_shapiro_morphism():
    m = build_morphism(catalog_matrix("rudin_shapiro"))
    a = build_dfao(catalog_matrix("rudin_shapiro"))
    # the images hold with q0=(0,0), q1=(0,1), q2=(1,1), q3=(1,0)
    q = {name: a.state_number(GroupSpec.cyclic(2).element(g), i) for name, (g, i) in
         {"q0": (0, 0), "q1": (0, 1), "q2": (1, 1), "q3": (1, 0)}.items()}
    images = {
        "q0": ("q0", "q1"),
        "q1": ("q0", "q2"),
        "q2": ("q3", "q1"),
        "q3": ("q3", "q2"),
    }
    for s, (x, y) in images.items():
        assert m.images[q[s]].tolist() == [q[x], q[y]]
    assert {q["q0"], q["q1"]} == {s for s in q.values() if m.output[s] == 0}
    assert morphism_prefix(m, 1).tolist() == [0]
    assert m.output[morphism_prefix(m, 16)].tolist() == prefix(catalog_matrix("rudin_shapiro"), 16).tolist()
    assert morphism_prefix(m, 0).size == 0


def test_run_dfao_zero():
    for name in RANK2_D1:
        assert run_dfao(build_dfao(catalog_matrix(name)), 0).is_zero()


@pytest.mark.parametrize("name", RANK2_D1)
def test_primitivity(name):
    w = catalog_matrix(name)
    res = primitivity_check(w)
    assert res.exponent == PRIMITIVITY_EXPONENTS[name]
    if validate_difference_condition(w):
        assert res.primitive and res.exponent <= 2 * w.group.order + 3
    M = incidence_matrix(w)
    P = np.linalg.matrix_power(M, res.exponent)
    assert (P > 0).all()
    assert not (np.linalg.matrix_power(M, res.exponent - 1) > 0).all()


def test_wrong_rank():
    with pytest.raises(ValueError):
        build_dfao(catalog_matrix("fig1_a"))
    with pytest.raises(ValueError):
        build_dfao(catalog_matrix("rank3_not_constant"))


def test_export_dot():
    a = build_dfao(catalog_matrix("rudin_shapiro"))
    text = export_dot(a)
    assert text == export_dot(build_dfao(catalog_matrix("rudin_shapiro")))
    assert text.count("[label=") == 4 + 8
    assert '"(1,1)|1"' in text
    for name in RANK2_D1:
        b = build_dfao(catalog_matrix(name))
        assert export_dot(b).count(" [label=\"(") == b.n_states


def test_export_json():
    a = build_dfao(catalog_matrix("queffelec_p3"))
    doc = json.loads(export_json(a))
    assert doc["base"] == 3 and doc["group"] == "Z3"
    assert len(doc["states"]) == 9
    assert doc["transitions"] == a.transition.tolist()
