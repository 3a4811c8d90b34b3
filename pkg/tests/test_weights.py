import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from grs.groups import GroupSpec
from grs.weights import (
    CATALOG_NAMES,
    WeightFunction,
    _scan_numpy,
    catalog_matrix,
    iter_columns,
    multiplicative_matrix,
    relabel,
    search_difference_matrices,
    validate_difference_condition,
    zero_fixing_permutations,
)


def naive_is_difference(w):
    """Direct reading of the condition with group elements and Counters."""
    cols = list(iter_columns(w.k, w.dim))
    K, order = len(cols), w.group.order
    if K % order:
        return False
    expected = K // order
    for i, j in itertools.permutations(cols, 2):
        for ctx in itertools.product(cols, repeat=w.rank - 2):
            c = Counter(w(i, *ctx, h) - w(j, *ctx, h) for h in cols)
            if any(c[g] != expected for g in w.group.elements()):
                return False
    return True


@st.composite
def weight_functions(draw, max_k=4, ranks=(2, 3), dims=(1, 2)):
    rank = draw(st.sampled_from(ranks))
    dim = draw(st.sampled_from(dims))
    k = draw(st.integers(2, max_k if dim == 1 and rank == 2 else 2))
    moduli = draw(st.sampled_from([(2,), (3,), (2, 2), (4,)]))
    group = GroupSpec(moduli)
    size = (k**dim) ** rank
    table = [0] + draw(st.lists(st.integers(0, group.order - 1), min_size=size - 1, max_size=size - 1))
    return WeightFunction.from_indices(k, group, table, rank=rank, dim=dim)


def test_validator_examples():
    assert not validate_difference_condition(catalog_matrix("thue_morse")).is_difference
    assert validate_difference_condition(catalog_matrix("rudin_shapiro")).is_difference
    assert validate_difference_condition(catalog_matrix("z3_k6")).is_difference


def test_report_fields():
    rep = validate_difference_condition(catalog_matrix("thue_morse"))
    v = rep.first_violation
    assert (v.i, v.j, v.expected) == (0, 1, 1.0)
    assert not rep
    ok = validate_difference_condition(catalog_matrix("rudin_shapiro"))
    assert ok and ok.first_violation is None


def test_divisibility_flag():
    # |G| = 3 does not divide k = 2
    w = WeightFunction.from_matrix([[0, 1], [2, 0]], 3)
    rep = validate_difference_condition(w)
    assert not rep.is_difference and rep.first_violation.reason == "divisibility"


@given(weight_functions())
def test_validator_matches_naive(w):
    assert validate_difference_condition(w).is_difference == naive_is_difference(w)


@given(weight_functions(max_k=5, ranks=(2,), dims=(1,)))
def test_compiled_and_numpy_scans_agree(w):
    K, order = w.alphabet_size, w.group.order
    if K % order:
        return
    t = w.table.reshape(K, 1, K)
    compiled = validate_difference_condition(w)
    fallback = _scan_numpy(t, w.group, order, K // order)
    assert compiled.is_difference == (fallback is None)
    if fallback is not None:
        v = compiled.first_violation
        assert (v.i, v.j) == fallback[:2]


@given(weight_functions())
def test_difference_implies_divisibility(w):
    if validate_difference_condition(w).is_difference:
        assert w.alphabet_size % w.group.order == 0


def test_relabel_invariance_against_naive(rng):
    names = ["rudin_shapiro", "thue_morse", "queffelec_p3", "distinct_digits_k3"]
    for name in names:
        w = catalog_matrix(name)
        verdict = naive_is_difference(w)
        for perm in zero_fixing_permutations(w.k):
            v = relabel(w, perm)
            assert validate_difference_condition(v).is_difference == verdict == naive_is_difference(v)
    z = catalog_matrix("z3_k6")
    for _ in range(20):
        perm = (0,) + tuple(int(x) + 1 for x in rng.permutation(5))
        assert validate_difference_condition(relabel(z, perm)).is_difference


def test_multiplicative():
    assert multiplicative_matrix(2).matrix().tolist() == [[0, 0], [0, 1]]
    assert multiplicative_matrix(3).matrix().tolist() == [[0, 0, 0], [0, 1, 2], [0, 2, 1]]
    for p in (5, 7, 11, 97):
        assert validate_difference_condition(multiplicative_matrix(p)).is_difference
    for bad in (4, 6, 1, 101):
        with pytest.raises(ValueError):
            multiplicative_matrix(bad)


def test_composite_multiplicative_fails():
    i = np.arange(4)
    w = WeightFunction.from_matrix(np.outer(i, i) % 4, 4)
    assert not validate_difference_condition(w).is_difference


def test_catalog_literals():
    assert catalog_matrix("distinct_digits_k3").matrix().tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    w = catalog_matrix("rank3_not_constant")
    assert (w.k, w.rank) == (2, 3)
    for x, y, z in itertools.product(range(2), repeat=3):
        assert w(x, y, z).index == (0 if x == y == z else 1)
    a = catalog_matrix("fig1_a")
    assert (a.k, a.dim, a.rank) == (2, 2, 2)
    # f(i, j) = 0 iff i = j; symmetric under any relabelling
    assert a.matrix().tolist() == [[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]]


def test_fig1_b_is_dot_product():
    w = catalog_matrix("fig1_b")
    for i in iter_columns(2, 2):
        for j in iter_columns(2, 2):
            assert w(i, j).index == (i[0] * j[0] + i[1] * j[1]) % 2


def test_fig1_lexicographic_reading():
    # the first printed row of fig1_d lists f((0,0), .) for columns (0,0),(0,1),(1,0),(1,1)
    w = catalog_matrix("fig1_d")
    printed = [[0, 0, 1, 1], [0, 1, 0, 1], [0, 0, 0, 0], [0, 1, 1, 0]]
    lex = [(0, 0), (0, 1), (1, 0), (1, 1)]
    for a, i in enumerate(lex):
        for b, j in enumerate(lex):
            assert w(i, j).index == printed[a][b]


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_validity(name):
    assert validate_difference_condition(catalog_matrix(name)).is_difference == (name != "thue_morse")


def test_unknown_catalog():
    with pytest.raises(KeyError):
        catalog_matrix("nope")


def test_weight_function_invariants():
    with pytest.raises(ValueError):
        WeightFunction.from_matrix([[1, 0], [0, 0]], 2)
    with pytest.raises(ValueError):
        WeightFunction.from_indices(2, GroupSpec.cyclic(2), [0, 0, 0])
    with pytest.raises(ValueError):
        WeightFunction.from_matrix([[0, 2], [0, 0]], 2)


def test_search_k2():
    found = search_difference_matrices(2, GroupSpec.cyclic(2))
    assert [w.matrix().tolist() for w in found] == [[[0, 0], [0, 1]]]


def test_search_k2_unnormalized_matches_brute_force():
    g = GroupSpec.cyclic(2)
    brute = []
    for rest in itertools.product(range(2), repeat=3):
        w = WeightFunction.from_indices(2, g, (0,) + rest)
        if naive_is_difference(w):
            brute.append(w)
    found = search_difference_matrices(2, g, normalized=False)
    assert len(brute) == 4
    assert set(found) == set(brute)


def test_search_k3():
    found = search_difference_matrices(3, GroupSpec.cyclic(3))
    mats = [w.matrix().tolist() for w in found]
    assert [[0, 0, 0], [0, 1, 2], [0, 2, 1]] in mats
    brute = []
    for rest in itertools.product(range(3), repeat=4):
        m = [[0, 0, 0], [0, rest[0], rest[1]], [0, rest[2], rest[3]]]
        if naive_is_difference(WeightFunction.from_matrix(m, 3)):
            brute.append(m)
    assert sorted(mats) == sorted(brute)


def test_search_k4_z4_empty():
    assert search_difference_matrices(4, GroupSpec.cyclic(4)) == []


def test_search_guard_and_limit():
    with pytest.raises(ValueError):
        search_difference_matrices(6, GroupSpec.cyclic(3))
    assert len(search_difference_matrices(4, GroupSpec((2, 2)), limit=3)) == 3
