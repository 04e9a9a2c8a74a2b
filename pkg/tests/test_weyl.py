import itertools
import os

import pytest

from leafatlas import (
    ParabolicSubgroup,
    build_root_system,
    decompose_min,
    enumerate_weyl,
    longest_element,
    minimal_coset_reps,
    reduced_word,
)
from leafatlas.weyl import (
    compose,
    cross_parabolic,
    in_parabolic,
    inverse_element,
    left_descent,
    parabolic_elements,
    right_descent,
    simple_reflection,
    weyl_identity,
)

GROUP_ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "G2": 12, "A1xA1": 4}


@pytest.mark.parametrize("label,order", sorted(GROUP_ORDERS.items()))
def test_group_order(label, order):
    rs = build_root_system(label)
    assert len(enumerate_weyl(rs)) == order


def test_enumeration_is_lexicographically_sorted():
    rs = build_root_system("A2")
    mats = [w.matrix for w in enumerate_weyl(rs)]
    assert mats == sorted(mats)


def test_enumeration_bound_env(monkeypatch):
    monkeypatch.setenv("LEAFATLAS_WEYL_BOUND", "10")
    rs = build_root_system("B3")
    with pytest.raises(ValueError):
        enumerate_weyl(rs)


def test_longest_element_properties():
    for label in ("A3", "B3", "G2"):
        rs = build_root_system(label)
        w0 = longest_element(rs, ParabolicSubgroup.of(range(rs.rank)))
        assert w0.length == len(rs.positive_roots)
        assert compose(rs, w0, w0).length == 0
        for a in rs.positive_roots:
            assert not all(x >= 0 for x in w0(a)) or all(x == 0 for x in w0(a))


def test_reduced_word_reassembles():
    rs = build_root_system("B2")
    for w in enumerate_weyl(rs):
        word = reduced_word(rs, w)
        assert len(word) == w.length
        acc = weyl_identity(rs)
        for i in word:
            acc = compose(rs, acc, simple_reflection(rs, i))
        assert acc.matrix == w.matrix


def test_descents_match_definition():
    rs = build_root_system("A3")
    for w in enumerate_weyl(rs):
        for i in range(rs.rank):
            alpha = tuple(1 if t == i else 0 for t in range(rs.rank))
            right_negative = not all(x >= 0 for x in w(alpha))
            assert (right_descent(rs, w, (i,)) == i) == right_negative
            winv = inverse_element(rs, w)
            left_negative = not all(x >= 0 for x in winv(alpha))
            assert (left_descent(rs, w, (i,)) == i) == left_negative


def test_parabolic_elements_are_the_subgroup():
    rs = build_root_system("A3")
    p = ParabolicSubgroup.of((0, 1))
    elems = parabolic_elements(rs, p)
    assert len(elems) == 6
    for w in elems:
        assert in_parabolic(rs, w, p)
        assert all(i in (0, 1) for i in reduced_word(rs, w))


def test_one_sided_coset_rep_counts():
    rs = build_root_system("A3")
    trivial = ParabolicSubgroup.of(())
    p = ParabolicSubgroup.of((0, 1))
    assert len(minimal_coset_reps(rs, trivial, p)) == 4
    assert len(minimal_coset_reps(rs, p, trivial)) == 4
    assert len(minimal_coset_reps(rs, p, p)) == 2


def _brute_double_coset(rs, w, left_elems, right_elems):
    seen = {}
    for a in left_elems:
        aw = compose(rs, a, w)
        for b in right_elems:
            u = compose(rs, aw, b)
            seen[u.matrix] = u
    return list(seen.values())


@pytest.mark.parametrize("left,right", [((0,), (2,)), ((0, 1), (0, 1)), ((), (1,))])
def test_decompose_min_against_brute_force(left, right):
    rs = build_root_system("A3")
    pl, pr = ParabolicSubgroup.of(left), ParabolicSubgroup.of(right)
    left_elems = parabolic_elements(rs, pl)
    right_elems = parabolic_elements(rs, pr)
    for w in enumerate_weyl(rs):
        w1, wmin, w2 = decompose_min(rs, w, pl, pr)
        assert w1.length + wmin.length + w2.length == w.length
        reassembled = compose(rs, compose(rs, w1, wmin), w2)
        assert reassembled.matrix == w.matrix
        assert in_parabolic(rs, w1, pl) and in_parabolic(rs, w2, pr)
        coset = _brute_double_coset(rs, w, left_elems, right_elems)
        shortest = min(u.length for u in coset)
        ties = [u for u in coset if u.length == shortest]
        assert len(ties) == 1
        assert wmin.matrix == ties[0].matrix


def test_minimal_reps_partition_the_group():
    rs = build_root_system("B2")
    p = ParabolicSubgroup.of((0,))
    reps = minimal_coset_reps(rs, p, ParabolicSubgroup.of(()))
    covered = set()
    for r in reps:
        for a in parabolic_elements(rs, p):
            covered.add(compose(rs, a, r).matrix)
    assert len(covered) == len(enumerate_weyl(rs))


def test_cross_parabolic_absorbing_generators():
    rs = build_root_system("A3")
    e = weyl_identity(rs)
    got = cross_parabolic(
        rs, e, ParabolicSubgroup.of((0, 1)), ParabolicSubgroup.of((1, 2))
    )
    assert got.generators == frozenset({1})
    # the rotation carries the last block back onto the first
    w = compose(
        rs,
        compose(rs, simple_reflection(rs, 0), simple_reflection(rs, 1)),
        simple_reflection(rs, 2),
    )
    got = cross_parabolic(
        rs, w, ParabolicSubgroup.of((1, 2)), ParabolicSubgroup.of((0, 1))
    )
    assert got.generators == frozenset({1, 2})
