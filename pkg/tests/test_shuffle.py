from itertools import permutations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fnconf.exactalg import Cyclotomic, gaussian_binomial
from fnconf.shuffle import (
    LocalSystemParams,
    PositiveBraidWord,
    Shuffle,
    c_hj,
    c_pq,
    coarsen,
    compositions,
    enumerate_h_j_shuffles,
    enumerate_shuffles,
    filter_h_j_shuffles,
    lift_word,
    rank1_scalar,
)


def test_compositions():
    assert [tuple(c) for c in compositions(3)] == [(3,), (1, 2), (2, 1), (1, 1, 1)]
    assert len(list(compositions(4, 2))) == 3
    assert [tuple(c) for c in compositions(1)] == [(1,)]
    for n in range(1, 9):
        assert len(list(compositions(n))) == 2 ** (n - 1)


def test_coarsen():
    assert coarsen((2, 3, 1), 1) == (5, 1)
    assert coarsen((1, 1), 1) == (2,)
    with pytest.raises(IndexError):
        coarsen((1, 2), 2)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=2, max_size=6), st.data())
def test_coarsen_shortens(parts, data):
    i = data.draw(st.integers(1, len(parts) - 1))
    c = coarsen(parts, i)
    assert len(c) == len(parts) - 1 and sum(c) == sum(parts)


def _brute_inversions(perm):
    return sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])


def test_shuffle_counts_and_inversions():
    assert len(list(enumerate_shuffles(1, 1))) == 2
    for p in range(0, 6):
        for q in range(0, 9 - p):
            shs = list(enumerate_shuffles(p, q))
            assert len(shs) == comb(p + q, q)
            for g in shs:
                perm = g.permutation()
                assert sorted(perm) == list(range(1, p + q + 1))
                assert g.inversions() == _brute_inversions(perm)
                assert len(lift_word(g).letters) == g.inversions()
                assert lift_word(g).permutation() == perm


def test_c_pq_examples():
    assert c_pq(1, 1) == 0
    assert c_pq(2, 2) == 2
    for p in range(1, 10, 2):
        for q in range(1, 11 - p, 2):
            assert c_pq(p, q) == 0
    for total in range(11):
        for p in range(total + 1):
            assert c_pq(p, total - p) == gaussian_binomial(total, total - p).evaluate(-1)


def test_h_j_families():
    for p in range(0, 5):
        for q in range(0, 5):
            for h in range(0, q + 1):
                for j in range(p):
                    a = [g.placement for g in enumerate_h_j_shuffles("right", p, q, h, j)]
                    assert a == [g.placement for g in filter_h_j_shuffles("right", p, q, h, j)]
                    for g in enumerate_h_j_shuffles("right", p, q, h, j):
                        assert g.permutation()[j] == j + h + 1
            for h in range(0, p + 1):
                for j in range(q):
                    a = [g.placement for g in enumerate_h_j_shuffles("left", p, q, h, j)]
                    assert a == [g.placement for g in filter_h_j_shuffles("left", p, q, h, j)]
            # the families partition Sh(p, q)
            if p:
                assert sum(c_hj("right", p, q, h, 0) for h in range(q + 1)) == c_pq(p, q)


def test_lift_word_examples():
    assert lift_word(Shuffle(2, 1, (3,))).letters == ()
    assert lift_word(Shuffle(1, 1, (1,))).letters == (1,)
    assert len(lift_word(Shuffle(2, 1, (1,))).letters) == 2


def test_bad_placement():
    with pytest.raises(ValueError):
        Shuffle(2, 2, (3, 1))


P5 = LocalSystemParams.make(p=Cyclotomic.zeta(5), q=Cyclotomic.zeta(5, 2), u=Cyclotomic.zeta(5, 3), s=Cyclotomic.zeta(5, 4))


def test_rank1_scalar_examples():
    one = Cyclotomic.from_int(5, 1)
    assert rank1_scalar(PositiveBraidWord((), 3), (2,), P5) == (one, (2,))
    assert rank1_scalar(PositiveBraidWord((1,), 3), (3,), P5) == (P5.q, (3,))
    # mark at 2 moves right across strand 3 then back
    scalar, marks = rank1_scalar(PositiveBraidWord((2, 2), 3), (2,), P5)
    assert scalar == P5.p and marks == (2,)
    scalar, marks = rank1_scalar(PositiveBraidWord((1,), 2), (2,), P5)
    assert scalar == P5.s and marks == (1,)
    with pytest.raises(ValueError):
        rank1_scalar(PositiveBraidWord((1,), 2), (1, 2), P5)


def test_params():
    P = LocalSystemParams.roots_of_unity(p=(3, 1), s=(2, 1))
    assert P.order == 6
    assert P.eps_twisted().q == -1 and P.eps_twisted().s == 1
    assert LocalSystemParams.make().is_trivial()
    with pytest.raises(ValueError):
        LocalSystemParams.make(p=0)


def test_params_identity_includes_order():
    a = LocalSystemParams.make(p=-1)
    b = LocalSystemParams.roots_of_unity(p=(2, 1))
    assert a.p == b.p and a != b and len({a, b}) == 2
    assert a == LocalSystemParams.make(p=-1)
