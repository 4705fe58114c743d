from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from prokit.bits import BitSource
from prokit.harness import exhaustive_dist
from prokit.pro import (Pro, geom_pro, list_pro, map_pro, nat_pro, prod_pro, sample_pro,
                        trailing_ones)


def dist(P):
    return dict(exhaustive_dist(P))


def test_size_one_always_selects_zero():
    P = list_pro([7])
    assert P.size == 1 and all(sample_pro(P, BitSource(s)) == 7 for s in range(10))


def test_list_pro():
    P = list_pro([1, -1])
    assert P.size == 2 and P.select(0) == 1 and P.select(1) == -1
    assert dist(list_pro([1, 1, 2])) == {1: Fraction(2, 3), 2: Fraction(1, 3)}
    with pytest.raises(ValueError):
        list_pro([])


def test_sign_mean_is_near_zero():
    b = BitSource(123)
    P = list_pro([1, -1])
    assert abs(sum(sample_pro(P, b) for _ in range(10_000)) / 10_000) <= 0.05


def test_nat_pro_golden_samples():
    # seed 0 starts with bits 111 000 100 010
    b = BitSource(0)
    assert [sample_pro(nat_pro(8), b) for _ in range(4)] == [7, 0, 4, 2]


def test_nat_pro():
    assert dist(nat_pro(4)) == {i: Fraction(1, 4) for i in range(4)}
    assert nat_pro(4).select(3) == 3
    assert dist(nat_pro(1)) == {0: 1}
    with pytest.raises(ValueError):
        nat_pro(0)


def test_select_out_of_range():
    with pytest.raises(IndexError):
        nat_pro(3).select(3)


def test_geom_pro():
    assert dist(geom_pro(2)) == {0: Fraction(1, 2), 1: Fraction(1, 4), 2: Fraction(1, 4)}
    assert dist(geom_pro(1)) == {0: Fraction(1, 2), 1: Fraction(1, 2)}
    assert geom_pro(3).select(3) == 2
    with pytest.raises(ValueError):
        geom_pro(0)


@pytest.mark.parametrize("nmax", range(1, 13))
def test_geom_law(nmax):
    want = {v: Fraction(1, 2 ** (v + 1)) for v in range(nmax)}
    want[nmax] = Fraction(1, 2**nmax)
    assert dist(geom_pro(nmax)) == want


def test_trailing_ones():
    assert [trailing_ones(i) for i in range(8)] == [0, 1, 0, 2, 0, 1, 0, 3]


def test_prod_pro():
    P = prod_pro(nat_pro(2), list_pro([5]))
    assert P.size == 2 and [P.select(i) for i in range(2)] == [(0, 5), (1, 5)]
    Q = prod_pro(list_pro([1, 1]), nat_pro(2))
    assert dist(Q)[(1, 0)] == Fraction(1, 2)
    assert prod_pro(nat_pro(3), nat_pro(4)).size == 12


@given(st.integers(1, 30), st.integers(1, 30))
def test_prod_decoding_is_bijective(a, b):
    P = prod_pro(nat_pro(a), nat_pro(b))
    assert sorted(P.select(i) for i in range(P.size)) == [(x, y) for x in range(a) for y in range(b)]


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=6),
       st.lists(st.integers(-3, 3), min_size=1, max_size=6))
def test_prod_multiplicities(xs, ys):
    P, Q = list_pro(xs), list_pro(ys)
    dp, dq, d = dist(P), dist(Q), dist(prod_pro(P, Q))
    assert d == {(x, y): dp[x] * dq[y] for x in dp for y in dq}


def test_map_pro_keeps_seed_space():
    P = map_pro(nat_pro(4), lambda v: v % 2, kind="integer")
    assert P.size == 4 and dist(P) == {0: Fraction(1, 2), 1: Fraction(1, 2)}


def test_pro_needs_positive_size():
    with pytest.raises(ValueError):
        Pro(0, lambda i: i)


@given(st.integers(0, 2**64 - 1))
def test_sampling_is_reproducible(seed):
    P = prod_pro(geom_pro(5), nat_pro(7))
    assert sample_pro(P, BitSource(seed)) == sample_pro(P, BitSource(seed))
