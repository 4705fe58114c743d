from fractions import Fraction

import pytest

from prokit.bits import BitSource
from prokit.errors import SizeExceedsCap
from prokit.harness import (HASH_BATTERY, CheckResult, ExactDist, check_bienayme, check_component,
                            check_k_indep, check_walk_chernoff, check_walk_marginals,
                            exhaustive_dist, f2_oracle_dist, hoeffding_half_width,
                            monte_carlo_failure, product_dist, render_element, walk_tail_exact)
from prokit.hashfam import hash_pro
from prokit.pro import geom_pro, list_pro, nat_pro, prod_pro
from prokit.streamalg import Stream, estimate_mean, estimator_pro


def test_exhaustive_examples():
    assert exhaustive_dist(list_pro([1, 1, 2])) == ExactDist({1: Fraction(2, 3), 2: Fraction(1, 3)})
    assert dict(exhaustive_dist(nat_pro(4))) == {i: Fraction(1, 4) for i in range(4)}
    assert dict(exhaustive_dist(geom_pro(2))) == {0: Fraction(1, 2), 1: Fraction(1, 4),
                                                 2: Fraction(1, 4)}


def test_cap():
    with pytest.raises(SizeExceedsCap):
        exhaustive_dist(nat_pro(2**20 + 1))
    with pytest.raises(SizeExceedsCap):
        exhaustive_dist(nat_pro(9), cap=8)


def test_exact_dist_validation():
    with pytest.raises(ValueError):
        ExactDist({0: Fraction(1, 2)})
    with pytest.raises(ValueError):
        ExactDist({0: Fraction(3, 2), 1: Fraction(-1, 2)})
    d = ExactDist({0: Fraction(1, 2), 2: Fraction(1, 2)})
    assert d.mean() == 1 and d.variance() == 1 and d.prob(lambda x: x > 0) == Fraction(1, 2)


def test_tsv_lines_sorted_by_rendering():
    d = exhaustive_dist(prod_pro(nat_pro(2), list_pro([-1, 10])))
    assert d.tsv_lines() == ["(0,-1)\t1/4", "(0,10)\t1/4", "(1,-1)\t1/4", "(1,10)\t1/4"]


def test_render_element():
    assert render_element(Fraction(80, 3)) == "80/3"
    assert render_element(Fraction(4)) == "4"
    assert render_element(hash_pro(2, 2, nat_pro(2)).select(3)) == "[1,0]"
    assert render_element((1, (2, 3))) == "(1,(2,3))"


def test_product_dist():
    d = product_dist([exhaustive_dist(nat_pro(2))] * 2)
    assert dict(d) == {(a, b): Fraction(1, 4) for a in range(2) for b in range(2)}


@pytest.mark.parametrize("k, n, inner", HASH_BATTERY)
def test_battery_laws(k, n, inner):
    r = check_k_indep(k, n, inner)
    assert r.passed
    covered = [row[1] for row in r.details if row[0] == "|J|"]
    assert covered == list(range(1, min(k, n) + 1))
    assert all(check_component(k, n, inner, i).passed for i in range(n))
    assert check_bienayme(k, n, inner).passed


def test_k_indep_reports_scope():
    r = check_k_indep(2, 3, nat_pro(3))
    assert r.lines()[0] == "CHECK k-indep H(2,3,N(3)) PASS"
    assert "|J|>k\tnot checked" in r.lines()


def test_component_precondition():
    with pytest.raises(ValueError):
        check_component(2, 2, nat_pro(2), 2)


def test_failing_family_is_detected():
    # a 1-independent family is not pairwise independent
    family = hash_pro(1, 3, nat_pro(3))
    assert not check_k_indep(2, 3, nat_pro(3), family=family).passed
    assert check_k_indep(1, 3, nat_pro(3), family=family).passed


def test_bienayme_on_estimators():
    basic = estimator_pro(Stream(2, (0, 1)), "basic")
    assert check_bienayme(2, 3, basic).passed


def test_bienayme_needs_pairwise_independence():
    r = check_bienayme(1, 3, nat_pro(3))
    assert not r.passed


def test_walk_tail_examples():
    zero = walk_tail_exact(3, 0.95, nat_pro(4), lambda v: 0, Fraction(1, 10))
    assert zero.tail == 0 and zero.passed
    vac = walk_tail_exact(3, 0.95, nat_pro(4), lambda v: int(v == 0), 0)
    assert vac.bound == 2 and vac.passed
    for c in range(10):
        assert walk_tail_exact(3, 0.95, nat_pro(4), lambda v: int(v == 0), Fraction(c, 10)).passed


def test_walk_tail_rejects_non_binary_marking():
    with pytest.raises(ValueError):
        walk_tail_exact(2, 0.95, nat_pro(2), lambda v: 2, 0)


def test_walk_batteries():
    assert check_walk_chernoff(4, 3).passed
    assert check_walk_marginals(4, 3).passed


def test_f2_oracle():
    assert dict(f2_oracle_dist(1, [0])) == {1: 1}
    d = f2_oracle_dist(2, [0, 1])
    assert dict(d) == {0: Fraction(1, 2), 4: Fraction(1, 2)} and d.mean() == 2
    with pytest.raises(ValueError):
        f2_oracle_dist(17, [])


def test_monte_carlo():
    s = Stream(2, (0, 0))
    r = monte_carlo_failure(lambda b: estimate_mean(s, b, s=2), 4, 0.1, trials=1)
    assert r.rate == 0 and r.failures == 0
    assert hoeffding_half_width(2000) == pytest.approx(0.0364, abs=1e-4)


def test_monte_carlo_matches_exhaustive_probability():
    pair = Stream(2, (0, 1))
    exact = exhaustive_dist(estimator_pro(pair, "mean", s=2)).prob(lambda e: abs(e - 2) > 1)
    r = monte_carlo_failure(lambda b: estimate_mean(pair, b, s=2), 2, Fraction(1, 2), trials=400)
    exact_half = exhaustive_dist(estimator_pro(pair, "mean", s=2)).prob(lambda e: abs(e - 2) > 1)
    assert exact == exact_half
    assert r.ci_low <= exact_half <= r.ci_high


def test_check_result_lines():
    r = CheckResult("demo", False, [("x", Fraction(1, 3), 0.5, True)])
    assert r.lines() == ["CHECK demo FAIL", "x\t1/3\t0.5\tPASS"]
