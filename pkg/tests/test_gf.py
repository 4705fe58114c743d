import itertools

import pytest
from hypothesis import given, strategies as st

from prokit.bits import BitSource
from prokit.errors import IterationCapExceeded
from prokit.gf import (FieldCtx, Poly, count_irreducible, enum_monic_poly, fe_arith, fe_from_index,
                       fe_index, field_new, find_irreducible_det, is_irreducible_trial, mobius,
                       monic_poly_index, parse_poly, poly_arith, prime_power, rabin_test,
                       render_poly, sample_irreducible)


def P(p, text):
    return parse_poly(p, text)


class TestPolyArith:
    def test_char2_square(self):
        assert poly_arith(2, "mul", P(2, "X+1"), P(2, "X+1")) == P(2, "X^2+1")

    def test_gcd(self):
        assert poly_arith(2, "gcd", P(2, "X^2+1"), P(2, "X+1")) == P(2, "X+1")

    def test_gcd_is_monic(self):
        g = poly_arith(3, "gcd", P(3, "2*X^2+2*X"), P(3, "2*X+2"))
        assert g == P(3, "X+1")

    def test_powmod(self):
        assert poly_arith(2, "powmod", P(2, "X"), e=4, m=P(2, "X^2+X+1")) == P(2, "X")

    def test_mod_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            poly_arith(2, "mod", P(2, "X"), Poly(2, ()))

    def test_mismatched_p(self):
        with pytest.raises(ValueError):
            Poly(2, (1, 1)) + Poly(3, (1, 1))
        with pytest.raises(ValueError):
            poly_arith(2, "add", Poly(3, (1,)), Poly(3, (1,)))

    def test_normalized(self):
        assert Poly(3, (1, 3, 6)).coeffs == (1,)
        assert Poly(2, (0, 0)).degree is None

    @given(st.integers(0, 3**6 - 1), st.integers(0, 3**6 - 1), st.integers(1, 3**4 - 1))
    def test_division_identity(self, i, j, k):
        a, b, m = (Poly(3, _digits(x, 3)) for x in (i, j, k))
        q, r = divmod(a, m)
        assert q * m + r == a
        assert r.degree is None or r.degree < m.degree
        assert (a + b) - b == a
        assert a * b == b * a

    @given(st.integers(0, 2**8 - 1), st.integers(0, 50))
    def test_powmod_matches_repeated_multiplication(self, i, e):
        a, m = Poly(2, _digits(i, 2)), P(2, "X^3+X+1")
        acc = Poly(2, (1,))
        for _ in range(e):
            acc = acc * a % m
        assert poly_arith(2, "powmod", a, e=e, m=m) == acc


def _digits(x, p):
    out = []
    while x:
        x, d = divmod(x, p)
        out.append(d)
    return out


class TestRendering:
    @pytest.mark.parametrize("text", ["X^2+X+1", "2*X^3+X+2", "X", "1", "0", "X^7"])
    def test_round_trip(self, text):
        assert render_poly(parse_poly(3, text)) == text

    def test_bad_text(self):
        for bad in ["", "X2", "X^2++X", "Y"]:
            with pytest.raises(ValueError):
                parse_poly(2, bad)


@pytest.mark.parametrize("n, mu", [(1, 1), (6, 1), (12, 0), (2, -1), (30, -1)])
def test_mobius(n, mu):
    assert mobius(n) == mu


def test_mobius_zero():
    with pytest.raises(ValueError):
        mobius(0)


@pytest.mark.parametrize("p, k, count", [(2, 1, 2), (2, 2, 1), (3, 2, 3), (2, 8, 30)])
def test_count_irreducible(p, k, count):
    assert count_irreducible(p, k) == count


def test_count_irreducible_needs_prime():
    with pytest.raises(ValueError):
        count_irreducible(4, 2)


@pytest.mark.parametrize("p, text, verdict", [(2, "X^2+X+1", True), (2, "X^2+1", False),
                                              (3, "X^2+1", True), (2, "X", True)])
def test_rabin_examples(p, text, verdict):
    assert rabin_test(p, P(p, text)) is verdict


def test_rabin_rejects_non_monic_and_constants():
    with pytest.raises(ValueError):
        rabin_test(3, P(3, "2*X^2+1"))
    with pytest.raises(ValueError):
        rabin_test(3, P(3, "1"))


@pytest.mark.parametrize("p, k", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 6), (3, 2), (3, 3),
                                  (3, 4), (5, 2), (5, 3), (7, 2)])
def test_rabin_agrees_with_trial_division(p, k):
    for i in range(p ** k):
        f = enum_monic_poly(p, k, i)
        assert rabin_test(p, f) == is_irreducible_trial(p, f), render_poly(f)


@pytest.mark.parametrize("p, deg, index, text", [(2, 2, 0, "X^2"), (2, 2, 3, "X^2+X+1"),
                                                 (3, 1, 2, "X+2")])
def test_enum_monic_poly(p, deg, index, text):
    f = enum_monic_poly(p, deg, index)
    assert render_poly(f) == text
    assert monic_poly_index(f) == index


def test_enum_monic_poly_bijective():
    polys = {enum_monic_poly(3, 4, i) for i in range(81)}
    assert len(polys) == 81 and all(f.is_monic and f.degree == 4 for f in polys)
    with pytest.raises(ValueError):
        enum_monic_poly(3, 4, 81)


@pytest.mark.parametrize("p, deg, text", [(2, 1, "X"), (2, 2, "X^2+X+1"), (3, 2, "X^2+1")])
def test_find_irreducible_det(p, deg, text):
    assert render_poly(find_irreducible_det(p, deg)) == text


@pytest.mark.parametrize("p, deg", [(2, 8), (3, 4), (5, 3), (7, 2)])
def test_find_irreducible_det_is_first_by_trial_division(p, deg):
    first = next(i for i in range(p ** deg) if is_irreducible_trial(p, enum_monic_poly(p, deg, i)))
    assert find_irreducible_det(p, deg) == enum_monic_poly(p, deg, first)


def test_sample_irreducible_golden():
    # seed 0 nibbles 1110 (rejected), 0010, 0010, 0000, 1010 (rejected), 1000:
    # indices 2, 2, 0 give reducible X^2+2, X^2+2, X^2; index 8 gives X^2+2X+2.
    f, trials = sample_irreducible(3, 2, BitSource(0))
    assert render_poly(f) == "X^2+2*X+2"
    assert trials == 4


def test_sample_irreducible_quadratic_over_gf2_is_unique():
    for seed in range(20):
        f, t = sample_irreducible(2, 2, BitSource(seed))
        assert render_poly(f) == "X^2+X+1" and t >= 1


def test_sample_irreducible_mean_trials():
    trials = [sample_irreducible(2, 8, BitSource(s))[1] for s in range(1000)]
    assert sum(trials) / len(trials) <= 4 * 8


def test_sample_irreducible_cap():
    class Zero(BitSource):
        def next_bits(self, k):
            return 0

    with pytest.raises(IterationCapExceeded):
        sample_irreducible(2, 3, Zero(0))  # index 0 is X^3, never irreducible


class TestField:
    def test_gf4_examples(self):
        ctx = field_new(2, 2)
        assert render_poly(ctx.modulus) == "X^2+X+1"
        x = fe_from_index(ctx, 2)
        assert fe_arith(ctx, "mul", x, x) == fe_from_index(ctx, 3)
        assert fe_arith(ctx, "inv", x) == fe_from_index(ctx, 3)
        assert fe_arith(ctx, "add", x, ctx.zero) == x
        assert fe_index(ctx, ctx.zero) == 0
        assert render_poly(fe_from_index(ctx, 3).poly) == "X+1"

    def test_prime_field_uses_modulus_x(self):
        ctx = field_new(5, 1)
        assert render_poly(ctx.modulus) == "X" and ctx.order == 5
        for a, b in itertools.product(range(5), repeat=2):
            ea, eb = ctx.from_index(a), ctx.from_index(b)
            assert ctx.index(ea * eb) == a * b % 5
            assert ctx.index(ea + eb) == (a + b) % 5

    def test_index_round_trip(self):
        ctx = field_new(2, 4)
        assert ctx.order == 16
        assert [ctx.index(ctx.from_index(i)) for i in range(16)] == list(range(16))
        with pytest.raises(ValueError):
            ctx.from_index(16)

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            field_new(3, 2).zero.inverse()

    def test_composite_p(self):
        with pytest.raises(ValueError):
            field_new(6, 1)

    def test_reducible_modulus_rejected(self):
        with pytest.raises(ValueError):
            FieldCtx(2, P(2, "X^2+1"))

    def test_pow_and_fermat(self):
        ctx = field_new(3, 3)
        for a in ctx.elements():
            assert a ** ctx.order == a

    @pytest.mark.parametrize("p, n", [(2, 3), (3, 2), (2, 8), (5, 2), (17, 2), (3, 6)])
    def test_index_ops_match_element_ops(self, p, n):
        ctx = field_new(p, n)
        b = BitSource(p * 100 + n)
        for _ in range(300):
            i, j = (b.next_bits(32) % ctx.order for _ in range(2))
            ei, ej = ctx.from_index(i), ctx.from_index(j)
            assert ctx.idx_add(i, j) == ctx.index(ei + ej)
            assert ctx.idx_mul(i, j) == ctx.index(ei * ej)
        coeffs = (3 % ctx.order, 1, ctx.order - 1)
        for x in range(min(ctx.order, 40)):
            ex = ctx.from_index(x)
            want = ctx.from_index(coeffs[0]) + ctx.from_index(coeffs[1]) * ex \
                + ctx.from_index(coeffs[2]) * ex * ex
            assert ctx.idx_poly_eval(coeffs, x) == ctx.index(want)

    def test_randomized_field(self):
        ctx = field_new(2, 4, BitSource(0))
        assert rabin_test(2, ctx.modulus) and ctx.order == 16


@pytest.mark.parametrize("m, pp", [(1, None), (2, (2, 1)), (8, (2, 3)), (6, None), (81, (3, 4)),
                                   (65536, (2, 16))])
def test_prime_power(m, pp):
    assert prime_power(m) == pp
