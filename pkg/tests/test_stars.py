import random
from fractions import Fraction

import pytest

from polylog.coding import QSeriesTrunc, umbra_to_plane
from polylog.nc_core import NCPoly, Word, X, Y, x_word, y_word
from polylog.products import exp_stuffle, shuffle, stuffle
from polylog.stars import (
    PlaneStar,
    X1StarPoly,
    check_kstar_shuffle_power,
    letter_star_li,
    one_param_group,
    plane_element_poly,
    plane_star_expand,
    plane_star_inverse,
    plane_star_stuffle,
    x1star_expand,
    x1star_poly_expand,
    ykstar_exp_identity,
)


def _rand_star(rng, s_max_max=3):
    return PlaneStar.make(
        [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(rng.randint(1, s_max_max))]
    )


class TestX1StarExpand:
    def test_geometric(self):
        expected = NCPoly.one(X) + NCPoly.from_word(x_word("1")) + NCPoly.from_word(x_word("11"))
        assert x1star_expand(1, 2) == expected

    def test_coefficient_power(self):
        p = x1star_expand(2, 4)
        assert p.coeff(x_word("111")) == 8

    def test_zero_star(self):
        assert x1star_expand(0, 7) == NCPoly.one(X)

    def test_combination_expand(self):
        s = X1StarPoly({1: 1, 0: -1})
        p = x1star_poly_expand(s, 3)
        assert p.coeff(Word((), X)) == 0
        assert p.coeff(x_word("11")) == 1


class TestKStarShufflePower:
    def test_k2(self):
        assert check_kstar_shuffle_power(2, 4)

    def test_k1(self):
        assert check_kstar_shuffle_power(1, 6)

    def test_k3(self):
        assert check_kstar_shuffle_power(3, 5)

    def test_fragment_shuffle_is_order_convolution(self):
        lhs = X1StarPoly.star(2).shuffle(X1StarPoly.star(1))
        assert lhs == X1StarPoly.star(3)
        # cross-check against truncated expansions
        cap = 4
        expanded = shuffle(x1star_expand(2, cap), x1star_expand(1, cap)).truncated(cap)
        assert expanded == x1star_expand(3, cap)


class TestPlaneStarStuffle:
    def test_delta_pair(self):
        got = plane_star_stuffle(PlaneStar.make([1]), PlaneStar.make([1]))
        assert got == PlaneStar.make([2, 1])

    def test_cross_term(self):
        got = plane_star_stuffle(PlaneStar.make([1, 0]), PlaneStar.make([0, 1]))
        assert got == PlaneStar.make([1, 1, 1, 0])

    def test_zero_is_neutral(self):
        b = PlaneStar.make([Fraction(2, 3), 1])
        got = plane_star_stuffle(PlaneStar.make([0]), b)
        assert got.truncated(b.s_max) == b and all(
            got.coeff(n) == 0 for n in range(b.s_max + 1, got.s_max + 1)
        )

    def test_commutative_associative(self):
        rng = random.Random(53)
        for _ in range(30):
            a, b, c = _rand_star(rng), _rand_star(rng), _rand_star(rng)
            ab = plane_star_stuffle(a, b)
            ba = plane_star_stuffle(b, a)
            assert ab == ba
            left = plane_star_stuffle(ab, c)
            right = plane_star_stuffle(a, plane_star_stuffle(b, c))
            assert left == right

    def test_inverse(self):
        rng = random.Random(59)
        for _ in range(30):
            a = _rand_star(rng, s_max_max=4)
            inv = plane_star_inverse(a, 4)
            prod = plane_star_stuffle(a, inv)
            assert all(prod.coeff(n) == 0 for n in range(1, 5))

    def test_expand_consistency(self):
        rng = random.Random(61)
        cap = 6
        for _ in range(25):
            a, b = _rand_star(rng), _rand_star(rng)
            lhs = plane_star_expand(plane_star_stuffle(a, b), cap)
            rhs = stuffle(plane_star_expand(a, cap), plane_star_expand(b, cap)).truncated(cap)
            assert lhs == rhs


class TestPlaneStarExpand:
    def test_y1_star(self):
        expected = NCPoly.one(Y) + NCPoly.from_word(y_word(1)) + NCPoly.from_word(y_word(1, 1))
        assert plane_star_expand(PlaneStar.make([1]), 2) == expected

    def test_y2_star(self):
        expected = NCPoly.one(Y) + NCPoly.from_word(y_word(2)) + NCPoly.from_word(y_word(2, 2))
        assert plane_star_expand(PlaneStar.make([0, 1]), 4) == expected

    def test_coefficients_multiply(self):
        a = PlaneStar.make([Fraction(1, 2), 3])
        p = plane_star_expand(a, 3)
        assert p.coeff(y_word(1, 2)) == Fraction(3, 2)
        assert p.coeff(y_word(1, 1, 1)) == Fraction(1, 8)


class TestOneParamGroup:
    def test_zero_parameter(self):
        t = QSeriesTrunc.make([1, Fraction(1, 2)])
        assert one_param_group(t, 0, 4) == NCPoly.one(Y)

    def test_group_law(self):
        rng = random.Random(67)
        for _ in range(8):
            t = QSeriesTrunc.make(
                [Fraction(rng.randint(-2, 2), rng.randint(1, 3)) for _ in range(3)]
            )
            z1 = Fraction(rng.randint(-2, 2), rng.randint(1, 3))
            z2 = Fraction(rng.randint(-2, 2), rng.randint(1, 3))
            lhs = stuffle(one_param_group(t, z1, 5), one_param_group(t, z2, 5)).truncated(5)
            assert lhs == one_param_group(t, z1 + z2, 5)

    def test_equals_stuffle_exponential(self):
        rng = random.Random(71)
        for _ in range(8):
            t = QSeriesTrunc.make(
                [Fraction(rng.randint(-2, 2), rng.randint(1, 3)) for _ in range(3)]
            )
            z = Fraction(rng.randint(-2, 2), rng.randint(1, 3))
            cap = 5
            lhs = one_param_group(t, z, cap)
            rhs = exp_stuffle(plane_element_poly(umbra_to_plane(t)) * z, cap)
            assert lhs == rhs


class TestYkStarIdentity:
    def test_k1_z1_cap2_value(self):
        assert ykstar_exp_identity(1, 1, 2)
        # the two sides are both 1 + y1 + y1y1 at this cap
        arg = NCPoly.from_word(y_word(1)) - NCPoly.from_word(y_word(2)) * Fraction(1, 2)
        expanded = exp_stuffle(arg, 2)
        expected = NCPoly.one(Y) + NCPoly.from_word(y_word(1)) + NCPoly.from_word(y_word(1, 1))
        assert expanded == expected

    def test_k2_half(self):
        assert ykstar_exp_identity(2, Fraction(1, 2), 6)

    def test_zero_parameter(self):
        assert ykstar_exp_identity(3, 0, 6)

    def test_negative_parameter(self):
        assert ykstar_exp_identity(1, Fraction(-1, 3), 5)

    def test_bad_k(self):
        with pytest.raises(ValueError):
            ykstar_exp_identity(0, 1, 3)


class TestLetterStar:
    def test_constant(self):
        form = letter_star_li(0, 0)
        assert form.eval(0.37) == 1

    def test_identity_map(self):
        form = letter_star_li(1, 0)
        assert abs(form.eval(0.3) - 0.3) < 1e-15

    def test_matches_x1star_closed_form(self):
        for k in (1, 2, 3):
            form = letter_star_li(0, k)
            for z in (0.25, -0.5, 0.1 + 0.2j):
                assert abs(form.eval(z) - 1 / (1 - z) ** k) < 1e-12

    def test_product_form(self):
        form = letter_star_li(Fraction(1, 2), Fraction(3, 2))
        z = 0.4
        expected = z**0.5 * (1 - z) ** -1.5
        assert abs(form.eval(z) - expected) < 1e-12
