import random
from fractions import Fraction
from math import comb

import pytest

from rankbounds.polycore import (InputError, MultiPoly, ProductPoint,
                                 basis_exponents, basis_size, diff_apply,
                                 exp_multidegree, falling, md_box, md_rad,
                                 monomial, monomial_basis, parse_poly,
                                 poly_to_str, power_of_point, random_poly,
                                 variable, zero)


def test_basis_sizes_match_binomials():
    assert basis_size((3,), (2,)) == comb(3 + 2 - 1, 2)
    assert basis_size((2, 3), (1, 2)) == 2 * comb(3 + 2 - 1, 2)
    exps = basis_exponents((2, 2), (1, 1))
    assert len(exps) == 4
    assert len(set(exps)) == 4
    assert all(exp_multidegree((2, 2), e) == (1, 1) for e in exps)


def test_basis_order_is_deterministic_graded_lex():
    names = [poly_to_str(m) for m in monomial_basis((2,), (2,))]
    assert names == ["x1^2", "x1*x2", "x2^2"]


def test_arithmetic_and_power():
    x = variable((2,), 0)
    y = variable((2,), 1)
    p = (x + y).power(2)
    assert p.terms == {(2, 0): Fraction(1), (1, 1): Fraction(2),
                       (0, 2): Fraction(1)}
    assert (p - p).is_zero()
    assert (x * y).multidegree() == (2,)


def test_diff_apply_contraction_rule():
    # D_{x^a}(x^d) = d!/(d-a)! x^{d-a}
    x3 = monomial((1,), (3,))
    dx = monomial((1,), (1,), dual=True)
    assert diff_apply(dx, x3).terms == {(2,): Fraction(3)}
    dxx = monomial((1,), (2,), dual=True)
    assert diff_apply(dxx, x3).terms == {(1,): Fraction(6)}
    assert falling(3, 2) == 6
    # operators of too-high degree in some variable annihilate
    dy = monomial((2,), (0, 1), dual=True)
    assert diff_apply(dy, monomial((2,), (2, 0))).is_zero()


def test_power_of_point_expands_binomially():
    pt = ProductPoint((2,), ((Fraction(1), Fraction(1)),))
    p = power_of_point(pt, (2,))
    assert p.terms == {(2, 0): Fraction(1), (1, 1): Fraction(2),
                       (0, 2): Fraction(1)}


def test_evaluate_and_substitute():
    p = parse_poly("x1^2*x2 - 3*x2^3", (2,))
    assert p.evaluate([2, 1]) == 4 - 3
    x = variable((2,), 0)
    y = variable((2,), 1)
    q = p.substitute([x + y, y])
    assert q.evaluate([1, 1]) == p.evaluate([2, 1])


def test_parse_print_round_trip_random():
    rng = random.Random(7)
    for sig in [(3,), (2, 2), (1, 2, 3)]:
        for _ in range(10):
            md = tuple(rng.randint(0, 3) for _ in sig)
            if sum(md) == 0:
                continue
            p = random_poly(sig, md, rng)
            if p.is_zero():
                continue
            assert parse_poly(poly_to_str(p), sig) == p


def test_parse_multi_group_and_aliases():
    p = parse_poly("x1_1*x2_2", (2, 2))
    q = parse_poly("x1*y2", (2, 2))
    assert p == q
    d = parse_poly("d1^2", (2,), dual=True)
    assert d.dual and d.terms == {(2, 0): Fraction(1)}


def test_parse_rationals_and_signs():
    p = parse_poly("-1/2*x1^2 + x1*x2", (2,))
    assert p.terms[(2, 0)] == Fraction(-1, 2)


def test_parse_errors_report_position():
    with pytest.raises(InputError) as err:
        parse_poly("x1 + x9", (2,))
    assert "x9" in str(err.value)
    with pytest.raises(InputError):
        parse_poly("x1 **", (2,))
    with pytest.raises(InputError):
        parse_poly("", (2,))


def test_product_point_rejects_zero_forms():
    with pytest.raises(InputError):
        ProductPoint((2,), ((Fraction(0), Fraction(0)),))


def test_md_helpers():
    assert md_rad((0, 3, 1)) == (0, 1, 1)
    assert list(md_box((1, 1))) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert zero((2,)).multidegree() is None


def test_content_hash_is_stable_under_term_order():
    a = MultiPoly((2,), {(1, 0): Fraction(1), (0, 1): Fraction(2)})
    b = MultiPoly((2,), {(0, 1): Fraction(2), (1, 0): Fraction(1)})
    assert a.content_hash() == b.content_hash()
