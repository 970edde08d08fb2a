from fractions import Fraction

import pytest

from rankbounds import fixtures, formulas
from rankbounds.apolar import verify_decomposition
from rankbounds.polycore import InputError, parse_poly


def test_monomial_product_counts_and_identity():
    for n in range(1, 7):
        target, dec = formulas.monomial_product(n)
        assert len(dec) == 2 ** (n - 1) == formulas.monomial_waring_count(n)
        assert verify_decomposition(target, dec).is_zero()


def test_monomial_product_two_vars_classic():
    target, dec = formulas.monomial_product(2)
    coeffs = sorted(c for c, _ in dec.parts)
    assert coeffs == [Fraction(-1, 4), Fraction(1, 4)]


def test_bihomog_product():
    for a in range(1, 5):
        for b in range(1, 5):
            if a + b > 7:
                continue
            target, dec = formulas.bihomog_product(a, b)
            assert len(dec) == 2 ** (a + b - 2)
            assert verify_decomposition(target, dec).is_zero()


def test_grouped_product_powers():
    target, dec = formulas.grouped_product((2, 1, 1), (1, 2, 3))
    assert len(dec) == 2 ** (2 - 1)
    assert verify_decomposition(target, dec).is_zero()
    # several variables with exponent above one cannot be done with
    # rational points at this length
    with pytest.raises(InputError):
        formulas.grouped_product((2,), (2,))


def test_glynn_permanent():
    for k in range(1, 5):
        target, dec = formulas.glynn_permanent(k)
        assert len(dec) == 2 ** (k - 1)
        assert target == fixtures.permanent(k, grouped=True)


def test_ryser_permanent():
    for k in range(1, 5):
        target, dec = formulas.ryser_permanent(k)
        assert len(dec) == 2 ** k - 1
        assert target == fixtures.permanent(k, grouped=True)


def test_det3_five_products():
    target, dec = formulas.derksen_det3()
    assert len(dec) == 5
    assert target == fixtures.determinant(3, grouped=True)


def test_split_to_waring_counts():
    target, dec = formulas.derksen_det3()
    flat_target, flat = formulas.split_to_waring(target, dec)
    assert len(flat) == 5 * 2 ** (3 - 1) == 20
    assert flat_target == fixtures.determinant(3)

    gt, gd = formulas.glynn_permanent(3)
    ft, fd = formulas.split_to_waring(gt, gd)
    assert len(fd) == formulas.glynn_waring_count(3) == 16
    assert ft == fixtures.permanent(3)


def test_closed_form_counts():
    assert formulas.derksen_split_count(3) == 5
    assert formulas.derksen_split_count(4) == 20
    assert formulas.derksen_waring_count(3) == 20
    assert formulas.derksen_waring_count(4) == 160
    assert formulas.glynn_waring_count(4) == 2 ** 6
