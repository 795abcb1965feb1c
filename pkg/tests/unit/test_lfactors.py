from fractions import Fraction

import pytest
from sympy import Integer, sqrt

from parahoric.models.lfactors import X, EulerFactor, RationalLocalFactor
from parahoric.services.lfactor_service import (
    ModeError,
    PrimeMismatchError,
    gl2_unramified_factor,
    shift,
    sk_classical_factor,
    sk_correction,
    spinor_product,
    steinberg_factor,
    yoshida_factor,
)
from parahoric.utils.validation import ArgumentError


def test_euler_factor_normalization():
    factor = EulerFactor(2, (1, -3, 0, 0))
    assert factor.degree == 1
    assert factor.to_list() == ["1", "-3"]
    assert EulerFactor.from_expression(2, (1 - X) * (1 + X)).to_list() == ["1", "0", "-1"]
    with pytest.raises(ArgumentError):
        EulerFactor(2, (2, 1))


def test_gl2_factors():
    assert gl2_unramified_factor(2, -24, 12).to_list() == ["1", "24", "2048"]
    assert steinberg_factor(3, 1).to_list() == ["1", "-1"]
    with pytest.raises(ArgumentError):
        gl2_unramified_factor(4, 1, 2)


def test_spinor_product():
    product = spinor_product(steinberg_factor(2, 1), steinberg_factor(2, -1))
    assert product.to_list() == ["1", "0", "-1"]
    with pytest.raises(PrimeMismatchError):
        spinor_product(steinberg_factor(2, 1), steinberg_factor(3, 1))


def test_shift_integral():
    assert shift(EulerFactor(3, (1, -9)), 1).to_list() == ["1", "-3"]
    assert shift(EulerFactor(3, (1, -9)), "1", exact=False).is_rational
    assert shift(EulerFactor(2, (1, -1, 2)), -1).to_list() == ["1", "-2", "8"]


def test_shift_half_integral():
    shifted = shift(EulerFactor(3, (1, -9)), Fraction(1, 2))
    assert shifted.coefficients[1] == -3 * sqrt(3)
    assert not shifted.is_rational
    with pytest.raises(ModeError):
        shift(EulerFactor(3, (1, -9)), Fraction(1, 2), exact=False)
    with pytest.raises(ArgumentError):
        shift(EulerFactor(3, (1, -9)), Fraction(1, 3))


def test_yoshida_factor():
    one_minus_x = steinberg_factor(2, 1)
    assert yoshida_factor(one_minus_x, one_minus_x, 12, 8).to_list() == ["1", "-5", "4"]
    with pytest.raises(ArgumentError):
        yoshida_factor(one_minus_x, one_minus_x, 8, 12)


def test_sk_correction():
    plus = sk_correction(2, 4, 1)
    assert not plus.is_inverse_polynomial
    assert plus.to_dict() == {"p": 2, "numerator": ["1", "-12", "32"], "denominator": ["1", "4"]}
    minus = sk_correction(2, 4, -1)
    assert minus.to_dict()["numerator"] == ["1", "-8"]
    assert minus.to_dict()["denominator"] == ["1"]
    with pytest.raises(ArgumentError):
        sk_correction(2, 4, 0)


def test_sk_classical_factor_away_from_m():
    f_factor = gl2_unramified_factor(3, 0, 6)
    result = sk_classical_factor(3, 4, None, False, f_factor)
    assert result.is_inverse_polynomial
    assert result.as_euler_factor().degree == 4


def test_sk_classical_factor_in_m_is_inverse_polynomial():
    # eps = -1 at p = 2 in weight 2k-2 = 6 gives a_2 = 4.
    result = sk_classical_factor(2, 4, -1, True, steinberg_factor(2, 4))
    factor = result.as_euler_factor()
    assert factor is not None
    assert factor.to_list() == ["1", "-8", "16"]


def test_sk_classical_factor_errors():
    with pytest.raises(PrimeMismatchError):
        sk_classical_factor(2, 4, 1, True, steinberg_factor(3, 1))
    with pytest.raises(ArgumentError):
        sk_classical_factor(2, 4, None, True, steinberg_factor(2, 1))


def test_rational_factor_reduce():
    reduced = RationalLocalFactor.reduce(2, 2 - 2 * X, 2 - 2 * X**2)
    assert reduced.is_inverse_polynomial
    assert reduced.as_euler_factor().to_list() == ["1", "1"]
    assert RationalLocalFactor.reduce(2, 1 - X, Integer(1)).as_euler_factor() is None
