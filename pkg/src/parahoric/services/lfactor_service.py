"""Euler factors of the lifted L-functions: spinor products, the Yoshida shift
and the classical Saito-Kurokawa factor."""

from fractions import Fraction
from typing import Optional, Union

from sympy import Integer, Rational, expand, isprime, sympify

from parahoric.models.lfactors import X, EulerFactor, RationalLocalFactor
from parahoric.utils.logging_config import get_logger
from parahoric.utils.validation import ArgumentError, ParahoricError

logger = get_logger(__name__)

ShiftAmount = Union[int, Fraction, str]


class PrimeMismatchError(ArgumentError):
    """Two local factors at different primes were combined."""

    pass


class ModeError(ParahoricError):
    """An irrational scaling was requested while exact rational output was required."""

    pass


def _require_prime(p: int) -> int:
    if not isinstance(p, int) or not isprime(p):
        raise ArgumentError(f"p must be a prime, got {p}")
    return p


def _require_same_prime(*factors) -> int:
    primes = {f.p for f in factors}
    if len(primes) != 1:
        raise PrimeMismatchError(f"local factors at different primes {sorted(primes)}")
    return primes.pop()


def _require_sign(eps: int) -> int:
    if eps not in (1, -1):
        raise ArgumentError(f"eps must be +1 or -1, got {eps}")
    return eps


def spinor_product(e1: EulerFactor, e2: EulerFactor) -> EulerFactor:
    """L(pi_p, s) = L(sigma1_p, s) L(sigma2_p, s) as a product of inverse polynomials."""
    p = _require_same_prime(e1, e2)
    return EulerFactor.from_expression(p, expand(e1.as_expression() * e2.as_expression()))


def shift(factor: EulerFactor, t: ShiftAmount, exact: bool = True) -> EulerFactor:
    """Factor of s -> L(s + t): coefficient c_i becomes c_i p^{-t i}.

    t must be a multiple of 1/2. With exact=False only integral t is accepted
    so that the coefficients stay rational.
    """
    amount = Fraction(t)
    if (2 * amount).denominator != 1:
        raise ArgumentError(f"shift must be a multiple of 1/2, got {amount}")
    if amount.denominator != 1 and not exact:
        raise ModeError(f"shift {amount} introduces sqrt({factor.p}); rational mode is on")
    if amount == 0:
        return factor
    p = Integer(factor.p)
    exponent = Rational(amount.numerator, amount.denominator)
    coefficients = tuple(c * p ** (-exponent * i) for i, c in enumerate(factor.coefficients))
    return EulerFactor(factor.p, coefficients)


def gl2_unramified_factor(p: int, a_p, k: int) -> EulerFactor:
    """1 - a_p X + p^{k-1} X^2 for a weight-k eigenform with p not dividing the level."""
    _require_prime(p)
    return EulerFactor(p, (1, -sympify(a_p), Integer(p) ** (k - 1)))


def steinberg_factor(p: int, a_p) -> EulerFactor:
    _require_prime(p)
    return EulerFactor(p, (1, -sympify(a_p)))


def yoshida_factor(e1: EulerFactor, e2: EulerFactor, r1: int, r2: int) -> EulerFactor:
    """L_p(f1, s) L_p(f2, s + (r2 - r1)/2)."""
    _require_same_prime(e1, e2)
    if r1 <= r2 or r1 % 2 or r2 % 2:
        raise ArgumentError(f"need even weights r1 > r2, got ({r1}, {r2})")
    return spinor_product(e1, shift(e2, Fraction(r2 - r1, 2)))


def sk_correction(p: int, k: int, eps: int) -> RationalLocalFactor:
    """(1 - p^{k-1}X)(1 - p^{k-2}X) / (1 + eps p^{k-2}X), in lowest terms."""
    _require_prime(p)
    _require_sign(eps)
    numerator = (1 - Integer(p) ** (k - 1) * X) * (1 - Integer(p) ** (k - 2) * X)
    denominator = 1 + eps * Integer(p) ** (k - 2) * X
    return RationalLocalFactor.reduce(p, numerator, denominator)


def sk_classical_factor(
    p: int, k: int, eps: Optional[int], in_m: bool, f_factor: EulerFactor
) -> RationalLocalFactor:
    """Local factor at p of zeta(s-k+1) zeta(s-k+2) L(f, s), times the
    correction when p divides M."""
    _require_prime(p)
    if f_factor.p != p:
        raise PrimeMismatchError(f"factor of f is at p={f_factor.p}, expected {p}")
    if in_m and eps is None:
        raise ArgumentError("a prime in M needs its Atkin-Lehner sign eps")
    zeta = (1 - Integer(p) ** (k - 1) * X) * (1 - Integer(p) ** (k - 2) * X)
    denominator = zeta * f_factor.as_expression()
    if not in_m:
        return RationalLocalFactor.reduce(p, 1, denominator)
    correction = sk_correction(p, k, eps)
    result = RationalLocalFactor.reduce(
        p, correction.numerator, expand(correction.denominator * denominator)
    )
    logger.debug(
        "Assembled Saito-Kurokawa factor",
        p=p,
        k=k,
        eps=eps,
        inverse_polynomial=result.is_inverse_polynomial,
    )
    return result
