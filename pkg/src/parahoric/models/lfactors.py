"""Local Euler factors as polynomials in X = p^{-s}."""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy import Expr, Poly, Symbol, cancel, expand, fraction, sympify

from parahoric.utils.validation import ArgumentError

X = Symbol("X")


def _normalize(coefficients: Sequence) -> Tuple[Expr, ...]:
    coeffs = [expand(sympify(c)) for c in coefficients]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class EulerFactor:
    """P(X) with L_p(s) = 1 / P(p^{-s}); constant term 1.

    Coefficients are exact sympy numbers: rationals, or rational multiples of
    powers of sqrt(p) after a half-integral shift.
    """

    p: int
    coefficients: Tuple[Expr, ...]

    def __post_init__(self):
        coeffs = _normalize(self.coefficients or (1,))
        if coeffs[0] != 1:
            raise ArgumentError(f"Euler factor must have constant term 1, got {coeffs[0]}")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def one(cls, p: int) -> "EulerFactor":
        return cls(p, (1,))

    @classmethod
    def from_expression(cls, p: int, expression) -> "EulerFactor":
        poly = Poly(expand(sympify(expression)), X)
        return cls(p, tuple(reversed(poly.all_coeffs())))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_rational(self) -> bool:
        return all(c.is_rational for c in self.coefficients)

    def as_expression(self) -> Expr:
        return sum((c * X**i for i, c in enumerate(self.coefficients)), sympify(0))

    def to_list(self) -> List[str]:
        return [str(c) for c in self.coefficients]

    def __str__(self) -> str:
        return str(self.as_expression())


@dataclass(frozen=True)
class RationalLocalFactor:
    """L_p(s) = numerator(X) / denominator(X), kept in lowest terms."""

    p: int
    numerator: Expr
    denominator: Expr

    @classmethod
    def reduce(cls, p: int, numerator, denominator) -> "RationalLocalFactor":
        num, den = fraction(cancel(sympify(numerator) / sympify(denominator)))
        # Normalize so that the denominator has constant term 1.
        c0 = Poly(den, X).all_coeffs()[-1]
        return cls(p, expand(num / c0), expand(den / c0))

    @property
    def is_inverse_polynomial(self) -> bool:
        return self.numerator == 1

    def as_euler_factor(self) -> Optional[EulerFactor]:
        """The factor 1/P as an EulerFactor P, or None when the numerator does not cancel."""
        if not self.is_inverse_polynomial:
            return None
        return EulerFactor.from_expression(self.p, self.denominator)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "numerator": [str(c) for c in reversed(Poly(self.numerator, X).all_coeffs())],
            "denominator": [str(c) for c in reversed(Poly(self.denominator, X).all_coeffs())],
        }
