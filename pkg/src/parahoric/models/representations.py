"""Finite-field representation labels, dimension polynomials and restriction outcomes."""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from sympy import Poly, QQ, Symbol, sympify

from parahoric.utils.validation import ArgumentError

q = Symbol("q")

EVEN_SERIES = "enomoto"
ODD_SERIES = "shinoda"


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial in q with rational coefficients, integer valued at integer q."""

    poly: Poly

    @classmethod
    def parse(cls, expression: str) -> "IntPolynomial":
        return cls(Poly(sympify(expression, locals={"q": q}), q, domain=QQ))

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(Poly(0, q, domain=QQ))

    def evaluate(self, value: int) -> int:
        result = self.poly.eval(value)
        if result.q != 1:
            raise ArgumentError(f"{self} is not integral at q={value}")
        return int(result)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(self.poly + other.poly)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(self.poly - other.poly)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(self.poly * other.poly)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.poly == other.poly

    def __hash__(self) -> int:
        return hash(tuple(self.poly.all_coeffs()))

    def is_zero(self) -> bool:
        return self.poly.is_zero

    def coefficients(self) -> List[str]:
        """Coefficients from the constant term upwards, as exact strings."""
        return [str(c) for c in reversed(self.poly.all_coeffs())]

    def __str__(self) -> str:
        return str(self.poly.as_expr().factor())


@dataclass(frozen=True)
class RepLabel:
    """An irreducible (or printed composite) representation of GSp(4,F_q).

    `params` holds character indices as (value, modulus) pairs, already reduced.
    """

    series: str
    family: str
    params: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.series not in (EVEN_SERIES, ODD_SERIES):
            raise ArgumentError(f"unknown label series {self.series!r}")
        for value, modulus in self.params:
            if modulus < 1 or not 0 <= value < modulus:
                raise ArgumentError(f"parameter {value} not reduced modulo {modulus}")

    @property
    def is_composite(self) -> bool:
        return "+" in self.family

    def __str__(self) -> str:
        if not self.params:
            return self.family
        return f"{self.family}({','.join(str(v) for v, _ in self.params)})"


@dataclass(frozen=True)
class TableRow:
    """One catalogued row of the endoscopic or Saito-Kurokawa restriction tables."""

    table: str
    key: str
    sign: str
    even_family: Optional[str]
    odd_family: Optional[str]
    dim_poly: IntPolynomial
    descriptor: Optional[str] = None

    @property
    def row_id(self) -> str:
        return f"{self.table}:{self.key}:{self.sign}"


@dataclass(frozen=True)
class RestrictionOutcome:
    """Parahoric restriction of a local packet member, as labels plus dimension."""

    q: int
    summands: Tuple[Tuple[RepLabel, int], ...] = ()
    dim_poly: IntPolynomial = field(default_factory=IntPolynomial.zero)
    row: Optional[TableRow] = None

    @classmethod
    def zero(cls, q: int, row: Optional[TableRow] = None) -> "RestrictionOutcome":
        return cls(q=q, row=row)

    @property
    def dimension(self) -> int:
        return self.dim_poly.evaluate(self.q)

    @property
    def is_zero(self) -> bool:
        return self.dim_poly.is_zero()

    def label_string(self) -> str:
        if not self.summands:
            return "0"
        return " + ".join(f"{m}*{lab}" if m > 1 else str(lab) for lab, m in self.summands)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "row": self.row.row_id if self.row else None,
            "labels": [{"label": str(lab), "series": lab.series, "mult": m} for lab, m in self.summands],
            "dim_poly": self.dim_poly.coefficients(),
            "dim": self.dimension,
        }
