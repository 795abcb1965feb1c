"""Exact truncated q-expansions and newform dimension records."""

from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from parahoric.utils.validation import ArgumentError, ParahoricError


class PrecisionError(ParahoricError):
    """A coefficient beyond the known precision was requested."""

    pass


@dataclass(frozen=True)
class QExpansion:
    """a_0 + a_1 q + ... + a_P q^P + O(q^{P+1}) with exact rational coefficients."""

    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ArgumentError("a q-expansion needs at least the constant coefficient")
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))

    @classmethod
    def from_coefficients(cls, coefficients: Iterable, precision: int) -> "QExpansion":
        """Pad or cut the given coefficients to exactly `precision` + 1 entries."""
        coeffs = list(coefficients)[: precision + 1]
        coeffs += [0] * (precision + 1 - len(coeffs))
        return cls(tuple(coeffs))

    @classmethod
    def one(cls, precision: int) -> "QExpansion":
        return cls.from_coefficients([1], precision)

    @property
    def precision(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n > self.precision:
            raise PrecisionError(f"coefficient {n} requested, series known to O(q^{self.precision + 1})")
        return self.coefficients[n]

    def truncate(self, precision: int) -> "QExpansion":
        if precision > self.precision:
            raise PrecisionError(f"cannot extend precision {self.precision} to {precision}")
        return QExpansion(self.coefficients[: precision + 1])

    def __add__(self, other: "QExpansion") -> "QExpansion":
        p = min(self.precision, other.precision)
        return QExpansion(tuple(a + b for a, b in zip(self.coefficients[: p + 1], other.coefficients)))

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        return self + other.scale(-1)

    def scale(self, c) -> "QExpansion":
        c = Fraction(c)
        return QExpansion(tuple(c * a for a in self.coefficients))

    def __mul__(self, other: "QExpansion") -> "QExpansion":
        p = min(self.precision, other.precision)
        a, b = self.coefficients, other.coefficients
        out = [Fraction(0)] * (p + 1)
        for i in range(p + 1):
            if a[i] == 0:
                continue
            ai = a[i]
            for j in range(p + 1 - i):
                if b[j]:
                    out[i + j] += ai * b[j]
        return QExpansion(tuple(out))

    def __pow__(self, n: int) -> "QExpansion":
        if n < 0:
            raise ArgumentError("negative powers of q-expansions are not supported")
        result = QExpansion.one(self.precision)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, m: int) -> "QExpansion":
        """Multiply by q^m; the precision grows by m."""
        return QExpansion((Fraction(0),) * m + self.coefficients)

    def at_power(self, d: int) -> "QExpansion":
        """f(q^d), known to O(q^{d(P+1)})."""
        out = [Fraction(0)] * (d * (self.precision + 1))
        for n, c in enumerate(self.coefficients):
            out[d * n] = c
        return QExpansion(tuple(out))

    @property
    def valuation(self) -> int:
        """Index of the first non-zero coefficient (precision + 1 if none is known)."""
        for n, c in enumerate(self.coefficients):
            if c:
                return n
        return self.precision + 1

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def as_strings(self) -> List[str]:
        return [str(c) for c in self.coefficients]


@dataclass(frozen=True)
class NewformCounts:
    """Dimensions of new subspaces at levels 1, 2, 4 in weight r, with the
    Atkin-Lehner split of the level-2 newforms."""

    r: int
    tau1: int
    tau2: int
    tau4: int
    tau_plus: int
    tau_minus: int
    dim_s_gamma0_4: int

    def __post_init__(self):
        values = (self.tau1, self.tau2, self.tau4, self.tau_plus, self.tau_minus, self.dim_s_gamma0_4)
        if any(v < 0 for v in values):
            raise ArgumentError(f"negative newform count in weight {self.r}: {values}")
        if self.tau_plus + self.tau_minus != self.tau2:
            raise ArgumentError(f"Atkin-Lehner split {self.tau_plus}+{self.tau_minus} != tau2={self.tau2}")
        if self.dim_s_gamma0_4 != 3 * self.tau1 + 2 * self.tau2 + self.tau4:
            raise ArgumentError(f"level-4 old/new bookkeeping fails in weight {self.r}")

    @classmethod
    def zero(cls, r: int) -> "NewformCounts":
        return cls(r, 0, 0, 0, 0, 0, 0)

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, int]) -> "NewformCounts":
        return cls(**data)
