"""Weights of the local systems and Hodge pieces of inner cohomology."""

from dataclasses import dataclass, field
from typing import Optional, Tuple

from parahoric.models.local_types import GL2LocalType
from parahoric.models.representations import RepLabel
from parahoric.models.symgroup import MultiplicityVector
from parahoric.utils.validation import ArgumentError

HODGE_TYPES = ("H30", "H21", "H12", "H03", "H11", "H22")


@dataclass(frozen=True)
class Weight:
    """Highest weight (lambda1, lambda2) of the coefficient system V_lambda."""

    lambda1: int
    lambda2: int

    def __post_init__(self):
        if not self.lambda1 >= self.lambda2 >= 0:
            raise ArgumentError(
                f"weight must satisfy lambda1 >= lambda2 >= 0, got ({self.lambda1}, {self.lambda2})"
            )

    @property
    def r1(self) -> int:
        return self.lambda1 + self.lambda2 + 4

    @property
    def r2(self) -> int:
        return self.lambda1 - self.lambda2 + 2

    @property
    def k1(self) -> int:
        return self.lambda1 + 3

    @property
    def k2(self) -> int:
        return self.lambda2 + 3

    @property
    def is_parallel(self) -> bool:
        return self.lambda1 == self.lambda2

    @property
    def k(self) -> int:
        """Classical weight of the Saito-Kurokawa lift (parallel weights only)."""
        if not self.is_parallel:
            raise ArgumentError(f"k is defined for lambda1 = lambda2 only, got {self.as_tuple()}")
        return self.lambda1 + 3

    @property
    def r(self) -> int:
        return 2 * self.k - 2

    def as_tuple(self) -> Tuple[int, int]:
        return (self.lambda1, self.lambda2)


@dataclass(frozen=True)
class CohomologyPiece:
    """One Hodge piece as a representation of Sp(4,F_2) or as a label breakdown.

    At residue field F_2 `mult` is authoritative; at other primes only the
    label list and the total dimension are available.
    """

    hodge_type: str
    total_dim: int
    mult: Optional[MultiplicityVector] = None
    labels: Tuple[Tuple[RepLabel, int], ...] = field(default=())

    def __post_init__(self):
        if self.hodge_type not in HODGE_TYPES:
            raise ArgumentError(f"unknown Hodge type {self.hodge_type!r}")
        if self.total_dim < 0:
            raise ArgumentError(f"negative dimension {self.total_dim}")
        if self.mult is not None and self.mult.total_dimension != self.total_dim:
            raise ArgumentError(
                f"{self.hodge_type}: total_dim {self.total_dim} != {self.mult.total_dimension} from multiplicities"
            )

    @classmethod
    def from_mult(cls, hodge_type: str, mult: MultiplicityVector) -> "CohomologyPiece":
        return cls(hodge_type=hodge_type, total_dim=mult.total_dimension, mult=mult)

    def relabel(self, hodge_type: str) -> "CohomologyPiece":
        """The same representation under its complex-conjugate Hodge type."""
        return CohomologyPiece(hodge_type, self.total_dim, self.mult, self.labels)

    @property
    def is_zero(self) -> bool:
        return self.total_dim == 0

    def to_dict(self) -> dict:
        data = {"piece": self.hodge_type, "dim": self.total_dim}
        if self.mult is not None:
            data["mult"] = self.mult.nonzero()
        if self.labels:
            data["labels"] = {str(lab): m for lab, m in self.labels}
        return data


@dataclass(frozen=True)
class IdentityCheck:
    """Both sides of a dimension identity, computed along separate paths."""

    name: str
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds}


@dataclass(frozen=True)
class EndoPrimeEntry:
    """Number of newform pairs whose components at p0 are (sigma1, sigma2)."""

    sigma1: GL2LocalType
    sigma2: GL2LocalType
    count: int


@dataclass(frozen=True)
class SKPrimeEntry:
    """Number of newforms with component sigma at p0; epsilon overrides the
    recorded local root number."""

    sigma: GL2LocalType
    count: int
    epsilon: Optional[int] = None


@dataclass(frozen=True)
class YoshidaLevel:
    level: int
    n1: int
    n2: int
    sym_power: Optional[int] = None
    det_power: Optional[int] = None

    def to_dict(self) -> dict:
        data = {"level": self.level, "levels": [self.n1, self.n2]}
        if self.sym_power is not None:
            data["type"] = {"sym": self.sym_power, "det": self.det_power}
        return data
