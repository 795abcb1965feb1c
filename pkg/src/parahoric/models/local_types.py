"""Local GL(2) representation types: the input alphabet of the packet tables."""

from dataclasses import dataclass
from typing import Optional, Union

from parahoric.utils.validation import ArgumentError

UNRAMIFIED = "unramified"
TAME = "tame"
WILD = "wild"
RAMIFICATIONS = (UNRAMIFIED, TAME, WILD)

# Quadratic twists of a Steinberg representation. "wild" covers every
# quadratic character of conductor exponent >= 2.
TWIST_NONE = "none"
TWIST_XI_U = "xi_u"
TWIST_XI_T = "xi_t"
TWIST_WILD = "wild"
TWISTS = (TWIST_NONE, TWIST_XI_U, TWIST_XI_T, TWIST_WILD)


@dataclass(frozen=True)
class Character:
    """A smooth character of F^x, recorded through its ramification.

    For a tame character `index` is k with restriction to the units equal to
    gamma^k on the residue field, read modulo q-1.
    """

    ramification: str = UNRAMIFIED
    index: int = 0

    def __post_init__(self):
        if self.ramification not in RAMIFICATIONS:
            raise ArgumentError(f"unknown ramification {self.ramification!r}")
        if self.ramification == UNRAMIFIED and self.index != 0:
            raise ArgumentError("an unramified character has residue index 0")

    @property
    def depth_zero(self) -> bool:
        return self.ramification != WILD

    def __str__(self) -> str:
        if self.ramification == UNRAMIFIED:
            return "mu"
        if self.ramification == TAME:
            return f"mu[k={self.index}]"
        return "mu[wild]"


@dataclass(frozen=True)
class PrincipalSeries:
    """Irreducible principal series chi1 x chi2."""

    chi1: Character = Character()
    chi2: Character = Character()

    kind = "ps"

    @property
    def has_k1_invariants(self) -> bool:
        return self.chi1.depth_zero and self.chi2.depth_zero

    @property
    def is_spherical(self) -> bool:
        return self.chi1.ramification == UNRAMIFIED and self.chi2.ramification == UNRAMIFIED

    @property
    def has_iwahori_invariants(self) -> bool:
        return self.is_spherical

    @property
    def is_discrete_series(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"{self.chi1} x {self.chi2}"


@dataclass(frozen=True)
class SteinbergTwist:
    """mu * twist * St_GL(2) with twist one of none, xi_u, xi_t or wild."""

    mu: Character = Character()
    twist: str = TWIST_NONE

    kind = "st"

    def __post_init__(self):
        if self.twist not in TWISTS:
            raise ArgumentError(f"unknown Steinberg twist {self.twist!r}")

    @property
    def has_k1_invariants(self) -> bool:
        return self.mu.depth_zero and self.twist != TWIST_WILD

    @property
    def is_spherical(self) -> bool:
        return False

    @property
    def has_iwahori_invariants(self) -> bool:
        return self.mu.ramification == UNRAMIFIED and self.twist in (TWIST_NONE, TWIST_XI_U)

    @property
    def is_discrete_series(self) -> bool:
        return True

    def __str__(self) -> str:
        prefix = "" if self.twist == TWIST_NONE else f"{self.twist}*"
        return f"{prefix}{self.mu}*St"


@dataclass(frozen=True)
class Cuspidal:
    """Supercuspidal representation.

    Depth zero: `l` indexes the character Lambda = theta^l of F_{q^2}^x attached
    to its parahoric restriction. Positive depth carries no further data.
    """

    l: Optional[int] = None
    positive_depth: bool = False

    kind = "cusp"

    def __post_init__(self):
        if not self.positive_depth and self.l is None:
            raise ArgumentError("a depth-zero cuspidal needs its index l")

    @property
    def has_k1_invariants(self) -> bool:
        return not self.positive_depth

    @property
    def is_spherical(self) -> bool:
        return False

    @property
    def has_iwahori_invariants(self) -> bool:
        return False

    @property
    def is_discrete_series(self) -> bool:
        return True

    def __str__(self) -> str:
        return "rho[positive depth]" if self.positive_depth else f"rho[l={self.l}]"


GL2LocalType = Union[PrincipalSeries, SteinbergTwist, Cuspidal]

KIND_ORDER = {"ps": 0, "st": 1, "cusp": 2}


@dataclass(frozen=True)
class PacketMember:
    sign: str
    description: Optional[str]
    exists: bool

    @classmethod
    def absent(cls, sign: str) -> "PacketMember":
        return cls(sign=sign, description=None, exists=False)

    def __str__(self) -> str:
        return self.description if self.exists else "---"


@dataclass(frozen=True)
class SKLocalInput:
    """Local datum of a Saito-Kurokawa lift: sigma (trivial central character)
    and whether the place lies in S, where sigma_S is the Steinberg."""

    sigma: GL2LocalType
    in_s: bool = False
