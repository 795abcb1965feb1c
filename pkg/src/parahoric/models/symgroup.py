"""Partitions, class functions and Sp(4,F_2) multiplicity vectors."""

from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Tuple

from parahoric.utils.validation import ArgumentError

# Enomoto label, partition of 6, dimension; in the printed column order.
SP4F2_TABLE: Tuple[Tuple[str, Tuple[int, ...], int], ...] = (
    ("theta0", (6,), 1),
    ("theta1", (4, 2), 9),
    ("theta2", (2, 2, 2), 5),
    ("theta3", (5, 1), 5),
    ("theta4", (3, 2, 1), 16),
    ("theta5", (1, 1, 1, 1, 1, 1), 1),
    ("chi5(1)", (2, 2, 1, 1), 9),
    ("chi8(1)", (3, 3), 5),
    ("chi9(1)", (2, 1, 1, 1, 1), 5),
    ("chi12(1)", (4, 1, 1), 10),
    ("chi13(1)", (3, 1, 1, 1), 10),
)

SP4F2_LABELS: Tuple[str, ...] = tuple(row[0] for row in SP4F2_TABLE)
SP4F2_DIMENSIONS: Dict[str, int] = {row[0]: row[2] for row in SP4F2_TABLE}


@dataclass(frozen=True, order=True)
class Partition:
    """Integer partition in canonical (non-increasing, no zeros) form."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(p < 1 for p in parts):
            raise ArgumentError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ArgumentError(f"partition parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        """Build from any ordering of positive parts (zeros dropped)."""
        return cls(tuple(sorted((p for p in parts if p), reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(
            tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0]))
        )

    def multiplicities(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for p in self.parts:
            counts[p] = counts.get(p, 0) + 1
        return counts

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self.parts) + "]"


@dataclass(frozen=True)
class ClassFunction:
    """Integer values of a class function of S_n, indexed by cycle type."""

    n: int
    values: Tuple[Tuple[Partition, int], ...]

    @classmethod
    def from_mapping(cls, n: int, values: Mapping[Partition, int]) -> "ClassFunction":
        return cls(n, tuple(sorted(values.items(), key=lambda kv: kv[0], reverse=True)))

    def as_dict(self) -> Dict[Partition, int]:
        return dict(self.values)

    def __getitem__(self, mu: Partition) -> int:
        return self.as_dict()[mu]

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        if self.n != other.n:
            raise ArgumentError(f"class functions of S_{self.n} and S_{other.n}")
        mine, theirs = self.as_dict(), other.as_dict()
        return ClassFunction.from_mapping(self.n, {mu: mine[mu] + theirs[mu] for mu in mine})

    def scale(self, c: int) -> "ClassFunction":
        return ClassFunction(self.n, tuple((mu, c * v) for mu, v in self.values))


@dataclass(frozen=True)
class MultiplicityVector:
    """Non-negative multiplicities over the eleven irreducibles of Sp(4,F_2)."""

    mult: Tuple[Tuple[str, int], ...] = field(
        default_factory=lambda: tuple((label, 0) for label in SP4F2_LABELS)
    )

    def __post_init__(self):
        given = dict(self.mult)
        unknown = set(given) - set(SP4F2_LABELS)
        if unknown:
            raise ArgumentError(f"unknown Sp(4,F_2) labels: {sorted(unknown)}")
        if any(v < 0 for v in given.values()):
            raise ArgumentError(f"multiplicities must be non-negative: {given}")
        object.__setattr__(
            self, "mult", tuple((label, given.get(label, 0)) for label in SP4F2_LABELS)
        )

    @classmethod
    def of(cls, **counts: int) -> "MultiplicityVector":
        return cls(tuple(counts.items()))

    @classmethod
    def from_mapping(cls, counts: Mapping[str, int]) -> "MultiplicityVector":
        return cls(tuple(counts.items()))

    @classmethod
    def unit(cls, label: str) -> "MultiplicityVector":
        return cls(((label, 1),))

    def __getitem__(self, label: str) -> int:
        return dict(self.mult)[label]

    def __add__(self, other: "MultiplicityVector") -> "MultiplicityVector":
        theirs = dict(other.mult)
        return MultiplicityVector(tuple((k, v + theirs[k]) for k, v in self.mult))

    def scale(self, c: int) -> "MultiplicityVector":
        return MultiplicityVector(tuple((k, c * v) for k, v in self.mult))

    @property
    def total_dimension(self) -> int:
        return sum(v * SP4F2_DIMENSIONS[k] for k, v in self.mult)

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for _, v in self.mult)

    def nonzero(self) -> Dict[str, int]:
        """Entries with positive multiplicity, in Table-1 order."""
        return {k: v for k, v in self.mult if v}

    def __str__(self) -> str:
        terms = [f"{v}*{k}" if v > 1 else k for k, v in self.mult if v]
        return " + ".join(terms) if terms else "0"
