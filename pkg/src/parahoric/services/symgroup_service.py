"""Character theory of the symmetric group and the Sp(4,F_2) = S_6 dictionary."""

from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Dict, List, Tuple

from parahoric.config.settings import MAX_PARTITION_SIZE
from parahoric.models.symgroup import (
    SP4F2_TABLE,
    ClassFunction,
    MultiplicityVector,
    Partition,
)
from parahoric.utils.logging_config import get_logger
from parahoric.utils.validation import ArgumentError, ParahoricError, require_range

logger = get_logger(__name__)


class NotACharacterError(ParahoricError):
    """A class function whose inner products with the irreducibles are not all
    non-negative integers."""

    def __init__(self, inner_products: Dict[str, Fraction]):
        self.inner_products = inner_products
        offending = {k: str(v) for k, v in inner_products.items() if v < 0 or v.denominator != 1}
        super().__init__(f"not a character; offending inner products: {offending}")


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    result = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            result.append((first,) + rest)
    return tuple(result)


def partitions_of(n: int) -> List[Partition]:
    """All partitions of n in reverse lexicographic order ([n] first, [1^n] last)."""
    require_range("n", n, 1, MAX_PARTITION_SIZE)
    return [Partition(p) for p in _partitions(n, n)]


def hook_lengths(lam: Partition) -> List[int]:
    conj = lam.conjugate().parts
    return [
        (row_len - j) + (conj[j] - i) - 1
        for i, row_len in enumerate(lam.parts)
        for j in range(row_len)
    ]


def irrep_dimension(lam: Partition) -> int:
    """Hook length formula: n! / prod(hooks)."""
    return factorial(lam.n) // prod(hook_lengths(lam))


def centralizer_order(mu: Partition) -> int:
    """z_mu = prod_i i^{m_i} m_i!, the order of the centralizer of a cycle type."""
    return prod(i**m * factorial(m) for i, m in mu.multiplicities().items())


def class_size(mu: Partition) -> int:
    return factorial(mu.n) // centralizer_order(mu)


def _remove_rim_hooks(parts: Tuple[int, ...], length: int):
    """Yield (shape without the rim hook, leg length) for every rim hook of the given length."""
    # Beta-numbers: a rim hook of length h is a bead moved h places down.
    k = len(parts)
    beta = [parts[i] + (k - 1 - i) for i in range(k)]
    beta_set = set(beta)
    for b in beta:
        target = b - length
        if target < 0 or target in beta_set:
            continue
        leg = sum(1 for c in beta if target < c < b)
        new_beta = sorted((c if c != b else target for c in beta), reverse=True)
        new_parts = tuple(new_beta[i] - (k - 1 - i) for i in range(k))
        yield tuple(p for p in new_parts if p > 0), leg


@lru_cache(maxsize=None)
def _mn_value(lam: Tuple[int, ...], mu: Tuple[int, ...]) -> int:
    if not mu:
        return 1 if not lam else 0
    head, rest = mu[0], mu[1:]
    return sum(
        (-1) ** leg * _mn_value(smaller, rest)
        for smaller, leg in _remove_rim_hooks(lam, head)
    )


def character_value(lam: Partition, mu: Partition) -> int:
    """Murnaghan-Nakayama: value of chi_lambda on the class of cycle type mu."""
    if lam.n != mu.n:
        raise ArgumentError(f"size mismatch: {lam} is a partition of {lam.n}, {mu} of {mu.n}")
    return _mn_value(lam.parts, mu.parts)


def irreducible_character(lam: Partition) -> ClassFunction:
    return ClassFunction.from_mapping(
        lam.n, {mu: character_value(lam, mu) for mu in partitions_of(lam.n)}
    )


def character_table(n: int) -> List[List[int]]:
    """Rows indexed by lambda, columns by mu, both in partitions_of order."""
    parts = partitions_of(n)
    return [[character_value(lam, mu) for mu in parts] for lam in parts]


def regular_character(n: int) -> ClassFunction:
    identity = Partition((1,) * n)
    return ClassFunction.from_mapping(
        n, {mu: factorial(n) if mu == identity else 0 for mu in partitions_of(n)}
    )


def sign_character(n: int) -> ClassFunction:
    return ClassFunction.from_mapping(
        n, {mu: (-1) ** (n - mu.length) for mu in partitions_of(n)}
    )


def inner_product(phi: ClassFunction, psi: ClassFunction) -> Fraction:
    """<phi, psi> = (1/n!) sum over classes of |C| phi(C) psi(C); characters are real."""
    if phi.n != psi.n:
        raise ArgumentError(f"class functions of S_{phi.n} and S_{psi.n}")
    a, b = phi.as_dict(), psi.as_dict()
    total = sum(class_size(mu) * a[mu] * b[mu] for mu in partitions_of(phi.n))
    return Fraction(total, factorial(phi.n))


def sp4f2_dictionary() -> List[Tuple[str, Partition, int]]:
    """The Table-1 pairing of Enomoto labels with partitions of 6, with dimensions.

    Labels are fixed to the printed pairing; the outer automorphism of S_6 would
    permute partitions without changing any dimension.
    """
    rows = []
    for label, parts, dim in SP4F2_TABLE:
        lam = Partition(parts)
        hook_dim = irrep_dimension(lam)
        if hook_dim != dim:
            raise ParahoricError(f"Table-1 dimension {dim} of {label} disagrees with hook length {hook_dim}")
        rows.append((label, lam, dim))
    return rows


def partition_of_label(label: str) -> Partition:
    for name, lam, _ in sp4f2_dictionary():
        if name == label:
            return lam
    raise ArgumentError(f"{label!r} is not a Table-1 label")


def label_of_partition(lam: Partition) -> str:
    for name, mu, _ in sp4f2_dictionary():
        if mu == lam:
            return name
    raise ArgumentError(f"{lam} is not a partition of 6")


def decompose(phi: ClassFunction) -> MultiplicityVector:
    """Multiplicities of the Sp(4,F_2) irreducibles in a class function of S_6.

    Raises NotACharacterError when an inner product is negative or non-integral.
    """
    if phi.n != 6:
        raise ArgumentError(f"expected a class function of S_6, got S_{phi.n}")
    products = {
        label: inner_product(phi, irreducible_character(lam))
        for label, lam, _ in sp4f2_dictionary()
    }
    if any(v < 0 or v.denominator != 1 for v in products.values()):
        logger.debug("Class function is not a character", inner_products={k: str(v) for k, v in products.items()})
        raise NotACharacterError(products)
    return MultiplicityVector.from_mapping({k: int(v) for k, v in products.items()})


def synthesize(vector: MultiplicityVector) -> ClassFunction:
    """Character of the representation with the given multiplicities."""
    total = ClassFunction.from_mapping(6, {mu: 0 for mu in partitions_of(6)})
    for label, count in vector.mult:
        if count:
            total = total + irreducible_character(partition_of_label(label)).scale(count)
    return total
