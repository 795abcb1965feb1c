"""Endoscopic and Saito-Kurokawa parts of the inner cohomology of the Siegel
threefold of principal congruence level 2, and of prime level p0 from
caller-supplied newform counts.

Pieces come back as Sp(4,F_2) multiplicity vectors at level 2 and as label
breakdowns at other primes.
"""

from functools import lru_cache
from itertools import combinations
from math import gcd, lcm, prod
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import factorint

from parahoric.models.cohomology import (
    CohomologyPiece,
    EndoPrimeEntry,
    IdentityCheck,
    SKPrimeEntry,
    Weight,
    YoshidaLevel,
)
from parahoric.models.local_types import (
    TWIST_XI_U,
    Cuspidal,
    GL2LocalType,
    PrincipalSeries,
    SKLocalInput,
    SteinbergTwist,
)
from parahoric.models.qseries import NewformCounts
from parahoric.models.representations import EVEN_SERIES, RepLabel, RestrictionOutcome
from parahoric.models.symgroup import MultiplicityVector
from parahoric.services.modforms_service import (
    InternalConsistencyError,
    UnsupportedWeightError,
    dim_cusp,
    newform_counts,
)
from parahoric.services.packet_service import (
    PacketService,
    epsilon_central,
    get_packet_service,
    local_root_number,
    sk_parity_admissible,
)
from parahoric.services.repdims_service import RepDimsService, get_repdims_service
from parahoric.utils.logging_config import get_logger
from parahoric.utils.validation import ArgumentError, ParahoricError, require_prime_power, require_squarefree

logger = get_logger(__name__)

# Local components at p = 2 of newforms of level dividing 4 with trivial character.
UNRAMIFIED_PS = PrincipalSeries()
STEINBERG = SteinbergTwist()
XI_U_STEINBERG = SteinbergTwist(twist=TWIST_XI_U)
LEVEL4_CUSPIDAL = Cuspidal(l=1)


def _even(family: str, *params: Tuple[int, int]) -> RepLabel:
    return RepLabel(EVEN_SERIES, family, tuple(params))


THETA = {i: _even(f"theta{i}") for i in range(1, 6)}
CHI1_00 = _even("chi1", (0, 1), (0, 1))
CHI2_1 = _even("chi2", (1, 3))
CHI6_0 = _even("chi6", (0, 1))
CHI8_1 = _even("chi8", (1, 3))
CHI9_1 = _even("chi9", (1, 3))
CHI10_0 = _even("chi10", (0, 1))
CHI12_1 = _even("chi12", (1, 3))
CHI13_1 = _even("chi13", (1, 3))
THETA1_THETA4 = _even("theta1+theta4")
THETA3_THETA4 = _even("theta3+theta4")


class HypothesisViolatedError(ParahoricError):
    """The input is outside the range where the lifting statement applies."""

    pass


def level2_components(counts: NewformCounts) -> List[Tuple[GL2LocalType, int]]:
    """Local types at 2 with the number of newforms of weight counts.r having them.

    Level 1 gives the unramified principal series, level 2 the Steinberg
    (Atkin-Lehner sign -1 at 2 for tau-) or its unramified quadratic twist
    (tau+), level 4 the depth-zero cuspidal.
    """
    return [
        (UNRAMIFIED_PS, counts.tau1),
        (STEINBERG, counts.tau_minus),
        (XI_U_STEINBERG, counts.tau_plus),
        (LEVEL4_CUSPIDAL, counts.tau4),
    ]


def level2_endo_entries(r1: int, r2: int) -> List[EndoPrimeEntry]:
    c1, c2 = newform_counts(r1), newform_counts(r2)
    return [
        EndoPrimeEntry(s1, s2, n1 * n2)
        for s1, n1 in level2_components(c1)
        for s2, n2 in level2_components(c2)
        if n1 * n2
    ]


def level2_sk_entries(r: int) -> List[SKPrimeEntry]:
    return [SKPrimeEntry(sigma, n) for sigma, n in level2_components(newform_counts(r)) if n]


def vanishing_flags(w: Weight) -> Dict[str, bool]:
    return {
        "inner_e_vanishes": w.lambda1 > w.lambda2 > 0,
        "endo_h3_vanishes_at_level2": w.lambda1 == w.lambda2,
    }


def yoshida_level(n1: int, n2: int, r1: Optional[int] = None, r2: Optional[int] = None) -> YoshidaLevel:
    """Principal congruence level lcm(N1, N2) of the Yoshida-type lift, and its
    type Sym^{r2-2} x det^{(r1-r2)/2+2} when the weights are given."""
    require_squarefree("N1", n1)
    require_squarefree("N2", n2)
    if gcd(n1, n2) == 1:
        raise HypothesisViolatedError(f"levels {n1} and {n2} are coprime; the lift needs gcd(N1, N2) > 1")
    if (r1 is None) != (r2 is None):
        raise ArgumentError("give both weights r1 and r2 or neither")
    if r1 is None:
        return YoshidaLevel(lcm(n1, n2), n1, n2)
    if r1 % 2 or r2 % 2 or not r1 > r2 >= 2:
        raise ArgumentError(f"weights must be even with r1 > r2 >= 2, got ({r1}, {r2})")
    return YoshidaLevel(lcm(n1, n2), n1, n2, sym_power=r2 - 2, det_power=(r1 - r2) // 2 + 2)


def classical_sk_divisors(n: int, k: int, signs: Mapping[int, int]) -> List[int]:
    """Divisors M of N with (-1)^{#primes of M} = (-1)^k prod eps_p.

    `signs` maps each prime p | N to the Atkin-Lehner eigenvalue eps_p.
    """
    require_squarefree("N", n)
    if k < 3:
        raise ArgumentError(f"the newform weight 2k-2 must be at least 4, got k={k}")
    primes = sorted(factorint(n))
    missing = [p for p in primes if p not in signs]
    if missing:
        raise ArgumentError(f"no Atkin-Lehner sign for primes {missing}")
    for p in primes:
        if signs[p] not in (1, -1):
            raise ArgumentError(f"eps_{p} must be +1 or -1, got {signs[p]}")
    target = (-1) ** k * prod(signs[p] for p in primes)
    divisors = [
        prod(subset)
        for size in range(len(primes) + 1)
        if (-1) ** size == target
        for subset in combinations(primes, size)
    ]
    return sorted(divisors)


class CohomologyService:
    """Hodge pieces of the lifted parts of inner cohomology."""

    def __init__(
        self,
        packets: Optional[PacketService] = None,
        repdims: Optional[RepDimsService] = None,
    ):
        self.repdims = repdims or get_repdims_service()
        self.packets = packets or PacketService(self.repdims)

    def _piece(
        self, hodge_type: str, terms: Iterable[Tuple[int, RepLabel]], q: int = 2
    ) -> CohomologyPiece:
        labels: Dict[RepLabel, int] = {}
        total = 0
        mult = MultiplicityVector() if q == 2 else None
        for count, label in terms:
            if count < 0:
                raise ArgumentError(f"negative count {count} for {label}")
            if count == 0:
                continue
            labels[label] = labels.get(label, 0) + count
            if mult is not None:
                mult = mult + self.repdims.decompose_at_q2(label).scale(count)
            total += count * self.repdims.evaluate_dim(label, q)
        if mult is not None and mult.total_dimension != total:
            raise InternalConsistencyError(
                f"{hodge_type}: label dimensions give {total}, multiplicities {mult.total_dimension}"
            )
        return CohomologyPiece(hodge_type, total, mult, tuple(labels.items()))

    def endo_level2(self, w: Weight) -> Tuple[CohomologyPiece, CohomologyPiece]:
        """(H^{3,0}, H^{2,1}) of the endoscopic part at level 2."""
        c1, c2 = newform_counts(w.r1), newform_counts(w.r2)
        same = c1.tau_plus * c2.tau_plus + c1.tau_minus * c2.tau_minus
        opposite = c1.tau_plus * c2.tau_minus + c1.tau_minus * c2.tau_plus
        h30 = self._piece(
            "H30",
            [
                (opposite, THETA[5]),
                (same, THETA[2]),
                (c1.tau4 * c2.tau4, CHI9_1),
            ],
        )
        h21 = self._piece(
            "H21",
            [
                (c1.tau4 * c2.tau4, CHI13_1),
                (c1.tau4 * c2.tau2 + c1.tau2 * c2.tau4, CHI12_1),
                (same, THETA1_THETA4),
                (opposite, THETA3_THETA4),
                (c1.tau1 * c2.tau4 + c1.tau4 * c2.tau1, CHI2_1),
                (c1.tau1 * c2.tau2 + c1.tau2 * c2.tau1, CHI10_0),
                (c1.tau1 * c2.tau1, CHI1_00),
            ],
        )
        logger.debug("Computed endoscopic pieces", weight=w.as_tuple(), h30=h30.total_dim, h21=h21.total_dim)
        return h30, h21

    def endo_hodge_pieces(self, w: Weight) -> Dict[str, CohomologyPiece]:
        h30, h21 = self.endo_level2(w)
        return {"H30": h30, "H21": h21, "H12": h21.relabel("H12"), "H03": h30.relabel("H03")}

    def endo_identity(self, w: Weight) -> IdentityCheck:
        h30, h21 = self.endo_level2(w)
        rhs = 5 * dim_cusp(4, w.r1) * dim_cusp(4, w.r2)
        return IdentityCheck("endo_difference", h21.total_dim - h30.total_dim, rhs)

    def inner_difference(self, w: Weight) -> int:
        """dim H^{2,1}_! - dim H^{3,0}_! at level 2 for lambda1 > lambda2 > 0.

        The non-lifted parts of the two Hodge types are isomorphic and the
        Eisenstein-type part vanishes, so only the endoscopic part remains.
        """
        if not vanishing_flags(w)["inner_e_vanishes"]:
            raise HypothesisViolatedError(f"needs lambda1 > lambda2 > 0, got {w.as_tuple()}")
        check = self.endo_identity(w)
        if not check.holds:
            raise InternalConsistencyError(f"endoscopic difference {check.lhs} != {check.rhs} for {w.as_tuple()}")
        return check.lhs

    def endo_prime(
        self, q: int, entries: Sequence[EndoPrimeEntry]
    ) -> Tuple[CohomologyPiece, CohomologyPiece]:
        """(H^{3,0}, H^{2,1}) at prime level from counts of local pairs at p0.

        H^{3,0} collects the restrictions of Pi_-, H^{2,1} those of Pi_+.
        """
        require_prime_power(q)
        for entry in entries:
            if entry.count < 0:
                raise ArgumentError(f"negative count {entry.count} for ({entry.sigma1}, {entry.sigma2})")

        def terms(sign: str) -> List[Tuple[int, RepLabel]]:
            out = []
            for entry in entries:
                if entry.count == 0:
                    continue
                outcome = self.packets.restrict_endo(entry.sigma1, entry.sigma2, sign, q)
                out.extend((entry.count * m, label) for label, m in outcome.summands)
            return out

        return self._piece("H30", terms("-"), q), self._piece("H21", terms("+"), q)

    def sk_level2(self, w: Weight) -> Tuple[CohomologyPiece, CohomologyPiece]:
        """(H^{3,0}, H^{1,1}) of the Saito-Kurokawa part at level 2."""
        if not w.is_parallel:
            raise UnsupportedWeightError(
                f"the Saito-Kurokawa part is computed for lambda1 = lambda2, got {w.as_tuple()}"
            )
        c = newform_counts(w.r)
        first = [(c.tau_plus, THETA[1]), (c.tau_minus, THETA[2]), (c.tau1, CHI6_0)]
        second = [(c.tau4, CHI8_1), (c.tau_plus, THETA[5]), (c.tau_minus, THETA[3])]
        if w.k % 2:
            first, second = second, first
        h30 = self._piece("H30", first)
        h11 = self._piece("H11", second)
        logger.debug("Computed Saito-Kurokawa pieces", k=w.k, h30=h30.total_dim, h11=h11.total_dim)
        return h30, h11

    def sk_hodge_pieces(self, w: Weight) -> Dict[str, CohomologyPiece]:
        h30, h11 = self.sk_level2(w)
        return {"H30": h30, "H03": h30.relabel("H03"), "H11": h11, "H22": h11.relabel("H22")}

    def sk_identity(self, w: Weight) -> IdentityCheck:
        h30, h11 = self.sk_level2(w)
        return IdentityCheck("sk_sum", h11.total_dim + h30.total_dim, 5 * dim_cusp(4, w.r))

    def _sk_place(self, sigma: GL2LocalType, q: int, target: int, archimedean: int) -> Optional[SKLocalInput]:
        """The local datum at p0 allowed by (-1)^{#S} = eps(sigma, 1/2), or None."""
        for in_s in (False, True):
            if sk_parity_admissible(archimedean + int(in_s), target):
                if in_s and not sigma.is_discrete_series:
                    return None
                return SKLocalInput(sigma, in_s=in_s)
        return None

    def sk_prime(
        self, q: int, k: int, entries: Sequence[SKPrimeEntry]
    ) -> Tuple[CohomologyPiece, CohomologyPiece]:
        """(H^{3,0}, H^{1,1}) of the Saito-Kurokawa part at prime level.

        H^{3,0} takes the archimedean place in S, H^{1,1} leaves it out; the
        place p0 joins S exactly when the parity condition requires it.
        """
        require_prime_power(q)
        if k < 3:
            raise ArgumentError(f"k must be at least 3, got {k}")
        h30_terms: List[Tuple[int, RepLabel]] = []
        h11_terms: List[Tuple[int, RepLabel]] = []
        for entry in entries:
            if entry.count < 0:
                raise ArgumentError(f"negative count {entry.count} for {entry.sigma}")
            if entry.epsilon not in (None, 1, -1):
                raise ArgumentError(f"epsilon must be +1 or -1, got {entry.epsilon}")
            if entry.count == 0:
                continue
            eps_p = entry.epsilon if entry.epsilon is not None else local_root_number(entry.sigma, q)
            target = epsilon_central(k, [eps_p])
            for archimedean, terms in ((1, h30_terms), (0, h11_terms)):
                datum = self._sk_place(entry.sigma, q, target, archimedean)
                if datum is None:
                    continue
                outcome: RestrictionOutcome = self.packets.restrict_sk(datum, q)
                terms.extend((entry.count * m, label) for label, m in outcome.summands)
        return self._piece("H30", h30_terms, q), self._piece("H11", h11_terms, q)


@lru_cache(maxsize=None)
def get_cohomology_service() -> CohomologyService:
    return CohomologyService(packets=get_packet_service())
