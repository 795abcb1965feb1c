"""Local endoscopic L-packets, parahoric restriction of packet members and of
Saito-Kurokawa lifts, and the sign bookkeeping around them."""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from parahoric.models.lfactors import EulerFactor
from parahoric.models.local_types import (
    KIND_ORDER,
    TWIST_NONE,
    TWIST_WILD,
    TWIST_XI_T,
    TWIST_XI_U,
    UNRAMIFIED,
    Cuspidal,
    GL2LocalType,
    PacketMember,
    PrincipalSeries,
    SKLocalInput,
    SteinbergTwist,
)
from parahoric.models.representations import (
    EVEN_SERIES,
    ODD_SERIES,
    RepLabel,
    RestrictionOutcome,
)
from parahoric.services.repdims_service import (
    ENDOSCOPIC_TABLE,
    SK_TABLE,
    RepDimsService,
    canonical_cuspidal_index,
    get_repdims_service,
    k1_invariant_dimension,
    k_tilde,
    kappa_inverse,
    kappa_star,
)
from parahoric.utils.logging_config import get_logger
from parahoric.utils.validation import ArgumentError, ParahoricError, require_prime_power

logger = get_logger(__name__)

SIGNS = ("+", "-")


class InconsistentInputError(ParahoricError):
    """The local data cannot occur together (e.g. xi_t at even residue characteristic)."""

    pass


@dataclass(frozen=True)
class Level4Datum:
    dim_invariants: int
    epsilon: int
    l_factor: EulerFactor


def _relative_twist(a: SteinbergTwist, b: SteinbergTwist) -> str:
    if a.twist == b.twist:
        return TWIST_NONE
    pair = {a.twist, b.twist}
    if TWIST_WILD in pair:
        return TWIST_WILD
    if TWIST_XI_T in pair:
        return TWIST_XI_T
    return TWIST_XI_U


def _cuspidals_isomorphic(a: Cuspidal, b: Cuspidal, q: Optional[int]) -> bool:
    # Positive-depth cuspidals carry no data to compare; they are kept apart.
    if a.positive_depth or b.positive_depth:
        return False
    if q is None:
        return a.l == b.l
    return canonical_cuspidal_index(a.l, q) == canonical_cuspidal_index(b.l, q)


def order_pair(s1: GL2LocalType, s2: GL2LocalType) -> Tuple[GL2LocalType, GL2LocalType]:
    """Put the pair in table order: principal series, Steinberg twists, cuspidals."""
    if KIND_ORDER[s2.kind] < KIND_ORDER[s1.kind]:
        return s2, s1
    return s1, s2


def central_residue_index(sigma: GL2LocalType, q: int) -> Optional[int]:
    """Index mod q-1 of the central character on the units, or None past depth zero.

    Quadratic twists square to the trivial character and drop out.
    """
    m = q - 1
    if isinstance(sigma, PrincipalSeries):
        if not sigma.has_k1_invariants:
            return None
        return (sigma.chi1.index + sigma.chi2.index) % m
    if isinstance(sigma, SteinbergTwist):
        return (2 * sigma.mu.index) % m if sigma.mu.depth_zero else None
    if sigma.positive_depth:
        return None
    return sigma.l % m


def _check_representable(sigmas: Sequence[GL2LocalType], q: int) -> None:
    if q % 2 == 0:
        for sigma in sigmas:
            if isinstance(sigma, SteinbergTwist) and sigma.twist == TWIST_XI_T:
                raise InconsistentInputError(
                    f"{sigma}: the tamely ramified quadratic character xi_t does not exist for even q={q}"
                )


def _check_central_characters(s1: GL2LocalType, s2: GL2LocalType, q: int) -> None:
    w1, w2 = central_residue_index(s1, q), central_residue_index(s2, q)
    if w1 is not None and w2 is not None and w1 != w2:
        raise InconsistentInputError(
            f"central characters differ on the units: {s1} has index {w1}, {s2} has index {w2} mod {q - 1}"
        )


def _check_trivial_central_character(sigma: GL2LocalType, q: int) -> None:
    w = central_residue_index(sigma, q)
    if w not in (None, 0):
        raise InconsistentInputError(
            f"{sigma}: a Saito-Kurokawa input needs trivial central character, got index {w} mod {q - 1}"
        )


def _untwisted_cuspidal_index(l: int, mu_index: int, q: int) -> int:
    """Canonical index of rho with sigma = mu * rho, i.e. Lambda divided by mu o Norm."""
    return canonical_cuspidal_index(l - (q + 1) * mu_index, q)


def epsilon_central(k: int, signs: Sequence[int]) -> int:
    """Central root number (-1)^{k-1} prod eps_p of a weight-k newform."""
    result = (-1) ** (k - 1)
    for eps in signs:
        if eps not in (1, -1):
            raise ArgumentError(f"local signs must be +1 or -1, got {eps}")
        result *= eps
    return result


def sk_parity_admissible(size_of_s: int, epsilon: int) -> bool:
    """(-1)^{#S} = eps(sigma, 1/2)."""
    if size_of_s < 0:
        raise ArgumentError(f"#S must be non-negative, got {size_of_s}")
    if epsilon not in (1, -1):
        raise ArgumentError(f"epsilon must be +1 or -1, got {epsilon}")
    return (-1) ** size_of_s == epsilon


def level4_cuspidal_datum() -> Level4Datum:
    """The unique depth-zero cuspidal of PGL(2,Q_2) with trivial central character."""
    return Level4Datum(
        dim_invariants=k1_invariant_dimension("cusp").evaluate(2),
        epsilon=-1,
        l_factor=EulerFactor.one(2),
    )


def local_root_number(sigma: GL2LocalType, q: Optional[int] = None) -> int:
    """Root number of the local types occurring in level dividing 4."""
    if isinstance(sigma, PrincipalSeries) and sigma.is_spherical:
        return 1
    if isinstance(sigma, SteinbergTwist) and sigma.mu.ramification == UNRAMIFIED:
        if sigma.twist == TWIST_NONE:
            return -1
        if sigma.twist == TWIST_XI_U:
            return 1
    if isinstance(sigma, Cuspidal) and not sigma.positive_depth and q == 2:
        return level4_cuspidal_datum().epsilon
    raise ArgumentError(f"no recorded root number for {sigma}")


def global_packet_size(discrete_places: int) -> int:
    """Automorphic members of a global packet with the given number of
    discrete-series places: sign choices with an even number of minus signs."""
    if discrete_places < 0:
        raise ArgumentError(f"number of places must be non-negative, got {discrete_places}")
    return 2 ** (discrete_places - 1) if discrete_places >= 1 else 1


def packet_sign_choices(discrete_places: int) -> List[Tuple[str, ...]]:
    if discrete_places < 0:
        raise ArgumentError(f"number of places must be non-negative, got {discrete_places}")
    return [
        signs
        for signs in product(SIGNS, repeat=discrete_places)
        if signs.count("-") % 2 == 0
    ]


class PacketService:
    """Table lookups for local packets and their parahoric restrictions."""

    def __init__(self, repdims: Optional[RepDimsService] = None):
        self.repdims = repdims or get_repdims_service()

    def endoscopic_key(
        self, s1: GL2LocalType, s2: GL2LocalType, q: Optional[int] = None, packet: bool = False
    ) -> Tuple[str, GL2LocalType, GL2LocalType]:
        """Row key of the unordered pair, with the pair in table order.

        Packet rows merge the two quadratic Steinberg twists into one row.
        """
        a, b = order_pair(s1, s2)
        kinds = (a.kind, b.kind)
        if kinds == ("st", "st"):
            twist = _relative_twist(a, b)
            if twist == TWIST_NONE:
                return "st|st", a, b
            if packet:
                return "st|xi-st", a, b
            # The row is written with the untwisted member first.
            if a.twist != TWIST_NONE and b.twist == TWIST_NONE:
                a, b = b, a
            suffix = {TWIST_XI_U: "xu-st", TWIST_XI_T: "xt-st", TWIST_WILD: "wild-st"}[twist]
            return f"st|{suffix}", a, b
        if kinds == ("cusp", "cusp"):
            iso = _cuspidals_isomorphic(a, b, q)
            return f"cusp|cusp-{'iso' if iso else 'noniso'}", a, b
        return f"{a.kind}|{b.kind}", a, b

    def endoscopic_packet(
        self, s1: GL2LocalType, s2: GL2LocalType, q: Optional[int] = None
    ) -> Tuple[PacketMember, PacketMember]:
        key, _, _ = self.endoscopic_key(s1, s2, q=q, packet=True)
        row = self.repdims.packet_descriptors(key)
        plus = PacketMember("+", row["plus"], True)
        minus = (
            PacketMember("-", row["minus"], True) if row.get("minus") else PacketMember.absent("-")
        )
        return plus, minus

    def _even_params(
        self, key: str, sign: str, a: GL2LocalType, b: GL2LocalType, q: int
    ) -> Tuple[Tuple[int, int], ...]:
        m = q - 1
        n = q + 1
        if key == "ps|ps":
            k1, k2, k3 = a.chi1.index, a.chi2.index, b.chi1.index
            return (((k1 - k3) % m, m), ((k2 - k3) % m, m))
        if key == "ps|st":
            return (((b.mu.index - a.chi1.index) % m, m),)
        # Rows with a cuspidal are written (.., mu1 * rho2): strip mu1 first.
        if key == "ps|cusp":
            return ((_untwisted_cuspidal_index(b.l, a.chi1.index, q), q * q - 1),)
        if key == "st|cusp":
            return ((kappa_inverse(_untwisted_cuspidal_index(b.l, a.mu.index, q), q), n),)
        if key == "cusp|cusp-iso":
            return ((kappa_star(canonical_cuspidal_index(a.l, q), q), n),)
        if key == "cusp|cusp-noniso":
            l1 = canonical_cuspidal_index(a.l, q)
            l2 = canonical_cuspidal_index(b.l, q)
            kt1, kt2 = k_tilde(l1, l2, q)
            return ((kt1, n), (kt2, n))
        return ()

    def restrict_endo(
        self, s1: GL2LocalType, s2: GL2LocalType, sign: str, q: int
    ) -> RestrictionOutcome:
        """F_p(Pi_sign(s1, s2)) as a representation of GSp(4,F_q)."""
        require_prime_power(q)
        if sign not in SIGNS:
            raise ArgumentError(f"sign must be '+' or '-', got {sign!r}")
        _check_representable((s1, s2), q)
        _check_central_characters(s1, s2, q)
        if not (s1.has_k1_invariants and s2.has_k1_invariants):
            logger.debug("Restriction vanishes: input without K1 invariants", sigma1=str(s1), sigma2=str(s2))
            return RestrictionOutcome.zero(q)

        key, a, b = self.endoscopic_key(s1, s2, q=q)
        row = self.repdims.find_row(ENDOSCOPIC_TABLE, key, sign)
        if row is None:
            return RestrictionOutcome.zero(q)
        family = self.repdims.row_family(row, q)
        if family is None:
            return RestrictionOutcome.zero(q, row=row)

        if q % 2 == 0:
            label = RepLabel(EVEN_SERIES, family, self._even_params(key, sign, a, b, q))
        else:
            label = RepLabel(ODD_SERIES, family)
        return RestrictionOutcome(q=q, summands=((label, 1),), dim_poly=row.dim_poly, row=row)

    def sk_key(self, sigma: GL2LocalType) -> str:
        if isinstance(sigma, SteinbergTwist):
            return {TWIST_NONE: "st", TWIST_XI_U: "xu-st", TWIST_XI_T: "xt-st"}.get(sigma.twist, "wild-st")
        return sigma.kind

    def restrict_sk(self, sk_input: SKLocalInput, q: int) -> RestrictionOutcome:
        """F_p of the local Saito-Kurokawa lift Pi(sigma, sigma_S)."""
        require_prime_power(q)
        sigma = sk_input.sigma
        if sk_input.in_s and not sigma.is_discrete_series:
            raise InconsistentInputError(
                f"{sigma}: sigma_S = St at this place needs a discrete-series sigma"
            )
        _check_representable((sigma,), q)
        _check_trivial_central_character(sigma, q)
        if not sigma.has_k1_invariants:
            return RestrictionOutcome.zero(q)

        key = self.sk_key(sigma)
        row = self.repdims.row(SK_TABLE, key, "St" if sk_input.in_s else "1")
        family = self.repdims.row_family(row, q)
        if family is None:
            return RestrictionOutcome.zero(q, row=row)

        params: Tuple[Tuple[int, int], ...] = ()
        if q % 2 == 0:
            if key == "ps":
                params = ((sigma.chi1.index % (q - 1), q - 1),)
            elif key == "cusp":
                params = ((kappa_inverse(canonical_cuspidal_index(sigma.l, q), q), q + 1),)
            label = RepLabel(EVEN_SERIES, family, params)
        else:
            label = RepLabel(ODD_SERIES, family)
        return RestrictionOutcome(q=q, summands=((label, 1),), dim_poly=row.dim_poly, row=row)

    def invariance_predicates(
        self, s1: GL2LocalType, s2: GL2LocalType, sign: str, q: Optional[int] = None
    ) -> Dict[str, bool]:
        """Sphericity and existence of K(p)- and K'(p)-invariants of Pi_sign(s1, s2).

        Pi has K'(p)-invariants exactly when it has K(p)-invariants, for every
        pair and sign, so `has_k_prime` repeats `has_k`. With `q` given the
        central characters of the pair are checked first.
        """
        if sign not in SIGNS:
            raise ArgumentError(f"sign must be '+' or '-', got {sign!r}")
        if q is not None:
            _check_central_characters(s1, s2, q)
        spherical = s1.is_spherical and s2.is_spherical and sign == "+"
        has_k = False
        if s1.has_k1_invariants and s2.has_k1_invariants:
            key, _, _ = self.endoscopic_key(s1, s2, q=q)
            row = self.repdims.find_row(ENDOSCOPIC_TABLE, key, sign)
            has_k = row is not None and not row.dim_poly.is_zero()
        return {"spherical": spherical, "has_k": has_k, "has_k_prime": has_k}

    def sk_invariance_predicates(self, sk_input: SKLocalInput) -> Dict[str, bool]:
        """Same predicates for the local Saito-Kurokawa lift; here too K'(p)- and
        K(p)-invariants exist together."""
        sigma = sk_input.sigma
        spherical = sigma.is_spherical and not sk_input.in_s
        has_k = False
        if sigma.has_k1_invariants:
            row = self.repdims.find_row(SK_TABLE, self.sk_key(sigma), "St" if sk_input.in_s else "1")
            has_k = row is not None and not row.dim_poly.is_zero()
        return {"spherical": spherical, "has_k": has_k, "has_k_prime": has_k}


@lru_cache(maxsize=None)
def get_packet_service() -> PacketService:
    return PacketService()
