"""The identity suite behind `parahoric check`.

Every check records its cases and violations; the report is ordered
canonically and carries a sha256 digest of its JSON body so that two runs
can be compared byte for byte.
"""

import json
from fractions import Fraction
from importlib.resources import files
from itertools import combinations_with_replacement
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import expand

from parahoric.config.settings import (
    AL_SPLIT_RANGE,
    DATA_PACKAGE,
    DEFAULT_Q_VALUES,
    DEFAULT_RMAX,
    DIM_CHECK_Q_RANGE,
    LFACTOR_PRIMES,
    OLD_NEW_KMAX,
    REPORT_SCHEMA_FILE,
)
from parahoric.models.cohomology import Weight
from parahoric.models.lfactors import X, EulerFactor
from parahoric.models.local_types import (
    TWIST_XI_T,
    TWIST_XI_U,
    Cuspidal,
    GL2LocalType,
    PrincipalSeries,
    SKLocalInput,
    SteinbergTwist,
)
from parahoric.models.qseries import NewformCounts
from parahoric.models.report import CheckResult, Violation
from parahoric.models.representations import EVEN_SERIES, ODD_SERIES, RepLabel
from parahoric.models.symgroup import SP4F2_DIMENSIONS
from parahoric.services import lfactor_service as lf
from parahoric.services.cohomology_service import (
    get_cohomology_service,
    level2_endo_entries,
    level2_sk_entries,
    vanishing_flags,
)
from parahoric.services.modforms_service import (
    al_split_oracle,
    al_split_trace,
    cusp_basis,
    dim_cusp,
    fixture_mismatches,
    new_dimensions,
    standard_series,
)
from parahoric.services.packet_service import InconsistentInputError, get_packet_service
from parahoric.services.repdims_service import (
    ENDOSCOPIC_TABLE,
    SK_TABLE,
    CatalogueError,
    canonical_cuspidal_index,
    get_repdims_service,
    k1_invariant_dimension,
)
from parahoric.services.symgroup_service import (
    character_table,
    decompose,
    inner_product,
    irreducible_character,
    irrep_dimension,
    partitions_of,
    sp4f2_dictionary,
    synthesize,
)
from parahoric.utils.hash_utils import payload_digest
from parahoric.utils.logging_config import get_logger
from parahoric.utils.process_pool import ordered_map
from parahoric.utils.validation import ParahoricError, is_prime_power

logger = get_logger(__name__)

# Character indices of the level-2 local types, by parameter modulus.
_Q2_INDEX = {"q-1": 0, "q+1": 1, "q**2-1": 1}


def load_report_schema() -> Dict[str, Any]:
    """JSON schema of the report returned by CheckService.run."""
    return json.loads(files(DATA_PACKAGE).joinpath(REPORT_SCHEMA_FILE).read_text(encoding="utf-8"))


def endo_weights(rmax: int) -> List[Tuple[int, int]]:
    """(lambda1, lambda2) with lambda1 >= lambda2 >= 0 and r1 <= rmax."""
    return [
        (l1, l2)
        for l1 in range(max(rmax - 3, 0))
        for l2 in range(l1 + 1)
        if l1 + l2 + 4 <= rmax
    ]


def sk_weights(rmax: int) -> List[Tuple[int, int]]:
    return [(lam, lam) for lam in range(max(rmax - 3, 0)) if 2 * lam + 4 <= rmax]


def _endo_case(lam: Tuple[int, int]) -> List[Violation]:
    service = get_cohomology_service()
    w = Weight(*lam)
    key = f"{lam[0]},{lam[1]}"
    out = CheckResult("endo_sweep")
    try:
        identity = service.endo_identity(w)
        out.record(key, identity.holds, identity.to_dict())
        h30, h21 = service.endo_level2(w)
        if vanishing_flags(w)["endo_h3_vanishes_at_level2"]:
            out.record(key, h30.is_zero and h21.is_zero, f"nonzero pieces {h30.total_dim}, {h21.total_dim}")
        p30, p21 = service.endo_prime(2, level2_endo_entries(w.r1, w.r2))
        out.record(
            key,
            (p30.mult, p21.mult) == (h30.mult, h21.mult),
            f"prime-level route gives {p30.mult} / {p21.mult}, level-2 formula {h30.mult} / {h21.mult}",
        )
        for piece in (h30, h21):
            out.record(key, decompose(synthesize(piece.mult)) == piece.mult, f"{piece.hodge_type} does not resynthesize")
    except ParahoricError as e:
        out.record(key, False, e)
    return out.violations


def _sk_case(lam: Tuple[int, int]) -> List[Violation]:
    service = get_cohomology_service()
    w = Weight(*lam)
    key = str(lam[0])
    out = CheckResult("sk_sweep")
    try:
        identity = service.sk_identity(w)
        out.record(key, identity.holds, identity.to_dict())
        h30, h11 = service.sk_level2(w)
        p30, p11 = service.sk_prime(2, w.k, level2_sk_entries(w.r))
        out.record(
            key,
            (p30.mult, p11.mult) == (h30.mult, h11.mult),
            f"prime-level route gives {p30.mult} / {p11.mult}, level-2 formula {h30.mult} / {h11.mult}",
        )
    except ParahoricError as e:
        out.record(key, False, e)
    return out.violations


def _al_case(r: int) -> List[Violation]:
    out = CheckResult("al_split")
    try:
        trace, oracle = al_split_trace(r), al_split_oracle(r)
        out.record(str(r), trace == oracle, f"trace {trace}, oracle {oracle}")
    except ParahoricError as e:
        out.record(str(r), False, e)
    return out.violations


def _local_representatives(q: int) -> List[GL2LocalType]:
    """One local type per table column at residue field F_q, with trivial
    central character on the units."""
    reps: List[GL2LocalType] = [PrincipalSeries(), SteinbergTwist(), SteinbergTwist(twist=TWIST_XI_U)]
    if q % 2:
        reps.append(SteinbergTwist(twist=TWIST_XI_T))
    seen: List[int] = []
    for j in range(1, q + 1):
        l = (q - 1) * j
        if l % (q + 1) == 0:
            continue
        index = canonical_cuspidal_index(l, q)
        if index not in seen:
            seen.append(index)
            reps.append(Cuspidal(l=index))
        if len(seen) == 2:
            break
    return reps


class CheckService:
    """Runs every identity over the configured ranges."""

    def __init__(
        self,
        rmax: int = DEFAULT_RMAX,
        q_values: Sequence[int] = DEFAULT_Q_VALUES,
        jobs: int = 1,
        fixtures: Optional[Dict[int, NewformCounts]] = None,
    ):
        self.rmax = rmax
        self.q_values = tuple(q_values)
        self.jobs = jobs
        self.fixtures = fixtures
        self.repdims = get_repdims_service()
        self.packets = get_packet_service()

    def check_table1(self) -> CheckResult:
        result = CheckResult("table1")
        rows = sp4f2_dictionary()
        for label, lam, dim in rows:
            result.record(f"dim:{label}", irrep_dimension(lam) == dim == SP4F2_DIMENSIONS[label], irrep_dimension(lam))
        total = sum(d * d for _, _, d in rows)
        result.record("sum_of_squares", total == 720, f"sum of squared dimensions {total}")
        parts = partitions_of(6)
        chars = [irreducible_character(lam) for lam in parts]
        for i, a in enumerate(chars):
            for j, b in enumerate(chars):
                expected = Fraction(int(i == j))
                value = inner_product(a, b)
                result.record(f"<{parts[i]},{parts[j]}>", value == expected, value)
        table = character_table(6)
        identity_column = [row[-1] for row in table]
        result.record("identity_column", identity_column == [irrep_dimension(lam) for lam in parts], identity_column)
        return result

    def _q2_label(self, family: str) -> RepLabel:
        entry = self.repdims.label_entry(RepLabel(EVEN_SERIES, family))
        values = tuple(_Q2_INDEX[p] for p in entry.get("params", []))
        return self.repdims.make_label(EVEN_SERIES, family, values, q=2)

    def check_q2_rows(self) -> CheckResult:
        result = CheckResult("q2_rows")
        for table in (ENDOSCOPIC_TABLE, SK_TABLE):
            for row in self.repdims.rows(table):
                if row.even_family is None:
                    continue
                label = self._q2_label(row.even_family)
                try:
                    mult = self.repdims.decompose_at_q2(label)
                except CatalogueError:
                    # Pairs of non-isomorphic depth-zero cuspidals do not exist over F_2.
                    continue
                expected = row.dim_poly.evaluate(2)
                result.record(row.row_id, mult.total_dimension == expected, f"{mult} has dim {mult.total_dimension}, row {expected}")
        return result

    def check_laws(self) -> CheckResult:
        result = CheckResult("polynomial_laws")
        for key in self.repdims.endoscopic_pair_keys():
            law = self.repdims.paired_difference(key)
            result.record(key, law.holds, law.to_dict())
        for key in self.repdims.sk_keys():
            law = self.repdims.sk_sum(key)
            result.record(f"sk:{key}", law.holds, law.to_dict())
        return result

    def check_dim_positivity(self) -> CheckResult:
        result = CheckResult("dim_positivity")
        low, high = DIM_CHECK_Q_RANGE
        for q in range(low, high + 1):
            if not is_prime_power(q):
                continue
            series = EVEN_SERIES if q % 2 == 0 else ODD_SERIES
            for family in self.repdims.families(series):
                value = self.repdims.dim_polynomial(RepLabel(series, family)).evaluate(q)
                result.record(f"{family}@{q}", value > 0, value)
        return result

    def check_restrictions(self) -> CheckResult:
        """Numerical Pi_+ - Pi_- and Saito-Kurokawa sums through the packet tables."""
        result = CheckResult("restrictions")
        for q in self.q_values:
            q2 = q * q + 1
            reps = _local_representatives(q)
            for a, b in combinations_with_replacement(reps, 2):
                plus = self.packets.restrict_endo(a, b, "+", q).dimension
                minus = self.packets.restrict_endo(a, b, "-", q).dimension
                expected = q2 * k1_invariant_dimension(a.kind).evaluate(q) * k1_invariant_dimension(b.kind).evaluate(q)
                result.record(f"{a}|{b}@{q}", plus - minus == expected, f"{plus} - {minus} != {expected}")
                predicates = self.packets.invariance_predicates(a, b, "+", q=q)
                result.record(f"k-prime:{a}|{b}@{q}", predicates["has_k"] == predicates["has_k_prime"], predicates)
                if a.has_iwahori_invariants and b.has_iwahori_invariants:
                    result.record(f"iwahori:{a}|{b}@{q}", predicates["has_k"], predicates)
            for sigma in reps:
                total = self.packets.restrict_sk(SKLocalInput(sigma), q).dimension
                try:
                    total += self.packets.restrict_sk(SKLocalInput(sigma, in_s=True), q).dimension
                except InconsistentInputError:
                    pass
                expected = q2 * k1_invariant_dimension(sigma.kind).evaluate(q)
                result.record(f"sk:{sigma}@{q}", total == expected, f"{total} != {expected}")
        return result

    def check_newforms(self) -> CheckResult:
        result = CheckResult("newforms")
        for k in range(2, OLD_NEW_KMAX + 1, 2):
            tau1, tau2, tau4 = new_dimensions(k)
            result.record(f"new@{k}", min(tau1, tau2, tau4) >= 0, (tau1, tau2, tau4))
            result.record(f"level2@{k}", dim_cusp(2, k) == 2 * tau1 + tau2)
            result.record(f"level4@{k}", dim_cusp(4, k) == 3 * tau1 + 2 * tau2 + tau4)
            for level in (1, 2):
                basis = cusp_basis(level, k)
                result.record(f"basis{level}@{k}", len(basis) == dim_cusp(level, k), len(basis))
        a2_delta = standard_series("Delta", 4).coefficient(2)
        a2_delta2 = standard_series("Delta2", 4).coefficient(2)
        result.record("a2(Delta)", a2_delta == -24, a2_delta)
        result.record("a2(Delta2)", a2_delta2 == -8, a2_delta2)
        return result

    def check_al_split(self) -> CheckResult:
        low, high = AL_SPLIT_RANGE
        weights = list(range(low, high + 1, 2))
        result = CheckResult("al_split", cases=len(weights))
        for violations in ordered_map(_al_case, weights, jobs=self.jobs):
            result.violations.extend(violations)
        return result

    def _sweep(self, name: str, func, weights: List[Tuple[int, int]]) -> CheckResult:
        result = CheckResult(name, cases=len(weights))
        for violations in ordered_map(func, weights, jobs=self.jobs):
            result.violations.extend(violations)
        logger.info("Finished sweep", check=name, weights=len(weights), violations=len(result.violations))
        return result

    def check_lfactors(self) -> CheckResult:
        result = CheckResult("lfactors")
        for p in LFACTOR_PRIMES:
            e1 = lf.gl2_unramified_factor(p, 1, 12)
            e2 = lf.steinberg_factor(p, -1)
            one = EulerFactor.one(p)
            product = lf.spinor_product(e1, e1)
            result.record(f"degree@{p}", product.degree == 4, product)
            result.record(f"unit@{p}", lf.spinor_product(e1, one) == e1)
            result.record(
                f"commutative@{p}", lf.spinor_product(e1, e2) == lf.spinor_product(e2, e1)
            )
            for t in (Fraction(-2), Fraction(1, 2), Fraction(3)):
                back = lf.shift(lf.shift(e1, t), -t)
                result.record(f"shift({t})@{p}", back == e1, back)
            for k in range(3, 13):
                correction = lf.sk_correction(p, k, -1)
                cancelled = expand(correction.numerator - (1 - p ** (k - 1) * X)) == 0
                result.record(f"correction(k={k})@{p}", cancelled and correction.denominator == 1, correction.to_dict())
        return result

    def check_fixtures(self) -> CheckResult:
        result = CheckResult("fixtures")
        if not self.fixtures:
            return result
        mismatches = fixture_mismatches(self.fixtures)
        result.cases = len(self.fixtures)
        for mismatch in mismatches:
            result.violations.append(Violation("fixtures", str(mismatch["r"]), str(mismatch)))
        return result

    def run(self) -> Dict[str, Any]:
        logger.info("Running identity suite", rmax=self.rmax, q_values=list(self.q_values), jobs=self.jobs)
        results = [
            self.check_table1(),
            self.check_q2_rows(),
            self.check_laws(),
            self.check_dim_positivity(),
            self.check_restrictions(),
            self.check_newforms(),
            self.check_al_split(),
            self._sweep("endo_sweep", _endo_case, endo_weights(self.rmax)),
            self._sweep("sk_sweep", _sk_case, sk_weights(self.rmax)),
            self.check_lfactors(),
            self.check_fixtures(),
        ]
        violations = sorted(v for r in results for v in r.violations)
        body = {
            "rmax": self.rmax,
            "q_values": list(self.q_values),
            "checks": [r.summary() for r in results],
            "violations": [v.to_dict() for v in violations],
            "passed": not violations,
        }
        if violations:
            logger.error("Identity suite found violations", count=len(violations))
        body["digest"] = payload_digest(body).hex()
        return body
