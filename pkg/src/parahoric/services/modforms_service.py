"""Exact q-expansions, cusp form bases of level 1 and 2, Hecke matrices and
newform counts with the Atkin-Lehner split at level 2."""

import json
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

from sympy import Matrix, QQ, Rational, bernoulli, divisor_sigma
from sympy.polys.matrices import DomainMatrix

from parahoric.config.settings import MAX_WEIGHT, MIN_WEIGHT, precision_for
from parahoric.models.qseries import NewformCounts, PrecisionError, QExpansion
from parahoric.utils.logging_config import get_logger
from parahoric.utils.validation import ArgumentError, ParahoricError, require_range

logger = get_logger(__name__)

STANDARD_SERIES = ("E2", "E4", "E6", "Delta", "Delta2", "A", "Bminus")
HECKE_OPERATORS = ("T2_level1", "U2_level2")


class UnsupportedWeightError(ParahoricError):
    pass


class InternalConsistencyError(ParahoricError):
    """A computed quantity failed its own verification (precision or basis bug)."""

    pass


class MethodDisagreementError(ParahoricError):
    """The trace method and the structure-count oracle gave different splits."""

    def __init__(self, r: int, trace_split: Tuple[int, int], oracle_split: Tuple[int, int]):
        self.r = r
        self.trace_split = trace_split
        self.oracle_split = oracle_split
        super().__init__(
            f"Atkin-Lehner split in weight {r}: trace method {trace_split}, oracle {oracle_split}"
        )


def _require_weight(k: int) -> None:
    if k % 2 or k < MIN_WEIGHT:
        raise UnsupportedWeightError(f"weight must be even and >= {MIN_WEIGHT}, got {k}")


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def euler_product(precision: int) -> QExpansion:
    """prod_{n>=1} (1 - q^n) by Euler's pentagonal number theorem."""
    coeffs = [0] * (precision + 1)
    m = 0
    while True:
        sign = -1 if m % 2 else 1
        e1 = m * (3 * m - 1) // 2
        e2 = m * (3 * m + 1) // 2
        if e1 > precision:
            break
        coeffs[e1] += sign
        if m and e2 <= precision:
            coeffs[e2] += sign
        m += 1
    return QExpansion.from_coefficients(coeffs, precision)


def eisenstein(k: int, precision: int) -> QExpansion:
    """E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n."""
    factor = -Rational(2 * k) / bernoulli(k)
    c = Fraction(int(factor.p), int(factor.q))
    coeffs = [Fraction(1)] + [c * int(divisor_sigma(n, k - 1)) for n in range(1, precision + 1)]
    return QExpansion(tuple(coeffs))


@lru_cache(maxsize=None)
def standard_series(name: str, precision: int) -> QExpansion:
    """Classical generators truncated at O(q^{precision+1})."""
    require_range("precision", precision, 0)
    if name in ("E2", "E4", "E6"):
        return eisenstein(int(name[1]), precision)
    if name == "Delta":
        return (euler_product(precision) ** 24).shift(1).truncate(precision)
    if name == "Delta2":
        eta = euler_product(precision)
        return (eta**8 * eta.at_power(2).truncate(precision) ** 8).shift(1).truncate(precision)
    if name == "A":
        e2 = standard_series("E2", precision)
        return e2.at_power(2).truncate(precision).scale(2) - e2
    if name == "Bminus":
        e4 = standard_series("E4", precision)
        return e4 - e4.at_power(2).truncate(precision).scale(4)
    raise ArgumentError(f"unknown series {name!r}; expected one of {', '.join(STANDARD_SERIES)}")


def dim_cusp(level: int, k: int) -> int:
    """dim S_k(Gamma_0(N)) for N in {1, 2, 4} and even k >= 2."""
    _require_weight(k)
    if level not in (1, 2, 4):
        raise ArgumentError(f"level must be 1, 2 or 4, got {level}")
    if k == 2:
        return 0
    if level == 1:
        return k // 12 - 1 if k % 12 == 2 else k // 12
    if level == 2:
        return k // 4 - 1
    return k // 2 - 2


def _monomial_exponents(level: int, k: int) -> List[Tuple[int, int]]:
    """(a, b) with Delta E4^a E6^b of weight k (level 1) or Delta2 A^a Bminus^b (level 2)."""
    if level == 1:
        rest, wa, wb = k - 12, 4, 6
    else:
        rest, wa, wb = k - 8, 2, 4
    if rest < 0:
        return []
    return [(a, (rest - wa * a) // wb) for a in range(rest // wa, -1, -1) if (rest - wa * a) % wb == 0]


def _echelonize(series: List[QExpansion], precision: int) -> List[QExpansion]:
    rows = [[QQ(int(c.numerator), int(c.denominator)) for c in f.coefficients] for f in series]
    matrix = DomainMatrix(rows, (len(rows), precision + 1), QQ)
    reduced, pivots = matrix.rref()
    if tuple(pivots) != tuple(range(1, len(series) + 1)):
        raise InternalConsistencyError(f"echelon pivots {tuple(pivots)} are not 1..{len(series)}")
    return [
        QExpansion(tuple(_to_fraction(x) for x in row))
        for row in reduced.to_list()
    ]


@lru_cache(maxsize=None)
def _cusp_basis(level: int, k: int, precision: int) -> Tuple[QExpansion, ...]:
    exponents = _monomial_exponents(level, k)
    if len(exponents) != dim_cusp(level, k):
        raise InternalConsistencyError(
            f"{len(exponents)} monomials for dim S_{k}(Gamma_0({level})) = {dim_cusp(level, k)}"
        )
    if not exponents:
        return ()
    if level == 1:
        base, g1, g2 = (standard_series(n, precision) for n in ("Delta", "E4", "E6"))
    else:
        base, g1, g2 = (standard_series(n, precision) for n in ("Delta2", "A", "Bminus"))
    max_a = max(a for a, _ in exponents)
    max_b = max(b for _, b in exponents)
    powers1 = [QExpansion.one(precision)]
    for _ in range(max_a):
        powers1.append(powers1[-1] * g1)
    powers2 = [QExpansion.one(precision)]
    for _ in range(max_b):
        powers2.append(powers2[-1] * g2)
    monomials = [base * powers1[a] * powers2[b] for a, b in exponents]
    basis = _echelonize(monomials, precision)
    logger.debug("Built cusp form basis", level=level, k=k, dim=len(basis), precision=precision)
    return tuple(basis)


def cusp_basis(level: int, k: int, precision: Optional[int] = None) -> List[QExpansion]:
    """Echelon basis of S_k(Gamma_0(N)), N in {1, 2}; basis i starts with q^{i+1}."""
    if level not in (1, 2):
        raise ArgumentError(f"bases are available for levels 1 and 2, got {level}")
    _require_weight(k)
    dim = dim_cusp(level, k)
    needed = precision_for(dim)
    if precision is None:
        precision = needed
    if precision < needed:
        raise PrecisionError(f"precision {precision} below {needed} for dim S_{k}(Gamma_0({level})) = {dim}")
    return list(_cusp_basis(level, k, precision))


def _apply_hecke(operator: str, f: QExpansion, k: int) -> QExpansion:
    out_precision = f.precision // 2
    coeffs = []
    for n in range(out_precision + 1):
        value = f.coefficient(2 * n)
        if operator == "T2_level1" and n % 2 == 0:
            value += 2 ** (k - 1) * f.coefficient(n // 2)
        coeffs.append(value)
    return QExpansion(tuple(coeffs))


def _coordinates(g: QExpansion, basis: List[QExpansion]) -> List[Fraction]:
    """Coordinates of g read at the pivot columns 1..d, verified to full precision."""
    coords = [g.coefficient(j + 1) for j in range(len(basis))]
    residual = g
    for c, f in zip(coords, basis):
        residual = residual - f.truncate(g.precision).scale(c)
    if any(residual.coefficients):
        raise InternalConsistencyError(
            f"Hecke image not in the span of the basis to O(q^{g.precision + 1})"
        )
    return coords


@lru_cache(maxsize=None)
def _hecke_matrix(operator: str, k: int, precision: int) -> Tuple[Tuple[Fraction, ...], ...]:
    level = 1 if operator == "T2_level1" else 2
    basis = cusp_basis(level, k, precision)
    rows = [tuple(_coordinates(_apply_hecke(operator, f, k), basis)) for f in basis]
    # Rows hold images; transpose so that columns are images of basis vectors.
    return tuple(tuple(rows[j][i] for j in range(len(rows))) for i in range(len(rows)))


def hecke_matrix(operator: str, k: int, precision: Optional[int] = None) -> Matrix:
    """Matrix of T_2 on S_k(SL_2(Z)) or U_2 on S_k(Gamma_0(2)) in the echelon basis."""
    if operator not in HECKE_OPERATORS:
        raise ArgumentError(f"operator must be one of {', '.join(HECKE_OPERATORS)}, got {operator!r}")
    _require_weight(k)
    level = 1 if operator == "T2_level1" else 2
    dim = dim_cusp(level, k)
    if precision is None:
        precision = precision_for(dim)
    if precision < precision_for(dim):
        raise PrecisionError(f"precision {precision} below {precision_for(dim)} for weight {k}")
    entries = _hecke_matrix(operator, k, precision)
    return Matrix(dim, dim, lambda i, j: Rational(entries[i][j].numerator, entries[i][j].denominator))


def _integer_trace(m: Matrix, what: str) -> int:
    t = m.trace() if m.rows else Rational(0)
    if not Rational(t).is_integer:
        raise InternalConsistencyError(f"trace of {what} is not an integer: {t}")
    return int(t)


def trace_difference(r: int) -> int:
    """tr(U_2 | S_r(Gamma_0(2))) - tr(T_2 | S_r(SL_2(Z)))."""
    _require_weight(r)
    return _integer_trace(hecke_matrix("U2_level2", r), "U2") - _integer_trace(
        hecke_matrix("T2_level1", r), "T2"
    )


def new_dimensions(r: int) -> Tuple[int, int, int]:
    """(tau1, tau2, tau4) by inclusion-exclusion over the divisors of 4."""
    tau1 = dim_cusp(1, r)
    tau2 = dim_cusp(2, r) - 2 * tau1
    tau4 = dim_cusp(4, r) - 3 * tau1 - 2 * tau2
    return tau1, tau2, tau4


def _split_from_signed_trace(r: int, tau2: int, signed: int, method: str) -> Tuple[int, int]:
    if (tau2 + signed) % 2 or abs(signed) > tau2:
        raise InternalConsistencyError(
            f"{method}: signed trace {signed} incompatible with tau2={tau2} in weight {r}"
        )
    return (tau2 + signed) // 2, (tau2 - signed) // 2


def al_split_oracle(r: int) -> Tuple[int, int]:
    """(tau+, tau-) from the Fricke eigenvalues of Delta2 (+1), A (-1) and Bminus (-1).

    The old space contributes trace 0, so trace(W_2) = sum over 2a+4b = r-8 of (-1)^{a+b}.
    """
    _require_weight(r)
    _, tau2, _ = new_dimensions(r)
    signed = sum((-1) ** (a + b) for a, b in _monomial_exponents(2, r))
    return _split_from_signed_trace(r, tau2, signed, "oracle")


def al_split_trace(r: int) -> Tuple[int, int]:
    """(tau+, tau-) from tr U_2 - tr T_2 = -2^{r/2-1} (tau+ - tau-)."""
    _require_weight(r)
    _, tau2, _ = new_dimensions(r)
    difference = trace_difference(r)
    scale = 2 ** (r // 2 - 1)
    if difference % scale:
        raise InternalConsistencyError(
            f"trace difference {difference} in weight {r} is not divisible by {scale}"
        )
    return _split_from_signed_trace(r, tau2, -difference // scale, "trace method")


@lru_cache(maxsize=None)
def newform_counts(r: int) -> NewformCounts:
    """New-subspace dimensions at levels 1, 2, 4 and the level-2 Atkin-Lehner split."""
    _require_weight(r)
    require_range("r", r, MIN_WEIGHT, MAX_WEIGHT)
    tau1, tau2, tau4 = new_dimensions(r)
    if min(tau1, tau2, tau4) < 0:
        raise InternalConsistencyError(f"negative new dimension in weight {r}: {(tau1, tau2, tau4)}")
    trace_split = al_split_trace(r)
    oracle_split = al_split_oracle(r)
    if trace_split != oracle_split:
        logger.error("Atkin-Lehner methods disagree", r=r, trace=trace_split, oracle=oracle_split)
        raise MethodDisagreementError(r, trace_split, oracle_split)
    counts = NewformCounts(
        r=r,
        tau1=tau1,
        tau2=tau2,
        tau4=tau4,
        tau_plus=trace_split[0],
        tau_minus=trace_split[1],
        dim_s_gamma0_4=dim_cusp(4, r),
    )
    logger.debug("Computed newform counts", **counts.to_dict())
    return counts


FIXTURE_KEYS = {"r": "r", "tau1": "tau1", "tau2": "tau2", "tau4": "tau4", "tauPlus": "tau_plus", "tauMinus": "tau_minus"}


def fixture_record(counts: NewformCounts) -> Dict[str, int]:
    data = counts.to_dict()
    return {external: data[internal] for external, internal in FIXTURE_KEYS.items()}


def load_fixtures(path: str) -> Dict[int, NewformCounts]:
    """Read pinned newform counts: a JSON list of {r, tau1, tau2, tau4, tauPlus, tauMinus}."""
    try:
        records = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ArgumentError(f"cannot read fixtures {path}: {e}") from e
    if not isinstance(records, list):
        raise ArgumentError(f"fixtures {path} must hold a JSON list")
    pinned = {}
    for record in records:
        missing = set(FIXTURE_KEYS) - set(record)
        if missing:
            raise ArgumentError(f"fixture record {record} lacks {sorted(missing)}")
        values = {internal: int(record[external]) for external, internal in FIXTURE_KEYS.items()}
        values["dim_s_gamma0_4"] = 3 * values["tau1"] + 2 * values["tau2"] + values["tau4"]
        pinned[values["r"]] = NewformCounts(**values)
    logger.info("Loaded newform fixtures", path=path, count=len(pinned))
    return pinned


def write_fixtures(path: str, weights: Iterable[int]) -> int:
    records = [fixture_record(newform_counts(r)) for r in sorted(set(weights))]
    Path(path).write_text(json.dumps(records, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info("Wrote newform fixtures", path=path, count=len(records))
    return len(records)


def fixture_mismatches(pinned: Dict[int, NewformCounts]) -> List[Dict[str, object]]:
    """Pinned records that differ from a fresh computation."""
    mismatches = []
    for r in sorted(pinned):
        fresh = newform_counts(r)
        if fresh != pinned[r]:
            mismatches.append({"r": r, "pinned": fixture_record(pinned[r]), "computed": fixture_record(fresh)})
    return mismatches
