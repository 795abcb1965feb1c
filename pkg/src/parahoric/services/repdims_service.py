"""Dimension polynomials of GSp(4,F_q) labels, q=2 decompositions and the
character-index maps used to name restrictions."""

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib.resources import files
from typing import Dict, List, Optional, Tuple, Union

from parahoric.config.settings import CATALOGUE_FILE, CATALOGUE_VERSION, DATA_PACKAGE
from parahoric.models.representations import (
    EVEN_SERIES,
    ODD_SERIES,
    IntPolynomial,
    RepLabel,
    TableRow,
)
from parahoric.models.symgroup import SP4F2_LABELS, MultiplicityVector
from parahoric.utils.logging_config import get_logger
from parahoric.utils.validation import ArgumentError, ParahoricError, require_range

logger = get_logger(__name__)

ENDOSCOPIC_TABLE = "endo"
SK_TABLE = "sk"

_PARAMETRIZED_LABEL = re.compile(r"(.+?)\((-?\d+(?:,-?\d+)*)\)")

# Kinds of a GL(2) local type as they occur in row keys.
_BASE_KIND = {
    "ps": "ps",
    "st": "st",
    "xu-st": "st",
    "xt-st": "st",
    "cusp": "cusp",
    "cusp-iso": "cusp",
    "cusp-noniso": "cusp",
}


class CatalogueError(ParahoricError):
    """A label or row is not in the shipped catalogue."""

    pass


class NotInImageError(ParahoricError):
    """kappa^{-1} was requested for an index outside the image of kappa."""

    pass


def kappa(x: int, q: int) -> int:
    """Z/(q+1) -> Z/(q^2-1), x -> (q-1)x."""
    return ((q - 1) * x) % (q * q - 1)


def kappa_inverse(l: int, q: int) -> int:
    if l % (q - 1) != 0:
        raise NotInImageError(f"l={l} is not in the image of kappa for q={q}")
    return (l // (q - 1)) % (q + 1)


def kappa_star(l: int, q: int) -> int:
    """Reduction Z/(q^2-1) -> Z/(q+1)."""
    return l % (q + 1)


def k_tilde(l1: int, l2: int, q: int) -> Tuple[int, int]:
    """(k~1, k~2) = ((q+2)/2 kappa*(l1+l2), (q+2)/2 kappa*(l1-l2)) in Z/(q+1)."""
    if q % 2:
        raise ArgumentError(f"k~ is defined for even q only, got q={q}")
    half = (q + 2) // 2
    return (half * kappa_star(l1 + l2, q)) % (q + 1), (half * kappa_star(l1 - l2, q)) % (q + 1)


def canonical_cuspidal_index(l: int, q: int) -> int:
    """Smaller representative of the Frobenius orbit {l, q*l} in Z/(q^2-1)."""
    modulus = q * q - 1
    l %= modulus
    if l % (q + 1) == 0:
        raise ArgumentError(f"l={l} gives a character fixed by Frobenius for q={q}; not cuspidal")
    return min(l, (q * l) % modulus)


def table3_parameters(l1: int, l2: int, q: int) -> Dict[str, Optional[int]]:
    """Every derived index of the even-q notation for a pair of cuspidal indices.

    kappa^{-1} entries are None where the index is outside the image of kappa.
    """
    if q % 2:
        raise ArgumentError(f"the even-q parameters need even q, got q={q}")

    def inverse_or_none(l: int) -> Optional[int]:
        try:
            return kappa_inverse(l, q)
        except NotInImageError:
            return None

    kt1, kt2 = k_tilde(l1, l2, q)
    return {
        "kappa_inv_l1": inverse_or_none(l1),
        "kappa_inv_l2": inverse_or_none(l2),
        "kappa_star_l1": kappa_star(l1, q),
        "kappa_star_l2": kappa_star(l2, q),
        "kappa_star_sum": kappa_star(l1 + l2, q),
        "kappa_star_diff": kappa_star(l1 - l2, q),
        "k_tilde1": kt1,
        "k_tilde2": kt2,
    }


def k1_invariant_dimension(kind: str) -> IntPolynomial:
    """dim of K^(1)(p)-invariants of a GL(2) local type, as a polynomial in q."""
    polys = {"ps": "q+1", "st": "q", "cusp": "q-1", "wild": "0"}
    base = _BASE_KIND.get(kind, kind)
    if base not in polys:
        raise CatalogueError(f"unknown GL(2) kind {kind!r}")
    return IntPolynomial.parse(polys[base])


@lru_cache(maxsize=None)
def load_catalogue() -> dict:
    text = files(DATA_PACKAGE).joinpath(CATALOGUE_FILE).read_text(encoding="utf-8")
    data = json.loads(text)
    if data.get("version") != CATALOGUE_VERSION:
        raise CatalogueError(
            f"catalogue version {data.get('version')} does not match expected {CATALOGUE_VERSION}"
        )
    return data


@dataclass(frozen=True)
class LawCheck:
    """A polynomial identity between table entries."""

    name: str
    key: str
    lhs: IntPolynomial
    rhs: IntPolynomial

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {
            "law": self.name,
            "key": self.key,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "holds": self.holds,
        }


class RepDimsService:
    """Lookups in the label catalogue and the restriction tables."""

    def __init__(self, catalogue: Optional[dict] = None):
        data = catalogue if catalogue is not None else load_catalogue()
        self._labels: Dict[Tuple[str, str], dict] = {}
        self._dims: Dict[Tuple[str, str], IntPolynomial] = {}
        for series in (EVEN_SERIES, ODD_SERIES):
            for family, entry in data["labels"].get(series, {}).items():
                self._labels[(series, family)] = entry
                self._dims[(series, family)] = IntPolynomial.parse(entry["dim"])
        self._q2 = {name: dict(mult) for name, mult in data.get("q2_decompositions", {}).items()}
        self._rows: Dict[Tuple[str, str, str], TableRow] = {}
        for table, section in ((ENDOSCOPIC_TABLE, "endoscopic_rows"), (SK_TABLE, "sk_rows")):
            for raw in data.get(section, []):
                row = TableRow(
                    table=table,
                    key=raw["key"],
                    sign=raw["sign"],
                    even_family=raw.get("even"),
                    odd_family=raw.get("odd"),
                    dim_poly=IntPolynomial.parse(raw["dim"]),
                    descriptor=raw.get("descriptor"),
                )
                self._rows[(table, row.key, row.sign)] = row
        self._packets = {raw["key"]: raw for raw in data.get("packets", [])}
        logger.debug(
            "Loaded representation catalogue",
            labels=len(self._labels),
            rows=len(self._rows),
        )

    def families(self, series: str) -> List[str]:
        return [family for (s, family) in self._labels if s == series]

    def label_entry(self, label: RepLabel) -> dict:
        try:
            return self._labels[(label.series, label.family)]
        except KeyError:
            raise CatalogueError(f"{label.series} label {label} is not catalogued") from None

    def make_label(
        self, series: str, family: str, values: Tuple[int, ...] = (), q: Optional[int] = None
    ) -> RepLabel:
        """Label with character indices reduced by the moduli its catalogue entry gives at q."""
        entry = self.label_entry(RepLabel(series, family))
        moduli = entry.get("params", [])
        if not values:
            return RepLabel(series, family)
        if q is None:
            raise ArgumentError(f"{family} with parameters needs q to fix the moduli")
        if len(values) != len(moduli):
            raise ArgumentError(f"{family} takes {len(moduli)} parameters, got {len(values)}")
        params = []
        for value, modulus_poly in zip(values, moduli):
            modulus = IntPolynomial.parse(modulus_poly).evaluate(q)
            params.append((value % modulus, modulus))
        return RepLabel(series, family, tuple(params))

    def parse_label(self, text: str, series: str, q: Optional[int] = None) -> RepLabel:
        """Read "chi12(1)", "theta1+theta4" or "tau2(1)" as a catalogued label."""
        text = text.strip()
        if (series, text) in self._labels:
            return RepLabel(series, text)
        match = _PARAMETRIZED_LABEL.fullmatch(text)
        if match is None:
            raise CatalogueError(f"{series} label {text!r} is not catalogued")
        family, raw = match.groups()
        return self.make_label(series, family, tuple(int(v) for v in raw.split(",")), q)

    def constituents(self, label: RepLabel) -> List[RepLabel]:
        entry = self.label_entry(label)
        return [RepLabel(label.series, name) for name in entry.get("constituents", [])]

    def dim_polynomial(self, label: Union[RepLabel, TableRow]) -> IntPolynomial:
        """The printed dimension polynomial of a label or of a whole table row."""
        if isinstance(label, TableRow):
            return label.dim_poly
        self.label_entry(label)
        return self._dims[(label.series, label.family)]

    def evaluate_dim(self, label: Union[RepLabel, TableRow], q: int) -> int:
        require_range("q", q, 2)
        value = self.dim_polynomial(label).evaluate(q)
        if value < 0:
            raise CatalogueError(f"negative dimension {value} for {label} at q={q}")
        return value

    def decompose_at_q2(self, label: RepLabel) -> MultiplicityVector:
        """Sp(4,F_2) multiplicities of an even-q label specialized to q=2."""
        if label.series != EVEN_SERIES:
            raise CatalogueError(f"{label} is an odd-q label; q=2 needs the {EVEN_SERIES} series")
        name = str(label)
        if name in SP4F2_LABELS:
            return MultiplicityVector.unit(name)
        if name in self._q2:
            return MultiplicityVector.from_mapping(self._q2[name])
        if label.is_composite:
            total = MultiplicityVector()
            for part in self.constituents(label):
                total = total + self.decompose_at_q2(part)
            return total
        raise CatalogueError(f"no recorded q=2 decomposition for {name}")

    def rows(self, table: str) -> List[TableRow]:
        return [row for (t, _, _), row in self._rows.items() if t == table]

    def find_row(self, table: str, key: str, sign: str) -> Optional[TableRow]:
        return self._rows.get((table, key, sign))

    def row(self, table: str, key: str, sign: str) -> TableRow:
        found = self.find_row(table, key, sign)
        if found is None:
            raise CatalogueError(f"no {table} row {key} with sign {sign}")
        return found

    def row_family(self, row: TableRow, q: int) -> Optional[str]:
        """Label family in the column matching the parity of q."""
        return row.even_family if q % 2 == 0 else row.odd_family

    def packet_descriptors(self, key: str) -> dict:
        try:
            return self._packets[key]
        except KeyError:
            raise CatalogueError(f"no packet row {key}") from None

    def paired_difference(self, key: str) -> LawCheck:
        """dim Pi_+ - dim Pi_- against (q^2+1) d1 d2 for one endoscopic pair."""
        plus = self.row(ENDOSCOPIC_TABLE, key, "+")
        minus = self.find_row(ENDOSCOPIC_TABLE, key, "-")
        minus_poly = minus.dim_poly if minus else IntPolynomial.zero()
        kind1, kind2 = key.split("|")
        expected = (
            IntPolynomial.parse("q**2+1") * k1_invariant_dimension(kind1) * k1_invariant_dimension(kind2)
        )
        return LawCheck("paired_difference", key, plus.dim_poly - minus_poly, expected)

    def sk_sum(self, key: str) -> LawCheck:
        """dim Pi(sigma,1) + dim Pi(sigma,St) against (q^2+1) d(sigma)."""
        trivial = self.row(SK_TABLE, key, "1")
        steinberg = self.find_row(SK_TABLE, key, "St")
        st_poly = steinberg.dim_poly if steinberg else IntPolynomial.zero()
        expected = IntPolynomial.parse("q**2+1") * k1_invariant_dimension(key)
        return LawCheck("sk_sum", key, trivial.dim_poly + st_poly, expected)

    def endoscopic_pair_keys(self) -> List[str]:
        return list(dict.fromkeys(row.key for row in self.rows(ENDOSCOPIC_TABLE)))

    def sk_keys(self) -> List[str]:
        return list(dict.fromkeys(row.key for row in self.rows(SK_TABLE)))


@lru_cache(maxsize=None)
def get_repdims_service() -> RepDimsService:
    return RepDimsService()
