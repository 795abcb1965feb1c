"""Command-line front end: `parahoric <subcommand> [options]`."""

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import yaml
from sympy import SympifyError, sympify

from parahoric.cli.output import CommandOutput, emit
from parahoric.config.config_manager import ConfigManager, RunConfig
from parahoric.models.cohomology import CohomologyPiece, EndoPrimeEntry, SKPrimeEntry, Weight
from parahoric.models.lfactors import EulerFactor
from parahoric.models.local_types import (
    TAME,
    TWISTS,
    WILD,
    Character,
    Cuspidal,
    GL2LocalType,
    PrincipalSeries,
    SKLocalInput,
    SteinbergTwist,
)
from parahoric.models.representations import EVEN_SERIES, ODD_SERIES
from parahoric.services import lfactor_service as lf
from parahoric.services.check_service import CheckService
from parahoric.services.cohomology_service import (
    classical_sk_divisors,
    get_cohomology_service,
    vanishing_flags,
    yoshida_level,
)
from parahoric.services.modforms_service import (
    InternalConsistencyError,
    MethodDisagreementError,
    load_fixtures,
    newform_counts,
    write_fixtures,
)
from parahoric.services.packet_service import SIGNS, get_packet_service
from parahoric.services.repdims_service import CatalogueError, get_repdims_service
from parahoric.services.symgroup_service import sp4f2_dictionary
from parahoric.utils.logging_config import configure_from_env, get_logger
from parahoric.utils.validation import ArgumentError, ParahoricError

logger = get_logger(__name__)

# Keys of the identity checks in the JSON schema.
IDENTITY_KEYS = {"endo_difference": "cor54", "sk_sum": "cor58"}

LFACTOR_OPS = ("spinor", "shift", "yoshida", "sk", "correction", "unramified", "steinberg")

Handler = Callable[[argparse.Namespace, RunConfig], Tuple[CommandOutput, int]]


def _character(token: str) -> Character:
    if token == "wild":
        return Character(WILD)
    try:
        index = int(token)
    except ValueError:
        raise ArgumentError(f"character index must be an integer or 'wild', got {token!r}") from None
    return Character() if index == 0 else Character(TAME, index)


def parse_local_type(text: str) -> GL2LocalType:
    """Parse "ps", "ps:k1,k2", "st", "st:xi_u", "st:none:k", "cusp:l" or "cusp:pos"."""
    kind, _, rest = text.strip().partition(":")
    if kind == "ps":
        if not rest:
            return PrincipalSeries()
        tokens = rest.split(",")
        if len(tokens) != 2:
            raise ArgumentError(f"principal series takes two characters, got {rest!r}")
        return PrincipalSeries(_character(tokens[0]), _character(tokens[1]))
    if kind == "st":
        twist, _, index = rest.partition(":")
        twist = twist or "none"
        if twist not in TWISTS:
            raise ArgumentError(f"twist must be one of {', '.join(TWISTS)}, got {twist!r}")
        return SteinbergTwist(_character(index) if index else Character(), twist)
    if kind == "cusp":
        if rest == "pos":
            return Cuspidal(positive_depth=True)
        try:
            return Cuspidal(l=int(rest))
        except ValueError:
            raise ArgumentError(f"cuspidal needs an integer index or 'pos', got {rest!r}") from None
    raise ArgumentError(f"unknown local type {text!r}; expected ps, st or cusp")


def _load_entries(path: str) -> List[Dict[str, Any]]:
    try:
        data = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    except (OSError, yaml.YAMLError) as e:
        raise ArgumentError(f"cannot read entries {path}: {e}") from e
    if not isinstance(data, list):
        raise ArgumentError(f"entries file {path} must hold a list")
    return data


def _parse_coefficients(text: str) -> Tuple:
    try:
        return tuple(sympify(c.strip()) for c in text.split(","))
    except SympifyError as e:
        raise ArgumentError(f"cannot read coefficients {text!r}: {e}") from e


def _parse_shift(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ArgumentError(f"shift must be a rational number such as -1 or 1/2, got {text!r}") from None


def _piece_rows(pieces: Sequence[CohomologyPiece]) -> List[List[Any]]:
    rows = []
    for piece in pieces:
        labels = " + ".join(f"{m}*{lab}" if m > 1 else str(lab) for lab, m in piece.labels)
        rows.append([piece.hodge_type, piece.total_dim, str(piece.mult) if piece.mult else "", labels or "0"])
    return rows


PIECE_COLUMNS = ["piece", "dim", "mult", "labels"]


def cmd_dict(args: argparse.Namespace, config: RunConfig) -> Tuple[CommandOutput, int]:
    rows = sp4f2_dictionary()
    payload = {
        "rows": [{"label": label, "partition": list(lam.parts), "dim": dim} for label, lam, dim in rows],
        "sum_of_squares": sum(d * d for _, _, d in rows),
    }
    return (
        CommandOutput(
            "Sp(4,F_2) = S_6",
            payload,
            ["label", "partition", "dim"],
            [[label, str(lam), dim] for label, lam, dim in rows],
        ),
        0,
    )


def cmd_restrict(args: argparse.Namespace, config: RunConfig) -> Tuple[CommandOutput, int]:
    packets = get_packet_service()
    results = []
    rows = []
    if args.table == "endo":
        if not args.sigma2:
            raise ArgumentError("endoscopic restriction needs --sigma2")
        s1, s2 = parse_local_type(args.sigma1), parse_local_type(args.sigma2)
        signs = [args.sign] if args.sign else list(SIGNS)
        for q in config.q_values:
            for sign in signs:
                outcome = packets.restrict_endo(s1, s2, sign, q)
                results.append({"sign": sign, **outcome.to_dict()})
                rows.append([q, sign, outcome.row.row_id if outcome.row else "", outcome.label_string(), outcome.dimension])
        payload = {"table": "endo", "sigma1": str(s1), "sigma2": str(s2), "results": results}
    else:
        sigma = parse_local_type(args.sigma1)
        for q in config.q_values:
            outcome = packets.restrict_sk(SKLocalInput(sigma, in_s=args.in_s), q)
            sign = "St" if args.in_s else "1"
            results.append({"sign": sign, **outcome.to_dict()})
            rows.append([q, sign, outcome.row.row_id if outcome.row else "", outcome.label_string(), outcome.dimension])
        payload = {"table": "sk", "sigma": str(sigma), "in_s": args.in_s, "results": results}
    return CommandOutput("Parahoric restriction", payload, ["q", "sign", "row", "labels", "dim"], rows), 0


def cmd_packet(args: argparse.Namespace, config: RunConfig) -> Tuple[CommandOutput, int]:
    packets = get_packet_service()
    s1, s2 = parse_local_type(args.sigma1), parse_local_type(args.sigma2)
    q = args.q[0] if args.q else None
    members = packets.endoscopic_packet(s1, s2, q=q)
    payload = {"sigma1": str(s1), "sigma2": str(s2), "members": []}
    rows = []
    for member in members:
        predicates = packets.invariance_predicates(s1, s2, member.sign, q=q)
        payload["members"].append(
            {"sign": member.sign, "exists": member.exists, "description": member.description, **predicates}
        )
        rows.append(
            [member.sign, str(member), predicates["spherical"], predicates["has_k"], predicates["has_k_prime"]]
        )
    return (
        CommandOutput("Local L-packet", payload, ["sign", "member", "spherical", "has_k", "has_k_prime"], rows),
        0,
    )


def cmd_dims(args: argparse.Namespace, config: RunConfig) -> Tuple[CommandOutput, int]:
    repdims = get_repdims_service()
    series_list = [args.series] if args.series else [EVEN_SERIES, ODD_SERIES]
    entries = []
    rows = []
    for series in series_list:
        if args.label:
            try:
                labels = [repdims.parse_label(args.label, series, q=2 if series == EVEN_SERIES else None)]
            except CatalogueError:
                if args.series:
                    raise
                continue
        else:
            labels = [repdims.make_label(series, family) for family in repdims.families(series)]
        for label in labels:
            poly = repdims.dim_polynomial(label)
            qs = [q for q in config.q_values if (q % 2 == 0) == (series == EVEN_SERIES)]
            values = {str(q): repdims.evaluate_dim(label, q) for q in qs}
            entry = {"series": series, "label": str(label), "dim_poly": str(poly), "values": values}
            if args.decompose and series == EVEN_SERIES:
                try:
                    entry["q2"] = repdims.decompose_at_q2(label).nonzero()
                except CatalogueError as e:
                    entry["q2"] = None
                    logger.warning("No q=2 decomposition", label=str(label), reason=str(e))
            entries.append(entry)
            for q in qs:
                rows.append([series, str(label), str(poly), q, values[str(q)]])
    if not entries:
        raise CatalogueError(f"label {args.label!r} is not catalogued in either series")
    return CommandOutput("Dimension polynomials", {"labels": entries}, ["series", "label", "dim_poly", "q", "dim"], rows), 0


def cmd_al_split(args: argparse.Namespace, config: RunConfig) -> Tuple[CommandOutput, int]:
    weights = [r for r in range(max(config.rmin, 2), config.rmax + 1) if r % 2 == 0]
    counts = [newform_counts(r) for r in weights]
    if args.write_fixtures:
        write_fixtures(args.write_fixtures, weights)
    columns = ["r", "tau1", "tau2", "tau4", "tau_plus", "tau_minus", "dim_s_gamma0_4"]
    rows = [[c.to_dict()[name] for name in columns] for c in counts]
    return CommandOutput("Newform counts", {"counts": [c.to_dict() for c in counts]}, columns, rows), 0


def _endo_prime_output(args: argparse.Namespace) -> CommandOutput:
    if not args.q:
        raise ArgumentError("--pairs needs --q for the residue field")
    entries = []
    for raw in _load_entries(args.pairs):
        try:
            entries.append(
                EndoPrimeEntry(parse_local_type(raw["sigma1"]), parse_local_type(raw["sigma2"]), int(raw["count"]))
            )
        except (KeyError, TypeError) as e:
            raise ArgumentError(f"malformed pair entry {raw!r}: {e}") from e
    h30, h21 = get_cohomology_service().endo_prime(args.q[0], entries)
    payload = {"q": args.q[0], "pieces": [h30.to_dict(), h21.to_dict()]}
    return CommandOutput("Endoscopic part at prime level", payload, PIECE_COLUMNS, _piece_rows([h30, h21]))


def cmd_endo(args: argparse.Namespace, config: RunConfig) -> Tuple[CommandOutput, int]:
    if args.yoshida:
        r1 = r2 = None
        if args.weight:
            w = Weight(*args.weight)
            r1, r2 = w.r1, w.r2
        level = yoshida_level(args.yoshida[0], args.yoshida[1], r1, r2)
        payload = level.to_dict()
        row = [level.level, level.sym_power, level.det_power]
        return CommandOutput("Yoshida-type lift", payload, ["level", "sym", "det"], [row]), 0
    if args.pairs:
        return _endo_prime_output(args), 0
    if not args.weight:
        raise ArgumentError("endo needs --lambda, --pairs or --yoshida")
    service = get_cohomology_service()
    w = Weight(*args.weight)
    pieces = service.endo_hodge_pieces(w)
    identity = service.endo_identity(w)
    flags = vanishing_flags(w)
    payload = {
        "lambda": list(w.as_tuple()),
        "r1": w.r1,
        "r2": w.r2,
        "pieces": [piece.to_dict() for piece in pieces.values()],
        "identities": {IDENTITY_KEYS[identity.name]: identity.to_dict()},
        "vanishing": flags,
    }
    if flags["inner_e_vanishes"]:
        payload["inner_difference"] = service.inner_difference(w)
    output = CommandOutput(f"Endoscopic part, lambda={w.as_tuple()}", payload, PIECE_COLUMNS, _piece_rows(pieces.values()))
    return output, 0 if identity.holds else 1


def _parse_signs(text: str) -> Dict[int, int]:
    signs = {}
    for item in text.split(","):
        p, _, eps = item.partition(":")
        try:
            signs[int(p)] = int(eps)
        except ValueError:
            raise ArgumentError(f"signs must look like 2:-1,3:1, got {text!r}") from None
    return signs


def cmd_sk(args: argparse.Namespace, config: RunConfig) -> Tuple[CommandOutput, int]:
    if args.divisors is not None:
        if args.k is None or args.signs is None:
            raise ArgumentError("--divisors needs --k and --signs")
        divisors = classical_sk_divisors(args.divisors, args.k, _parse_signs(args.signs))
        payload = {"N": args.divisors, "k": args.k, "divisors": divisors}
        return CommandOutput("Admissible divisors M", payload, ["M"], [[m] for m in divisors]), 0
    service = get_cohomology_service()
    if args.entries:
        if not args.q or args.k is None:
            raise ArgumentError("--entries needs --q and --k")
        entries = []
        for raw in _load_entries(args.entries):
            try:
                entries.append(SKPrimeEntry(parse_local_type(raw["sigma"]), int(raw["count"]), raw.get("epsilon")))
            except (KeyError, TypeError) as e:
                raise ArgumentError(f"malformed entry {raw!r}: {e}") from e
        h30, h11 = service.sk_prime(args.q[0], args.k, entries)
        payload = {"q": args.q[0], "k": args.k, "pieces": [h30.to_dict(), h11.to_dict()]}
        return CommandOutput("Saito-Kurokawa part at prime level", payload, PIECE_COLUMNS, _piece_rows([h30, h11])), 0
    if args.weight is None:
        raise ArgumentError("sk needs --lambda, --entries or --divisors")
    w = Weight(args.weight, args.weight)
    pieces = service.sk_hodge_pieces(w)
    identity = service.sk_identity(w)
    payload = {
        "lambda": list(w.as_tuple()),
        "k": w.k,
        "r": w.r,
        "pieces": [piece.to_dict() for piece in pieces.values()],
        "identities": {IDENTITY_KEYS[identity.name]: identity.to_dict()},
    }
    output = CommandOutput(f"Saito-Kurokawa part, k={w.k}", payload, PIECE_COLUMNS, _piece_rows(pieces.values()))
    return output, 0 if identity.holds else 1


def cmd_check(args: argparse.Namespace, config: RunConfig) -> Tuple[CommandOutput, int]:
    fixtures = load_fixtures(config.fixtures) if config.fixtures else None
    report = CheckService(
        rmax=config.rmax, q_values=config.q_values, jobs=config.jobs, fixtures=fixtures
    ).run()
    rows = [[c["name"], c["cases"], c["violations"]] for c in report["checks"]]
    output = CommandOutput("Identity suite", report, ["check", "cases", "violations"], rows)
    return output, 0 if report["passed"] else 1


def _euler(p: int, text: Optional[str], flag: str) -> EulerFactor:
    if not text:
        raise ArgumentError(f"--op needs {flag}")
    return EulerFactor(p, _parse_coefficients(text))


def cmd_lfactor(args: argparse.Namespace, config: RunConfig) -> Tuple[CommandOutput, int]:
    p = args.p
    op = args.op
    if op == "spinor":
        result = lf.spinor_product(_euler(p, args.f1, "--f1"), _euler(p, args.f2, "--f2"))
    elif op == "shift":
        if args.t is None:
            raise ArgumentError("shift needs --t")
        result = lf.shift(_euler(p, args.f1, "--f1"), _parse_shift(args.t), exact=not args.rational)
    elif op == "yoshida":
        if args.r1 is None or args.r2 is None:
            raise ArgumentError("yoshida needs --r1 and --r2")
        result = lf.yoshida_factor(_euler(p, args.f1, "--f1"), _euler(p, args.f2, "--f2"), args.r1, args.r2)
    elif op == "unramified":
        result = lf.gl2_unramified_factor(p, sympify(args.ap), args.k)
    elif op == "steinberg":
        result = lf.steinberg_factor(p, sympify(args.ap))
    elif op == "correction":
        result = lf.sk_correction(p, args.k, args.eps)
    else:
        result = lf.sk_classical_factor(p, args.k, args.eps, args.in_m, _euler(p, args.f1, "--f1"))

    if isinstance(result, EulerFactor):
        payload = {"op": op, "p": p, "factor": result.to_list(), "degree": result.degree}
        rows = [[i, c] for i, c in enumerate(result.to_list())]
        return CommandOutput(f"L-factor ({op})", payload, ["power", "coefficient"], rows), 0
    data = result.to_dict()
    payload = {"op": op, **data, "inverse_polynomial": result.is_inverse_polynomial}
    rows = [["numerator", ",".join(data["numerator"])], ["denominator", ",".join(data["denominator"])]]
    return CommandOutput(f"L-factor ({op})", payload, ["part", "coefficients"], rows), 0


HANDLERS: Dict[str, Handler] = {
    "dict": cmd_dict,
    "restrict": cmd_restrict,
    "packet": cmd_packet,
    "dims": cmd_dims,
    "al-split": cmd_al_split,
    "endo": cmd_endo,
    "sk": cmd_sk,
    "check": cmd_check,
    "lfactor": cmd_lfactor,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "tsv", "pretty"], default=None, help="Output format (default: json)")
    common.add_argument("--jobs", type=int, default=None, help="Worker processes for sweeps (default: 1)")
    common.add_argument("--rmin", type=int, default=None, help="Smallest weight r for weight ranges")
    common.add_argument("--rmax", type=int, default=None, help="Largest weight r for weight ranges and sweeps")
    common.add_argument("--q", type=int, nargs="+", default=None, help="Residue field sizes")
    common.add_argument("--fixtures", default=None, help="JSON file of pinned newform counts")
    common.add_argument("--config", default=None, help="YAML defaults file (default: parahoric.yaml if present)")

    parser = argparse.ArgumentParser(
        prog="parahoric",
        description="Parahoric restriction of endoscopic and Saito-Kurokawa lifts to GSp(4)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("dict", parents=[common], help="Sp(4,F_2) = S_6 label dictionary")

    restrict = sub.add_parser("restrict", parents=[common], help="Restriction of a local packet member")
    restrict.add_argument("--table", choices=["endo", "sk"], default="endo")
    restrict.add_argument("--sigma1", required=True, help="Local type, e.g. ps, st:xi_u, cusp:1")
    restrict.add_argument("--sigma2", default=None)
    restrict.add_argument("--sign", choices=list(SIGNS), default=None)
    restrict.add_argument("--in-s", action="store_true", help="Saito-Kurokawa place in S")

    packet = sub.add_parser("packet", parents=[common], help="Local endoscopic L-packet")
    packet.add_argument("--sigma1", required=True)
    packet.add_argument("--sigma2", required=True)

    dims = sub.add_parser("dims", parents=[common], help="Dimension polynomials of labels")
    dims.add_argument("--label", default=None)
    dims.add_argument("--series", choices=[EVEN_SERIES, ODD_SERIES], default=None)
    dims.add_argument("--decompose", action="store_true", help="Include the Sp(4,F_2) decomposition at q=2")

    al_split = sub.add_parser("al-split", parents=[common], help="Newform counts and Atkin-Lehner split")
    al_split.add_argument("--write-fixtures", default=None, help="Write the counts as pinned fixtures")

    endo = sub.add_parser("endo", parents=[common], help="Endoscopic part of inner cohomology")
    endo.add_argument("--lambda", dest="weight", type=int, nargs=2, metavar=("L1", "L2"), default=None)
    endo.add_argument("--pairs", default=None, help="YAML/JSON list of {sigma1, sigma2, count} at p0")
    endo.add_argument("--yoshida", type=int, nargs=2, metavar=("N1", "N2"), default=None)

    sk = sub.add_parser("sk", parents=[common], help="Saito-Kurokawa part of inner cohomology")
    sk.add_argument("--lambda", dest="weight", type=int, default=None, metavar="L")
    sk.add_argument("--entries", default=None, help="YAML/JSON list of {sigma, count, epsilon?} at p0")
    sk.add_argument("--k", type=int, default=None)
    sk.add_argument("--divisors", type=int, default=None, metavar="N")
    sk.add_argument("--signs", default=None, help="Atkin-Lehner signs, e.g. 2:-1,3:1")

    sub.add_parser("check", parents=[common], help="Run the identity suite")

    lfactor = sub.add_parser("lfactor", parents=[common], help="Local Euler factors")
    lfactor.add_argument("--op", choices=list(LFACTOR_OPS), required=True)
    lfactor.add_argument("--p", type=int, required=True)
    lfactor.add_argument("--f1", default=None, help="Coefficients 1,c1,c2,... of the first factor")
    lfactor.add_argument("--f2", default=None)
    lfactor.add_argument("--t", default=None, help="Shift s -> s + t, a multiple of 1/2")
    lfactor.add_argument("--rational", action="store_true", help="Reject shifts that need sqrt(p)")
    lfactor.add_argument("--r1", type=int, default=None)
    lfactor.add_argument("--r2", type=int, default=None)
    lfactor.add_argument("--k", type=int, default=None)
    lfactor.add_argument("--eps", type=int, choices=[1, -1], default=None)
    lfactor.add_argument("--in-m", action="store_true")
    lfactor.add_argument("--ap", default=None, help="Hecke eigenvalue a_p")
    return parser


def _check_lfactor_args(args: argparse.Namespace) -> None:
    if args.op in ("unramified", "correction", "sk") and args.k is None:
        raise ArgumentError(f"{args.op} needs --k")
    if args.op in ("unramified", "steinberg") and args.ap is None:
        raise ArgumentError(f"{args.op} needs --ap")
    if args.op == "correction" and args.eps is None:
        raise ArgumentError("correction needs --eps")


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_from_env()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    try:
        overrides = {
            "rmin": args.rmin,
            "rmax": args.rmax,
            "q_values": args.q,
            "output_format": args.format,
            "fixtures": args.fixtures,
            "jobs": args.jobs,
        }
        config = ConfigManager(args.config).build(args.command, overrides)
        if args.command == "lfactor":
            _check_lfactor_args(args)
        output, code = HANDLERS[args.command](args, config)
    except (InternalConsistencyError, MethodDisagreementError) as e:
        logger.error("Internal consistency failure", command=args.command, error=str(e))
        emit(
            CommandOutput("Internal consistency failure", {"error": type(e).__name__, "message": str(e)}, ["error", "message"], [[type(e).__name__, str(e)]]),
            "json",
        )
        return 1
    except ParahoricError as e:
        print(f"parahoric {args.command}: error: {e}", file=sys.stderr)
        return 2

    emit(output, config.output_format, color=config.color)
    return code


def run_cli() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run_cli()
