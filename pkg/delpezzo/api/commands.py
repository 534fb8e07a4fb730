"""
Sub-command handlers for the command line.

Commands:
- enumerate - Canonical forms (or every class) with given -K.C and C^2
- classify  - Positivity of -(K + eps C) for every family of a cell
- table     - Full table for a range of degrees as JSON, CSV or Markdown
- zariski   - Zariski decomposition of a single class

Each handler takes the parsed argparse namespace, prints its result to
stdout and returns the process exit code.
"""

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple

import orjson

from delpezzo.core.config import parse_degrees, settings
from delpezzo.core.errors import UnsupportedDegreeError
from delpezzo.core.lattice import (
    DivisorClass,
    SurfaceModel,
    adjoint_class,
    euler_characteristic,
    format_class,
)
from delpezzo.services.enumeration import EnumerationQuery, enumerate_raw, irreducible_families
from delpezzo.services.positivity import (
    CampanaWeight,
    adjoint_self_intersection,
    classify_boundary,
    is_nef,
    most_positive,
)
from delpezzo.services.report import FORMATS, build_report, render, write_report
from delpezzo.services.structure import structural_tag
from delpezzo.services.zariski import zariski_decompose

logger = logging.getLogger(__name__)

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_EMPTY = 3
EXIT_IO = 4
EXIT_DOMAIN = 5


# === Argument types ===

def epsilon_value(text: str) -> Fraction:
    """Exact rational p/q strictly between 0 and 1."""
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not an exact rational p/q")
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"epsilon must lie in (0, 1), got {value}")
    return value


def multiplicity_value(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 2:
        raise argparse.ArgumentTypeError(f"multiplicity must be at least 2, got {value}")
    return value


def degree_list(text: str) -> List[int]:
    try:
        return parse_degrees(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot read degrees from {text!r}")


def class_coordinates(text: str) -> Tuple[int, ...]:
    """Comma-separated a,b1,...,bk."""
    try:
        return tuple(int(chunk) for chunk in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot read class coordinates from {text!r}")


# === Helpers ===

def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(payload: object) -> None:
    _emit(orjson.dumps(payload, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2).decode())


def _require_verified(d: int, what: str) -> None:
    if d > settings.verified_max_degree:
        raise UnsupportedDegreeError(
            f"{what} is verified for degrees up to {settings.verified_max_degree}, got {d}"
        )


def _cell_heading(d: int, m: int, n: int) -> str:
    return f"d={d} m={m} n={n}"


# === enumerate ===

def cmd_enumerate(args: argparse.Namespace) -> int:
    surface = SurfaceModel(args.degree)
    query = EnumerationQuery(surface, args.m, args.n)
    if args.tags:
        _require_verified(args.degree, "structural tagging")

    if args.raw:
        classes = enumerate_raw(query)
        if args.format == "json":
            _emit_json({"d": args.degree, "m": args.m, "n": args.n,
                        "classes": [list(c.coordinates) for c in classes]})
        else:
            _emit(f"{_cell_heading(args.degree, args.m, args.n)}: {len(classes)} classes")
            for c in classes:
                _emit(f"  {format_class(c)}")
        return EXIT_OK if classes else EXIT_EMPTY

    families = irreducible_families(query)
    tags = [structural_tag(args.degree, f) for f in families] if args.tags else []
    total = sum(f.orbit_size for f in families)

    if args.format == "json":
        entries = []
        for i, family in enumerate(families):
            entry = {
                "form": family.form,
                "representative": list(family.representative.coordinates),
                "orbit_size": family.orbit_size,
            }
            if tags:
                entry["tag"] = tags[i].label
            entries.append(entry)
        _emit_json({"d": args.degree, "m": args.m, "n": args.n, "families": entries, "total": total})
    else:
        _emit(f"{_cell_heading(args.degree, args.m, args.n)}: {len(families)} forms, total {total}")
        for i, family in enumerate(families):
            line = f"  {family.form:<40} {family.orbit_size:>6}"
            if tags:
                line += f"  {tags[i].label}"
            _emit(line.rstrip())

    if not families:
        logger.info("no irreducible curve with m=%d, n=%d on degree %d", args.m, args.n, args.degree)
        return EXIT_EMPTY
    return EXIT_OK


# === classify ===

def _query_epsilon(args: argparse.Namespace) -> Optional[Fraction]:
    if args.epsilon is not None:
        return args.epsilon
    if args.multiplicity is not None:
        return CampanaWeight(args.multiplicity).epsilon
    return None


def cmd_classify(args: argparse.Namespace) -> int:
    surface = SurfaceModel(args.degree)
    families = irreducible_families(EnumerationQuery(surface, args.m, args.n))
    epsilon = _query_epsilon(args)

    results = []
    for family in families:
        verdict = classify_boundary(family.representative)
        item = {
            "form": family.form,
            "orbit_size": family.orbit_size,
            "mu": verdict.mu,
            "nef_threshold": verdict.threshold_label,
            "verdict": None if verdict.verdict is None else verdict.verdict.value,
            "adjoint_self_intersection_at_half": str(verdict.adjoint_self_intersection_at_half),
        }
        if epsilon is not None:
            item["epsilon"] = str(epsilon)
            item["adjoint_nef"] = is_nef(adjoint_class(family.representative, epsilon))
            item["adjoint_self_intersection"] = str(
                adjoint_self_intersection(family.representative, epsilon)
            )
        results.append((verdict, item))

    best = most_positive([v for v, _ in results])
    cell_verdict = None if best is None or best.verdict is None else best.verdict.value

    if args.format == "json":
        _emit_json({"d": args.degree, "m": args.m, "n": args.n,
                    "families": [item for _, item in results], "verdict": cell_verdict})
    else:
        _emit(_cell_heading(args.degree, args.m, args.n))
        for _, item in results:
            _emit(f"{item['form']}  ({item['orbit_size']} classes)")
            _emit(f"  mu = {item['mu']}")
            _emit(f"  nef threshold = {item['nef_threshold']}")
            _emit(f"  verdict = {item['verdict'] or '-'}")
            _emit(f"  (-(K + 1/2 C))^2 = {item['adjoint_self_intersection_at_half']}")
            if epsilon is not None:
                nef_text = "nef" if item["adjoint_nef"] else "not nef"
                _emit(f"  eps = {epsilon}: {nef_text}, (-(K + eps C))^2 = {item['adjoint_self_intersection']}")
        _emit(f"cell verdict: {cell_verdict or '-'}")

    return EXIT_OK if families else EXIT_EMPTY


# === table ===

def cmd_table(args: argparse.Namespace) -> int:
    degrees = args.degrees if args.degrees is not None else settings.table_degrees
    fmt = args.format or settings.default_format
    doc = build_report(degrees, workers=args.workers)

    if args.out is None:
        _emit(render(doc, fmt))
        return EXIT_OK
    try:
        write_report(doc, fmt, Path(args.out))
    except OSError as e:
        print(f"error: cannot write {args.out}: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


# === zariski ===

def cmd_zariski(args: argparse.Namespace) -> int:
    surface = SurfaceModel(args.degree)
    D = DivisorClass.from_coordinates(surface, args.coordinates)
    # NotPseudoeffectiveError is turned into EXIT_DOMAIN by main
    decomposition = zariski_decompose(D)

    if args.format == "json":
        _emit_json({
            "d": args.degree,
            "class": list(D.coordinates),
            "euler_characteristic": euler_characteristic(D),
            "positive_part": [str(x) for x in decomposition.positive_part.coordinates],
            "negative_part": [
                {"curve": list(curve.coordinates), "coefficient": str(c)}
                for curve, c in decomposition.negative_part
            ],
            "conditions": decomposition.conditions(),
        })
        return EXIT_OK

    _emit(f"D = {format_class(D)}")
    _emit(f"chi(D) = {euler_characteristic(D)}")
    _emit(f"P = {format_class(decomposition.positive_part)}")
    _emit(f"support: {len(decomposition.support)} curves")
    for curve, coefficient in decomposition.negative_part:
        _emit(f"  {coefficient} * ({format_class(curve)})")
    for name, holds in decomposition.conditions().items():
        _emit(f"{name}: {'ok' if holds else 'FAILED'}")
    return EXIT_OK


# === Parser ===

def add_commands(subparsers: argparse._SubParsersAction) -> None:
    enumerate_parser = subparsers.add_parser("enumerate", help="list curve families of a cell")
    _add_cell_arguments(enumerate_parser)
    enumerate_parser.add_argument("--raw", action="store_true", help="every class, not only canonical forms")
    enumerate_parser.add_argument("--tags", action="store_true", help="add structural tags")
    enumerate_parser.add_argument("--format", choices=("text", "json"), default="text")
    enumerate_parser.set_defaults(handler=cmd_enumerate)

    classify_parser = subparsers.add_parser("classify", help="adjoint positivity of a cell")
    _add_cell_arguments(classify_parser)
    weight = classify_parser.add_mutually_exclusive_group()
    weight.add_argument("--epsilon", type=epsilon_value, help="boundary weight p/q in (0, 1)")
    weight.add_argument("--multiplicity", type=multiplicity_value, help="Campana multiplicity m >= 2")
    classify_parser.add_argument("--format", choices=("text", "json"), default="text")
    classify_parser.set_defaults(handler=cmd_classify)

    table_parser = subparsers.add_parser("table", help="full table for a range of degrees")
    table_parser.add_argument("-d", "--degrees", type=degree_list, help='e.g. "1..5" or "2,4"')
    table_parser.add_argument("--format", choices=FORMATS, default=None)
    table_parser.add_argument("--out", help="write to this file instead of stdout")
    table_parser.add_argument("--workers", type=int, default=None, help="worker processes")
    table_parser.set_defaults(handler=cmd_table)

    zariski_parser = subparsers.add_parser("zariski", help="Zariski decomposition of a class")
    zariski_parser.add_argument("-d", "--degree", type=int, required=True)
    zariski_parser.add_argument("coordinates", type=class_coordinates, help="a,b1,...,bk")
    zariski_parser.add_argument("--format", choices=("text", "json"), default="text")
    zariski_parser.set_defaults(handler=cmd_zariski)


def _add_cell_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-d", "--degree", type=int, required=True, help="degree of the surface")
    parser.add_argument("-m", type=int, required=True, help="anticanonical degree -K.C")
    parser.add_argument("-n", type=int, required=True, help="self-intersection C^2")
