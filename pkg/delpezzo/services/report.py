"""
Table assembly and rendering.

A report covers every (d, m, n) cell with 1 <= m <= 2d and n feasible for
(d, m). Rows are built per degree (optionally in worker processes) and then
collated in (d, m, n) order, so the rendered bytes depend only on the inputs.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import orjson
import pandas as pd

from delpezzo import __version__
from delpezzo.api.schemas import FormEntry, ReportDocument, TableRow, TagModel, VerdictModel
from delpezzo.core.config import settings
from delpezzo.core.errors import UnsupportedDegreeError
from delpezzo.core.lattice import SurfaceModel
from delpezzo.services.positivity import PositivityVerdict
from delpezzo.services.structure import (
    CellClassification,
    StructuralTag,
    classify_cell,
    family_notes,
    feasible_self_intersections,
    table_discrepancy,
)

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "md")

CSV_COLUMNS = [
    "d",
    "m",
    "n",
    "tag",
    "description",
    "verdict",
    "mu",
    "nef_threshold",
    "adjoint_self_intersection_at_half",
    "family_count",
    "forms",
]


# === Model conversion ===

def _fraction_text(value: Fraction) -> str:
    return str(Fraction(value))


def tag_model(tag: StructuralTag) -> TagModel:
    return TagModel(
        kind=tag.kind.value,
        params=list(tag.params),
        label=tag.label,
        description=tag.description,
    )


def verdict_model(verdict: PositivityVerdict) -> VerdictModel:
    return VerdictModel(
        mu=verdict.mu,
        nef_threshold=verdict.threshold_label,
        verdict=None if verdict.verdict is None else verdict.verdict.value,
        adjoint_self_intersection_at_half=_fraction_text(verdict.adjoint_self_intersection_at_half),
    )


def table_row(cell: CellClassification) -> TableRow:
    entries = [
        FormEntry(
            form=family.form,
            representative=list(family.representative.coordinates),
            orbit_size=family.orbit_size,
            tag=tag_model(tag),
            verdict=verdict_model(verdict),
        )
        for family, tag, verdict in zip(cell.families, cell.family_tags, cell.family_verdicts)
    ]
    return TableRow(
        d=cell.surface.degree,
        m=cell.m,
        n=cell.n,
        forms=[family.form for family in cell.families],
        family_count=cell.family_count,
        tag=tag_model(cell.tag),
        verdict=None if cell.verdict is None else verdict_model(cell.verdict),
        families=entries,
    )


# === Building ===

def check_table_degree(d: int) -> SurfaceModel:
    surface = SurfaceModel(d)
    if d > settings.verified_max_degree:
        raise UnsupportedDegreeError(
            f"tables are verified for degrees up to {settings.verified_max_degree}, got {d}"
        )
    return surface


def table_cells(d: int) -> List[Tuple[int, int]]:
    """All (m, n) with 1 <= m <= 2d and n feasible, in order."""
    return [(m, n) for m in range(1, 2 * d + 1) for n in sorted(feasible_self_intersections(d, m))]


def build_degree_rows(d: int) -> Tuple[List[TableRow], List[str], List[str]]:
    """Rows, table discrepancies and family notes for one degree."""
    surface = check_table_degree(d)
    rows: List[TableRow] = []
    discrepancies: List[str] = []
    notes: List[str] = []
    for m, n in table_cells(d):
        cell = classify_cell(surface, m, n)
        rows.append(table_row(cell))
        note = table_discrepancy(d, m, n, cell.tag)
        if note is not None:
            discrepancies.append(note)
        notes.extend(family_notes(cell))
    logger.debug("degree %d: %d rows", d, len(rows))
    return rows, discrepancies, notes


def build_report(degrees: Iterable[int], workers: Optional[int] = None) -> ReportDocument:
    degrees = sorted(set(degrees))
    for d in degrees:
        check_table_degree(d)
    workers = settings.table_workers if workers is None else workers

    if workers > 1 and len(degrees) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            # map keeps the input order
            parts = list(executor.map(build_degree_rows, degrees))
    else:
        parts = [build_degree_rows(d) for d in degrees]

    rows: List[TableRow] = []
    discrepancies: List[str] = []
    notes: List[str] = []
    for part_rows, part_discrepancies, part_notes in parts:
        rows.extend(part_rows)
        discrepancies.extend(part_discrepancies)
        notes.extend(part_notes)

    return ReportDocument(
        tool_version=__version__,
        degrees=degrees,
        rows=rows,
        discrepancy_notes=discrepancies,
        family_notes=notes,
    )


# === Rendering ===

def render_json(doc: ReportDocument, indent: Optional[bool] = None) -> str:
    indent = settings.json_indent if indent is None else indent
    option = orjson.OPT_SORT_KEYS
    if indent:
        option |= orjson.OPT_INDENT_2
    return orjson.dumps(doc.model_dump(mode="json"), option=option).decode() + "\n"


def render_schema() -> str:
    """JSON schema of the report document, as shipped in docs/report.schema.json."""
    schema = ReportDocument.model_json_schema()
    return orjson.dumps(schema, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2).decode() + "\n"


def report_frame(doc: ReportDocument) -> pd.DataFrame:
    records = []
    for row in doc.rows:
        verdict = row.verdict
        records.append(
            {
                "d": row.d,
                "m": row.m,
                "n": row.n,
                "tag": row.tag.label,
                "description": row.tag.description,
                "verdict": "" if verdict is None or verdict.verdict is None else verdict.verdict,
                "mu": "" if verdict is None else verdict.mu,
                "nef_threshold": "" if verdict is None else verdict.nef_threshold,
                "adjoint_self_intersection_at_half": (
                    "" if verdict is None else verdict.adjoint_self_intersection_at_half
                ),
                "family_count": row.family_count,
                "forms": "; ".join(row.forms),
            }
        )
    return pd.DataFrame.from_records(records, columns=CSV_COLUMNS)


def render_csv(doc: ReportDocument) -> str:
    return report_frame(doc).to_csv(index=False, lineterminator="\n")


def _markdown_row(cells: Sequence[object]) -> str:
    return "| " + " | ".join(str(c).replace("|", "\\|") for c in cells) + " |"


def render_markdown(doc: ReportDocument) -> str:
    lines = [
        "# Curve classes and adjoint positivity by degree",
        "",
        f"Generated by delpezzo-orbifolds {doc.tool_version}.",
        "",
    ]
    header = ["m", "n", "forms", "classes", "structure", "verdict", "threshold", "(-(K+D/2))^2"]
    for d in doc.degrees:
        lines += [f"## Degree {d}", "", _markdown_row(header), _markdown_row(["---"] * len(header))]
        for row in (r for r in doc.rows if r.d == d):
            verdict = row.verdict
            lines.append(
                _markdown_row(
                    [
                        row.m,
                        row.n,
                        "<br>".join(row.forms) if row.forms else "-",
                        row.family_count,
                        row.tag.description,
                        "-" if verdict is None or verdict.verdict is None else verdict.verdict,
                        "-" if verdict is None else verdict.nef_threshold,
                        "-" if verdict is None else verdict.adjoint_self_intersection_at_half,
                    ]
                )
            )
        lines.append("")

    lines += ["## Table discrepancies", ""]
    lines += [f"- {note}" for note in doc.discrepancy_notes] or ["None."]
    lines += ["", "## Family notes", ""]
    lines += [f"- {note}" for note in doc.family_notes] or ["None."]
    return "\n".join(lines) + "\n"


def render(doc: ReportDocument, fmt: str) -> str:
    if fmt == "json":
        return render_json(doc)
    if fmt == "csv":
        return render_csv(doc)
    if fmt == "md":
        return render_markdown(doc)
    raise ValueError(f"unknown format {fmt!r}, expected one of {', '.join(FORMATS)}")


def write_report(doc: ReportDocument, fmt: str, path: Path) -> Path:
    path = Path(path)
    path.write_text(render(doc, fmt), encoding="utf-8")
    logger.info("wrote %s report to %s", fmt, path)
    return path
