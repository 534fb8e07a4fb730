#!/usr/bin/env python3
"""
Regenerate the committed tables in every report format.

Usage:
    python scripts/export_tables.py                     # degrees from TABLE_DEGREES_STR into TABLES_DIR
    python scripts/export_tables.py -d 3 -o /tmp/tables
    python scripts/export_tables.py --workers 4
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from delpezzo.core.config import parse_degrees, settings  # noqa: E402
from delpezzo.services.report import FORMATS, build_report, render_schema, write_report  # noqa: E402


def export_tables(degrees, out_dir: Path, workers: int) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)

    print(f"Building tables for degrees {', '.join(str(d) for d in degrees)}...")
    start = time.time()
    doc = build_report(degrees, workers=workers)
    print(f"Built {len(doc.rows):,} rows in {time.time() - start:.1f}s")

    for fmt in FORMATS:
        path = write_report(doc, fmt, out_dir / f"delpezzo_table.{fmt}")
        print(f"  ✅ {path}")

    schema_path = out_dir / "report.schema.json"
    schema_path.write_text(render_schema(), encoding="utf-8")
    print(f"  ✅ {schema_path}")

    if doc.discrepancy_notes:
        print(f"\n⚠️  {len(doc.discrepancy_notes)} cells differ from the published table:")
        for note in doc.discrepancy_notes:
            print(f"   {note}")
    print(f"\n📊 {len(doc.family_notes)} family notes")


def main():
    parser = argparse.ArgumentParser(description="Export curve tables")
    parser.add_argument("-d", "--degrees", default=settings.table_degrees_str, help='e.g. "1..5"')
    parser.add_argument("-o", "--out-dir", default=settings.tables_dir)
    parser.add_argument("--workers", type=int, default=settings.table_workers)
    args = parser.parse_args()

    export_tables(parse_degrees(args.degrees), Path(args.out_dir), args.workers)


if __name__ == "__main__":
    main()
