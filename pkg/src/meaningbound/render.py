"""Render study reports as a human table, CSV, or JSON.

All three formats carry the same numeric content at the fixed display
precisions; the human table mirrors the reference layout (per-exemplar
blocks, one column per concept, the row labels Tot. N through M).
"""

import csv
import io
import json

from meaningbound.analysis import ScanEntry, StudyReport
from meaningbound.model import (
    ABS_W_DECIMALS,
    CORR_DECIMALS,
    MEANING_BOUND_DECIMALS,
    REL_W_DECIMALS,
)

CSV_HEADER = [
    "exemplar",
    "concept",
    "tot_n",
    "n_x",
    "abs_w",
    "rel_n",
    "rel_not_n",
    "corr",
    "rel_n_corr",
    "rel_w",
    "m",
    "bound",
    "verdict",
]


def render_json(report: StudyReport) -> str:
    return json.dumps(report.to_json_dict(), indent=2, ensure_ascii=False) + "\n"


def render_csv(report: StudyReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for region in report.regions:
        for column, total in zip(region.columns, report.totals):
            cell = column.report
            writer.writerow(
                [
                    region.exemplar.canonical(),
                    column.pattern.canonical(),
                    total,
                    region.n_x,
                    f"{region.abs_w:.{ABS_W_DECIMALS}f}",
                    column.rel_n,
                    column.rel_not_n,
                    f"{cell.correction:.{CORR_DECIMALS}f}",
                    cell.corrected_display,
                    f"{cell.rel_w:.{REL_W_DECIMALS}f}",
                    f"{cell.bound:.{MEANING_BOUND_DECIMALS}f}",
                    cell.bound_class.value,
                    region.verdict_weights.value,
                ]
            )
    return buffer.getvalue()


def _rows_for_region(region) -> list[list[str]]:
    cells = [column.report for column in region.columns]
    rows = [
        ["Rel. N", *(f"{c.rel_n:,}" for c in region.columns)],
        ["Rel. -N", *(f"{c.rel_not_n:,}" for c in region.columns)],
        ["Corr.", *(f"{c.correction:.{CORR_DECIMALS}f}" for c in cells)],
        ["Rel. N corr.", *(f"{c.corrected_display:,}" for c in cells)],
        ["Rel. w", *(f"{c.rel_w:.{REL_W_DECIMALS}f}" for c in cells)],
        ["M", *(f"{c.bound:.{MEANING_BOUND_DECIMALS}f}" for c in cells)],
        ["Bound", *(c.bound_class.label for c in cells)],
    ]
    return rows


def render_table(report: StudyReport) -> str:
    """Reference-style human table: totals header, then per-exemplar blocks."""
    concepts = [p.canonical() for p in report.triple.patterns]
    grid: list[list[str]] = [
        ["", *concepts],
        ["Tot. N", *(f"{n:,}" for n in report.totals)],
    ]
    blocks: list[tuple[str, list[list[str]]]] = []
    for region in report.regions:
        header = (
            f"{region.exemplar.canonical()}   "
            f"Tot. N {region.n_x:,}   "
            f"Abs. w {region.abs_w:.{ABS_W_DECIMALS}f}   "
            f"Verdict {region.verdict_weights.label}"
        )
        rows = _rows_for_region(region)
        grid.extend(rows)
        blocks.append((header, rows))

    label_width = max(len(row[0]) for row in grid)
    col_widths = [
        max(len(row[i]) for row in grid if len(row) > i)
        for i in range(1, 4)
    ]

    def fmt(row: list[str]) -> str:
        parts = [row[0].ljust(label_width)]
        parts += [row[i + 1].rjust(col_widths[i]) for i in range(len(row) - 1)]
        return "  ".join(parts).rstrip()

    lines = [fmt(grid[0]), fmt(grid[1])]
    for header, rows in blocks:
        lines.append("")
        lines.append(header)
        lines.extend(fmt(row) for row in rows)
    return "\n".join(lines) + "\n"


def render_scan(entries: list[ScanEntry]) -> str:
    """One line per candidate: exemplar, verdict, three meaning bounds."""
    lines = []
    for entry in entries:
        bounds = "  ".join(f"{b:.{MEANING_BOUND_DECIMALS}f}" for b in entry.bounds)
        lines.append(f"{entry.exemplar.canonical()}\t{entry.verdict.label}\t{bounds}")
    return "\n".join(lines) + ("\n" if lines else "")
