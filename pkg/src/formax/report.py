"""Report rendering: aligned text, TSV, canonical JSON, and figures.

Writers are deterministic for a fixed report; timings stay out of the
canonical payload (they go to a sidecar meta file).  Figures are rendered
with the Agg backend next to the delimited output when an output directory
is given.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from .suites import VerificationReport
from .tables import TableReport

_STATUS_ORDER = ("violation", "finding", "undecidable", "nonvacuous",
                 "vacuous-holds", "ok", "info")


def report_to_tsv(report: VerificationReport) -> str:
    """Delimited item rows; the column set is the union of item keys."""
    keys: list[str] = []
    for item in report.items:
        for k in item:
            if k not in keys:
                keys.append(k)
    lines = ["\t".join(keys)]
    for item in report.items:
        lines.append("\t".join(_cell(item.get(k)) for k in keys))
    return "\n".join(lines) + "\n"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "T" if value else "F"
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def report_to_text(report: VerificationReport) -> str:
    out = [f"suite: {report.suite}"]
    out.append("counts: " + ", ".join(f"{k}={v}" for k, v in sorted(report.counts.items())))
    ordered = sorted(report.items,
                     key=lambda it: (_status_rank(it.get("status", "info"))))
    shown = 0
    for item in ordered:
        status = item.get("status", "info")
        if status in ("ok", "vacuous-holds", "nonvacuous") and shown >= 40:
            continue
        brief = {k: v for k, v in item.items()
                 if k not in ("witness", "memberships", "findings")}
        out.append(f"  [{status}] " + ", ".join(f"{k}={_cell(v)}" for k, v in brief.items()
                                                if k != "status"))
        shown += 1
    hidden = len(report.items) - shown
    if hidden > 0:
        out.append(f"  ... {hidden} more rows (see the TSV/JSON output)")
    out.append(f"result: {'VIOLATIONS FOUND' if report.violations else 'all checks passed'}")
    return "\n".join(out) + "\n"


def _status_rank(status: str) -> int:
    try:
        return _STATUS_ORDER.index(status)
    except ValueError:
        return len(_STATUS_ORDER)


def table_report_to_text(rep: TableReport) -> str:
    out = [f"table {rep.table_id}: {'PASS' if rep.ok else 'FAIL'} "
           f"({rep.mismatches} mismatches)"]
    for item in rep.items:
        mark = "ok " if item["status"] == "match" else "BAD"
        line = (f"  [{mark}] {item['context']:12s} {item['structure']:12s} "
                f"order {item['order']}")
        if item.get("problems"):
            line += "  " + "; ".join(item["problems"])
        if item.get("note"):
            line += f"  (note: {item['note']})"
        out.append(line)
    out.append("  computed maximal classes:")
    for c in rep.computed:
        out.append(
            f"    {c['context']:12s} order {c['order']:6d} index {c['index']:5d} "
            f"count {c['count']:4d} pp={_cell(c['prime_power_index'])} "
            f"solv={_cell(c['solvable'])} psolv={_cell(c['p_solvable'])}")
    return "\n".join(out) + "\n"


def table_report_to_tsv(rep: TableReport) -> str:
    lines = ["table\tcontext\tstructure\torder\tstatus\tproblems\tnote"]
    for item in rep.items:
        lines.append("\t".join([
            str(item["table"]), item["context"], item["structure"],
            str(item["order"]), item["status"],
            "; ".join(item.get("problems", [])), item.get("note", ""),
        ]))
    return "\n".join(lines) + "\n"


def table_report_canonical(rep: TableReport) -> dict:
    return {"table": rep.table_id, "ok": rep.ok, "mismatches": rep.mismatches,
            "items": rep.items, "computed": rep.computed}


# ---------------------------------------------------------------------------
# file emission
# ---------------------------------------------------------------------------

def write_report_files(report: VerificationReport, outdir: Path | str,
                       figures: bool = True) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = report.suite
    written = []
    json_path = outdir / f"{stem}.json"
    json_path.write_text(report.canonical_json())
    written.append(json_path)
    tsv_path = outdir / f"{stem}.tsv"
    tsv_path.write_text(report_to_tsv(report))
    written.append(tsv_path)
    txt_path = outdir / f"{stem}.txt"
    txt_path.write_text(report_to_text(report))
    written.append(txt_path)
    meta_path = outdir / f"{stem}.meta.json"
    meta_path.write_text(json.dumps({"wall_time_seconds": round(report.wall_time, 3)}) + "\n")
    written.append(meta_path)
    if figures:
        fig_path = outdir / f"{stem}.png"
        render_suite_figure(report, fig_path)
        written.append(fig_path)
    return written


def write_table_files(reports: Iterable[TableReport], outdir: Path | str,
                      figures: bool = True) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    reports = list(reports)
    for rep in reports:
        stem = f"table{rep.table_id}"
        (outdir / f"{stem}.json").write_text(
            json.dumps(table_report_canonical(rep), sort_keys=True, indent=1) + "\n")
        (outdir / f"{stem}.tsv").write_text(table_report_to_tsv(rep))
        (outdir / f"{stem}.txt").write_text(table_report_to_text(rep))
        written += [outdir / f"table{rep.table_id}.{ext}" for ext in ("json", "tsv", "txt")]
    if figures:
        fig_path = outdir / "tables.png"
        render_tables_figure(reports, fig_path)
        written.append(fig_path)
    return written


# ---------------------------------------------------------------------------
# figures (Agg backend, deterministic for fixed inputs)
# ---------------------------------------------------------------------------

def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


_STATUS_COLORS = {
    "ok": "#2a9d8f", "vacuous-holds": "#8ab17d", "nonvacuous": "#e9c46a",
    "info": "#a8a8a8", "undecidable": "#f4a261", "finding": "#e76f51",
    "violation": "#d62828", "match": "#2a9d8f", "mismatch": "#d62828",
}


def render_suite_figure(report: VerificationReport, path: Path | str) -> None:
    plt = _plt()
    fig, axes = plt.subplots(1, 2, figsize=(11, 4.2))
    labels = sorted(report.counts)
    values = [report.counts[k] for k in labels]
    colors = [_STATUS_COLORS.get(k, "#666666") for k in labels]
    axes[0].bar(range(len(labels)), values, color=colors)
    axes[0].set_xticks(range(len(labels)))
    axes[0].set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    axes[0].set_title(f"suite {report.suite}: item statuses")
    axes[0].set_ylabel("items")

    grid = _group_status_grid(report)
    if grid:
        groups = sorted(grid)
        statuses = list(_STATUS_ORDER)
        data = [[grid[g].get(s, 0) for s in statuses] for g in groups]
        bottom = [0.0] * len(groups)
        for si, s in enumerate(statuses):
            col = [row[si] for row in data]
            if not any(col):
                continue
            axes[1].barh(range(len(groups)), col, left=bottom,
                         color=_STATUS_COLORS.get(s, "#666666"), label=s)
            bottom = [b + c for b, c in zip(bottom, col)]
        axes[1].set_yticks(range(len(groups)))
        axes[1].set_yticklabels(groups, fontsize=6)
        axes[1].set_title("per-group item statuses")
        axes[1].legend(fontsize=7, loc="lower right")
    else:
        axes[1].axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def _group_status_grid(report: VerificationReport) -> dict[str, dict[str, int]]:
    grid: dict[str, dict[str, int]] = {}
    for item in report.items:
        group = item.get("group")
        if not group:
            continue
        row = grid.setdefault(str(group), {})
        status = item.get("status", "info")
        row[status] = row.get(status, 0) + 1
    return grid


def render_tables_figure(reports: Iterable[TableReport], path: Path | str) -> None:
    plt = _plt()
    reports = list(reports)
    fig, ax = plt.subplots(figsize=(7, 3.2))
    labels = [f"table {r.table_id}" for r in reports]
    matches = [sum(1 for i in r.items if i["status"] == "match") for r in reports]
    misses = [r.mismatches for r in reports]
    ax.bar(range(len(labels)), matches, color=_STATUS_COLORS["match"], label="matched rows")
    ax.bar(range(len(labels)), misses, bottom=matches,
           color=_STATUS_COLORS["mismatch"], label="mismatched rows")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels)
    ax.set_ylabel("rows")
    ax.set_title("reference table reproduction")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
