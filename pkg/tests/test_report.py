import json

from formax.catalog import named_group
from formax.report import (
    report_to_text, report_to_tsv, table_report_to_text, table_report_to_tsv,
    write_report_files, write_table_files,
)
from formax.suites import SuiteConfig, run_suite
from formax.tables import reproduce_table


def _sample_report(ctx):
    groups = [named_group(n) for n in ("sym(4)", "alt(5)")]
    return run_suite("core-solvability", groups, ctx, SuiteConfig())


def test_tsv_has_header_and_rows(ctx):
    rep = _sample_report(ctx)
    tsv = report_to_tsv(rep)
    lines = tsv.strip().split("\n")
    assert len(lines) == len(rep.items) + 1
    header = lines[0].split("\t")
    assert "group" in header and "status" in header


def test_text_mentions_result(ctx):
    rep = _sample_report(ctx)
    text = report_to_text(rep)
    assert "all checks passed" in text
    assert "core-solvability" in text


def test_write_report_files(ctx, tmp_path):
    rep = _sample_report(ctx)
    files = write_report_files(rep, tmp_path)
    names = {f.name for f in files}
    assert names == {"core-solvability.json", "core-solvability.tsv",
                     "core-solvability.txt", "core-solvability.meta.json",
                     "core-solvability.png"}
    data = json.loads((tmp_path / "core-solvability.json").read_text())
    assert data["counts"] == rep.counts
    png = (tmp_path / "core-solvability.png").read_bytes()
    assert png[:8] == b"\x89PNG\r\n\x1a\n"


def test_table_report_renderers(small_ctx, tmp_path):
    rep = reproduce_table(1, small_ctx)
    text = table_report_to_text(rep)
    assert "table 1: PASS" in text
    tsv = table_report_to_tsv(rep)
    assert tsv.startswith("table\tcontext")
    files = write_table_files([rep], tmp_path)
    assert (tmp_path / "table1.json").exists()
    assert (tmp_path / "tables.png").exists()
