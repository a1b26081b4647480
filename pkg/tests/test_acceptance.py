"""Acceptance suite: one test per exit criterion, each printing a verdict line.

Runs against the full default corpus (symmetric families up to degree 8,
PSL(2,q) for prime powers q <= 16, the order-7920 Mathieu group, and direct
products of order <= 2000).
"""

import time

import pytest

from formax.catalog import named_group
from formax.formations import ClassContext, ClassId, class_membership
from formax.lattice import LatticeService
from formax.suites import SuiteConfig, run_suite
from formax.tables import reproduce_table

pytestmark = pytest.mark.acceptance


def _announce(n: int, ok: bool, detail: str) -> None:
    print(f"\nACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_criterion_01_tables(ctx):
    started = time.perf_counter()
    reports = [reproduce_table(k, ctx) for k in (1, 2, 3, 4)]
    elapsed = time.perf_counter() - started
    mismatches = sum(r.mismatches for r in reports)
    rows = sum(len(r.items) for r in reports)
    _announce(1, mismatches == 0 and elapsed <= 600,
              f"tables 1-4: {rows} rows, {mismatches} mismatches, {elapsed:.1f}s")


def test_criterion_02_example_claims(ctx):
    checks = [
        ("psl2(16)", ClassId("j", p=17), True),
        ("psl2(16)", ClassId("jpr"), False),
        ("alt(7)", ClassId("fprime", p=7), True),
        ("alt(7)", ClassId("j", p=7), False),
        ("mathieu11", ClassId("fdoubleprime", p=11), True),
        ("mathieu11", ClassId("fprime", p=11), False),
    ]
    bad = []
    for spec, cid, want in checks:
        got = class_membership(named_group(spec), cid, ctx).value
        if got is not want:
            bad.append((spec, cid.text(), got, want))
    from formax.formations import minimal_non_solvable, minimal_non_p_solvable

    for spec, want in (("alt(5)", True), ("psl2(7)", True), ("psl2(11)", False)):
        if minimal_non_solvable(named_group(spec), ctx) is not want:
            bad.append((spec, "minimal-non-solvable", want))
    if minimal_non_p_solvable(named_group("psl2(11)"), 11, ctx) is not True:
        bad.append(("psl2(11)", "minimal-non-11-solvable", True))
    _announce(2, not bad, f"example claims exact; failures: {bad or 'none'}")


def test_criterion_03_theorem_matrix(ctx, corpus_groups):
    cfg = SuiteConfig(compare_union=True)
    rep = run_suite("theorems", corpus_groups, ctx, cfg)
    diff_totals = [i for i in rep.items if i.get("suite_item") == "caret-diff-total"]
    undecidable = rep.counts.get("undecidable", 0)
    ok = (rep.violations == 0 and undecidable == 0 and len(diff_totals) == 1)
    _announce(3, ok,
              f"theorem matrix over {len(corpus_groups)} groups: "
              f"{rep.counts}; union-diff rows emitted: {diff_totals[0]['diffs']}")


def test_criterion_04_core_solvability(ctx, corpus_groups):
    rep = run_suite("core-solvability", corpus_groups, ctx, SuiteConfig())
    small = [g for g in corpus_groups if g.order <= 2000]
    ok = rep.violations == 0 and len(rep.items) == len(small)
    agree = all(i["criterion"] == i["solvable"] == i["criterion_strict"]
                for i in rep.items)
    _announce(4, ok and agree,
              f"core-solvability criterion on {len(rep.items)} groups <= 2000: "
              f"{rep.counts}")


def test_criterion_05_x_eq_hn(ctx, corpus_groups):
    rep = run_suite("xhn", corpus_groups, ctx, SuiteConfig())
    triples = sum(i["triples"] for i in rep.items)
    counterexamples = sum(i["counterexamples"] for i in rep.items)
    _announce(5, rep.violations == 0 and counterexamples == 0 and triples > 0,
              f"product-decomposition scan: {triples} triples, "
              f"{counterexamples} counterexamples")


def test_criterion_06_l_index(ctx, corpus_groups):
    rep = run_suite("l-index", corpus_groups, ctx, SuiteConfig())
    counterexamples = sum(i["counterexamples"] for i in rep.items)
    self_rows = [i for i in rep.items if i["group"] == "psl2(7)"]
    self_found = self_rows and self_rows[0]["self_instance_168"]
    _announce(6, rep.violations == 0 and counterexamples == 0 and bool(self_found),
              f"index-pair scan: {sum(i['instances'] for i in rep.items)} instances, "
              f"{counterexamples} counterexamples, order-168 self instance detected: "
              f"{bool(self_found)}")


def test_criterion_07_inclusion_chain(ctx, corpus_groups):
    rep = run_suite("inclusions", corpus_groups, ctx, SuiteConfig())
    _announce(7, rep.violations == 0,
              f"inclusion chains on {len(rep.items)} (group, prime) pairs: {rep.counts}")


def test_criterion_08_oracle_and_jordan_holder(ctx, corpus_groups):
    rep = run_suite("lattice-oracle", corpus_groups, ctx, SuiteConfig())
    small = [g for g in corpus_groups if g.order <= 200]
    jh = run_suite("jordan-holder", corpus_groups, ctx, SuiteConfig())
    ok = (rep.violations == 0 and len(rep.items) == len(small)
          and jh.violations == 0 and len(jh.items) == len(corpus_groups))
    _announce(8, ok,
              f"brute-force lattice oracle on {len(rep.items)} groups <= 200 "
              f"and factor-multiset stability on {len(jh.items)} groups: clean")


def test_criterion_09_antihom(ctx, corpus_groups):
    rep = run_suite("antihom", corpus_groups, ctx, SuiteConfig())
    disagreements = [i for i in rep.items
                     if i.get("join_agree") is False or i.get("meet_agree") is False
                     or i.get("b_subset_a") is False]
    undecidable_groups = {i["group"] for i in rep.items
                          if i.get("status") == "undecidable"}
    ceiling_only = undecidable_groups <= {"sym(8)", "alt(8)"}
    _announce(9, rep.violations == 0 and not disagreements and ceiling_only,
              f"set containments and class identities: 0 disagreements; "
              f"undecidable only above the identification ceiling: "
              f"{sorted(undecidable_groups) or 'none'}")


def test_criterion_10_determinism_and_cache(ctx, corpus_groups, tmp_path):
    # byte-identical repetition
    a = run_suite("theorems", corpus_groups, ctx, SuiteConfig()).canonical_json()
    b = run_suite("theorems", corpus_groups, ctx, SuiteConfig()).canonical_json()
    identical = a == b
    # cache off vs on: same profile content for the order-7920 group
    from formax.cache import LatticeCache

    g_off = named_group("mathieu11")
    svc_off = LatticeService(bound=65536, cache=None)
    p_off = svc_off.profile(g_off)
    cold_cache = LatticeCache(tmp_path / "m11")
    t0 = time.perf_counter()
    svc_cold = LatticeService(bound=65536, cache=cold_cache)
    p_cold = svc_cold.profile(named_group("mathieu11"))
    cold_time = time.perf_counter() - t0
    t0 = time.perf_counter()
    svc_warm = LatticeService(bound=65536, cache=LatticeCache(tmp_path / "m11"))
    p_warm = svc_warm.profile(named_group("mathieu11"))
    warm_time = time.perf_counter() - t0
    same = all(
        [(m.order, m.class_size, m.solvable) for m in x.max_info]
        == [(m.order, m.class_size, m.solvable) for m in y.max_info]
        and x.max2_overs == y.max2_overs
        and [(m.order, m.strict) for m in x.max2_info]
        == [(m.order, m.strict) for m in y.max2_info]
        for x, y in ((p_off, p_cold), (p_cold, p_warm)))
    speedup = cold_time / max(warm_time, 1e-9)
    _announce(10, identical and same and speedup >= 10,
              f"repeat runs byte-identical: {identical}; cache on/off identical: {same}; "
              f"order-7920 warm speedup {speedup:.0f}x "
              f"(cold {cold_time:.1f}s, warm {warm_time:.2f}s)")
