import pytest

from formax.catalog import named_group
from formax.suites import SUITES, SuiteConfig, run_suite


@pytest.fixture(scope="module")
def sample(ctx):
    names = ("cyclic(6)", "sym(4)", "alt(5)", "sym(5)", "psl2(7)",
             "product(alt(5),cyclic(2))", "dihedral(16)")
    return [named_group(n) for n in names]


def test_registry_contains_all_expected_ids():
    for sid in ("theorems", "inclusions", "core-solvability", "xhn", "l-index",
                "antihom", "formation-axioms", "lattice-oracle", "jordan-holder",
                "transport", "T51", "C52", "T53", "T54", "L55", "C56", "T57", "C58"):
        assert sid in SUITES
    with pytest.raises(KeyError):
        run_suite("bogus", [], None)


def test_theorem_suite_sample(sample, ctx):
    rep = run_suite("theorems", sample, ctx, SuiteConfig())
    assert rep.violations == 0
    assert rep.counts.get("vacuous-holds", 0) > 0
    assert rep.counts.get("nonvacuous", 0) > 0
    assert rep.exit_code == 0
    # every item records both readings
    for item in rep.items:
        assert item["outcome"] in ("VacuousHolds", "NonVacuous")
        if item["outcome"] == "VacuousHolds":
            assert item["raw_outcome"] in ("VacuousHolds", "NonVacuous", "Undecidable")


def test_single_pipeline_suite(sample, ctx):
    rep = run_suite("T53", sample, ctx, SuiteConfig())
    assert rep.violations == 0
    assert all(item["pipeline_id"] == "T53" for item in rep.items
               if item.get("suite_item") == "theorem")


def test_union_comparison_emits_diff(sample, ctx):
    rep = run_suite("T51", sample, ctx, SuiteConfig(compare_union=True))
    totals = [i for i in rep.items if i.get("suite_item") == "caret-diff-total"]
    assert len(totals) == 1
    assert "diffs" in totals[0]


def test_inclusion_suite_sample(sample, ctx):
    rep = run_suite("inclusions", sample, ctx, SuiteConfig())
    assert rep.violations == 0


def test_core_solvability_suite_sample(sample, ctx):
    rep = run_suite("core-solvability", sample, ctx, SuiteConfig())
    assert rep.violations == 0
    rows = {i["group"]: i for i in rep.items}
    assert rows["alt(5)"]["solvable"] is False and rows["alt(5)"]["criterion"] is False
    assert rows["sym(4)"]["solvable"] is True and rows["sym(4)"]["criterion"] is True
    assert all(i["criterion_strict"] == i["solvable"] for i in rep.items)


def test_xhn_suite_sample(sample, ctx):
    rep = run_suite("xhn", sample, ctx, SuiteConfig())
    assert rep.violations == 0
    assert any(i["triples"] > 0 for i in rep.items)


def test_l_index_suite_sample(ctx):
    groups = [named_group(n) for n in ("psl2(7)", "sym(5)", "alt(5)", "sym(4)")]
    rep = run_suite("l-index", groups, ctx, SuiteConfig())
    assert rep.violations == 0
    l27 = next(i for i in rep.items if i["group"] == "psl2(7)")
    assert l27["self_instance_168"] is True
    assert l27["instances"] >= 1


def test_antihom_suite_sample(sample, ctx):
    rep = run_suite("antihom", sample, ctx, SuiteConfig())
    assert rep.violations == 0
    foot = next(i for i in rep.items if i["suite_item"] == "order-reversal-footprint")
    assert foot["small_set_class_count"] <= foot["large_set_class_count"]


def test_jordan_holder_suite_sample(sample, ctx):
    rep = run_suite("jordan-holder", sample, ctx, SuiteConfig())
    assert rep.violations == 0


def test_transport_suite_sample(sample, ctx):
    rep = run_suite("transport", sample, ctx, SuiteConfig())
    assert rep.violations == 0
    moved = [i for i in rep.items if i.get("quotient_order")]
    assert moved and all(i["max_correspondence"] for i in moved)


def test_lattice_oracle_suite_small(ctx):
    groups = [named_group(n) for n in ("sym(4)", "alt(5)", "dihedral(16)", "cyclic(8)")]
    rep = run_suite("lattice-oracle", groups, ctx, SuiteConfig())
    assert rep.violations == 0
    assert len(rep.items) == 4


def test_report_shape(sample, ctx):
    rep = run_suite("inclusions", sample, ctx, SuiteConfig())
    assert rep.suite == "inclusions"
    assert rep.config["caret"] == "intersection"
    assert sum(rep.counts.values()) == len(rep.items)
    payload = rep.canonical_json()
    assert "wall_time" not in payload
    assert rep.wall_time >= 0


def test_determinism_same_bytes(sample, ctx):
    a = run_suite("core-solvability", sample, ctx, SuiteConfig())
    b = run_suite("core-solvability", sample, ctx, SuiteConfig())
    assert a.canonical_json() == b.canonical_json()
