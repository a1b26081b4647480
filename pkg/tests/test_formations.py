import pytest

from formax.catalog import named_group
from formax.formations import (
    Allowlist, ClassContext, ClassId, class_join_membership, class_meet,
    class_membership, f1_membership, formation_axiom_check, minimal_non_solvable,
    minimal_non_p_solvable, parse_class_id,
)
from formax.group import GroupError, prime_factors
from formax.structure import SimpleType, UnidentifiableFactor


def test_minimal_non_solvable_examples(small_ctx):
    assert minimal_non_solvable(named_group("alt(5)"), small_ctx)
    assert minimal_non_solvable(named_group("psl2(7)"), small_ctx)
    assert not minimal_non_solvable(named_group("psl2(11)"), small_ctx)
    assert not minimal_non_solvable(named_group("sym(4)"), small_ctx)


def test_minimal_non_p_solvable_examples(small_ctx):
    l211 = named_group("psl2(11)")
    assert minimal_non_p_solvable(l211, 11, small_ctx)
    assert not minimal_non_p_solvable(l211, 5, small_ctx)


def test_example_membership_psl216(small_ctx):
    g = named_group("psl2(16)")
    assert class_membership(g, ClassId("j", p=17), small_ctx).value is True
    assert class_membership(g, ClassId("jpr"), small_ctx).value is False


def test_example_membership_a7(small_ctx):
    g = named_group("alt(7)")
    assert class_membership(g, ClassId("fprime", p=7), small_ctx).value is True
    assert class_membership(g, ClassId("j", p=7), small_ctx).value is False


def test_example_membership_m11(small_ctx):
    g = named_group("mathieu11")
    assert class_membership(g, ClassId("fdoubleprime", p=11), small_ctx).value is True
    assert class_membership(g, ClassId("fprime", p=11), small_ctx).value is False


def test_evidence_records_satisfied_disjuncts(small_ctx):
    g = named_group("alt(7)")
    res = class_membership(g, ClassId("fprime", p=7), small_ctx)
    assert res.value is True
    for row in res.evidence:
        assert row["satisfied"], row
    # the order-168 maximal is covered only by minimal-non-solvable
    row168 = next(r for r in res.evidence if r["order"] == 168)
    assert row168["satisfied"] == ["minimal-non-solvable"]


def test_f1set_membership(small_ctx):
    a5_type = SimpleType(60, "A5")
    l27_type = SimpleType(168, "PSL(2,7)")
    s5 = named_group("sym(5)")
    assert f1_membership(s5, Allowlist(frozenset([a5_type])), small_ctx) is True
    assert f1_membership(s5, Allowlist(frozenset([l27_type])), small_ctx) is False
    # the empty allowlist class is exactly the solvable groups
    assert f1_membership(named_group("sym(4)"), Allowlist(frozenset()), small_ctx) is True
    assert f1_membership(s5, Allowlist(frozenset()), small_ctx) is False


def test_f1_raises_above_ceiling(small_ctx):
    g = named_group("alt(8)")
    with pytest.raises(UnidentifiableFactor):
        f1_membership(g, Allowlist(frozenset([SimpleType(60, "A5")])), small_ctx)


def test_hat_scan_includes_self(small_ctx):
    # A5 satisfies the raw base on every prime of 60, so A5 is on the scan list
    hat = ClassId("hat", base=ClassId("f1", p=5))
    allow = small_ctx.effective_allowlist(hat)
    assert SimpleType(60, "A5") in allow.types
    assert class_membership(named_group("sym(5)"), hat, small_ctx).value is True
    assert "corpus-scan" in allow.provenance


def test_solvable_groups_in_every_hat(small_ctx):
    for kind in ("f1", "f2", "fdoubleprime"):
        hat = ClassId("hat", base=ClassId(kind, p=3))
        for spec in ("sym(4)", "cyclic(6)", "dihedral(16)"):
            assert class_membership(named_group(spec), hat, small_ctx).value is True


def test_hat_monotonicity(small_ctx):
    small = Allowlist(frozenset([SimpleType(60, "A5")]))
    large = Allowlist(frozenset([SimpleType(60, "A5"), SimpleType(168, "PSL(2,7)")]))
    for spec in ("sym(5)", "psl2(7)", "sym(4)", "alt(5)"):
        g = named_group(spec)
        in_small = class_membership(g, ClassId("f1set", allow=small), small_ctx).value
        in_large = class_membership(g, ClassId("f1set", allow=large), small_ctx).value
        assert not (in_small and not in_large)


def test_inclusion_chain_sample(small_ctx):
    for spec in ("sym(5)", "alt(5)", "psl2(7)", "psl2(11)", "sym(4)", "mathieu11"):
        g = named_group(spec)
        for p in prime_factors(g.order):
            vals = {kind: class_membership(
                g, ClassId(kind, p=p if kind not in ("solvable", "jpr") else None),
                small_ctx).value
                for kind in ("solvable", "jpr", "j", "fprime", "fdoubleprime", "f1", "f2")}
            for lo, hi in (("solvable", "f1"), ("f1", "f2"), ("f2", "fdoubleprime"),
                           ("jpr", "j"), ("j", "fprime"), ("fprime", "fdoubleprime")):
                assert not (vals[lo] and not vals[hi]), (spec, p, lo, hi)


def test_meet_and_join(small_ctx):
    a5 = named_group("alt(5)")
    meet = class_meet(ClassId("solvable"), ClassId("j", p=5))
    assert class_membership(a5, meet, small_ctx).value is False
    # any group joined against the solvable class: the residual is trivial
    for spec in ("sym(4)", "dihedral(16)"):
        g = named_group(spec)
        assert class_join_membership(g, ClassId("jpr"), ClassId("solvable"),
                                     small_ctx) is True


def test_join_product_identity_sample(small_ctx):
    # hat(F1) hat(F2) product membership coincides with hat(F2) membership
    for spec in ("sym(5)", "alt(5)", "sym(4)", "psl2(11)"):
        g = named_group(spec)
        for p in prime_factors(g.order):
            ga = ClassId("hat", base=ClassId("f1", p=p))
            gb = ClassId("hat", base=ClassId("f2", p=p))
            left = class_membership(g, gb, small_ctx).value
            right = class_join_membership(g, ga, gb, small_ctx)
            assert left == right, (spec, p)


def test_formation_axioms_solvable_clean(small_ctx):
    for spec in ("sym(4)", "sym(5)", "product(alt(5),cyclic(2))"):
        findings = formation_axiom_check(ClassId("solvable"), named_group(spec), small_ctx)
        assert findings == []


def test_formation_axioms_hat_extension_closed(small_ctx):
    hat = ClassId("hat", base=ClassId("f1", p=5))
    for spec in ("sym(5)", "product(alt(5),cyclic(2))", "sym(4)"):
        findings = formation_axiom_check(hat, named_group(spec), small_ctx)
        assert [f for f in findings if f["kind"] == "extension-closure"] == []


def test_raw_f1_fails_r0_on_a_product(small_ctx):
    # A5 x C2: both maximal quotients are in raw F1(2) but the group is not
    g = named_group("product(alt(5),cyclic(2))")
    findings = formation_axiom_check(ClassId("f1", p=2), g, small_ctx)
    assert any(f["kind"] == "r0-closure" for f in findings)


def test_parse_class_id():
    assert parse_class_id("J", 7) == ClassId("j", p=7)
    assert parse_class_id("Jpr") == ClassId("jpr")
    assert parse_class_id("Hat(F1)", 5) == ClassId("hat", base=ClassId("f1", p=5))
    with pytest.raises(GroupError):
        parse_class_id("nonsense")
    with pytest.raises(GroupError):
        ClassId("j")  # missing prime
