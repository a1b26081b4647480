import random

import pytest

from formax.catalog import named_group
from formax.group import Group, GroupError, Subgroup, quotient_group

from formax.lattice import frattini_subgroup
from formax.oracle import brute_maximal_sets, brute_normal_sets
from formax.perm import parse_perm
from formax.structure import (
    SimpleType, chief_series, composition_factors, identify_chief_factor,
    is_p_solvable, is_solvable, minimal_normal_subgroups, normal_subgroups,
    residual, solvable_residual,
)


def test_solvability_basics():
    assert is_solvable(named_group("sym(4)"))
    assert not is_solvable(named_group("alt(5)"))
    assert is_solvable(named_group("dihedral(10)"))


def test_p_solvability(service):
    a5 = named_group("alt(5)")
    assert is_p_solvable(a5, 7)          # 7 does not divide 60
    assert not is_p_solvable(a5, 5)
    l211 = named_group("psl2(11)")
    assert not is_p_solvable(l211, 11)
    # the subfield A5 inside PSL(2,16) is 17-solvable (non-solvable, 17'-order)
    l216 = named_group("psl2(16)")
    profile = service.profile(l216)
    k = next(i for i, mi in enumerate(profile.max_info) if mi.order == 60)
    a5_sub = Subgroup(l216, ids=profile.max_info[k].gen_ids)
    assert a5_sub.order == 60
    assert not is_solvable(a5_sub)
    assert is_p_solvable(a5_sub, 17)
    assert not is_p_solvable(l216, 17)
    with pytest.raises(GroupError):
        is_p_solvable(a5, 6)


def test_minimal_normals_simple_group():
    a5 = named_group("alt(5)")
    mins = minimal_normal_subgroups(a5)
    assert [m.order for m in mins] == [60]


def test_minimal_normals_cyclic6():
    mins = minimal_normal_subgroups(named_group("cyclic(6)"))
    assert sorted(m.order for m in mins) == [2, 3]


def test_minimal_normals_s5_brute():
    s5 = named_group("sym(5)")
    # oracle: minimal elements of the brute-force normal subgroup list
    normals = [s for s in brute_normal_sets(s5) if 1 < len(s) < 120]
    minimal = [s for s in normals if not any(t < s for t in normals if t is not s)]
    assert sorted(len(s) for s in minimal) == [60]
    assert [m.order for m in minimal_normal_subgroups(s5)] == [60]


def test_chief_series_s4_brute():
    s4 = named_group("sym(4)")
    series = chief_series(s4)
    assert [t.order for t in series.terms] == [1, 4, 12, 24]
    factors = [str(t) for t in composition_factors(s4)]
    assert factors == sorted(["C2", "C2", "C2", "C3"])


def test_composition_factors_examples():
    assert sorted(str(t) for t in composition_factors(named_group("sym(5)"))) == ["A5", "C2"]
    assert [str(t) for t in composition_factors(named_group("alt(7)"))] == ["A7"]


def test_chief_factor_multiplicity_in_product():
    g = named_group("product(alt(4),alt(4))")
    series = chief_series(g)
    orders = sorted(f.order for f in series.factors)
    assert orders == [3, 3, 4, 4]
    v4 = next(f for f in series.factors if f.order == 4)
    assert v4.abelian and v4.multiplicity == 2 and v4.simple_type.order == 2


def test_identify_chief_factor():
    t, k = identify_chief_factor(60, abelian=False)
    assert (t.order, t.label, k) == (60, "A5", 1)
    t, k = identify_chief_factor(3600, abelian=False)
    assert (t.order, t.label, k) == (60, "A5", 2)
    t, k = identify_chief_factor(8, abelian=True)
    assert (t.order, k) == (2, 3)
    t, k = identify_chief_factor(20160, abelian=False)
    assert t.label is None and not t.identified


def test_jordan_holder_stability():
    for spec in ("sym(4)", "sym(5)", "product(alt(5),sym(3))", "dihedral(16)"):
        g = named_group(spec)
        baseline = sorted(str(t) for t in composition_factors(g))
        for round_no in range(10):
            rng = random.Random(f"{spec}:{round_no}")
            series = chief_series(g, rng=rng)
            factors = []
            for f in series.factors:
                factors.extend([str(f.simple_type)] * f.multiplicity)
            assert sorted(factors) == baseline


def test_solvability_consistency():
    for spec in ("sym(4)", "alt(5)", "sym(5)", "cyclic(8)", "psl2(7)"):
        g = named_group(spec)
        factors = composition_factors(g)
        all_cyclic = all(t.abelian for t in factors)
        assert is_solvable(g) == all_cyclic
        from formax.group import prime_factors

        per_prime = all(is_p_solvable(g, p) for p in prime_factors(g.order))
        assert is_solvable(g) == per_prime


def test_frattini_examples(service):
    assert frattini_subgroup(named_group("cyclic(4)"), service).order == 2
    # brute-force oracle for S4: intersect all maximal subgroups
    s4 = named_group("sym(4)")
    expected = None
    for mset in brute_maximal_sets(s4):
        expected = mset if expected is None else expected & mset
    assert len(expected) == 1
    assert frattini_subgroup(s4, service).order == len(expected)


def test_frattini_quaternion(service):
    # Q8 in its regular representation on 8 points
    i = parse_perm("(1 2 3 4)(5 6 7 8)")
    j = parse_perm("(1 5 3 7)(2 8 4 6)")
    q8 = Group([i, j], name="Q8")
    assert q8.order == 8
    # brute-force: intersection of all maximal subgroups
    expected = None
    for mset in brute_maximal_sets(q8):
        expected = mset if expected is None else expected & mset
    assert len(expected) == 2
    f = frattini_subgroup(q8, service)
    assert f.order == 2
    assert f.elems == expected


def test_normal_subgroups_s4():
    s4 = named_group("sym(4)")
    got = sorted(n.order for n in normal_subgroups(s4))
    expected = sorted(len(s) for s in brute_normal_sets(s4))
    assert got == expected == [1, 4, 12, 24]


def test_residual_examples():
    s5 = named_group("sym(5)")
    res = residual(s5, lambda q: is_solvable(q))
    assert res is not None and res.order == 60
    s4 = named_group("sym(4)")
    res = residual(s4, lambda q: is_solvable(q))
    assert res is not None and res.order == 1
    m11 = named_group("mathieu11")
    res = residual(m11, lambda q: is_p_solvable(q, 11))
    assert res is not None and res.order == 7920


def test_residual_functoriality():
    for spec in ("sym(5)", "product(alt(5),cyclic(2))", "sym(4)"):
        g = named_group(spec)
        res = residual(g, lambda q: is_solvable(q))
        assert res is not None
        q, _ = quotient_group(g, res)
        assert is_solvable(q)
        assert (res.order == 1) == is_solvable(g)
        assert solvable_residual(g).elems == res.elems


def test_simple_type_ordering_and_str():
    t = SimpleType(60, "A5")
    assert str(t) == "A5" and not t.abelian
    c2 = SimpleType(2, None)
    assert str(c2) == "C2" and c2.abelian
