import pytest
from hypothesis import given, strategies as st

from formax.catalog import named_group
from formax.group import GroupError, prime_factors, quotient_group
from formax.lattice import SubgroupSet
from formax.pipelines import (
    ANTIHOM_EXAMPLES, CARET_UNION, REGISTERED_PIPELINES, Contract, Dot, EvalOptions,
    Extend, PhiNode, PipelineParseError, antihom_check, base_set, contract,
    eval_pipeline, extend, generating_check, parse_pipeline, phi,
    registered_pipeline, render_pipeline, transport_to_quotient,
)
from formax.structure import minimal_normal_subgroups


def test_parse_dot_example():
    ast = parse_pipeline("Pci.(Phi(X)_L1 ^ E1)")
    assert ast == Dot("Pci", Extend(Contract(PhiNode("X"), "L1"), "E1"))


def test_parse_errors_have_positions():
    with pytest.raises(PipelineParseError):
        parse_pipeline("Phi(X")
    with pytest.raises(PipelineParseError):
        parse_pipeline("Phi(Q)_L1")
    with pytest.raises(PipelineParseError):
        parse_pipeline("Phi(X)_L1 extra")


def test_registered_round_trips():
    for rp in REGISTERED_PIPELINES:
        ast = parse_pipeline(rp.text)
        assert parse_pipeline(render_pipeline(ast)) == ast


def test_registered_ids():
    assert [rp.pid for rp in REGISTERED_PIPELINES] == [
        "T51", "C52", "T53", "T54", "L55", "C56", "T57", "C58"]
    assert registered_pipeline("T53").target_kind == "fdoubleprime"
    with pytest.raises(GroupError):
        registered_pipeline("T99")


@st.composite
def pipeline_asts(draw, depth=0):
    if depth > 3:
        return PhiNode("X")
    kind = draw(st.integers(0, 3 if depth else 2))
    atom = draw(st.sampled_from(["L1", "L2", "S", "Pc", "Pci", "E1", "T1"]))
    if kind == 0:
        return PhiNode("X")
    inner = draw(pipeline_asts(depth=depth + 1))
    if kind == 1:
        return Contract(inner, atom)
    if kind == 2:
        return Extend(inner, atom)
    return Dot(atom, inner)


@given(pipeline_asts())
def test_render_parse_round_trip(ast):
    assert parse_pipeline(render_pipeline(ast)) == ast


def test_base_sets_on_a5(service):
    profile = service.profile(named_group("alt(5)"))
    assert len(base_set(profile, 5, "X")) == 0
    # every base set is a union of whole conjugacy classes
    for name in ("L1", "L2", "S", "Pc", "Pci", "E1", "T1"):
        s = base_set(profile, 2, name)
        for action in profile.max2_stratum.actions:
            assert frozenset(action[m] for m in s.members) == s.members


def test_base_sets_on_s5(service):
    s5 = named_group("sym(5)")
    profile = service.profile(s5)
    x = base_set(profile, 5, "X")
    assert [profile.max_info[c].order for c in x.class_ids()] == [60]
    # S4 and the other solvable maximals stay outside
    assert len(x) == 1


def test_l1_subset_l2_and_pc_subset_pci(service):
    for spec in ("sym(5)", "psl2(7)", "sym(4)", "mathieu11"):
        g = named_group(spec)
        profile = service.profile(g)
        for p in prime_factors(g.order):
            l1 = base_set(profile, p, "L1").members
            l2 = base_set(profile, p, "L2").members
            assert l1 <= l2
        pc = base_set(profile, 2, "Pc").members
        pci = base_set(profile, 2, "Pci").members
        assert pc <= pci


def test_phi_examples(service):
    s5 = named_group("sym(5)")
    profile = service.profile(s5)
    x = base_set(profile, 5, "X")
    ph = phi(x)
    assert len(ph) == 21
    orders = sorted({profile.max2_info[c].order for c in ph.class_ids()})
    assert orders == [6, 10, 12]
    empty = SubgroupSet(profile, "max", frozenset())
    assert len(phi(empty)) == 0
    # monotone in the input
    sub = SubgroupSet(profile, "max", frozenset(list(x.members)[:0]))
    assert phi(sub).members <= ph.members


def test_contract_extend_identities(service):
    profile = service.profile(named_group("sym(5)"))
    full = SubgroupSet(profile, "max2", profile.all_max2_members())
    y = phi(base_set(profile, 5, "X"))
    assert contract(y, full).members == y.members
    empty = SubgroupSet(profile, "max2", frozenset())
    assert extend(y, empty).members == y.members


def test_eval_examples(service):
    a5 = named_group("alt(5)")
    s5 = named_group("sym(5)")
    assert len(eval_pipeline(parse_pipeline("Phi(X)_L1"), service.profile(a5), 5)) == 0
    got = eval_pipeline(parse_pipeline("Phi(X)_L1"), service.profile(s5), 2)
    assert len(got) == 21


def test_caret_semantics_differ(service):
    s5 = named_group("sym(5)")
    profile = service.profile(s5)
    ast = parse_pipeline("Phi(X)_L1 ^E1")
    inter = eval_pipeline(ast, profile, 5, EvalOptions(caret="intersection"))
    union = eval_pipeline(ast, profile, 5, EvalOptions(caret=CARET_UNION))
    assert inter.members <= union.members


def test_level_mismatch(service):
    profile = service.profile(named_group("sym(4)"))
    with pytest.raises(GroupError):
        eval_pipeline(Contract(PhiNode("X"), "X"), profile, 2)
    with pytest.raises(GroupError):
        phi(SubgroupSet(profile, "max2", frozenset()))


def test_generating_check_verdicts(small_ctx):
    a5 = named_group("alt(5)")
    v = generating_check(a5, 5, "Phi(X)_L1", "f1", small_ctx)
    assert v.outcome == "VacuousHolds" and v.raw_outcome == "VacuousHolds"
    s5 = named_group("sym(5)")
    v2 = generating_check(s5, 2, "Phi(X)_L1", "f1", small_ctx)
    assert v2.outcome == "NonVacuous"
    # degenerate prime: literal evaluation, flagged
    v3 = generating_check(a5, 7, "Phi(X)_L1", "f1", small_ctx)
    assert v3.degenerate and v3.outcome == "VacuousHolds"


def test_registered_pipelines_no_violation_sample(small_ctx):
    for spec in ("alt(5)", "sym(5)", "psl2(7)", "sym(4)", "psl2(11)", "cyclic(8)"):
        g = named_group(spec)
        for p in prime_factors(g.order):
            for rp in REGISTERED_PIPELINES:
                v = generating_check(g, p, rp.ast(), rp.target_kind, small_ctx)
                assert v.outcome != "Violation", (spec, p, rp.pid)
                assert v.raw_outcome in (None, "VacuousHolds", "NonVacuous")


def test_transport_to_quotient(service):
    s4 = named_group("sym(4)")
    profile = service.profile(s4)
    L = min(minimal_normal_subgroups(s4), key=lambda n: n.order)
    assert L.order == 4
    q, hom = quotient_group(s4, L)
    q_profile = service.profile(q)
    full_max = SubgroupSet(profile, "max",
                           frozenset(m for m in range(profile.max_stratum.size)
                                     if L.elems <= profile.max_member_set(m)))
    moved, dropped = transport_to_quotient(full_max, hom, q_profile)
    assert dropped == 0
    # Max(S4/V4) = Max(S3): one C3 and three C2
    orders = sorted(q_profile.max_info[q_profile.max_stratum.member_class[m]].order
                    for m in moved.members)
    assert orders == [2, 2, 2, 3]
    # transporting the empty set gives the empty set
    empty = SubgroupSet(profile, "max", frozenset())
    out, dropped = transport_to_quotient(empty, hom, q_profile)
    assert len(out) == 0 and dropped == 0


def test_antihom_examples_rows(small_ctx):
    for spec in ("sym(5)", "alt(5)", "sym(4)"):
        g = named_group(spec)
        for p in prime_factors(g.order):
            for ex in ANTIHOM_EXAMPLES:
                row = antihom_check(g, p, ex, small_ctx)
                assert row["b_subset_a"], (spec, p, ex.eid)
                assert row["join_agree"] in (True, None)
                assert row["meet_agree"] in (True, None)
