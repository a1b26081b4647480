"""Verification suites over the group corpus, and their reports.

Each suite walks every corpus group (and, where the check is prime-local,
every prime dividing the group order), producing one item row per check.
Reports are deterministic for a fixed corpus and configuration; wall time
is kept outside the canonical payload.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .catalog import GroupRecord, default_corpus
from .formations import (
    ClassContext, ClassId, class_join_membership, class_meet,
    formation_axiom_check,
)
from .group import Group, is_prime_power, prime_factors, quotient_group
from .lattice import Lattice, LatticeService, SubgroupSet
from .oracle import brute_class_profile
from .pipelines import (
    ANTIHOM_EXAMPLES, CARET_INTERSECTION, CARET_UNION, EvalOptions,
    REGISTERED_PIPELINES, TheoremVerdict, antihom_check, eval_pipeline,
    generating_check, parse_pipeline, transport_to_quotient,
)
from .structure import chief_series, composition_factors, minimal_normal_subgroups

ORACLE_BOUND = 200
LEMMA_BOUND = 2000


@dataclass
class SuiteConfig:
    caret: str = CARET_INTERSECTION
    compare_union: bool = False
    e1_mode: str = "fixed-p"
    oracle_bound: int = ORACLE_BOUND
    lemma_bound: int = LEMMA_BOUND

    def echo(self) -> dict:
        return {"caret": self.caret, "compare_union": self.compare_union,
                "e1_mode": self.e1_mode, "oracle_bound": self.oracle_bound,
                "lemma_bound": self.lemma_bound}


@dataclass
class VerificationReport:
    suite: str
    config: dict
    items: list[dict] = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def finish(self) -> "VerificationReport":
        counts: dict[str, int] = {}
        for item in self.items:
            status = item.get("status", "info")
            counts[status] = counts.get(status, 0) + 1
        self.counts = dict(sorted(counts.items()))
        return self

    @property
    def violations(self) -> int:
        return self.counts.get("violation", 0)

    @property
    def exit_code(self) -> int:
        return 1 if self.violations else 0

    def canonical_dict(self) -> dict:
        return {"suite": self.suite, "config": self.config,
                "counts": self.counts, "items": self.items}

    def canonical_json(self) -> str:
        return json.dumps(self.canonical_dict(), sort_keys=True, indent=1) + "\n"


Runner = Callable[[Sequence[Group], ClassContext, SuiteConfig], list[dict]]


# ---------------------------------------------------------------------------
# suite implementations
# ---------------------------------------------------------------------------

def _group_primes(g: Group) -> list[int]:
    return prime_factors(g.order)


def _options(cfg: SuiteConfig, caret: str | None = None) -> EvalOptions:
    return EvalOptions(caret=caret or cfg.caret, e1_mode=cfg.e1_mode)


def _verdict_item(v: TheoremVerdict, pid: str, caret: str) -> dict:
    status = {"VacuousHolds": "vacuous-holds", "NonVacuous": "nonvacuous",
              "Violation": "violation", "Undecidable": "undecidable"}[v.outcome]
    item = {
        "suite_item": "theorem", "pipeline_id": pid, "pipeline": v.pipeline,
        "group": v.group, "p": v.p, "target": v.target, "caret": caret,
        "outcome": v.outcome, "raw_outcome": v.raw_outcome,
        "set_size": v.set_size, "degenerate": v.degenerate, "status": status,
    }
    if v.raw_outcome == "Violation":
        item["status"] = "violation"
    if v.witness:
        item["witness"] = v.witness
    return item


def run_theorem_suite(groups: Sequence[Group], ctx: ClassContext, cfg: SuiteConfig,
                      only_pid: str | None = None) -> list[dict]:
    items: list[dict] = []
    pipes = [rp for rp in REGISTERED_PIPELINES if only_pid in (None, rp.pid)]
    for g in groups:
        for p in _group_primes(g):
            for rp in pipes:
                v = generating_check(g, p, rp.ast(), rp.target_kind, ctx,
                                     _options(cfg))
                items.append(_verdict_item(v, rp.pid, cfg.caret))
    if cfg.compare_union and cfg.caret != CARET_UNION:
        diffs = 0
        for g in groups:
            for p in _group_primes(g):
                for rp in pipes:
                    vi = generating_check(g, p, rp.ast(), rp.target_kind, ctx,
                                          _options(cfg))
                    vu = generating_check(g, p, rp.ast(), rp.target_kind, ctx,
                                          _options(cfg, CARET_UNION))
                    if vi.outcome != vu.outcome:
                        diffs += 1
                        items.append({
                            "suite_item": "caret-diff", "pipeline_id": rp.pid,
                            "group": g.name, "p": p,
                            "intersection": vi.outcome, "union": vu.outcome,
                            "status": "info",
                        })
        items.append({"suite_item": "caret-diff-total", "diffs": diffs,
                      "status": "info"})
    return items


def run_inclusion_suite(groups: Sequence[Group], ctx: ClassContext,
                        cfg: SuiteConfig) -> list[dict]:
    chains = [
        ("solvable", "f1", "f2", "fdoubleprime"),
        ("jpr", "j", "fprime", "fdoubleprime"),
    ]
    items = []
    for g in groups:
        for p in _group_primes(g):
            values = {}
            for kind in ("solvable", "jpr", "j", "fprime", "fdoubleprime", "f1", "f2"):
                cid = ClassId(kind, p=p if kind not in ("solvable", "jpr") else None)
                values[kind] = ctx.membership(g, cid).value
            ok = True
            broken = []
            for chain in chains:
                for lo, hi in zip(chain, chain[1:]):
                    if values[lo] is True and values[hi] is False:
                        ok = False
                        broken.append(f"{lo} => {hi}")
            if values["solvable"] is True:
                for kind in ("jpr", "j", "fprime", "fdoubleprime", "f1", "f2"):
                    if values[kind] is False:
                        ok = False
                        broken.append(f"solvable => {kind}")
            items.append({
                "suite_item": "inclusion", "group": g.name, "p": p,
                "memberships": {k: v for k, v in values.items()},
                "status": "ok" if ok else "violation",
                "broken": broken,
            })
    return items


def run_core_solvability_suite(groups: Sequence[Group], ctx: ClassContext,
                               cfg: SuiteConfig) -> list[dict]:
    """Solvability iff every second maximal class sees a strictly larger core."""
    items = []
    for g in groups:
        if g.order > cfg.lemma_bound:
            continue
        profile = ctx.service.profile(g)
        u = g.universe

        def has_bigger_core(k: int) -> bool:
            mi = profile.max2_info[k]
            return any(not eq for eq in mi.over_core_equal)

        all_classes = range(len(profile.max2_info))
        criterion = all(has_bigger_core(k) for k in all_classes)
        strict_classes = [k for k in all_classes if profile.max2_info[k].strict]
        criterion_strict = all(has_bigger_core(k) for k in strict_classes)
        # core monotonicity audit on the representatives
        monotone = True
        for k in all_classes:
            h0 = profile.max2_stratum.class_members[k][0]
            from .lattice import _core_set

            h_core = _core_set(u, g.gen_ids(), profile.max2_rep_set(k))
            for m in profile.max2_overs[h0]:
                c = profile.max_stratum.member_class[m]
                t = profile.max_stratum.member_conjugator[m]
                m_core = u.conj_set(_core_set(u, g.gen_ids(), profile.max_rep_set(c)), t)
                if not (h_core <= m_core):
                    monotone = False
        ok = (criterion == profile.solvable and criterion_strict == profile.solvable
              and monotone)
        items.append({
            "suite_item": "core-solvability", "group": g.name,
            "solvable": profile.solvable, "criterion": criterion,
            "criterion_strict": criterion_strict, "core_monotone": monotone,
            "status": "ok" if ok else "violation",
        })
    return items


def run_xhn_suite(groups: Sequence[Group], ctx: ClassContext,
                  cfg: SuiteConfig) -> list[dict]:
    """X = HN for H second maximal, X maximal over H, N normal in X but not in H."""
    from .structure import normal_subgroups

    items = []
    for g in groups:
        if g.order > cfg.lemma_bound:
            continue
        profile = ctx.service.profile(g)
        normals = normal_subgroups(g)
        triples = 0
        bad = 0
        for h in range(profile.max2_stratum.size):
            hset = profile.max2_member_set(h)
            for m in profile.max2_overs[h]:
                xset = profile.max_member_set(m)
                for n in normals:
                    nset = n.elems
                    if not (nset <= xset) or nset <= hset:
                        continue
                    triples += 1
                    hn_order = len(hset) * len(nset) // len(hset & nset)
                    if hn_order != len(xset):
                        bad += 1
        items.append({
            "suite_item": "x-eq-hn", "group": g.name, "triples": triples,
            "counterexamples": bad,
            "status": "ok" if bad == 0 else "violation",
        })
    return items


def run_l_index_suite(groups: Sequence[Group], ctx: ClassContext,
                      cfg: SuiteConfig) -> list[dict]:
    """Distinct prime-power maximal indices avoiding a minimal normal L pin its shape."""
    items = []
    for g in groups:
        profile = ctx.service.profile(g)
        minimals = minimal_normal_subgroups(g) if g.order > 1 else []
        instances = 0
        bad = 0
        self_instance = False
        for L in minimals:
            lset = L.elems
            avoiding = []
            for k, mi in enumerate(profile.max_info):
                rep = profile.max_rep_set(k)
                if lset <= rep:
                    continue  # class-uniform: L normal, so containment is class-level
                pp, _ = is_prime_power(mi.index)
                if pp:
                    avoiding.append((k, mi.index))
            seen_pairs = set()
            for i in range(len(avoiding)):
                for j in range(i + 1, len(avoiding)):
                    if avoiding[i][1] == avoiding[j][1]:
                        continue
                    key = tuple(sorted((avoiding[i][1], avoiding[j][1])))
                    if key in seen_pairs:
                        continue
                    seen_pairs.add(key)
                    instances += 1
                    if L.order == g.order and g.order == 168:
                        self_instance = True
                    abelian = _is_abelian_set(g, lset)
                    if abelian:
                        continue
                    factors = composition_factors(L)
                    if not all(t.order == 168 for t in factors):
                        bad += 1
        items.append({
            "suite_item": "l-index", "group": g.name, "instances": instances,
            "counterexamples": bad, "self_instance_168": self_instance,
            "status": "ok" if bad == 0 else "violation",
        })
    return items


def _is_abelian_set(g: Group, elems: frozenset[int]) -> bool:
    u = g.universe
    gens = u.small_generating_set(sorted(elems))
    return all(u.mul(a, b) == u.mul(b, a) for a in gens for b in gens)


def run_antihom_suite(groups: Sequence[Group], ctx: ClassContext,
                      cfg: SuiteConfig) -> list[dict]:
    items = []
    footprint: dict[str, int] = {}
    for g in groups:
        for p in _group_primes(g):
            for ex in ANTIHOM_EXAMPLES:
                row = antihom_check(g, p, ex, ctx, _options(cfg))
                status = "ok"
                if not row["b_subset_a"]:
                    status = "violation"
                if row["join_agree"] is False or row["meet_agree"] is False:
                    status = "violation"
                if row["join_agree"] is None and row["meet_agree"] is None:
                    status = "undecidable"
                row["suite_item"] = "antihom"
                row["status"] = status
                items.append(row)
    # order-reversal footprint: the smaller set's class contains more groups
    ga = ClassId("hat", base=ClassId("f1", p=5))
    gb = ClassId("hat", base=ClassId("f2", p=5))
    ca = sum(1 for g in groups if ctx.membership(g, ga).value is True)
    cb = sum(1 for g in groups if ctx.membership(g, gb).value is True)
    items.append({
        "suite_item": "order-reversal-footprint", "p": 5,
        "small_set_class_count": ca, "large_set_class_count": cb,
        "status": "ok" if ca <= cb else "violation",
    })
    return items


def run_formation_axiom_suite(groups: Sequence[Group], ctx: ClassContext,
                              cfg: SuiteConfig) -> list[dict]:
    items = []
    kinds = ("solvable", "jpr", "j", "fprime", "fdoubleprime", "f1", "f2")
    for g in groups:
        primes = _group_primes(g)
        for kind in kinds:
            plist = primes if kind not in ("solvable", "jpr") else [None]
            for p in plist:
                for hat in (False, True):
                    base = ClassId(kind, p=p)
                    cid = ClassId("hat", base=base) if hat else base
                    findings = formation_axiom_check(cid, g, ctx)
                    real = [f for f in findings if f["kind"] != "undecidable"]
                    und = [f for f in findings if f["kind"] == "undecidable"]
                    if real:
                        items.append({
                            "suite_item": "formation-axiom", "group": g.name,
                            "class": cid.text(), "findings": real,
                            "status": "finding",
                        })
                    if und:
                        items.append({
                            "suite_item": "formation-axiom", "group": g.name,
                            "class": cid.text(), "findings": und,
                            "status": "undecidable",
                        })
        items.append({"suite_item": "formation-axiom-group", "group": g.name,
                      "status": "ok"})
    return items


def run_lattice_oracle_suite(groups: Sequence[Group], ctx: ClassContext,
                             cfg: SuiteConfig) -> list[dict]:
    items = []
    for g in groups:
        if g.order > cfg.oracle_bound:
            continue
        lat = ctx.service.classes(g)
        expected = brute_class_profile(g)
        got = lat.class_profile()
        items.append({
            "suite_item": "lattice-oracle", "group": g.name, "order": g.order,
            "classes": len(got), "subgroups": sum(n for _, n in got),
            "status": "ok" if expected == got else "violation",
        })
    return items


def run_jordan_holder_suite(groups: Sequence[Group], ctx: ClassContext,
                            cfg: SuiteConfig) -> list[dict]:
    import random

    items = []
    for g in groups:
        baseline = sorted(str(t) for t in composition_factors(g))
        stable = True
        for round_no in range(10):
            rng = random.Random(f"{g.name}:{round_no}")
            series = chief_series(g, rng=rng)
            factors = []
            for f in series.factors:
                factors.extend([str(f.simple_type)] * f.multiplicity)
            if sorted(factors) != baseline:
                stable = False
        items.append({
            "suite_item": "jordan-holder", "group": g.name,
            "factors": baseline, "status": "ok" if stable else "violation",
        })
    return items


def run_transport_suite(groups: Sequence[Group], ctx: ClassContext,
                        cfg: SuiteConfig) -> list[dict]:
    """Pipeline emptiness descends to quotients; maximal strata correspond."""
    items = []
    for g in groups:
        if g.order == 1:
            continue
        profile = ctx.service.profile(g)
        for L in minimal_normal_subgroups(g):
            if L.order == g.order:
                # simple group: the quotient is trivial, transport is vacuous
                items.append({"suite_item": "transport", "group": g.name,
                              "kernel_order": L.order, "status": "ok",
                              "note": "trivial quotient"})
                continue
            q, hom = quotient_group(g, L)
            q.name = f"{g.name}/L{L.order}"
            q_profile = ctx.service.profile(q)
            # quotient correspondence of the maximal stratum
            containing = [m for m in range(profile.max_stratum.size)
                          if L.elems <= profile.max_member_set(m)]
            full = SubgroupSet(profile, "max", frozenset(containing))
            transported, dropped = transport_to_quotient(full, hom, q_profile)
            corr_ok = (dropped == 0
                       and len(transported.members) == q_profile.max_stratum.size
                       and len(containing) == q_profile.max_stratum.size)
            empty_ok = True
            checked = 0
            for p in _group_primes(g):
                for rp in REGISTERED_PIPELINES:
                    s_g = eval_pipeline(rp.ast(), profile, p, _options(cfg))
                    if s_g.members:
                        continue
                    checked += 1
                    s_q = eval_pipeline(rp.ast(), q_profile, p, _options(cfg))
                    if s_q.members:
                        empty_ok = False
            items.append({
                "suite_item": "transport", "group": g.name, "kernel_order": L.order,
                "quotient_order": q.order, "max_correspondence": corr_ok,
                "empty_pipelines_checked": checked, "emptiness_descends": empty_ok,
                "status": "ok" if (corr_ok and empty_ok) else "violation",
            })
    return items


# ---------------------------------------------------------------------------
# registry and entry point
# ---------------------------------------------------------------------------

def _pipeline_runner(pid: str) -> Runner:
    def run(groups, ctx, cfg):
        return run_theorem_suite(groups, ctx, cfg, only_pid=pid)

    return run


SUITES: dict[str, Runner] = {
    "theorems": run_theorem_suite,
    "inclusions": run_inclusion_suite,
    "core-solvability": run_core_solvability_suite,
    "xhn": run_xhn_suite,
    "l-index": run_l_index_suite,
    "antihom": run_antihom_suite,
    "formation-axioms": run_formation_axiom_suite,
    "lattice-oracle": run_lattice_oracle_suite,
    "jordan-holder": run_jordan_holder_suite,
    "transport": run_transport_suite,
}
for rp in REGISTERED_PIPELINES:
    SUITES[rp.pid] = _pipeline_runner(rp.pid)

ALL_SUITE_IDS = tuple(SUITES)


def build_corpus_groups(records: Sequence[GroupRecord] | None = None) -> list[Group]:
    records = list(records) if records is not None else default_corpus()
    return [rec.build() for rec in records]


def run_suite(suite_id: str, groups: Sequence[Group], ctx: ClassContext,
              cfg: SuiteConfig | None = None) -> VerificationReport:
    if suite_id not in SUITES:
        raise KeyError(f"unknown suite {suite_id!r}; known: {', '.join(sorted(SUITES))}")
    cfg = cfg or SuiteConfig()
    started = time.perf_counter()
    items = SUITES[suite_id](groups, ctx, cfg)
    report = VerificationReport(
        suite=suite_id,
        config={"suite": suite_id, **cfg.echo(),
                "corpus": [g.name or f"order{g.order}" for g in groups]},
        items=items,
    ).finish()
    report.wall_time = time.perf_counter() - started
    return report
