"""Group-class predicates: solvability variants, index conditions, allowlists.

Raw classes are per-maximal-subgroup disjunctions evaluated on a group
profile, with the satisfied disjuncts recorded per maximal class as
evidence.  Hat classes accept a group when every non-abelian chief factor's
simple type sits on an allowlist, either explicit or scanned from a corpus
(the non-abelian composition factors of the corpus groups satisfying the
raw base class).

Membership is three-valued: True, False, or None when a chief factor above
the identification ceiling makes the verdict undecidable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .group import Group, GroupError, Subgroup, is_prime_power
from .lattice import GroupProfile, LatticeService, MaxClassInfo
from .structure import (
    SimpleType, UnidentifiableFactor, chief_series, factor_orders_p_solvable,
    identify_chief_factor,
)

RAW_KINDS = ("solvable", "jpr", "j", "fprime", "fdoubleprime", "f1", "f2")
P_KINDS = ("j", "fprime", "fdoubleprime", "f1", "f2")


@dataclass(frozen=True)
class Allowlist:
    """Set of identified non-abelian simple types admitted as chief factors."""

    types: frozenset[SimpleType]
    provenance: str = "explicit"

    def orders(self) -> set[int]:
        return {t.order for t in self.types}

    def sorted_types(self) -> list[SimpleType]:
        return sorted(self.types, key=lambda t: (t.order, t.label or ""))


@dataclass(frozen=True)
class ClassId:
    """A group-class tag, possibly parameterized by a prime or an allowlist."""

    kind: str
    p: int | None = None
    allow: Allowlist | None = None
    base: "ClassId | None" = None
    parts: tuple["ClassId", ...] = ()

    def __post_init__(self):
        if self.kind in P_KINDS and self.p is None:
            raise GroupError(f"class {self.kind} needs a prime parameter")
        if self.kind == "hat" and self.base is None:
            raise GroupError("hat class needs a base class")
        if self.kind == "f1set" and self.allow is None:
            raise GroupError("f1set class needs an allowlist")
        if self.kind == "meet" and not self.parts:
            raise GroupError("meet class needs component classes")

    def text(self) -> str:
        if self.kind == "hat":
            return f"Hat({self.base.text()})"  # type: ignore[union-attr]
        if self.kind == "f1set":
            return f"F1Set[{','.join(str(t) for t in self.allow.sorted_types())}]"  # type: ignore[union-attr]
        if self.kind == "meet":
            return "Meet(" + ",".join(p.text() for p in self.parts) + ")"
        name = {"solvable": "Solvable", "jpr": "Jpr", "j": "J", "fprime": "Fprime",
                "fdoubleprime": "Fdoubleprime", "f1": "F1", "f2": "F2"}[self.kind]
        if self.p is not None:
            return f"{name}({self.p})"
        return name

    def __str__(self) -> str:
        return self.text()


def solvable_class() -> ClassId:
    return ClassId("solvable")


def parse_class_id(text: str, p: int | None = None) -> ClassId:
    """Parse CLI class names like ``J``, ``Fprime``, ``Hat(F1)``."""
    t = text.strip()
    if t.lower().startswith("hat(") and t.endswith(")"):
        return ClassId("hat", base=parse_class_id(t[4:-1], p))
    key = t.lower()
    names = {"solvable": "solvable", "s": "solvable", "jpr": "jpr", "j": "j",
             "fprime": "fprime", "f'": "fprime", "fdoubleprime": "fdoubleprime",
             "f''": "fdoubleprime", "f1": "f1", "f2": "f2"}
    if key not in names:
        raise GroupError(f"unknown class name {text!r}")
    kind = names[key]
    return ClassId(kind, p=p if kind in P_KINDS else None)


# ---------------------------------------------------------------------------
# per-maximal predicates on profile data
# ---------------------------------------------------------------------------

def max_class_p_solvable(mi: MaxClassInfo, p: int) -> bool:
    return factor_orders_p_solvable(mi.chief, p)


def max_class_min_non_solvable(mi: MaxClassInfo) -> bool:
    return (not mi.solvable) and all(o.solvable for o in mi.own_max)


def max_class_min_non_p_solvable(mi: MaxClassInfo, p: int) -> bool:
    return (not max_class_p_solvable(mi, p)) and all(
        factor_orders_p_solvable(o.chief, p) for o in mi.own_max)


def profile_min_non_solvable(profile: GroupProfile) -> bool:
    """The ambient group is non-solvable with every maximal subgroup solvable."""
    return (not profile.solvable) and all(mi.solvable for mi in profile.max_info)


def profile_min_non_p_solvable(profile: GroupProfile, p: int) -> bool:
    return (not factor_orders_p_solvable(profile.chief, p)) and all(
        max_class_p_solvable(mi, p) for mi in profile.max_info)


@dataclass
class MembershipResult:
    class_id: ClassId
    value: bool | None
    reason: str = ""
    evidence: list[dict] = field(default_factory=list)

    def __bool__(self) -> bool:
        return bool(self.value)


def _raw_disjuncts(kind: str, mi: MaxClassInfo, p: int | None) -> list[str]:
    satisfied = []
    if kind == "jpr":
        if mi.solvable:
            satisfied.append("solvable")
        if is_prime_power(mi.index)[0]:
            satisfied.append("prime-power-index")
        return satisfied
    assert p is not None
    if kind in ("j", "fprime", "fdoubleprime", "f1", "f2"):
        if max_class_p_solvable(mi, p):
            satisfied.append("p-solvable")
    if kind == "fprime" and max_class_min_non_solvable(mi):
        satisfied.append("minimal-non-solvable")
    if kind in ("fdoubleprime", "f2") and max_class_min_non_p_solvable(mi, p):
        satisfied.append("minimal-non-p-solvable")
    if kind in ("j", "fprime", "fdoubleprime") and is_prime_power(mi.index)[0]:
        satisfied.append("prime-power-index")
    return satisfied


class ClassContext:
    """Evaluation context: lattice service, corpus for scans, scan cache."""

    def __init__(self, service: LatticeService, corpus: Sequence[Group] = ()):
        self.service = service
        self.corpus = list(corpus)
        self._scan_cache: dict[str, Allowlist] = {}
        self._membership_cache: dict[tuple, MembershipResult] = {}

    # -- membership -----------------------------------------------------------

    def membership(self, g: Group, cid: ClassId) -> MembershipResult:
        key = (g.key(), cid.text())
        cached = self._membership_cache.get(key)
        if cached is None:
            cached = self._membership_uncached(g, cid)
            self._membership_cache[key] = cached
        return cached

    def _membership_uncached(self, g: Group, cid: ClassId) -> MembershipResult:
        if cid.kind == "meet":
            vals = [self.membership(g, part) for part in cid.parts]
            if any(v.value is False for v in vals):
                return MembershipResult(cid, False, "a component class excludes the group")
            if any(v.value is None for v in vals):
                return MembershipResult(cid, None, "a component verdict is undecidable")
            return MembershipResult(cid, True)
        if cid.kind == "solvable":
            profile = self.service.profile(g)
            return MembershipResult(cid, profile.solvable)
        if cid.kind == "f1set":
            return self._f1_membership(g, cid, cid.allow)  # type: ignore[arg-type]
        if cid.kind == "hat":
            allow = self.effective_allowlist(cid)
            return self._f1_membership(g, cid, allow)
        # raw per-maximal classes
        profile = self.service.profile(g)
        evidence = []
        value = True
        for k, mi in enumerate(profile.max_info):
            satisfied = _raw_disjuncts(cid.kind, mi, cid.p)
            evidence.append({"max_class": k, "order": mi.order, "index": mi.index,
                             "satisfied": satisfied})
            if not satisfied:
                value = False
        return MembershipResult(cid, value, evidence=evidence)

    def _f1_membership(self, g: Group, cid: ClassId, allow: Allowlist) -> MembershipResult:
        listed = {(t.order, t.label) for t in allow.types}
        evidence = []
        has_excluded = False
        has_unidentified = False
        for order, abelian in chief_factor_profile_of(g):
            if abelian:
                continue
            stype, mult = identify_chief_factor(order, abelian)
            row = {"factor_order": order, "type": str(stype), "multiplicity": mult}
            if stype.label is None:
                # above the ceiling the intended allowlist may or may not
                # admit this factor, so it cannot force a verdict either way
                row["verdict"] = "unidentifiable"
                has_unidentified = True
            elif (stype.order, stype.label) in listed:
                row["verdict"] = "listed"
            else:
                row["verdict"] = "not listed"
                has_excluded = True
            evidence.append(row)
        if has_excluded:
            value: bool | None = False
        elif has_unidentified:
            value = None
        else:
            value = True
        reason = "" if value is not None else "chief factor above the identification ceiling"
        return MembershipResult(cid, value, reason=reason, evidence=evidence)

    # -- allowlists --------------------------------------------------------------

    def effective_allowlist(self, hat: ClassId) -> Allowlist:
        assert hat.kind == "hat" and hat.base is not None
        if hat.allow is not None:
            return hat.allow
        key = hat.base.text()
        if key not in self._scan_cache:
            self._scan_cache[key] = self.allowlist_scan(hat.base)
        return self._scan_cache[key]

    def allowlist_scan(self, base: ClassId) -> Allowlist:
        """Non-abelian composition factor types of corpus groups in the base class."""
        types: set[SimpleType] = set()
        skipped = []
        for g in self.corpus:
            verdict = self.membership(g, base)
            if verdict.value is not True:
                continue
            for order, abelian in chief_factor_profile_of(g):
                if abelian:
                    continue
                stype, _ = identify_chief_factor(order, abelian)
                if stype.label is None:
                    skipped.append((g.name, order))
                    continue
                types.add(stype)
        prov = f"corpus-scan({base.text()}, {len(self.corpus)} groups"
        if skipped:
            prov += f", {len(skipped)} unidentifiable factors skipped"
        prov += ")"
        return Allowlist(types=frozenset(types), provenance=prov)


def chief_factor_profile_of(g: Group) -> list[tuple[int, bool]]:
    return [(f.order, f.abelian) for f in chief_series(g).factors]


# ---------------------------------------------------------------------------
# public spec operations
# ---------------------------------------------------------------------------

def minimal_non_solvable(g: Group, ctx: ClassContext) -> bool:
    return profile_min_non_solvable(ctx.service.profile(g))


def minimal_non_p_solvable(g: Group, p: int, ctx: ClassContext) -> bool:
    return profile_min_non_p_solvable(ctx.service.profile(g), p)


def class_membership(g: Group, cid: ClassId, ctx: ClassContext) -> MembershipResult:
    return ctx.membership(g, cid)


def f1_membership(g: Group, allow: Allowlist, ctx: ClassContext) -> bool:
    """Strict variant: raises when the verdict is undecidable."""
    res = ctx.membership(g, ClassId("f1set", allow=allow))
    if res.value is None:
        raise UnidentifiableFactor(
            f"{g.name or g.order}: {res.reason or 'undecidable factor'}")
    return res.value


def class_meet(c1: ClassId, c2: ClassId) -> ClassId:
    return ClassId("meet", parts=(c1, c2))


def class_join_membership(g: Group, c1: ClassId, c2: ClassId,
                          ctx: ClassContext) -> bool | None:
    """Formation-product test: the c2-residual of g lies in c1."""
    from .structure import residual

    def quotient_in_c2(q: Group) -> bool | None:
        return ctx.membership(q, c2).value

    res = residual(g, quotient_in_c2)
    if res is None:
        return None
    sub_group = res.as_group()
    sub_group.name = f"{g.name}^[{c2.text()}]"
    return ctx.membership(sub_group, c1).value


# ---------------------------------------------------------------------------
# formation axiom audit
# ---------------------------------------------------------------------------

def formation_axiom_check(cid: ClassId, g: Group, ctx: ClassContext) -> list[dict]:
    """Quotient-closure, R0-closure, and (for hat classes) extension-closure.

    Returns finding rows; an empty list means no violation and no
    undecidable case on this group.
    """
    from .group import quotient_group
    from .structure import normal_subgroups

    findings: list[dict] = []
    normals = normal_subgroups(g)
    verdicts: list[bool | None] = []
    quotients: list[Group | None] = []
    for n in normals:
        if n.order == g.order:
            verdicts.append(True)
            quotients.append(None)
            continue
        q, _ = quotient_group(g, n)
        if q is not g:
            q.name = f"{g.name}/N{n.order}"
        verdicts.append(ctx.membership(q, cid).value)
        quotients.append(q)
    g_verdict = ctx.membership(g, cid).value

    def note(kind: str, detail: str) -> None:
        findings.append({"group": g.name, "class": cid.text(), "kind": kind,
                         "detail": detail})

    if g_verdict is None:
        note("undecidable", "group verdict above identification ceiling")
        return findings
    if g_verdict:
        for n, v in zip(normals, verdicts):
            if v is False:
                note("quotient-closure", f"G in class but G/N fails for |N|={n.order}")
            elif v is None:
                note("undecidable", f"quotient by |N|={n.order} undecidable")
    member_ids = [i for i, v in enumerate(verdicts) if v is True]
    for ai in range(len(member_ids)):
        for bi in range(ai + 1, len(member_ids)):
            na, nb = normals[member_ids[ai]], normals[member_ids[bi]]
            meet = na.elems & nb.elems
            match = next((i for i, n in enumerate(normals) if n.elems == meet), None)
            if match is None:
                continue
            v = verdicts[match]
            if v is False:
                note("r0-closure",
                     f"G/N1, G/N2 in class but G/(N1&N2) fails "
                     f"(|N1|={na.order}, |N2|={nb.order})")
            elif v is None:
                note("undecidable", "R0 intersection quotient undecidable")
    if cid.kind in ("hat", "f1set") and not g_verdict:
        # extension closure: N and G/N in the class force G in the class
        for n, v in zip(normals, verdicts):
            if n.order in (1, g.order) or v is not True:
                continue
            sub = n.as_group()
            sub.name = f"{g.name}|N{n.order}"
            nv = ctx.membership(sub, cid).value
            if nv is True:
                note("extension-closure",
                     f"N and G/N in class but G outside (|N|={n.order})")
            elif nv is None:
                note("undecidable", f"normal subgroup |N|={n.order} undecidable")
    return findings
