"""The subgroup-set pipeline DSL and its theorem checkers.

Grammar (whitespace-insensitive)::

    expr   := term | atom "." expr
    term   := factor ("_" atom | "^" atom)*
    factor := "Phi(" atom ")" | "(" expr ")"
    atom   := X | L1 | L2 | S | Pc | Pci | E1 | T1

``_A`` intersects with the base set A, ``A .`` prefix-intersects, and
``^A`` is union or intersection depending on the caret semantics flag; the
registered theorem checks run under intersection, which is what the
completion proofs actually consume, with the union reading reported
alongside.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .formations import ClassContext, ClassId, MembershipResult
from .group import Group, GroupError, Subgroup, is_prime_power
from .lattice import GroupProfile, SubgroupSet

MAX2_ATOMS = ("L1", "L2", "S", "Pc", "Pci", "E1", "T1")
ATOMS = ("X",) + MAX2_ATOMS

CARET_UNION = "union"
CARET_INTERSECTION = "intersection"

E1_FIXED_PRIME = "fixed-p"     # |G:M| is not a power of the fixed prime
E1_ANY_PRIME = "any-prime"     # |G:M| is not a prime power at all


class PipelineParseError(GroupError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class PhiNode(Node):
    atom: str

    def render(self) -> str:
        return f"Phi({self.atom})"


@dataclass(frozen=True)
class Contract(Node):
    expr: Node
    atom: str

    def render(self) -> str:
        return f"{_operand(self.expr)}_{self.atom}"


@dataclass(frozen=True)
class Extend(Node):
    expr: Node
    atom: str

    def render(self) -> str:
        return f"{_operand(self.expr)} ^{self.atom}"


def _operand(expr: "Node") -> str:
    # a dot body extends to the end of the input, so parenthesize it when
    # it appears under a chain operator
    text = expr.render()
    return f"({text})" if isinstance(expr, Dot) else text


@dataclass(frozen=True)
class Dot(Node):
    atom: str
    expr: Node

    def render(self) -> str:
        return f"{self.atom}.({self.expr.render()})"


_TOKEN_RE = re.compile(r"\s*(Phi|Pci|Pc|L1|L2|E1|T1|X|S|[()._^])")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise PipelineParseError(f"unexpected character {text[pos]!r}", pos)
            break
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def take(self, expected: str | None = None) -> str:
        if self.i >= len(self.tokens):
            raise PipelineParseError(f"unexpected end of input, wanted {expected}", len(self.text))
        tok, p = self.tokens[self.i]
        if expected is not None and tok != expected:
            raise PipelineParseError(f"expected {expected!r}, found {tok!r}", p)
        self.i += 1
        return tok

    def atom(self) -> str:
        tok = self.take()
        if tok not in ATOMS:
            raise PipelineParseError(f"expected a base-set name, found {tok!r}",
                                     self.tokens[self.i - 1][1])
        return tok

    def expr(self) -> Node:
        # lookahead: atom "." expr
        if (self.peek() in ATOMS and self.i + 1 < len(self.tokens)
                and self.tokens[self.i + 1][0] == "."):
            a = self.atom()
            self.take(".")
            return Dot(a, self.expr())
        return self.term()

    def term(self) -> Node:
        node = self.factor()
        while self.peek() in ("_", "^"):
            op = self.take()
            a = self.atom()
            node = Contract(node, a) if op == "_" else Extend(node, a)
        return node

    def factor(self) -> Node:
        if self.peek() == "Phi":
            self.take("Phi")
            self.take("(")
            a = self.atom()
            self.take(")")
            return PhiNode(a)
        if self.peek() == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        raise PipelineParseError(f"expected 'Phi(' or '(', found {self.peek()!r}", self.pos())


def parse_pipeline(text: str) -> Node:
    p = _Parser(text)
    node = p.expr()
    if p.i != len(p.tokens):
        raise PipelineParseError(f"trailing input {p.peek()!r}", p.pos())
    return node


def render_pipeline(node: Node) -> str:
    return node.render()


# ---------------------------------------------------------------------------
# base sets
# ---------------------------------------------------------------------------

def base_set_class_ids(profile: GroupProfile, p: int, name: str,
                       e1_mode: str = E1_FIXED_PRIME) -> list[int]:
    """Stratum class ids belonging to the named base set (all are class-closed)."""
    if name == "X":
        return [k for k, mi in enumerate(profile.max_info) if not mi.solvable]
    out = []
    for k, mi in enumerate(profile.max2_info):
        h0 = profile.max2_stratum.class_members[k][0]
        overs = profile.max2_overs[h0]
        if name == "L1":
            ok = mi.order % p == 0
        elif name == "L2":
            ok = any(profile.max_member_order(m) % p == 0 for m in overs)
        elif name == "S":
            ok = mi.strict
        elif name == "Pc":
            ok = all(mi.over_core_equal)
        elif name == "Pci":
            ok = all(eq or not is_prime_power(profile.max_member_order(m) // mi.order)[0]
                     for eq, m in zip(mi.over_core_equal, overs))
        elif name == "T1":
            ok = any(mi.over_core_equal)
        elif name == "E1":
            if e1_mode == E1_FIXED_PRIME:
                ok = any(not _is_power_of(profile.max_member_index(m), p) for m in overs)
            else:
                ok = any(not is_prime_power(profile.max_member_index(m))[0] for m in overs)
        else:
            raise GroupError(f"unknown base set {name!r}")
        if ok:
            out.append(k)
    return out


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def base_set(profile: GroupProfile, p: int, name: str,
             e1_mode: str = E1_FIXED_PRIME) -> SubgroupSet:
    ids = base_set_class_ids(profile, p, name, e1_mode)
    if name == "X":
        return SubgroupSet(profile, "max", profile.max_members_of_classes(ids))
    return SubgroupSet(profile, "max2", profile.max2_members_of_classes(ids))


def phi(y: SubgroupSet) -> SubgroupSet:
    """Second-maximal members that are maximal in some member of y."""
    if y.level != "max":
        raise GroupError("phi expects a maximal-level subgroup set")
    profile = y.profile
    members = set()
    for h in range(profile.max2_stratum.size):
        cls = profile.max2_info[profile.max2_stratum.member_class[h]]
        for m, cover in zip(profile.max2_overs[h], cls.over_cover):
            if cover and m in y.members:
                members.add(h)
                break
    return SubgroupSet(profile, "max2", frozenset(members))


def contract(y: SubgroupSet, z: SubgroupSet) -> SubgroupSet:
    return y.intersection(z)


def extend(y: SubgroupSet, z: SubgroupSet) -> SubgroupSet:
    return y.union(z)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

@dataclass
class EvalOptions:
    caret: str = CARET_INTERSECTION
    e1_mode: str = E1_FIXED_PRIME


def eval_pipeline(node: Node, profile: GroupProfile, p: int,
                  options: EvalOptions | None = None) -> SubgroupSet:
    opt = options or EvalOptions()

    def atom_set(name: str) -> SubgroupSet:
        if name == "X":
            raise GroupError("level mismatch: X is a maximal-level set")
        return base_set(profile, p, name, opt.e1_mode)

    def ev(n: Node) -> SubgroupSet:
        if isinstance(n, PhiNode):
            if n.atom != "X":
                raise GroupError("level mismatch: Phi expects a maximal-level set")
            return phi(base_set(profile, p, "X", opt.e1_mode))
        if isinstance(n, Contract):
            return contract(ev(n.expr), atom_set(n.atom))
        if isinstance(n, Extend):
            inner = ev(n.expr)
            other = atom_set(n.atom)
            return extend(inner, other) if opt.caret == CARET_UNION else contract(inner, other)
        if isinstance(n, Dot):
            return contract(ev(n.expr), atom_set(n.atom))
        raise GroupError(f"unknown node {n!r}")

    return ev(node)


# ---------------------------------------------------------------------------
# registered theorem pipelines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegisteredPipeline:
    pid: str
    text: str
    target_kind: str  # raw class kind; the hat reading wraps it

    def ast(self) -> Node:
        return parse_pipeline(self.text)

    def raw_target(self, p: int) -> ClassId:
        return ClassId(self.target_kind, p=p)

    def hat_target(self, p: int) -> ClassId:
        return ClassId("hat", base=ClassId(self.target_kind, p=p))


REGISTERED_PIPELINES: tuple[RegisteredPipeline, ...] = (
    RegisteredPipeline("T51", "Phi(X)_L1", "f1"),
    RegisteredPipeline("C52", "Phi(X)_L2", "f1"),
    RegisteredPipeline("T53", "Pci.(Phi(X)_L1 ^E1)", "fdoubleprime"),
    RegisteredPipeline("T54", "Pc.(Phi(X)_L2)", "j"),
    RegisteredPipeline("L55", "Phi(X)_L1_S", "f2"),
    RegisteredPipeline("C56", "Phi(X)_L2_S", "f2"),
    RegisteredPipeline("T57", "Pci.(Phi(X)_L1_S ^E1)", "fdoubleprime"),
    RegisteredPipeline("C58", "Pci.((Phi(X)_L2 ^E1)_S)", "fprime"),
)


def registered_pipeline(pid: str) -> RegisteredPipeline:
    for rp in REGISTERED_PIPELINES:
        if rp.pid == pid:
            return rp
    raise GroupError(f"unknown pipeline id {pid!r}")


VACUOUS_HOLDS = "VacuousHolds"
NON_VACUOUS = "NonVacuous"
VIOLATION = "Violation"
UNDECIDABLE = "Undecidable"


@dataclass
class TheoremVerdict:
    group: str
    p: int
    pipeline: str
    target: str
    outcome: str
    degenerate: bool = False
    set_size: int = 0
    witness: list[dict] = field(default_factory=list)
    raw_outcome: str | None = None  # verdict under the raw (non-hat) reading


def generating_check(g: Group, p: int, pipeline: Node | str, target_kind: str,
                     ctx: ClassContext, options: EvalOptions | None = None) -> TheoremVerdict:
    """Empty pipeline must force membership in the target class."""
    node = parse_pipeline(pipeline) if isinstance(pipeline, str) else pipeline
    profile = ctx.service.profile(g)
    result = eval_pipeline(node, profile, p, options)
    degenerate = g.order % p != 0
    name = g.name or f"order{g.order}"
    text = render_pipeline(node)
    if result.members:
        return TheoremVerdict(group=name, p=p, pipeline=text, target=target_kind,
                              outcome=NON_VACUOUS, degenerate=degenerate,
                              set_size=len(result.members))
    hat = ClassId("hat", base=ClassId(target_kind, p=p))
    raw = ClassId(target_kind, p=p)
    hat_res = ctx.membership(g, hat)
    raw_res = ctx.membership(g, raw)

    def classify(res: MembershipResult) -> str:
        if res.value is True:
            return VACUOUS_HOLDS
        if res.value is False:
            return VIOLATION
        return UNDECIDABLE

    outcome = classify(hat_res)
    witness = []
    if outcome == VIOLATION:
        witness = [row for row in hat_res.evidence if row.get("verdict") == "not listed"]
    raw_outcome = classify(raw_res)
    if raw_outcome == VIOLATION:
        witness = witness + [row for row in raw_res.evidence if not row.get("satisfied")]
    return TheoremVerdict(group=name, p=p, pipeline=text, target=target_kind,
                          outcome=outcome, degenerate=degenerate, set_size=0,
                          witness=witness, raw_outcome=raw_outcome)


# ---------------------------------------------------------------------------
# quotient transport
# ---------------------------------------------------------------------------

def transport_to_quotient(y: SubgroupSet, hom, q_profile: GroupProfile
                          ) -> tuple[SubgroupSet, int]:
    """Image of the kernel-containing members in the quotient's stratum.

    Returns the transported set plus the count of dropped members (those
    not containing the kernel).
    """
    g_profile = y.profile
    qu = q_profile.group.universe
    kernel = hom.kernel.elems
    # fingerprint index of the quotient stratum members
    fp_to_member: dict[bytes, int] = {}
    size = (q_profile.max_stratum.size if y.level == "max"
            else q_profile.max2_stratum.size)
    getter = (q_profile.max_member_set if y.level == "max"
              else q_profile.max2_member_set)
    for m in range(size):
        fp_to_member[qu.set_fp(getter(m))] = m
    members = set()
    dropped = 0
    for m in sorted(y.members):
        mset = (g_profile.max_member_set(m) if y.level == "max"
                else g_profile.max2_member_set(m))
        if not (kernel <= mset):
            dropped += 1
            continue
        gu = g_profile.group.universe
        image = frozenset(qu.index_of(hom.image_of_id(i)) for i in mset)
        member = fp_to_member.get(qu.set_fp(image))
        if member is None:
            raise GroupError("transported subgroup is not in the quotient stratum")
        members.add(member)
    return SubgroupSet(q_profile, y.level, frozenset(members)), dropped


# ---------------------------------------------------------------------------
# order-reversal and anti-homomorphism identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AntihomExample:
    eid: str
    a_text: str
    b_text: str
    ga_kind: str
    gb_kind: str


ANTIHOM_EXAMPLES: tuple[AntihomExample, ...] = (
    AntihomExample("6.1", "Phi(X)_L1", "Phi(X)_L1_S", "f1", "f2"),
    AntihomExample("6.2", "Phi(X)_L1", "Pci.(Phi(X)_L1 ^E1)", "f1", "fdoubleprime"),
)


def antihom_check(g: Group, p: int, example: AntihomExample, ctx: ClassContext,
                  options: EvalOptions | None = None) -> dict:
    """Set-level containment b <= a plus the four class-level identities."""
    from .formations import class_join_membership, class_meet

    profile = ctx.service.profile(g)
    a = eval_pipeline(parse_pipeline(example.a_text), profile, p, options)
    b = eval_pipeline(parse_pipeline(example.b_text), profile, p, options)
    ga = ClassId("hat", base=ClassId(example.ga_kind, p=p))
    gb = ClassId("hat", base=ClassId(example.gb_kind, p=p))
    row: dict = {
        "group": g.name or f"order{g.order}",
        "p": p,
        "example": example.eid,
        "b_subset_a": b.members <= a.members,
        "a_size": len(a.members),
        "b_size": len(b.members),
    }
    # join identity: g(a ^ b) = g(b) should equal g(a) v g(b), the product class
    gb_v = ctx.membership(g, gb).value
    join_v = class_join_membership(g, ga, gb, ctx)
    row["join_left"] = gb_v
    row["join_right"] = join_v
    row["join_agree"] = None if (gb_v is None or join_v is None) else (gb_v == join_v)
    # meet identity: g(a v b) = g(a) should equal g(a) ^ g(b)
    ga_v = ctx.membership(g, ga).value
    meet_v = ctx.membership(g, class_meet(ga, gb)).value
    row["meet_left"] = ga_v
    row["meet_right"] = meet_v
    row["meet_agree"] = None if (ga_v is None or meet_v is None) else (ga_v == meet_v)
    return row
