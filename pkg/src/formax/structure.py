"""Structural series and predicates: solvability, chief factors, residuals.

Chief series are built upward through minimal normal subgroups; factors are
identified by order, which is a complete invariant for non-abelian simple
groups below 20160 (the first order shared by two simple groups).  Factors
at or above that ceiling keep their order but carry no label.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable

from .group import (
    Group, GroupError, Subgroup, derived_subgroup_set, is_normal,
    normal_closure, prime_factors, smallest_prime_factor,
)

IDENT_CEILING = 20160

# Orders of the non-abelian finite simple groups below the identification
# ceiling; below 20160 the order pins down the group.
SIMPLE_ORDERS: dict[int, str] = {
    60: "A5",
    168: "PSL(2,7)",
    360: "A6",
    504: "PSL(2,8)",
    660: "PSL(2,11)",
    1092: "PSL(2,13)",
    2448: "PSL(2,17)",
    2520: "A7",
    3420: "PSL(2,19)",
    4080: "PSL(2,16)",
    5616: "PSL(3,3)",
    6048: "PSU(3,3)",
    6072: "PSL(2,23)",
    7800: "PSL(2,25)",
    7920: "M11",
    9828: "PSL(2,27)",
    12180: "PSL(2,29)",
    14880: "PSL(2,31)",
}


class UnidentifiableFactor(GroupError):
    """A non-abelian factor's order is at or above the identification ceiling."""


@dataclass(frozen=True, order=True)
class SimpleType:
    """Isomorphism type of a simple group: a prime, or an identified order."""

    order: int
    label: str | None  # None marks a non-abelian factor above the ceiling

    @property
    def abelian(self) -> bool:
        return self.order in _PRIME_CACHE or _is_prime(self.order)

    @property
    def identified(self) -> bool:
        return self.label is not None or self.abelian

    def __str__(self) -> str:
        if self.abelian:
            return f"C{self.order}"
        return self.label or f"?{self.order}"


_PRIME_CACHE: set[int] = set()


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n in _PRIME_CACHE:
        return True
    if smallest_prime_factor(n) == n:
        _PRIME_CACHE.add(n)
        return True
    return False


def cyclic_type(p: int) -> SimpleType:
    return SimpleType(order=p, label=None)


def identify_chief_factor(order: int, abelian: bool) -> tuple[SimpleType, int]:
    """Split a chief-factor order into (simple type, multiplicity k), factor = S^k."""
    if abelian:
        p = smallest_prime_factor(order)
        k = 0
        n = order
        while n > 1:
            if n % p:
                raise GroupError(f"abelian chief factor of non-prime-power order {order}")
            n //= p
            k += 1
        return cyclic_type(p), k
    if order in SIMPLE_ORDERS:
        return SimpleType(order, SIMPLE_ORDERS[order]), 1
    k = 2
    while True:
        root = round(order ** (1.0 / k))
        for s in (root - 1, root, root + 1):
            if s >= 60 and s ** k == order and s in SIMPLE_ORDERS:
                return SimpleType(s, SIMPLE_ORDERS[s]), k
        if root < 60:
            break
        k += 1
    return SimpleType(order, None), 1


@dataclass(frozen=True)
class ChiefFactor:
    order: int
    abelian: bool
    simple_type: SimpleType
    multiplicity: int


@dataclass
class ChiefSeries:
    ambient: Group
    terms: list[Subgroup]  # ascending from the trivial subgroup to G
    factors: list[ChiefFactor]  # factors[i] = terms[i+1]/terms[i]


# ---------------------------------------------------------------------------
# solvability
# ---------------------------------------------------------------------------

def is_solvable(g: Group | Subgroup) -> bool:
    """Derived series reaches the trivial group."""
    if isinstance(g, Group):
        sub = g.whole_subgroup()
    else:
        sub = g
    if sub._solvable is not None:
        return sub._solvable
    u = sub.ambient.universe
    elems = sub.elems
    gens = sub.gen_ids
    while True:
        if len(elems) == 1:
            sub._solvable = True
            return True
        nxt = derived_subgroup_set(u, elems, gens)
        if len(nxt) == len(elems):
            sub._solvable = False
            return False
        elems = nxt
        gens = u.small_generating_set(sorted(nxt))


def solvable_set(u, elems: frozenset[int], gens: list[int]) -> bool:
    """Solvability of a raw (element set, generators) subgroup."""
    while True:
        if len(elems) == 1:
            return True
        nxt = derived_subgroup_set(u, elems, gens)
        if len(nxt) == len(elems):
            return False
        elems = nxt
        gens = u.small_generating_set(sorted(nxt))


def is_p_solvable(g: Group | Subgroup, p: int) -> bool:
    """Every chief factor is a p-group or has order coprime to p."""
    if not _is_prime(p):
        raise GroupError(f"{p} is not prime")
    return all(f.order % p != 0 or _is_power_of(f.order, p) for f in chief_series(g).factors)


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def factor_orders_p_solvable(factor_orders: Iterable[tuple[int, bool]], p: int) -> bool:
    """p-solvability decided from (order, abelian) chief-factor profiles."""
    return all(o % p != 0 or _is_power_of(o, p) for o, _ in factor_orders)


# ---------------------------------------------------------------------------
# minimal normal subgroups and chief series
# ---------------------------------------------------------------------------

def minimal_normal_subgroups(g: Group) -> list[Subgroup]:
    """Minimal elements of the normal closures of the nontrivial class reps."""
    if g.order == 1:
        raise GroupError("the trivial group has no minimal normal subgroups")
    return _minimal_normal_over(g, g.trivial_subgroup())


def _normal_closure_over(g: Group, below: Subgroup, extra: int) -> frozenset[int]:
    u = g.universe
    ggens = g.gen_ids()
    gens = list(below.gen_ids) + [extra]
    have = u.closure_extend(below.elems, below.gen_ids, [extra])
    changed = True
    while changed:
        changed = False
        for x in list(gens):
            for gi in ggens:
                c = u.conj(x, gi)
                if c not in have:
                    gens.append(c)
                    have = u.closure_extend(have, gens, [c])
                    changed = True
    return have


def _minimal_normal_over(g: Group, below: Subgroup) -> list[Subgroup]:
    """Subgroups N with below < N normal in g, minimal with that property."""
    u = g.universe
    candidates: dict[frozenset[int], None] = {}
    memo = _closure_memo(g)
    for rep in u.element_class_reps():
        if rep in below.elems:
            continue
        key = (below.fingerprint(), u.class_of(rep))
        if key not in memo:
            memo[key] = _normal_closure_over(g, below, rep)
        candidates.setdefault(memo[key], None)
    mins = []
    for cand in candidates:
        if not any(other < cand for other in candidates if other is not cand):
            mins.append(cand)
    mins.sort(key=lambda s: (len(s), sorted(s)))
    return [Subgroup(g, elems=s) for s in mins]


def _closure_memo(g: Group) -> dict:
    memo = getattr(g, "_minnorm_memo", None)
    if memo is None:
        memo = {}
        g._minnorm_memo = memo  # type: ignore[attr-defined]
    return memo


def chief_series(g: Group | Subgroup, rng: random.Random | None = None) -> ChiefSeries:
    """An ascending chief series; ``rng`` randomizes the choice at each level."""
    if isinstance(g, Subgroup):
        grp = g.as_group()
    else:
        grp = g
    if rng is None and getattr(grp, "_chief_cache", None) is not None:
        return grp._chief_cache  # type: ignore[attr-defined, return-value]
    u = grp.universe
    terms = [grp.trivial_subgroup()]
    factors: list[ChiefFactor] = []
    while terms[-1].order < grp.order:
        below = terms[-1]
        choices = _minimal_normal_over(grp, below)
        chosen = rng.choice(choices) if rng is not None else choices[0]
        order = chosen.order // below.order
        abelian = _factor_abelian(u, chosen, below)
        stype, mult = identify_chief_factor(order, abelian)
        factors.append(ChiefFactor(order=order, abelian=abelian, simple_type=stype,
                                   multiplicity=mult))
        terms.append(chosen)
    series = ChiefSeries(ambient=grp, terms=terms, factors=factors)
    if rng is None:
        grp._chief_cache = series  # type: ignore[attr-defined]
    return series


def _factor_abelian(u, upper: Subgroup, lower: Subgroup) -> bool:
    lows = lower.elems
    for a in upper.gen_ids:
        ai = u.inv[a]
        for b in upper.gen_ids:
            comm = u.mul(u.mul(u.inv[b], u.mul(ai, b)), a)
            if comm not in lows:
                return False
    return True


def composition_factors(g: Group | Subgroup) -> list[SimpleType]:
    """Multiset (sorted list) of composition factors, via a chief series."""
    out: list[SimpleType] = []
    for f in chief_series(g).factors:
        out.extend([f.simple_type] * f.multiplicity)
    return sorted(out)


def chief_factor_profile(g: Group | Subgroup) -> list[tuple[int, bool]]:
    """Compact (order, abelian) list of the chief factors."""
    return [(f.order, f.abelian) for f in chief_series(g).factors]


# ---------------------------------------------------------------------------
# normal subgroup lattice, Frattini subgroup, residuals
# ---------------------------------------------------------------------------

def normal_subgroups(g: Group) -> list[Subgroup]:
    """All normal subgroups: join closure of the class-rep normal closures."""
    u = g.universe
    gens_of: dict[frozenset[int], list[int]] = {frozenset([u.id_index]): []}
    for rep in u.element_class_reps():
        if rep == u.id_index:
            continue
        nc = normal_closure(g, [rep])
        gens_of.setdefault(nc.elems, list(nc.gen_ids))
    worklist = list(gens_of)
    while worklist:
        a = worklist.pop()
        for b in list(gens_of):
            if a <= b or b <= a:
                continue
            join = u.closure_extend(a, gens_of[a], gens_of[b])
            if join not in gens_of:
                gens_of[join] = list(dict.fromkeys(gens_of[a] + gens_of[b]))
                worklist.append(join)
    out = [Subgroup(g, ids=gens_of[s] or [u.id_index], elems=s) for s in gens_of]
    out.sort(key=lambda s: (s.order, sorted(s.elems)))
    return out


def frattini_subgroup(g: Group, maximal_sets: Iterable[frozenset[int]]) -> Subgroup:
    """Intersection of all maximal subgroups (supplied by the lattice layer)."""
    current: frozenset[int] | None = None
    for mset in maximal_sets:
        current = mset if current is None else current & mset
        if len(current) == 1:
            break
    if current is None:
        current = g.full_set()
    return Subgroup(g, elems=current)


class NonUniqueMinimal(GroupError):
    """The membership family has no unique minimal normal subgroup."""


def residual(g: Group, in_class: Callable[[Group], bool | None]) -> Subgroup | None:
    """Least normal N with g/N in the class; None when undecidable.

    ``in_class`` maps a quotient group to True/False or None (undecidable).
    Raises :class:`NonUniqueMinimal` when the true normals are not closed
    under intersection, a formation-axiom failure worth reporting.
    """
    from .group import quotient_group

    members: list[Subgroup] = []
    undecided: list[Subgroup] = []
    for n in normal_subgroups(g):
        if n.order == g.order:
            verdict: bool | None = True  # the trivial quotient is in every class
        else:
            q, _ = quotient_group(g, n)
            verdict = in_class(q)
        if verdict is None:
            undecided.append(n)
        elif verdict:
            members.append(n)
    if not members:
        if undecided:
            return None
        raise NonUniqueMinimal("no normal subgroup has its quotient in the class")
    meet = members[0].elems
    for m in members[1:]:
        meet = meet & m.elems
    least = next((m for m in members if m.elems == meet), None)
    if least is None:
        raise NonUniqueMinimal("member quotients are not intersection-closed")
    if any(u.order < least.order for u in undecided):
        return None
    return least


def solvable_residual(g: Group) -> Subgroup:
    """Least normal subgroup with solvable quotient (final derived term)."""
    u = g.universe
    elems = g.full_set()
    gens = list(g.gen_ids())
    while True:
        nxt = derived_subgroup_set(u, elems, gens)
        if len(nxt) == len(elems):
            return Subgroup(g, elems=elems)
        elems = nxt
        gens = u.small_generating_set(sorted(nxt))


def element_orders_profile(g: Group) -> dict[int, int]:
    """How many elements of each order (a cheap sanity invariant)."""
    u = g.universe
    out: dict[int, int] = {}
    for i in range(len(u)):
        o = u.order_of(i)
        out[o] = out.get(o, 0) + 1
    return out


def group_primes(g: Group) -> list[int]:
    return prime_factors(g.order)
