"""Subgroup lattice enumeration and the maximal / second-maximal strata.

Enumeration runs upward from perfect seed subgroups by prime cyclic
extension inside normalizers: every subgroup sits above its solvable
residual (a perfect group) through a chain of prime-index normal steps, so
seeding with the perfect subgroups (found by an exhaustive reduced
two-generator search) and closing under prime extensions yields every
subgroup class.  A brute-force oracle cross-checks this on small groups.

The two strata the verification suites live on are materialized member by
member, with the ambient generators' conjugation action recorded as
permutations of member ids so that member-level data transports along
class orbits without touching element sets.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Iterable

from .group import (
    Group, GroupError, StabilizerChain, Subgroup, derived_subgroup_set,
    prime_factors,
)
from .perm import Permutation, as_table
from .structure import chief_factor_profile, solvable_set
from .universe import Universe

log = logging.getLogger(__name__)

DEFAULT_BOUND = 10_000
ALGORITHM_VERSION = 3


class BoundExceeded(GroupError):
    """Ambient order exceeds the configured enumeration bound."""


# ---------------------------------------------------------------------------
# class records and orbits
# ---------------------------------------------------------------------------

@dataclass
class SubgroupClass:
    order: int
    gen_ids: list[int]
    class_size: int
    is_maximal: bool = False


@dataclass
class ClassOrbit:
    """Conjugation orbit of one subgroup class.

    member i is rep^conjugators[i]; parents[i] = (j, gpos) records the BFS
    step member_j --gen gpos--> member_i; actions[gpos] is the permutation
    the ambient generator induces on member ids.
    """

    conjugators: list[int]
    fps: list[bytes]
    parents: list[tuple[int, int] | None]
    actions: list[list[int]]
    sets: list[frozenset[int]] | None = None


def conjugation_orbit(u: Universe, ggen_ids: list[int], rep: frozenset[int],
                      keep_sets: bool = False) -> ClassOrbit:
    """Deterministic BFS orbit of a subgroup set under ambient conjugation."""
    fps = [u.set_fp(rep)]
    seen = {fps[0]: 0}
    sets = [rep]
    conjugators = [u.id_index]
    parents: list[tuple[int, int] | None] = [None]
    actions: list[list[int]] = [[] for _ in ggen_ids]
    i = 0
    while i < len(sets):
        s = sets[i]
        for gpos, gi in enumerate(ggen_ids):
            t = u.conj_set(s, gi)
            fp = u.set_fp(t)
            j = seen.get(fp)
            if j is None:
                j = len(sets)
                seen[fp] = j
                sets.append(t)
                fps.append(fp)
                conjugators.append(u.mul(conjugators[i], gi))
                parents.append((i, gpos))
            actions[gpos].append(j)
        i += 1
    return ClassOrbit(conjugators=conjugators, fps=fps, parents=parents,
                      actions=actions, sets=sets if keep_sets else None)


@dataclass
class Lattice:
    """All subgroup classes of one ambient group (the snapshot's class layer)."""

    group: Group
    classes: list[SubgroupClass]
    _rep_sets: list[frozenset[int] | None]

    @property
    def total_subgroups(self) -> int:
        return sum(c.class_size for c in self.classes)

    def class_profile(self) -> list[tuple[int, int]]:
        return sorted((c.order, c.class_size) for c in self.classes)

    def maximal_class_ids(self) -> list[int]:
        return [i for i, c in enumerate(self.classes) if c.is_maximal]

    def rep_set(self, cid: int) -> frozenset[int]:
        s = self._rep_sets[cid]
        if s is None:
            s = self.group.universe.closure(self.classes[cid].gen_ids)
            self._rep_sets[cid] = s
        return s

    def rep_subgroup(self, cid: int) -> Subgroup:
        u = self.group.universe
        gens = self.classes[cid].gen_ids or [u.id_index]
        return Subgroup(self.group, ids=gens, elems=self.rep_set(cid))


# ---------------------------------------------------------------------------
# perfect subgroup seeding
# ---------------------------------------------------------------------------

def _perfect_seed_sets(g: Group) -> list[tuple[frozenset[int], list[int]]]:
    """Perfect subgroup classes found by a reduced exhaustive 2-generator sweep.

    Pairs (x, y) run over element class representatives x and representatives
    y of the centralizer-of-x conjugation orbits; <x, y^c> = <x, y>^c for c
    centralizing x, so the domain meets every 2-generated subgroup class.
    Orders with fewer than three distinct primes are solvable and skipped.
    """
    u = g.universe
    n = len(u)
    degree = g.degree
    out: dict[bytes, tuple[frozenset[int], list[int]]] = {}
    for x in u.element_class_reps():
        if x == u.id_index:
            continue
        cent = u.centralizer_elems(x)
        cgens = u.small_generating_set(cent)
        orbit_seen = bytearray(n)
        for y in range(n):
            if orbit_seen[y]:
                continue
            queue = [y]
            orbit_seen[y] = 1
            while queue:
                z = queue.pop()
                for c in cgens:
                    w = u.conj(z, c)
                    if not orbit_seen[w]:
                        orbit_seen[w] = 1
                        queue.append(w)
            if y == u.id_index or y == x:
                continue
            chain = StabilizerChain([u.perm(x), u.perm(y)], degree)
            order = chain.order()
            if order == n or order < 60 or len(prime_factors(order)) < 3:
                continue
            pair = [x, y]
            sub = u.closure(pair)
            fp = u.set_fp(sub)
            if fp in out:
                continue
            if len(derived_subgroup_set(u, sub, pair)) == len(sub):
                out[fp] = (sub, pair)
    return [out[fp] for fp in sorted(out)]


# ---------------------------------------------------------------------------
# enumeration by prime cyclic extension
# ---------------------------------------------------------------------------

def enumerate_classes(g: Group, bound: int = DEFAULT_BOUND) -> Lattice:
    """All subgroup classes of g, upward from perfect seeds."""
    if g.order > bound:
        raise BoundExceeded(f"order {g.order} exceeds enumeration bound {bound}")
    started = time.perf_counter()
    u = g.universe
    n = len(u)
    ggens = g.gen_ids()
    known: dict[bytes, int] = {}
    classes: list[SubgroupClass] = []
    rep_sets: list[frozenset[int]] = []
    orbit_conjugators: list[list[int]] = []

    def register(rep: frozenset[int], gen_ids: list[int]) -> int:
        orbit = conjugation_orbit(u, ggens, rep)
        cid = len(classes)
        for fp in orbit.fps:
            known[fp] = cid
        classes.append(SubgroupClass(order=len(rep), gen_ids=list(gen_ids),
                                     class_size=len(orbit.conjugators)))
        rep_sets.append(rep)
        orbit_conjugators.append(orbit.conjugators)
        return cid

    register(frozenset([u.id_index]), [])
    for sub, pair in _perfect_seed_sets(g):
        if u.set_fp(sub) not in known:
            register(sub, pair)
    full = frozenset(range(n))
    if u.set_fp(full) not in known:
        register(full, list(dict.fromkeys(ggens)) or [u.id_index])

    work = 0
    while work < len(classes):
        cid = work
        work += 1
        cls = classes[cid]
        hset = rep_sets[cid]
        norm_order = g.order // cls.class_size
        if norm_order == cls.order:
            continue  # self-normalizing: nothing to extend by
        if norm_order == g.order:
            norm_elems: Iterable[int] = range(n)
        else:
            hgens = cls.gen_ids or [u.id_index]
            norm_elems = [x for x in range(n)
                          if all(u.conj(h, x) in hset for h in hgens)]
        covered = set(hset)
        for r in norm_elems:
            if r in covered:
                continue
            tb = as_table(u.elems[r])
            covered.update(u.index[u.elems[h].translate(tb)] for h in hset)
            m = 1
            y = r
            while y not in hset:
                y = u.mul(y, r)
                m += 1
            if not _is_prime(m):
                continue
            ext = u.coset_power_union(hset, r, m)
            if u.set_fp(ext) not in known:
                register(ext, list(cls.gen_ids) + [r])

    _mark_maximal(g, classes, rep_sets, orbit_conjugators)
    log.info("lattice(%s): %d classes, %d subgroups, %.2fs",
             g.name or g.order, len(classes),
             sum(c.class_size for c in classes), time.perf_counter() - started)
    return Lattice(group=g, classes=classes, _rep_sets=list(rep_sets))


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    f = prime_factors(m)
    return len(f) == 1 and f[0] == m


def _mark_maximal(g: Group, classes: list[SubgroupClass],
                  rep_sets: list[frozenset[int]],
                  orbit_conjugators: list[list[int]]) -> None:
    """A proper class is maximal iff no proper class strictly contains it."""
    u = g.universe
    order_index = sorted(range(len(classes)), key=lambda i: classes[i].order)
    for a in range(len(classes)):
        ca = classes[a]
        if ca.order == g.order:
            continue
        agens = ca.gen_ids or [u.id_index]
        contained = False
        for b in order_index:
            cb = classes[b]
            if cb.order <= ca.order or cb.order == g.order or cb.order % ca.order:
                continue
            bset = rep_sets[b]
            for t in orbit_conjugators[b]:
                ti = u.inv[t]
                if all(u.conj(x, ti) in bset for x in agens):
                    contained = True
                    break
            if contained:
                break
        ca.is_maximal = not contained


# ---------------------------------------------------------------------------
# strata and per-class functor metadata
# ---------------------------------------------------------------------------

@dataclass
class OwnMaxInfo:
    """One maximal-class of a maximal subgroup (for nested class predicates)."""

    order: int
    solvable: bool
    chief: list[tuple[int, bool]]


@dataclass
class MaxClassInfo:
    order: int
    index: int
    class_size: int
    solvable: bool
    chief: list[tuple[int, bool]]
    own_max: list[OwnMaxInfo]
    gen_ids: list[int]
    core_order: int = 1


@dataclass
class Max2ClassInfo:
    order: int
    class_size: int
    core_order: int
    strict: bool
    gen_ids: list[int]
    over_cover: list[bool]
    over_core_equal: list[bool]


@dataclass
class Stratum:
    member_class: list[int]
    member_conjugator: list[int]
    actions: list[list[int]]
    class_members: list[list[int]]

    @property
    def size(self) -> int:
        return len(self.member_class)


@dataclass
class GroupProfile:
    """Everything the verification suites need about one ambient group."""

    group: Group
    solvable: bool
    chief: list[tuple[int, bool]]
    max_info: list[MaxClassInfo]
    max_stratum: Stratum
    max2_info: list[Max2ClassInfo]
    max2_stratum: Stratum
    max2_overs: list[list[int]]
    _max_rep_sets: list[frozenset[int] | None] = field(default_factory=list)
    _max2_rep_sets: list[frozenset[int] | None] = field(default_factory=list)

    def primes(self) -> list[int]:
        return prime_factors(self.group.order)

    # -- member views ---------------------------------------------------------

    def max_member_order(self, m: int) -> int:
        return self.max_info[self.max_stratum.member_class[m]].order

    def max_member_index(self, m: int) -> int:
        return self.max_info[self.max_stratum.member_class[m]].index

    def max2_member_order(self, h: int) -> int:
        return self.max2_info[self.max2_stratum.member_class[h]].order

    def max_rep_set(self, c: int) -> frozenset[int]:
        s = self._max_rep_sets[c]
        if s is None:
            s = self.group.universe.closure(self.max_info[c].gen_ids)
            self._max_rep_sets[c] = s
        return s

    def max2_rep_set(self, c: int) -> frozenset[int]:
        s = self._max2_rep_sets[c]
        if s is None:
            s = self.group.universe.closure(self.max2_info[c].gen_ids)
            self._max2_rep_sets[c] = s
        return s

    def max_member_set(self, m: int) -> frozenset[int]:
        u = self.group.universe
        c = self.max_stratum.member_class[m]
        return u.conj_set(self.max_rep_set(c), self.max_stratum.member_conjugator[m])

    def max2_member_set(self, h: int) -> frozenset[int]:
        u = self.group.universe
        c = self.max2_stratum.member_class[h]
        return u.conj_set(self.max2_rep_set(c), self.max2_stratum.member_conjugator[h])

    def max_member_subgroup(self, m: int) -> Subgroup:
        return Subgroup(self.group, elems=self.max_member_set(m))

    def max2_member_subgroup(self, h: int) -> Subgroup:
        return Subgroup(self.group, elems=self.max2_member_set(h))

    def max_members_of_classes(self, class_ids: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        for c in class_ids:
            out.update(self.max_stratum.class_members[c])
        return frozenset(out)

    def max2_members_of_classes(self, class_ids: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        for c in class_ids:
            out.update(self.max2_stratum.class_members[c])
        return frozenset(out)

    def all_max_members(self) -> frozenset[int]:
        return frozenset(range(self.max_stratum.size))

    def all_max2_members(self) -> frozenset[int]:
        return frozenset(range(self.max2_stratum.size))

    def frattini_set(self) -> frozenset[int]:
        current = self.group.full_set()
        for m in range(self.max_stratum.size):
            current = current & self.max_member_set(m)
            if len(current) == 1:
                break
        return current

    def max_members_containing(self, sub_gen_ids: list[int], sub_order: int = 1) -> list[int]:
        """Ids of maximal members containing the subgroup with those generators."""
        u = self.group.universe
        out = []
        for m in range(self.max_stratum.size):
            c = self.max_stratum.member_class[m]
            if sub_order and self.max_info[c].order % sub_order:
                continue
            t_inv = u.inv[self.max_stratum.member_conjugator[m]]
            rep = self.max_rep_set(c)
            if all(u.conj(x, t_inv) in rep for x in sub_gen_ids):
                out.append(m)
        return out


# ---------------------------------------------------------------------------
# subgroup sets at the two strata
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupSet:
    """A level-tagged set of stratum members of one ambient group."""

    profile: GroupProfile
    level: str  # "max" | "max2"
    members: frozenset[int]

    def __len__(self) -> int:
        return len(self.members)

    def __bool__(self) -> bool:
        return bool(self.members)

    def union(self, other: "SubgroupSet") -> "SubgroupSet":
        self._check(other)
        return SubgroupSet(self.profile, self.level, self.members | other.members)

    def intersection(self, other: "SubgroupSet") -> "SubgroupSet":
        self._check(other)
        return SubgroupSet(self.profile, self.level, self.members & other.members)

    def _check(self, other: "SubgroupSet") -> None:
        if other.profile is not self.profile or other.level != self.level:
            raise GroupError("subgroup sets have mismatched ambient group or level")

    def class_ids(self) -> list[int]:
        stratum = (self.profile.max_stratum if self.level == "max"
                   else self.profile.max2_stratum)
        return sorted({stratum.member_class[m] for m in self.members})

    def handles(self) -> list[Subgroup]:
        if self.level == "max":
            return [self.profile.max_member_subgroup(m) for m in sorted(self.members)]
        return [self.profile.max2_member_subgroup(m) for m in sorted(self.members)]


# ---------------------------------------------------------------------------
# profile builder
# ---------------------------------------------------------------------------

def _chief_of_subgroup(g: Group, gen_ids: list[int]) -> list[tuple[int, bool]]:
    u = g.universe
    gens = [u.perm(i) for i in gen_ids] or [g.identity()]
    return chief_factor_profile(Group(gens))


def _core_set(u: Universe, ggens: list[int], sub: frozenset[int]) -> frozenset[int]:
    current = sub
    stable = False
    while not stable:
        stable = True
        for gi in ggens:
            conj = u.conj_set(current, gi)
            if not conj >= current:
                current = current & conj
                stable = False
    return current


def build_profile(g: Group, service: "LatticeService") -> GroupProfile:
    """Assemble the strata and functor metadata for one ambient group."""
    started = time.perf_counter()
    lat = service.classes(g)
    u = g.universe
    ggens = g.gen_ids()
    max_cids = lat.maximal_class_ids()

    # ---- maximal stratum ------------------------------------------------
    max_info: list[MaxClassInfo] = []
    member_class: list[int] = []
    member_conj: list[int] = []
    class_members: list[list[int]] = []
    actions: list[list[int]] = [[] for _ in ggens]
    max_rep_sets: list[frozenset[int]] = []
    max_member_fp: dict[bytes, int] = {}
    sub_lattices: list[Lattice] = []
    for k, cid in enumerate(max_cids):
        rep = lat.rep_set(cid)
        orbit = conjugation_orbit(u, ggens, rep)
        offset = len(member_class)
        ids = list(range(offset, offset + len(orbit.conjugators)))
        class_members.append(ids)
        member_class.extend([k] * len(ids))
        member_conj.extend(orbit.conjugators)
        for gpos in range(len(ggens)):
            actions[gpos].extend(offset + j for j in orbit.actions[gpos])
        for fp, mid in zip(orbit.fps, ids):
            max_member_fp[fp] = mid
        max_rep_sets.append(rep)

        cls = lat.classes[cid]
        rep_group = Group([u.perm(i) for i in cls.gen_ids] or [g.identity()])
        sub_lat = service.classes(rep_group)
        sub_lattices.append(sub_lat)
        own = []
        for scid in sub_lat.maximal_class_ids():
            sc = sub_lat.classes[scid]
            own.append(OwnMaxInfo(
                order=sc.order,
                solvable=solvable_set(sub_lat.group.universe, sub_lat.rep_set(scid),
                                      sc.gen_ids or [sub_lat.group.universe.id_index]),
                chief=_chief_of_subgroup(sub_lat.group, sc.gen_ids),
            ))
        own.sort(key=lambda o: (-o.order, o.solvable, o.chief))
        max_info.append(MaxClassInfo(
            order=cls.order,
            index=g.order // cls.order,
            class_size=cls.class_size,
            solvable=solvable_set(u, rep, cls.gen_ids or [u.id_index]),
            chief=_chief_of_subgroup(g, cls.gen_ids),
            own_max=own,
            gen_ids=list(cls.gen_ids),
        ))
    max_stratum = Stratum(member_class=member_class, member_conjugator=member_conj,
                          actions=actions, class_members=class_members)

    # cores of the maximal classes (conjugation transports them)
    max_core_sets = [_core_set(u, ggens, rep) for rep in max_rep_sets]
    for info, cset in zip(max_info, max_core_sets):
        info.core_order = len(cset)

    # translated member fingerprints of each rep's own maximal subgroups,
    # used to decide the cover relation H "maximal in" M
    cover_fps: list[set[bytes]] = []
    max2_candidates: list[tuple[frozenset[int], list[int]]] = []
    for k, cid in enumerate(max_cids):
        sub_lat = sub_lattices[k]
        su = sub_lat.group.universe
        fps: set[bytes] = set()
        for scid in sub_lat.maximal_class_ids():
            sc = sub_lat.classes[scid]
            srep = sub_lat.rep_set(scid)
            g_rep = frozenset(u.index_of(su.elems[i]) for i in srep)
            g_gens = [u.index_of(su.elems[i]) for i in sc.gen_ids] or [u.id_index]
            max2_candidates.append((g_rep, g_gens))
            orbit = conjugation_orbit(su, sub_lat.group.gen_ids(), srep, keep_sets=True)
            assert orbit.sets is not None
            for s in orbit.sets:
                fps.add(u.set_fp(frozenset(u.index_of(su.elems[i]) for i in s)))
        cover_fps.append(fps)

    # ---- second-maximal stratum ------------------------------------------
    max2_info: list[Max2ClassInfo] = []
    m2_member_class: list[int] = []
    m2_member_conj: list[int] = []
    m2_class_members: list[list[int]] = []
    m2_actions: list[list[int]] = [[] for _ in ggens]
    max2_overs: list[list[int]] = []
    m2_rep_sets: list[frozenset[int]] = []
    seen_m2: set[bytes] = set()
    max2_candidates.sort(key=lambda t: (-len(t[0]), sorted(t[0])))
    for rep, rep_gens in max2_candidates:
        fp = u.set_fp(rep)
        if fp in seen_m2:
            continue
        # class-level over data on the representative
        overs: list[int] = []
        over_cover: list[bool] = []
        over_core_equal: list[bool] = []
        h_core = _core_set(u, ggens, rep)
        for m in range(max_stratum.size):
            c = max_stratum.member_class[m]
            if max_info[c].order % len(rep):
                continue
            t = max_stratum.member_conjugator[m]
            ti = u.inv[t]
            crep = max_rep_sets[c]
            if not all(u.conj(x, ti) in crep for x in rep_gens):
                continue
            overs.append(m)
            back = u.conj_set(rep, ti)
            over_cover.append(u.set_fp(back) in cover_fps[c])
            m_core = u.conj_set(max_core_sets[c], t)
            over_core_equal.append(m_core == h_core)
        orbit = conjugation_orbit(u, ggens, rep)
        seen_m2.update(orbit.fps)
        k2 = len(max2_info)
        offset = len(m2_member_class)
        ids = list(range(offset, offset + len(orbit.conjugators)))
        m2_class_members.append(ids)
        m2_member_class.extend([k2] * len(ids))
        m2_member_conj.extend(orbit.conjugators)
        for gpos in range(len(ggens)):
            m2_actions[gpos].extend(offset + j for j in orbit.actions[gpos])
        # transport the over lists along the orbit
        local_overs: list[list[int] | None] = [None] * len(orbit.conjugators)
        local_overs[0] = overs
        for j in range(1, len(orbit.conjugators)):
            parent = orbit.parents[j]
            assert parent is not None
            pi, gpos = parent
            src = local_overs[pi]
            assert src is not None
            local_overs[j] = [actions[gpos][m] for m in src]
        max2_overs.extend(local_overs)  # type: ignore[arg-type]
        m2_rep_sets.append(rep)
        max2_info.append(Max2ClassInfo(
            order=len(rep),
            class_size=len(orbit.conjugators),
            core_order=len(h_core),
            strict=all(over_cover),
            gen_ids=list(rep_gens),
            over_cover=over_cover,
            over_core_equal=over_core_equal,
        ))
    max2_stratum = Stratum(member_class=m2_member_class, member_conjugator=m2_member_conj,
                           actions=m2_actions, class_members=m2_class_members)

    profile = GroupProfile(
        group=g,
        solvable=solvable_set(u, g.full_set(), g.gen_ids()),
        chief=chief_factor_profile(g),
        max_info=max_info,
        max_stratum=max_stratum,
        max2_info=max2_info,
        max2_stratum=max2_stratum,
        max2_overs=max2_overs,
        _max_rep_sets=list(max_rep_sets),
        _max2_rep_sets=list(m2_rep_sets),
    )
    log.info("profile(%s): %d max members, %d max2 members, %.2fs",
             g.name or g.order, max_stratum.size, max2_stratum.size,
             time.perf_counter() - started)
    return profile


# ---------------------------------------------------------------------------
# service with caching
# ---------------------------------------------------------------------------

class LatticeService:
    """Cache-aware access point for lattices and profiles."""

    def __init__(self, bound: int = DEFAULT_BOUND, cache=None):
        self.bound = bound
        self.cache = cache
        self._classes_mem: dict[tuple, Lattice] = {}
        self._profile_mem: dict[tuple, GroupProfile] = {}

    def classes(self, g: Group) -> Lattice:
        key = g.key()
        lat = self._classes_mem.get(key)
        if lat is not None:
            return lat
        alias = _semantic_alias(g) if self.cache else None
        payload = self.cache.load("classes", key, alias=alias) if self.cache else None
        if payload is not None:
            lat = _classes_from_payload(g, payload)
        else:
            lat = enumerate_classes(g, bound=self.bound)
            if self.cache:
                self.cache.store("classes", key, _classes_to_payload(lat), alias=alias)
        self._classes_mem[key] = lat
        return lat

    def profile(self, g: Group) -> GroupProfile:
        key = g.key()
        prof = self._profile_mem.get(key)
        if prof is not None:
            return prof
        alias = _semantic_alias(g) if self.cache else None
        payload = self.cache.load("profile", key, alias=alias) if self.cache else None
        if payload is not None:
            prof = _profile_from_payload(g, payload)
        else:
            prof = build_profile(g, self)
            if self.cache:
                self.cache.store("profile", key, _profile_to_payload(prof), alias=alias)
        self._profile_mem[key] = prof
        return prof


def _semantic_alias(g: Group) -> str:
    """Generator-independent cache alias: degree plus element-set fingerprint."""
    u = g.universe
    return f"{g.degree}:{u.element_fp(range(len(u)))}"


# ---------------------------------------------------------------------------
# public convenience wrappers over a shared default service
# ---------------------------------------------------------------------------

_DEFAULT_SERVICE: LatticeService | None = None


def default_service() -> LatticeService:
    global _DEFAULT_SERVICE
    if _DEFAULT_SERVICE is None:
        _DEFAULT_SERVICE = LatticeService()
    return _DEFAULT_SERVICE


def enumerate_subgroups(g: Group, bound: int = DEFAULT_BOUND,
                        service: LatticeService | None = None) -> Lattice:
    """All subgroups up to conjugacy (raises BoundExceeded above the bound)."""
    if g.order > bound:
        raise BoundExceeded(f"order {g.order} exceeds enumeration bound {bound}")
    svc = service or default_service()
    return svc.classes(g)


def maximal_subgroups(g: Group, service: LatticeService | None = None) -> SubgroupSet:
    """Every maximal subgroup, materialized (all conjugates)."""
    profile = (service or default_service()).profile(g)
    return SubgroupSet(profile, "max", profile.all_max_members())


def second_maximal_subgroups(g: Group, service: LatticeService | None = None) -> SubgroupSet:
    """Every second maximal subgroup, materialized (all conjugates)."""
    profile = (service or default_service()).profile(g)
    return SubgroupSet(profile, "max2", profile.all_max2_members())


def strictly_second_maximal(g: Group, service: LatticeService | None = None) -> SubgroupSet:
    """Second maximal subgroups maximal in every maximal overgroup."""
    profile = (service or default_service()).profile(g)
    ids = [k for k, mi in enumerate(profile.max2_info) if mi.strict]
    return SubgroupSet(profile, "max2", profile.max2_members_of_classes(ids))


def max_over(g: Group, h: Subgroup, service: LatticeService | None = None) -> SubgroupSet:
    """Maximal subgroups of g containing h; its size is the count m(G, H)."""
    profile = (service or default_service()).profile(g)
    members = profile.max_members_containing(h.gen_ids, h.order)
    return SubgroupSet(profile, "max", frozenset(members))


def frattini_subgroup(g: Group, service: LatticeService | None = None) -> Subgroup:
    """Intersection of all maximal subgroups."""
    profile = (service or default_service()).profile(g)
    return Subgroup(g, elems=profile.frattini_set())


# ---------------------------------------------------------------------------
# cache payload (de)serialization
# ---------------------------------------------------------------------------

def _classes_to_payload(lat: Lattice) -> dict:
    return {
        "order": lat.group.order,
        "classes": [
            {"order": c.order, "gens": [list(lat.group.universe.elems[i]) for i in c.gen_ids],
             "size": c.class_size, "maximal": c.is_maximal}
            for c in lat.classes
        ],
    }


def _classes_from_payload(g: Group, payload: dict) -> Lattice:
    u = g.universe
    classes = []
    for rec in payload["classes"]:
        gen_ids = [u.index_of(bytes(imgs)) for imgs in rec["gens"]]
        classes.append(SubgroupClass(order=rec["order"], gen_ids=gen_ids,
                                     class_size=rec["size"], is_maximal=rec["maximal"]))
    return Lattice(group=g, classes=classes, _rep_sets=[None] * len(classes))


def _profile_to_payload(p: GroupProfile) -> dict:
    u = p.group.universe

    def perm_list(ids: list[int]) -> list[list[int]]:
        return [list(u.elems[i]) for i in ids]

    return {
        "solvable": p.solvable,
        "chief": [list(t) for t in p.chief],
        "max_info": [
            {"order": mi.order, "index": mi.index, "size": mi.class_size,
             "solvable": mi.solvable, "chief": [list(t) for t in mi.chief],
             "core_order": mi.core_order,
             "own": [{"order": o.order, "solvable": o.solvable,
                      "chief": [list(t) for t in o.chief]} for o in mi.own_max],
             "gens": perm_list(mi.gen_ids)}
            for mi in p.max_info
        ],
        "max_stratum": _stratum_to_payload(p.max_stratum, u),
        "max2_info": [
            {"order": mi.order, "size": mi.class_size, "core_order": mi.core_order,
             "strict": mi.strict, "gens": perm_list(mi.gen_ids),
             "cover": mi.over_cover, "core_equal": mi.over_core_equal}
            for mi in p.max2_info
        ],
        "max2_stratum": _stratum_to_payload(p.max2_stratum, u),
        "max2_overs": p.max2_overs,
    }


def _stratum_to_payload(s: Stratum, u: Universe) -> dict:
    return {
        "member_class": s.member_class,
        "member_conjugator": [list(u.elems[i]) for i in s.member_conjugator],
        "actions": s.actions,
        "class_members": s.class_members,
    }


def _stratum_from_payload(d: dict, u: Universe) -> Stratum:
    return Stratum(
        member_class=list(d["member_class"]),
        member_conjugator=[u.index_of(bytes(e)) for e in d["member_conjugator"]],
        actions=[list(a) for a in d["actions"]],
        class_members=[list(c) for c in d["class_members"]],
    )


def _profile_from_payload(g: Group, d: dict) -> GroupProfile:
    u = g.universe

    def gen_ids(entries: list[list[int]]) -> list[int]:
        return [u.index_of(bytes(e)) for e in entries]

    max_info = [
        MaxClassInfo(
            order=mi["order"], index=mi["index"], class_size=mi["size"],
            solvable=mi["solvable"], chief=[tuple(t) for t in mi["chief"]],
            own_max=[OwnMaxInfo(order=o["order"], solvable=o["solvable"],
                                chief=[tuple(t) for t in o["chief"]]) for o in mi["own"]],
            gen_ids=gen_ids(mi["gens"]), core_order=mi["core_order"],
        )
        for mi in d["max_info"]
    ]
    max2_info = [
        Max2ClassInfo(
            order=mi["order"], class_size=mi["size"], core_order=mi["core_order"],
            strict=mi["strict"], gen_ids=gen_ids(mi["gens"]),
            over_cover=list(mi["cover"]), over_core_equal=list(mi["core_equal"]),
        )
        for mi in d["max2_info"]
    ]
    return GroupProfile(
        group=g,
        solvable=d["solvable"],
        chief=[tuple(t) for t in d["chief"]],
        max_info=max_info,
        max_stratum=_stratum_from_payload(d["max_stratum"], u),
        max2_info=max2_info,
        max2_stratum=_stratum_from_payload(d["max2_stratum"], u),
        max2_overs=[list(o) for o in d["max2_overs"]],
        _max_rep_sets=[None] * len(max_info),
        _max2_rep_sets=[None] * len(max2_info),
    )
