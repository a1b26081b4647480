"""Permutation groups: stabilizer chains, membership, subgroups, quotients.

``Group`` is an ambient group certified by a deterministically-built
stabilizer chain (base points chosen lowest-moved-first).  ``Subgroup``
is a handle onto a subgroup of a fixed ambient group; at desk scale the
handle's element set (indices into the ambient :class:`Universe`) is the
workhorse representation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable, Sequence

from .perm import DegreeMismatch, Permutation, as_table
from .universe import ELEMENT_LIMIT, Universe


class GroupError(ValueError):
    pass


class NotASubgroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


VERIFY_ROUNDS = 64


# ---------------------------------------------------------------------------
# Stabilizer chain (deterministic Schreier-Sims)
# ---------------------------------------------------------------------------

class StabilizerChain:
    """Base points, strong generators, and basic orbits with transversals.

    Level i holds the orbit of base[i] under the strong generators fixing
    base[0..i-1]; transversal entries u satisfy u[base[i]] = point.  The
    build loop re-checks every Schreier generator after each addition, which
    is far from optimal but transparently correct at degree <= 64.
    """

    __slots__ = ("degree", "base", "sgs", "orbits")

    def __init__(self, generators: Sequence[Permutation], degree: int):
        self.degree = degree
        self.base: list[int] = []
        self.sgs: list[Permutation] = []
        self.orbits: list[dict[int, Permutation]] = []
        for g in sorted(set(generators)):
            if not g.is_identity():
                self._register(g)
        self._fixup()

    # -- queries ---------------------------------------------------------

    def order(self) -> int:
        n = 1
        for orbit in self.orbits:
            n *= len(orbit)
        return n

    def basic_orbit_lengths(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def sift(self, p: Permutation, start: int = 0) -> Permutation:
        for i in range(start, len(self.base)):
            target = p[self.base[i]]
            u = self.orbits[i].get(target)
            if u is None:
                return p
            p = p * u.inverse()
        return p

    def contains(self, p: Permutation) -> bool:
        return self.sift(p).is_identity()

    # -- construction ------------------------------------------------------

    def _register(self, g: Permutation) -> None:
        self.sgs.append(g)
        if all(g[b] == b for b in self.base):
            moved = min(i for i in range(self.degree) if g[i] != i)
            self.base.append(moved)
            self.orbits.append({})

    def _gens_at(self, i: int) -> list[Permutation]:
        prefix = self.base[:i]
        return [g for g in self.sgs if all(g[b] == b for b in prefix)]

    def _recompute_orbit(self, i: int) -> None:
        base = self.base[i]
        gens = self._gens_at(i)
        orbit = {base: Permutation.identity(self.degree)}
        frontier = [base]
        while frontier:
            nxt = []
            for pt in frontier:
                u = orbit[pt]
                for g in gens:
                    img = g[pt]
                    if img not in orbit:
                        orbit[img] = u * g
                        nxt.append(img)
            frontier = sorted(nxt)
        self.orbits[i] = orbit

    def _fixup(self) -> None:
        while True:
            for i in range(len(self.base)):
                self._recompute_orbit(i)
            missing = self._missing_schreier_residue()
            if missing is None:
                return
            self._register(missing)

    def _missing_schreier_residue(self) -> Permutation | None:
        for i in range(len(self.base)):
            orbit = self.orbits[i]
            gens = self._gens_at(i)
            for pt in sorted(orbit):
                u = orbit[pt]
                for g in gens:
                    schreier = u * g * orbit[g[pt]].inverse()
                    residue = self.sift(schreier, start=i + 1)
                    if not residue.is_identity():
                        return residue
        return None


def build_chain(generators: Sequence[Permutation], degree: int) -> StabilizerChain:
    return StabilizerChain(generators, degree)


# ---------------------------------------------------------------------------
# Group
# ---------------------------------------------------------------------------

class Group:
    """An ambient permutation group with a verified stabilizer chain."""

    def __init__(self, generators: Sequence[Permutation], name: str | None = None):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if not gens:
            raise GroupError("at least one generator required (identity allowed)")
        degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise DegreeMismatch("generators have mixed degrees")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(dict.fromkeys(gens))
        self.name = name
        self.chain = StabilizerChain(self.generators, degree)
        self.order = self.chain.order()
        self._verify_chain()
        self._universe: Universe | None = None

    def _verify_chain(self) -> None:
        # cheap randomized guard: random generator words must sift to identity
        rng = random.Random(repr(sorted(self.generators)))
        gens = [g for g in self.generators if not g.is_identity()]
        if not gens:
            return
        for g in gens:
            if not self.chain.contains(g):
                raise GroupError("stabilizer chain failed to absorb a generator")
        for _ in range(VERIFY_ROUNDS):
            word = Permutation.identity(self.degree)
            for _ in range(rng.randint(1, 8)):
                word = word * rng.choice(gens)
            if not self.chain.contains(word):
                raise GroupError("stabilizer chain verification failed")

    # -- basics -------------------------------------------------------------

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatch(f"degree {p.degree} != group degree {self.degree}")
        return self.chain.contains(p)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def base(self) -> list[int]:
        return list(self.chain.base)

    def basic_orbit_lengths(self) -> list[int]:
        return self.chain.basic_orbit_lengths()

    @property
    def universe(self) -> Universe:
        if self._universe is None:
            if self.order > ELEMENT_LIMIT:
                raise GroupError(f"group order {self.order} exceeds element limit {ELEMENT_LIMIT}")
            self._universe = Universe.generate(self.generators, self.degree)
        return self._universe

    def elements(self) -> list[Permutation]:
        return [self.universe.perm(i) for i in range(len(self.universe))]

    def gen_ids(self) -> list[int]:
        u = self.universe
        return [u.index_of(g) for g in self.generators]

    def full_set(self) -> frozenset[int]:
        return frozenset(range(len(self.universe)))

    def subgroup(self, gens: Iterable[Permutation] | None = None, *, ids: Iterable[int] | None = None,
                 elems: frozenset[int] | None = None) -> "Subgroup":
        return Subgroup(self, gens=gens, ids=ids, elems=elems)

    def whole_subgroup(self) -> "Subgroup":
        return Subgroup(self, gens=self.generators, elems=self.full_set())

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, gens=[self.identity()], elems=frozenset([self.universe.id_index]))

    def key(self) -> tuple:
        """Deterministic identity used for caching: degree plus sorted generator images."""
        return (self.degree, tuple(sorted(tuple(g) for g in self.generators)))

    def __repr__(self) -> str:
        label = self.name or f"degree {self.degree}"
        return f"Group({label}, order {self.order})"


def build_group(generators: Sequence[Permutation], name: str | None = None) -> Group:
    """Construct a group from generators (the trivial group via the identity)."""
    return Group(generators, name=name)


# ---------------------------------------------------------------------------
# Subgroup handles
# ---------------------------------------------------------------------------

class Subgroup:
    """A subgroup of a fixed ambient group, identified by its element set."""

    __slots__ = ("ambient", "_gens", "_elems", "_core", "_solvable", "_as_group")

    def __init__(self, ambient: Group, gens: Iterable[Permutation] | None = None, *,
                 ids: Iterable[int] | None = None, elems: frozenset[int] | None = None):
        self.ambient = ambient
        u = ambient.universe
        gen_ids: list[int] | None = None
        if gens is not None:
            gen_ids = [u.index_of(g) for g in gens]
        elif ids is not None:
            gen_ids = list(ids)
        if gen_ids is None and elems is None:
            raise GroupError("a subgroup needs generators or an element set")
        self._gens = gen_ids
        self._elems = elems
        self._core: "Subgroup | None" = None
        self._solvable: bool | None = None
        self._as_group: Group | None = None

    # -- lazy views ----------------------------------------------------------

    @property
    def elems(self) -> frozenset[int]:
        if self._elems is None:
            self._elems = self.ambient.universe.closure(self._gens or [])
        return self._elems

    @property
    def gen_ids(self) -> list[int]:
        if self._gens is None:
            self._gens = self.ambient.universe.small_generating_set(sorted(self.elems))
            if not self._gens:
                self._gens = [self.ambient.universe.id_index]
        return self._gens

    @property
    def order(self) -> int:
        return len(self.elems)

    @property
    def index(self) -> int:
        return self.ambient.order // self.order

    def generators(self) -> list[Permutation]:
        u = self.ambient.universe
        return [u.perm(i) for i in self.gen_ids]

    def as_group(self) -> Group:
        """This subgroup as a standalone ambient group (same degree)."""
        if self._as_group is None:
            gens = self.generators()
            if not gens:
                gens = [self.ambient.identity()]
            self._as_group = Group(gens)
        return self._as_group

    # -- predicates ------------------------------------------------------------

    def contains_perm(self, p: Permutation) -> bool:
        return self.ambient.universe.index_of(p) in self.elems

    def contains_subgroup(self, other: "Subgroup") -> bool:
        if other.ambient is not self.ambient:
            raise GroupError("subgroups live in different ambient groups")
        if other._elems is not None:
            return other._elems <= self.elems
        return all(g in self.elems for g in other.gen_ids)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient is other.ambient and self.elems == other.elems

    def __hash__(self) -> int:
        return hash((id(self.ambient), self.elems))

    def __le__(self, other: "Subgroup") -> bool:
        return other.contains_subgroup(self)

    def __lt__(self, other: "Subgroup") -> bool:
        return self.order < other.order and other.contains_subgroup(self)

    def fingerprint(self) -> bytes:
        return self.ambient.universe.set_fp(self.elems)

    def __repr__(self) -> str:
        return f"Subgroup(order {self.order} of {self.ambient!r})"


# ---------------------------------------------------------------------------
# perm-core operations on subgroups
# ---------------------------------------------------------------------------

def conjugate(h: Subgroup, x: Permutation) -> Subgroup:
    u = h.ambient.universe
    xi = u.index_of(x)
    return Subgroup(h.ambient, ids=[u.conj(g, xi) for g in h.gen_ids],
                    elems=u.conj_set(h.elems, xi) if h._elems is not None else None)


def is_normal(g: Group, h: Subgroup) -> bool:
    if h.ambient is not g:
        raise GroupError("subgroup belongs to a different ambient group")
    u = g.universe
    hset = h.elems
    return all(u.conj(x, gi) in hset for gi in g.gen_ids() for x in h.gen_ids)


def normal_closure(g: Group, seed: Iterable[Permutation] | Iterable[int]) -> Subgroup:
    """Smallest normal subgroup of g containing the seed elements."""
    u = g.universe
    seed_ids = [u.index_of(s) if not isinstance(s, int) else s for s in seed]
    ggens = g.gen_ids()
    gens = list(dict.fromkeys(seed_ids))
    have = u.closure(gens)
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
    return Subgroup(g, ids=gens, elems=have)


def derived_subgroup_set(u: Universe, elems: frozenset[int], gen_ids: Sequence[int]) -> frozenset[int]:
    """Element set of the derived subgroup of the subgroup (elems, gen_ids)."""
    comms = set()
    for a in gen_ids:
        ai = u.inv[a]
        for b in gen_ids:
            comms.add(u.mul(u.mul(u.inv[b], u.mul(ai, b)), a))
    comms.discard(u.id_index)
    gens = sorted(comms)
    have = u.closure(gens)
    # normal closure inside the subgroup
    changed = True
    while changed:
        changed = False
        for x in list(gens):
            for gi in gen_ids:
                c = u.conj(x, gi)
                if c not in have:
                    gens.append(c)
                    have = u.closure_extend(have, gens, [c])
                    changed = True
    return have


def derived_subgroup(g: Group | Subgroup) -> Subgroup:
    if isinstance(g, Group):
        sub = g.whole_subgroup()
    else:
        sub = g
    u = sub.ambient.universe
    dset = derived_subgroup_set(u, sub.elems, sub.gen_ids)
    return Subgroup(sub.ambient, elems=dset)


def intersect(h: Subgroup, k: Subgroup) -> Subgroup:
    if h.ambient is not k.ambient:
        raise GroupError("subgroups live in different ambient groups")
    return Subgroup(h.ambient, elems=h.elems & k.elems)


def core(g: Group, h: Subgroup) -> Subgroup:
    """Largest normal subgroup of g inside h (kernel of the coset action)."""
    if h._core is not None:
        return h._core
    u = g.universe
    ggens = g.gen_ids()
    current = h.elems
    stable = False
    while not stable:
        stable = True
        for gi in ggens:
            conj = u.conj_set(current, gi)
            if not conj >= current:
                current = current & conj
                stable = False
    h._core = Subgroup(g, elems=current)
    return h._core


def subgroup_index(g: Group, h: Subgroup) -> int:
    """Index of h in g."""
    if h.ambient is not g:
        raise GroupError("subgroup belongs to a different ambient group")
    return g.order // h.order


def is_prime_power(n: int) -> tuple[bool, int | None]:
    """Whether n is p^k with k >= 1; returns the witness prime. 1 is not one."""
    if n <= 1:
        return False, None
    p = smallest_prime_factor(n)
    while n % p == 0:
        n //= p
    return (n == 1), (p if n == 1 else None)


def smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def prime_factors(n: int) -> list[int]:
    out = []
    while n > 1:
        p = smallest_prime_factor(n)
        out.append(p)
        while n % p == 0:
            n //= p
    return out


# ---------------------------------------------------------------------------
# Homomorphisms, coset actions, quotients
# ---------------------------------------------------------------------------

@dataclass
class Homomorphism:
    """A homomorphism defined by a point action of the domain's universe."""

    domain: Group
    codomain: Group
    _image_of: Callable[[int], Permutation] = field(repr=False)
    kernel: Subgroup = field(repr=False)

    def image_of_id(self, i: int) -> Permutation:
        return self._image_of(i)

    def image_of(self, p: Permutation) -> Permutation:
        return self._image_of(self.domain.universe.index_of(p))

    def generator_images(self) -> dict[Permutation, Permutation]:
        return {g: self.image_of(g) for g in self.domain.generators}

    def image_subgroup(self, h: Subgroup) -> Subgroup:
        """Image of a subgroup of the domain inside the codomain."""
        cu = self.codomain.universe
        ids = {cu.index_of(self._image_of(i)) for i in h.gen_ids}
        return Subgroup(self.codomain, ids=sorted(ids))

    def preimage_subgroup(self, k: Subgroup) -> Subgroup:
        """Full preimage of a subgroup of the codomain."""
        du = self.domain.universe
        cu = self.codomain.universe
        kset = k.elems
        ids = frozenset(i for i in range(len(du)) if cu.index_of(self._image_of(i)) in kset)
        return Subgroup(self.domain, elems=ids)


def _coset_table(g: Group, h: Subgroup) -> tuple[list[int], dict[int, int]]:
    """Deterministic right-coset decomposition: reps plus element -> coset id."""
    u = g.universe
    hset = sorted(h.elems)
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    elems = u.elems
    index = u.index
    for x in range(len(u)):
        if x in coset_of:
            continue
        cid = len(reps)
        reps.append(x)
        xb = as_table(elems[x])
        for hh in hset:
            coset_of[index[elems[hh].translate(xb)]] = cid
    return reps, coset_of


def coset_action(g: Group, h: Subgroup) -> tuple[Homomorphism, Subgroup]:
    """Action of g on the right cosets of h, plus its kernel (the core of h)."""
    if h.ambient is not g:
        raise NotASubgroup("handle belongs to a different ambient group")
    reps, coset_of = _coset_table(g, h)
    u = g.universe
    n_cosets = len(reps)
    if n_cosets > 256:
        raise GroupError(f"coset action degree {n_cosets} exceeds the supported 256")

    def act(i: int) -> Permutation:
        b = as_table(u.elems[i])
        return Permutation(bytes(coset_of[u.index[u.elems[r].translate(b)]] for r in reps))

    images = [act(i) for i in g.gen_ids()]
    codomain = Group(images if images else [Permutation.identity(n_cosets)])
    kernel = core(g, h)
    hom = Homomorphism(domain=g, codomain=codomain, _image_of=act, kernel=kernel)
    return hom, kernel


def _faithful_overgroups(g: Group, n: Subgroup) -> list[Subgroup] | None:
    """Overgroups of n whose cores intersect to exactly n (for small quotient degree).

    Candidates are the subgroups generated by n and one conjugacy class
    representative; greedy cover keeps the total coset degree small.
    """
    u = g.universe
    nset = n.elems
    candidates: list[tuple[int, Subgroup, frozenset[int]]] = []
    for rep in u.element_class_reps():
        if rep in nset:
            continue
        hset = u.closure_extend(nset, n.gen_ids, [rep])
        if len(hset) == g.order:
            continue
        sub = Subgroup(g, elems=hset)
        c = core(g, sub)
        if not (c.elems >= nset):
            continue
        candidates.append((g.order // len(hset), sub, c.elems))
    candidates.sort(key=lambda t: (t[0], sorted(t[1].elems)[:3]))
    chosen: list[Subgroup] = []
    current: frozenset[int] | None = None
    for _, sub, celems in candidates:
        if current is not None and current <= nset:
            break
        if current is None:
            chosen.append(sub)
            current = celems
        elif not (current <= celems):
            chosen.append(sub)
            current = current & celems
    if current is None or not (current == nset):
        return None
    return chosen


def quotient_group(g: Group, n: Subgroup) -> tuple[Group, Homomorphism]:
    """Quotient of g by a normal subgroup, as a faithful permutation image.

    Index up to 256 uses the plain coset action; larger indices act on the
    cosets of a few overgroups of n whose cores cut out exactly n.  The
    quotient by the trivial subgroup is an identity copy of g.
    """
    if not is_normal(g, n):
        raise NotNormal("subgroup is not normal in the ambient group")
    u = g.universe
    if n.order == 1:
        ident = Homomorphism(domain=g, codomain=g, _image_of=lambda i: u.perm(i),
                             kernel=g.trivial_subgroup())
        return g, ident
    index = g.order // n.order
    if index <= 256:
        hom, _ = coset_action(g, n)
        return hom.codomain, hom
    overs = _faithful_overgroups(g, n)
    if overs is None or sum(g.order // o.order for o in overs) > 256:
        raise GroupError(f"no faithful quotient action of degree <= 256 found (index {index})")
    tables = [_coset_table(g, o) for o in overs]
    offsets = []
    total = 0
    for reps, _ in tables:
        offsets.append(total)
        total += len(reps)

    def act(i: int) -> Permutation:
        b = as_table(u.elems[i])
        images = bytearray(total)
        for (reps, coset_of), off in zip(tables, offsets):
            for k, r in enumerate(reps):
                images[off + k] = off + coset_of[u.index[u.elems[r].translate(b)]]
        return Permutation(bytes(images))

    gen_images = [act(i) for i in g.gen_ids()]
    codomain = Group(gen_images)
    if codomain.order != index:
        raise GroupError("reduced quotient action is not faithful")
    hom = Homomorphism(domain=g, codomain=codomain, _image_of=act, kernel=n)
    return codomain, hom


def product_set(h: Subgroup, n: Subgroup) -> frozenset[int]:
    """Element set of HN (a subgroup when one factor normalizes the other)."""
    if h.ambient is not n.ambient:
        raise GroupError("subgroups live in different ambient groups")
    return h.ambient.universe.mult_sets(h.elems, n.elems)
