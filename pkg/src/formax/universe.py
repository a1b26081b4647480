"""Indexed element universe of one ambient permutation group.

All subgroup machinery in this package works with integer indices into a
sorted list of the ambient group's elements (raw ``bytes`` permutations).
Subgroups are ``frozenset[int]``; products and conjugations are
``bytes.translate`` plus one dict lookup, which keeps desk-scale lattice
enumeration fast in pure Python.
"""

from __future__ import annotations

import hashlib
from array import array
from typing import Iterable, Sequence

from .perm import Permutation, as_table

ELEMENT_LIMIT = 120_000


class UniverseOverflow(RuntimeError):
    """Group has more elements than the configured universe limit."""


class Universe:
    """Sorted element table of an ambient group with fast index arithmetic."""

    __slots__ = (
        "degree", "elems", "index", "inv", "id_index",
        "_orders", "_class_reps", "_class_of", "_class_members",
    )

    def __init__(self, elems: list[bytes], degree: int):
        self.degree = degree
        self.elems = elems
        self.index = {e: i for i, e in enumerate(elems)}
        inv = array("i", [0] * len(elems))
        for i, e in enumerate(elems):
            b = bytearray(degree)
            for src, dst in enumerate(e):
                b[dst] = src
            inv[i] = self.index[bytes(b)]
        self.inv = inv
        self.id_index = self.index[bytes(range(degree))]
        self._orders: array | None = None
        self._class_reps: list[int] | None = None
        self._class_of: array | None = None
        self._class_members: list[list[int]] | None = None

    def __len__(self) -> int:
        return len(self.elems)

    # -- construction -------------------------------------------------------

    @classmethod
    def generate(cls, gens: Sequence[bytes], degree: int, limit: int = ELEMENT_LIMIT) -> "Universe":
        """Close the generators into the full element list (sorted)."""
        ident = bytes(range(degree))
        seen = {ident}
        frontier = [ident]
        tables = [as_table(bytes(g)) for g in gens]
        while frontier:
            nxt = []
            for b in frontier:
                for g in tables:
                    c = b.translate(g)
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
            if len(seen) > limit:
                raise UniverseOverflow(f"more than {limit} elements")
        return cls(sorted(seen), degree)

    # -- element arithmetic ---------------------------------------------------

    def mul(self, i: int, j: int) -> int:
        return self.index[self.elems[i].translate(as_table(self.elems[j]))]

    def conj(self, i: int, g: int) -> int:
        """Index of g^-1 * elems[i] * g."""
        return self.index[self.elems[self.inv[g]].translate(as_table(self.elems[i])).translate(as_table(self.elems[g]))]

    def pow(self, i: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv[i], -k)
        acc = self.id_index
        base = i
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def order_of(self, i: int) -> int:
        if self._orders is None:
            self._orders = array("i", [0] * len(self.elems))
        n = self._orders[i]
        if n:
            return n
        j = i
        n = 1
        while j != self.id_index:
            j = self.mul(j, i)
            n += 1
        self._orders[i] = n
        return n

    def perm(self, i: int) -> Permutation:
        return bytes.__new__(Permutation, self.elems[i])

    def index_of(self, p: bytes) -> int:
        try:
            return self.index[bytes(p)]
        except KeyError:
            raise KeyError("permutation is not an element of this group") from None

    # -- subgroup sets ---------------------------------------------------------

    def closure(self, gen_ids: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by the given elements, as an index set."""
        elems = self.elems
        index = self.index
        gens = [as_table(elems[g]) for g in sorted(set(gen_ids)) if g != self.id_index]
        seen = {self.id_index}
        if not gens:
            return frozenset(seen)
        frontier = [self.id_index]
        while frontier:
            nxt = []
            for i in frontier:
                b = elems[i]
                for g in gens:
                    j = index[b.translate(g)]
                    if j not in seen:
                        seen.add(j)
                        nxt.append(j)
            frontier = nxt
        return frozenset(seen)

    def closure_extend(
        self,
        base: frozenset[int],
        base_gens: Iterable[int],
        extra: Iterable[int],
    ) -> frozenset[int]:
        """Subgroup generated by a known subgroup (set + gens) and extra elements.

        Seeds the orbit walk with the full base set so only genuinely new
        elements are visited.
        """
        extra = [g for g in set(extra) if g not in base]
        if not extra:
            return base
        elems = self.elems
        index = self.index
        gens = [as_table(elems[g]) for g in sorted({*base_gens, *extra}) if g != self.id_index]
        seen = set(base)
        seen.update(extra)
        frontier = list(seen)
        while frontier:
            nxt = []
            for i in frontier:
                b = elems[i]
                for g in gens:
                    j = index[b.translate(g)]
                    if j not in seen:
                        seen.add(j)
                        nxt.append(j)
            frontier = nxt
        return frozenset(seen)

    def coset_power_union(self, sub: frozenset[int], r: int, p: int) -> frozenset[int]:
        """Union of cosets sub * r^k for k in 0..p-1 (sub normalized by r)."""
        elems = self.elems
        index = self.index
        out = set(sub)
        rk = r
        for _ in range(p - 1):
            rb = as_table(elems[rk])
            out.update(index[elems[h].translate(rb)] for h in sub)
            rk = self.mul(rk, r)
        return frozenset(out)

    def conj_set(self, sub: frozenset[int], g: int) -> frozenset[int]:
        elems = self.elems
        index = self.index
        gi = elems[self.inv[g]]
        gb = as_table(elems[g])
        return frozenset(index[gi.translate(as_table(elems[i])).translate(gb)] for i in sub)

    def mult_sets(self, a: frozenset[int], b: frozenset[int]) -> frozenset[int]:
        """Product set a*b (a subgroup exactly when one factor normalizes the other)."""
        elems = self.elems
        index = self.index
        out = set()
        bs = [as_table(elems[j]) for j in b]
        for i in a:
            ai = elems[i]
            out.update(index[ai.translate(bj)] for bj in bs)
        return frozenset(out)

    def set_fp(self, sub: frozenset[int]) -> bytes:
        """128-bit order-independent fingerprint of an element index set."""
        return hashlib.md5(array("i", sorted(sub)).tobytes()).digest()

    def element_fp(self, sub: Iterable[int]) -> str:
        """Universe-independent fingerprint (hex) based on raw element bytes."""
        h = hashlib.md5()
        for i in sorted(sub):
            h.update(self.elems[i])
        return h.hexdigest()

    # -- conjugacy classes of elements -------------------------------------

    def _build_classes(self) -> None:
        n = len(self.elems)
        class_of = array("i", [-1] * n)
        reps: list[int] = []
        members: list[list[int]] = []
        gens = self.small_generating_set(range(n))
        for i in range(n):
            if class_of[i] >= 0:
                continue
            cid = len(reps)
            reps.append(i)
            orbit = [i]
            class_of[i] = cid
            queue = [i]
            while queue:
                j = queue.pop()
                for g in gens:
                    k = self.conj(j, g)
                    if class_of[k] < 0:
                        class_of[k] = cid
                        orbit.append(k)
                        queue.append(k)
            members.append(sorted(orbit))
        self._class_reps = reps
        self._class_of = class_of
        self._class_members = members

    def element_class_reps(self) -> list[int]:
        if self._class_reps is None:
            self._build_classes()
        return list(self._class_reps)  # type: ignore[arg-type]

    def element_class_members(self) -> list[list[int]]:
        if self._class_members is None:
            self._build_classes()
        return self._class_members  # type: ignore[return-value]

    def class_of(self, i: int) -> int:
        if self._class_of is None:
            self._build_classes()
        return self._class_of[i]  # type: ignore[index]

    def centralizer_elems(self, i: int) -> list[int]:
        b = self.elems[i]
        tb = as_table(b)
        return [g for g, e in enumerate(self.elems) if e.translate(tb) == b.translate(as_table(e))]

    def small_generating_set(self, candidates: Iterable[int]) -> list[int]:
        """Greedy short generating list for the subgroup spanned by the candidates.

        Candidates are scanned in the given order, so a sorted input gives a
        deterministic result.
        """
        gens: list[int] = []
        have: frozenset[int] = frozenset([self.id_index])
        for i in candidates:
            if i not in have:
                gens.append(i)
                have = self.closure_extend(have, gens, [i])
        return gens
