"""Brute-force reference algorithms, kept independent of the lattice engine.

These enumerate subgroups by breadth-first join closure over single-element
extensions, so they share nothing with the cyclic-extension machinery they
are used to check.  Feasible up to ambient order around 200-500.
"""

from __future__ import annotations

from .group import Group, Subgroup
from .universe import Universe


def brute_subgroup_sets(g: Group) -> list[frozenset[int]]:
    """Every subgroup of g as an element index set (BFS join closure)."""
    u = g.universe
    n = len(u)
    trivial = frozenset([u.id_index])
    found: set[frozenset[int]] = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for h in frontier:
            gens = u.small_generating_set(sorted(h))
            for x in range(n):
                if x in h:
                    continue
                k = u.closure_extend(h, gens, [x])
                if k not in found:
                    found.add(k)
                    nxt.append(k)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def conjugacy_classes_of_sets(g: Group, sets: list[frozenset[int]]) -> list[list[frozenset[int]]]:
    """Partition subgroup element sets into conjugacy classes under g."""
    u = g.universe
    gens = g.gen_ids()
    remaining = dict.fromkeys(sets)
    classes: list[list[frozenset[int]]] = []
    for s in sets:
        if s not in remaining:
            continue
        orbit = {s}
        queue = [s]
        while queue:
            t = queue.pop()
            for gi in gens:
                c = u.conj_set(t, gi)
                if c not in orbit:
                    orbit.add(c)
                    queue.append(c)
        for t in orbit:
            remaining.pop(t, None)
        classes.append(sorted(orbit, key=lambda x: sorted(x)))
    return classes


def brute_class_profile(g: Group) -> list[tuple[int, int]]:
    """Sorted (subgroup order, class size) pairs, one per conjugacy class."""
    sets = brute_subgroup_sets(g)
    classes = conjugacy_classes_of_sets(g, sets)
    return sorted((len(c[0]), len(c)) for c in classes)


def brute_maximal_sets(g: Group) -> list[frozenset[int]]:
    """Maximal subgroups from the brute-force enumeration."""
    sets = [s for s in brute_subgroup_sets(g) if len(s) < g.order]
    maximal = []
    for s in sets:
        if not any(s < t for t in sets if t is not s):
            maximal.append(s)
    return maximal


def brute_core(g: Group, h: Subgroup) -> frozenset[int]:
    """Core as the literal intersection of all conjugates."""
    u = g.universe
    seen = {h.elems}
    queue = [h.elems]
    while queue:
        t = queue.pop()
        for gi in g.gen_ids():
            c = u.conj_set(t, gi)
            if c not in seen:
                seen.add(c)
                queue.append(c)
    out = None
    for t in seen:
        out = t if out is None else out & t
    return out if out is not None else h.elems


def brute_normal_sets(g: Group) -> list[frozenset[int]]:
    u = g.universe
    gens = g.gen_ids()
    out = []
    for s in brute_subgroup_sets(g):
        if all(u.conj_set(s, gi) == s for gi in gens):
            out.append(s)
    return out


def element_closure_order(perms) -> int:
    """Order of the group generated by raw permutations, by plain closure."""
    from .perm import as_table

    perms = [bytes(p) for p in perms]
    degree = len(perms[0])
    ident = bytes(range(degree))
    tables = [as_table(p) for p in perms]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for b in frontier:
            for t in tables:
                c = b.translate(t)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return len(seen)
