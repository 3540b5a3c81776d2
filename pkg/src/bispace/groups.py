"""Finite groups given by Cayley tables.

Elements are the integers ``0..n-1`` indexing ``FiniteGroup.names``; list
order is the canonical order used everywhere for iteration and reporting.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from bispace.errors import GroupError

EXHAUSTIVE_BOUND = 64
SAMPLE_SIZE = 20000


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    name: str = "G"
    permutations: tuple | None = None

    # -- construction -------------------------------------------------

    @classmethod
    def from_table(cls, names: Sequence[str], table, name: str = "G",
                   exhaustive_bound: int = EXHAUSTIVE_BOUND, seed: int = 0) -> FiniteGroup:
        names = tuple(str(s) for s in names)
        n = len(names)
        if n == 0:
            raise GroupError("a group needs at least one element")
        if len(set(names)) != n:
            raise GroupError("element names must be pairwise distinct")
        rows = tuple(tuple(int(v) for v in row) for row in table)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise GroupError(f"table must be {n}x{n}")
        if any(v < 0 or v >= n for r in rows for v in r):
            raise GroupError("table entry out of range")

        identity = next((e for e in range(n)
                         if all(rows[e][g] == g and rows[g][e] == g for g in range(n))), None)
        if identity is None:
            raise GroupError("no two-sided identity")
        inverse = []
        for g in range(n):
            inv = [k for k in range(n) if rows[g][k] == identity and rows[k][g] == identity]
            if not inv:
                raise GroupError(f"element {names[g]} has no inverse")
            inverse.append(inv[0])

        if n <= exhaustive_bound:
            triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(SAMPLE_SIZE))
        for a, b, c in triples:
            if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                raise GroupError(f"not associative at ({names[a]}, {names[b]}, {names[c]})")
        return cls(names, rows, identity, tuple(inverse), name)

    @classmethod
    def from_permutations(cls, generators: Iterable[Sequence[int]], name: str = "G") -> FiniteGroup:
        """Close a set of permutations (one-line images) under composition.

        Images may be 0-based or 1-based; a generator set whose images are
        exactly ``1..n`` is read as 1-based. Products compose right to left:
        ``(p*q)(i) = p(q(i))``.
        """
        gens = [tuple(int(v) for v in g) for g in generators]
        if not gens:
            raise GroupError("need at least one permutation generator")
        degree = len(gens[0])
        if any(len(g) != degree for g in gens):
            raise GroupError("permutation generators differ in degree")
        if all(sorted(g) == list(range(1, degree + 1)) for g in gens):
            gens = [tuple(v - 1 for v in g) for g in gens]
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise GroupError(f"{g} is not a permutation")

        ident = tuple(range(degree))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for s in gens:
                    q = tuple(s[i] for i in p)
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        perms = sorted(seen)
        index = {p: i for i, p in enumerate(perms)}
        table = [[index[tuple(p[i] for i in q)] for q in perms] for p in perms]
        names = [cycle_notation(p) for p in perms]
        group = cls.from_table(names, table, name)
        return cls(group.names, group.table, group.identity, group.inverse, name, tuple(perms))

    # -- element access -----------------------------------------------

    @property
    def order(self) -> int:
        return len(self.names)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(range(len(self.names)))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.names)}

    def index(self, g) -> int:
        """Resolve an element given by index, name, or ``Element``."""
        if isinstance(g, Element):
            if g.group is not self:
                raise GroupError(f"{g} belongs to {g.group.name}, not {self.name}")
            return g.id
        if isinstance(g, (int, np.integer)) and not isinstance(g, bool):
            if 0 <= g < len(self.names):
                return int(g)
            raise GroupError(f"element index {g} not in {self.name}")
        if isinstance(g, str) and g in self._index:
            return self._index[g]
        raise GroupError(f"{g!r} is not an element of {self.name}")

    def elem(self, g) -> Element:
        return Element(self, self.index(g))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def product(self, *elements: int) -> int:
        out = self.identity
        for g in elements:
            out = self.table[out][g]
        return out

    def conjugate(self, h: int, g: int) -> int:
        """g^-1 h g"""
        return self.product(self.inverse[g], h, g)

    def element_order(self, g: int) -> int:
        k, p = 1, g
        while p != self.identity:
            p = self.table[p][g]
            k += 1
        return k

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.table, dtype=np.int32)
        a.setflags(write=False)
        return a

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(len(t)) for b in range(a + 1, len(t)))

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup(self, frozenset(range(self.order)))

    @cached_property
    def trivial(self) -> Subgroup:
        return Subgroup(self, frozenset([self.identity]))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


@dataclass(frozen=True)
class Element:
    group: FiniteGroup
    id: int

    def __mul__(self, other: Element) -> Element:
        _same_group(self, other)
        return Element(self.group, self.group.mul(self.id, other.id))

    def inverse(self) -> Element:
        return Element(self.group, self.group.inv(self.id))

    def __str__(self):
        return self.group.names[self.id]


def _same_group(a: Element, b: Element):
    if a.group is not b.group:
        raise GroupError(f"{a} and {b} live in different groups")


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a finite group, usable as the acting group of an action."""

    parent: FiniteGroup
    members: frozenset

    @classmethod
    def of(cls, parent: FiniteGroup, members: Iterable) -> Subgroup:
        ids = frozenset(parent.index(m) for m in members)
        t, inv = parent.table, parent.inverse
        if parent.identity not in ids:
            raise GroupError("subset does not contain the identity")
        for a in ids:
            if inv[a] not in ids or any(t[a][b] not in ids for b in ids):
                raise GroupError("subset is not closed under the group operation")
        return cls(parent, ids)

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    @property
    def samples(self) -> tuple[int, ...]:
        return self.elements

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def identity(self) -> int:
        return self.parent.identity

    def mul(self, a, b):
        return self.parent.table[a][b]

    def inv(self, a):
        return self.parent.inverse[a]

    def __contains__(self, g) -> bool:
        return g in self.members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.members)

    def __le__(self, other: Subgroup) -> bool:
        return self.parent is other.parent and self.members <= other.members

    def label(self, g) -> str:
        return self.parent.names[g]

    def is_normal(self) -> bool:
        G = self.parent
        return all(G.conjugate(h, g) in self.members for g in G for h in self.members)

    def __repr__(self):
        names = ", ".join(self.parent.names[g] for g in self.elements)
        return f"Subgroup({self.parent.name}: {{{names}}})"


def cycle_notation(perm: Sequence[int]) -> str:
    """1-based cycle notation; the identity is ``e``."""
    sep = " " if len(perm) > 9 else ""
    seen, cycles = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, i = [], start
        while i not in seen:
            seen.add(i)
            cyc.append(str(i + 1))
            i = perm[i]
        cycles.append("(" + sep.join(cyc) + ")")
    return "".join(cycles) or "e"


# -- constructions ----------------------------------------------------


def subgroup_generated(G: FiniteGroup, gens: Iterable = ()) -> Subgroup:
    ids = {G.index(g) for g in gens}
    members = {G.identity} | ids
    frontier = list(members)
    t = G.table
    while frontier:
        nxt = []
        for a in frontier:
            for s in ids:
                c = t[a][s]
                if c not in members:
                    members.add(c)
                    nxt.append(c)
        frontier = nxt
    # finite: closure under products already contains inverses
    return Subgroup(G, frozenset(members))


def _check_subgroup(G: FiniteGroup, H: Subgroup):
    if H.parent is not G:
        raise GroupError(f"{H} is not a subgroup of {G.name}")


def conjugate_set(G: FiniteGroup, H: Iterable[int], g: int) -> frozenset:
    """g^-1 H g"""
    return frozenset(G.conjugate(h, g) for h in H)


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    _check_subgroup(G, H)
    return Subgroup(G, frozenset(g for g in G if conjugate_set(G, H.members, g) == H.members))


def commutator(g: Element, h: Element) -> Element:
    """[g, h] = g^-1 h^-1 g h"""
    _same_group(g, h)
    G = g.group
    return Element(G, G.product(G.inv(g.id), G.inv(h.id), g.id, h.id))


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    comms = {G.product(G.inv(a), G.inv(b), a, b) for a in G for b in G}
    return subgroup_generated(G, comms)


def left_cosets(G: FiniteGroup, H: Subgroup) -> list[frozenset]:
    """Partition of G into blocks xH, ordered by smallest representative."""
    _check_subgroup(G, H)
    seen, blocks = set(), []
    for x in G:
        if x in seen:
            continue
        block = frozenset(G.mul(x, h) for h in H.members)
        seen |= block
        blocks.append(block)
    return blocks


def core(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """Largest normal subgroup of G inside H."""
    members = frozenset(h for h in H.members
                        if all(G.conjugate(h, g) in H.members for g in G))
    return Subgroup(G, members)


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, by joining cyclic subgroups until nothing new appears.

    Ordered by (order, sorted members).
    """
    cyclic = {subgroup_generated(G, [g]).members for g in G}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        nxt = set()
        for a in frontier:
            for b in cyclic:
                if b <= a:
                    continue
                j = subgroup_generated(G, a | b).members
                if j not in found:
                    found.add(j)
                    nxt.add(j)
        frontier = nxt
    return [Subgroup(G, m) for m in sorted(found, key=lambda m: (len(m), sorted(m)))]


def is_subgroup_of(H: Subgroup, K: Subgroup) -> bool:
    return H.parent is K.parent and H.members <= K.members
