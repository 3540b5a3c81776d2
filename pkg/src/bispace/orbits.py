"""Image sets K(A, A), the layers G^n(x, x), and orbit computations."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Any

import numpy as np

from bispace import kernels
from bispace.actions import BinaryAction
from bispace.errors import DomainError, UnsupportedInstance

DEFAULT_MAX_DEPTH = 8


def ordered(A: BinaryAction, S) -> list:
    """Members of S in canonical carrier order."""
    idx = A.carrier.index
    if all(p in idx for p in S):
        return sorted(S, key=idx.__getitem__)
    return sorted(S)


def _acting(A: BinaryAction, K):
    if K is None:
        if A.group.elements is None:
            raise UnsupportedInstance(f"the acting group of {A.name} cannot be enumerated")
        return tuple(A.group.elements)
    K = tuple(K)
    for g in K:
        if g not in A.group:
            raise DomainError(f"{A.label_g(g)} is not in the acting group")
    return K


def _use_table(A: BinaryAction, points) -> bool:
    return A.tabulable and all(p in A.carrier.index for p in points)


def image_set(A: BinaryAction, S, K=None) -> frozenset:
    """K(S, S) = {g(a1, a2) : g in K, a1, a2 in S}; K defaults to the whole group."""
    S = frozenset(S)
    K = _acting(A, K)
    if _use_table(A, S):
        gi, idx, pts = A.group_index, A.carrier.index, A.carrier.points
        out = kernels.image(A.table, [idx[p] for p in S], [gi[g] for g in K])
        return frozenset(pts[i] for i in out)
    return frozenset(A.checked(g, a, b) for g in K for a in S for b in S)


def _expand_generic(A, S: set, delta, K, first_only=False) -> list:
    new = []
    seen = set()
    for d in delta:
        for m in S:
            for g in K:
                for v in (A.checked(g, d, m), A.checked(g, m, d)):
                    if v not in S and v not in seen:
                        if first_only:
                            return [v]
                        seen.add(v)
                        new.append(v)
    return new


@dataclass(frozen=True)
class OrbitLayers:
    """The chain G^1(x,x) <= G^2(x,x) <= ...

    When ``converged`` is set the last two layers are equal and
    ``depth_reached`` is the first n with G^n(x,x) bi-invariant.
    """

    base: Any
    layers: tuple
    converged: bool
    depth_reached: int

    @property
    def sizes(self) -> list[int]:
        return [len(L) for L in self.layers]

    @property
    def last(self) -> frozenset:
        return self.layers[-1]

    @property
    def orbit(self) -> frozenset | None:
        return self.layers[self.depth_reached - 1] if self.converged else None


def orbit_layers(A: BinaryAction, x, max_depth: int = DEFAULT_MAX_DEPTH) -> OrbitLayers:
    """Layers G^n(x,x) for n <= max_depth, stopping at the first fixpoint.

    Each layer only evaluates pairs touching the points new in the previous
    layer; since the identity acts by e(a, b) = b, older pairs add nothing.
    """
    if max_depth < 1:
        raise DomainError("max_depth must be at least 1")
    if x not in A.carrier:
        raise DomainError(f"{x!r} is not a carrier point")
    K = _acting(A, None)
    layers = []

    if _use_table(A, [x]):
        T, idx, pts = A.table, A.carrier.index, A.carrier.points
        ks = np.array([A.group_index[g] for g in K], dtype=np.int32)
        mask = np.zeros(len(pts), dtype=np.uint8)
        mask[idx[x]] = 1
        delta = np.array([idx[x]], dtype=np.int32)

        def step(first_only=False):
            return kernels.expand(T, mask, delta, ks, first_only)

        def grow(new):
            nonlocal delta
            mask[new] = 1
            delta = new.astype(np.int32)
            return frozenset(pts[i] for i in np.flatnonzero(mask))
    else:
        S = {x}
        delta = [x]

        def step(first_only=False):
            return _expand_generic(A, S, delta, K, first_only)

        def grow(new):
            nonlocal delta
            S.update(new)
            delta = list(new)
            return frozenset(S)

    for n in range(1, max_depth + 1):
        new = step()
        if n >= 2 and len(new) == 0:
            layers.append(layers[-1])
            return OrbitLayers(x, tuple(layers), True, n - 1)
        layers.append(grow(new))
    if len(step(first_only=True)) == 0:
        layers.append(layers[-1])
        return OrbitLayers(x, tuple(layers), True, max_depth)
    return OrbitLayers(x, tuple(layers), False, max_depth)


@dataclass(frozen=True)
class PointImage:
    """G(x, x) kept symbolic, for acting groups that cannot be enumerated."""

    point: Any


def bi_invariance_witness(A: BinaryAction, S):
    """First (g, a1, a2, value) with value = g(a1, a2) outside S, or None.

    For a ``PointImage`` over a non-enumerable group the search runs over
    pairs a1 = h1(x,x), a2 = h2(x,x) with g, h1, h2 drawn from
    ``group.samples``, using the action's ``image_member`` test.
    """
    if isinstance(S, PointImage):
        x = S.point
        if A.group.elements is not None:
            return bi_invariance_witness(A, image_set(A, {x}))
        member = getattr(A, "image_member", None)
        if member is None:
            raise UnsupportedInstance(f"{A.name} has no membership test for G(x,x)")
        hs = A.group.samples
        for h, h1, h2 in product(hs, hs, hs):
            a1, a2 = A(h1, x, x), A(h2, x, x)
            y = A(h, a1, a2)
            if not member(x, y):
                return (h, a1, a2, y)
        return None

    S = frozenset(S)
    K = _acting(A, None)
    if _use_table(A, S):
        idx, pts = A.carrier.index, A.carrier.points
        mask = np.zeros(len(pts), dtype=np.uint8)
        for p in S:
            mask[idx[p]] = 1
        ks = np.array([A.group_index[g] for g in K], dtype=np.int32)
        members = np.flatnonzero(mask).astype(np.int32)
        if len(kernels.expand(A.table, mask, members, ks, True)) == 0:
            return None
    for g in K:
        for a, b in product(ordered(A, S), repeat=2):
            v = A.checked(g, a, b)
            if v not in S:
                return (g, a, b, v)
    return None


def is_bi_invariant(A: BinaryAction, S) -> bool:
    """G(S, S) = S.

    A symbolic ``PointImage`` over a non-enumerable group is decided by
    searching sampled witnesses; the answer "bi-invariant" is only returned
    when the action declares its sample grid decisive.
    """
    w = bi_invariance_witness(A, S)
    if w is not None:
        return False
    if isinstance(S, PointImage) and A.group.elements is None:
        if not getattr(A, "sample_grid_exact", False):
            raise UnsupportedInstance("no witness among samples, and the sample grid is not decisive")
    return True


@dataclass(frozen=True)
class OrbitClass:
    verdict: str  # "finitely-generated" | "undetermined"
    depth: int
    layers: OrbitLayers

    @property
    def finitely_generated(self) -> bool:
        return self.verdict == "finitely-generated"


def classify_orbit(A: BinaryAction, x, max_depth: int = DEFAULT_MAX_DEPTH) -> OrbitClass:
    """Finitely generated at the minimal n, or undetermined at the bound.

    Non-convergence never certifies an infinitely generated orbit.
    """
    L = orbit_layers(A, x, max_depth)
    if L.converged:
        return OrbitClass("finitely-generated", L.depth_reached, L)
    return OrbitClass("undetermined", max_depth, L)


@dataclass(frozen=True)
class Intersection:
    witness: Any
    depth: int
    certified_disjoint: bool = False

    @property
    def found(self) -> bool:
        return self.witness is not None


def orbits_intersect(A: BinaryAction, x, y, max_depth: int = DEFAULT_MAX_DEPTH) -> Intersection:
    """A common point of the layer unions of x and y, at the smallest depth.

    Without a witness, ``depth`` is the depth searched and
    ``certified_disjoint`` is set when both orbits converged.
    """
    if x == y:
        return Intersection(x, 0)
    Lx, Ly = orbit_layers(A, x, max_depth), orbit_layers(A, y, max_depth)
    for d in range(1, max(len(Lx.layers), len(Ly.layers)) + 1):
        a = Lx.layers[min(d, len(Lx.layers)) - 1]
        b = Ly.layers[min(d, len(Ly.layers)) - 1]
        common = a & b
        if common:
            return Intersection(ordered(A, common)[0], d)
    depth = max(Lx.depth_reached, Ly.depth_reached)
    return Intersection(None, depth, Lx.converged and Ly.converged)


def intersect_bi_invariant(A: BinaryAction, S, T) -> frozenset:
    S, T = frozenset(S), frozenset(T)
    for name, X in (("first", S), ("second", T)):
        if not is_bi_invariant(A, X):
            raise DomainError(f"the {name} set is not bi-invariant")
    return S & T


def find_union_violation(A: BinaryAction, max_depth: int = DEFAULT_MAX_DEPTH):
    """Two orbits whose union is not bi-invariant, as (S, T, witness), or None.

    Searches pairs of converged orbits of carrier points in canonical order.
    """
    orbits = []
    for x in A.carrier.points:
        L = orbit_layers(A, x, max_depth)
        if L.converged and L.orbit not in orbits:
            orbits.append(L.orbit)
    for i, S in enumerate(orbits):
        for T in orbits[i + 1:]:
            w = bi_invariance_witness(A, S | T)
            if w is not None:
                return S, T, w
    return None
