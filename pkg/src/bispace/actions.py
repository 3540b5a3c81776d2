"""Binary actions g(x1, x2) of a group on a carrier, and ordinary actions gx.

Acting groups are duck-typed: anything with ``identity``, ``mul``, ``inv``,
``__contains__``, ``elements`` (tuple, or None when not enumerable),
``samples`` and ``label`` works. ``Subgroup`` (finite tables),
``MatrixGroup`` and ``WordGroup`` all qualify.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Any, Callable

import numpy as np

from bispace import kernels
from bispace.errors import CarrierEscape, DomainError
from bispace.groups import FiniteGroup, Subgroup
from bispace.matrix import UPPER_UNITRIANGULAR, WHOLE_GL2

FINITE_SET = "finite-set"
MATRIX_SET = "matrix-set"
WORD_SET = "word-set"


@dataclass(frozen=True, eq=False)
class Carrier:
    """The space an action moves.

    ``points`` enumerates the carrier when ``exhaustive`` is set; otherwise
    it is a finite sample of a larger universe recognized by ``universe``.
    """

    kind: str
    points: tuple
    universe: Callable[[Any], bool] | None = None
    exhaustive: bool = True
    labeler: Callable[[Any], str] = str

    @classmethod
    def of_group(cls, G: FiniteGroup) -> Carrier:
        return cls(FINITE_SET, tuple(G), labeler=G.names.__getitem__)

    @cached_property
    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    def __contains__(self, p) -> bool:
        if self.universe is not None:
            return self.universe(p)
        try:
            return p in self.index
        except TypeError:
            return False

    def __len__(self):
        return len(self.points)

    def label(self, p) -> str:
        return self.labeler(p)


class BinaryAction:
    """A map (g, x1, x2) -> g(x1, x2).

    ``memo`` caches evaluations by argument triple; the cache is a plain
    dict, so concurrent readers see either a miss or a finished value.
    """

    def __init__(self, group, carrier: Carrier, fn: Callable, name: str = "action",
                 memo: bool = False):
        self.group = group
        self.carrier = carrier
        self.fn = fn
        self.name = name
        self._memo = {} if memo else None

    def __call__(self, g, x1, x2):
        if g not in self.group:
            raise DomainError(f"{self.label_g(g)} is not in the acting group of {self.name}")
        if self._memo is None:
            return self.fn(g, x1, x2)
        key = (g, x1, x2)
        try:
            return self._memo[key]
        except KeyError:
            v = self._memo[key] = self.fn(g, x1, x2)
            return v

    apply = __call__

    def checked(self, g, x1, x2):
        """Evaluate and raise CarrierEscape if the value leaves the carrier."""
        v = self(g, x1, x2)
        if v not in self.carrier:
            raise CarrierEscape(g, x1, x2, v)
        return v

    def label_g(self, g) -> str:
        return self.group.label(g)

    def label(self, p) -> str:
        return self.carrier.label(p)

    @property
    def tabulable(self) -> bool:
        return self.group.elements is not None and self.carrier.exhaustive

    @cached_property
    def group_index(self) -> dict:
        return {g: i for i, g in enumerate(self.group.elements)}

    @cached_property
    def table(self) -> np.ndarray:
        """``T[i, j, k]`` = carrier index of g_i(x_j, x_k); needs a finite instance."""
        if not self.tabulable:
            raise DomainError(f"{self.name} is not finite; it cannot be tabulated")
        pts, idx = self.carrier.points, self.carrier.index
        gs = self.group.elements
        T = np.empty((len(gs), len(pts), len(pts)), dtype=np.int32)
        for i, g in enumerate(gs):
            for j, a in enumerate(pts):
                for k, b in enumerate(pts):
                    v = self.fn(g, a, b)
                    try:
                        T[i, j, k] = idx[v]
                    except (KeyError, TypeError):
                        raise CarrierEscape(g, a, b, v) from None
        T.setflags(write=False)
        return T

    @cached_property
    def group_table(self) -> np.ndarray:
        gs, gi = self.group.elements, self.group_index
        M = np.array([[gi[self.group.mul(a, b)] for b in gs] for a in gs], dtype=np.int32)
        M.setflags(write=False)
        return M

    def __repr__(self):
        return f"BinaryAction({self.name})"


class UnaryAction:
    """An ordinary action (g, x) -> gx."""

    def __init__(self, group, carrier: Carrier, fn: Callable, name: str = "action"):
        self.group = group
        self.carrier = carrier
        self.fn = fn
        self.name = name

    def __call__(self, g, x):
        if g not in self.group:
            raise DomainError(f"{self.group.label(g)} is not in the acting group of {self.name}")
        return self.fn(g, x)

    apply = __call__

    def __repr__(self):
        return f"UnaryAction({self.name})"


# -- axiom verification -----------------------------------------------


@dataclass(frozen=True)
class Violation:
    g: Any
    h: Any
    x1: Any
    x2: Any
    lhs: Any
    rhs: Any


@dataclass(frozen=True)
class AxiomReport:
    eq1_violations: list = field(default_factory=list)
    eq2_violations: list = field(default_factory=list)
    exhaustive: bool = True

    @property
    def ok(self) -> bool:
        return not self.eq1_violations and not self.eq2_violations


def verify_axioms(A: BinaryAction, limit: int = 0) -> AxiomReport:
    """Check gh(x1,x2) = g(x1, h(x1,x2)) and e(x1,x2) = x2.

    Exhaustive for finite instances; otherwise over ``group.samples`` and the
    sampled carrier points. Escapes raise ``CarrierEscape`` instead of being
    reported as violations. ``limit`` caps each violation list (0 = all).
    """
    grp = A.group
    if A.tabulable:
        T = A.table
        gs, pts = grp.elements, A.carrier.points
        e = A.group_index[grp.identity]
        eq1, eq2 = kernels.axiom_scan(T, A.group_table, e, limit)
        return AxiomReport(
            [Violation(gs[g], gs[h], pts[a], pts[b], pts[l], pts[r]) for g, h, a, b, l, r in eq1],
            [Violation(grp.identity, None, pts[a], pts[b], pts[v], pts[b]) for a, b, v in eq2],
            True,
        )

    gs, pts = grp.samples, A.carrier.points
    eq1, eq2 = [], []
    for g, h in product(gs, gs):
        gh = grp.mul(g, h)
        for a, b in product(pts, pts):
            lhs = A.checked(gh, a, b)
            inner = A.checked(h, a, b)
            rhs = A.checked(g, a, inner)
            if lhs != rhs and (not limit or len(eq1) < limit):
                eq1.append(Violation(g, h, a, b, lhs, rhs))
    for a, b in product(pts, pts):
        v = A.checked(grp.identity, a, b)
        if v != b and (not limit or len(eq2) < limit):
            eq2.append(Violation(grp.identity, None, a, b, v, b))
    return AxiomReport(eq1, eq2, False)


def verify_unary_axioms(U: UnaryAction) -> list:
    """Triples (g, h, x) violating (gh)x = g(hx), and (e, None, x) for ex != x."""
    grp = U.group
    gs = grp.elements if grp.elements is not None else grp.samples
    bad = []
    for g, h in product(gs, gs):
        for x in U.carrier.points:
            if U(grp.mul(g, h), x) != U(g, U(h, x)):
                bad.append((g, h, x))
    bad += [(grp.identity, None, x) for x in U.carrier.points if U(grp.identity, x) != x]
    return bad


# -- constructors ------------------------------------------------------


def _ambient(H):
    """Default carrier for conjugation actions: the group containing H."""
    if isinstance(H, Subgroup):
        return Carrier.of_group(H.parent)
    raise DomainError("a carrier must be given for acting groups without a finite parent")


def conjugation_action_I(H, carrier: Carrier | None = None) -> BinaryAction:
    """h(x1, x2) = x1^-1 h x1 x2."""
    carrier = carrier or _ambient(H)
    mul, inv = H.mul, H.inv

    @lru_cache(maxsize=1 << 16)
    def conj(h, x1):
        return mul(mul(inv(x1), h), x1)

    def fn(h, x1, x2):
        return mul(conj(h, x1), x2)

    A = BinaryAction(H, carrier, fn, name="conjugation_I")
    # y in H(x,x)  <=>  x y x^-1 x^-1 in H
    A.image_member = lambda x, y: mul(mul(mul(x, y), inv(x)), inv(x)) in H
    # For H = {[[1,t],[0,1]]}, membership of h(h1(x,x), h2(x,x)) in H(x,x)
    # is a polynomial condition of degree <= 2 in each of the parameters of
    # h, h1, h2; the 4-point sample grid therefore decides it. For H = GL(2)
    # every value lies in H(x,x) = GL(2).
    A.sample_grid_exact = getattr(H, "kind", None) in (UPPER_UNITRIANGULAR, WHOLE_GL2)
    return A


def conjugation_action_II(H, carrier: Carrier | None = None) -> BinaryAction:
    """h(x, y) = x h x^-1 y."""
    carrier = carrier or _ambient(H)
    mul, inv = H.mul, H.inv

    @lru_cache(maxsize=1 << 16)
    def conj(h, x):
        return mul(mul(x, h), inv(x))

    def fn(h, x, y):
        return mul(conj(h, x), y)

    return BinaryAction(H, carrier, fn, name="conjugation_II")


def induced_action(U: UnaryAction) -> BinaryAction:
    """g(x1, x2) = g x2."""
    fn = U.fn
    return BinaryAction(U.group, U.carrier, lambda g, x1, x2: fn(g, x2), name=f"induced[{U.name}]")


def trivial_action(group, carrier: Carrier) -> BinaryAction:
    return BinaryAction(group, carrier, lambda g, x1, x2: x2, name="trivial")


def table_action(group, points, values, labels=None) -> BinaryAction:
    """Action given explicitly: ``values[i][j][k]`` is the index of
    g_i(x_j, x_k) in ``points``, with g_i = ``group.elements[i]``.

    Out-of-range entries are kept as raw indices so that evaluation reports
    them as carrier escapes.
    """
    pts = tuple(points)
    gs = group.elements
    vals = [[[int(v) for v in row] for row in plane] for plane in values]
    if len(vals) != len(gs) or any(len(p) != len(pts) or any(len(r) != len(pts) for r in p)
                                   for p in vals):
        raise DomainError(f"action table must have shape ({len(gs)}, {len(pts)}, {len(pts)})")
    gi = {g: i for i, g in enumerate(gs)}
    pi = {p: i for i, p in enumerate(pts)}

    def fn(g, a, b):
        v = vals[gi[g]][pi[a]][pi[b]]
        return pts[v] if 0 <= v < len(pts) else ("escape", v)

    labeler = (lambda p: labels[pi[p]]) if labels else str
    return BinaryAction(group, Carrier(FINITE_SET, pts, labeler=labeler), fn, name="table")


def left_translation(G: FiniteGroup) -> UnaryAction:
    return UnaryAction(G.whole, Carrier.of_group(G), G.mul, name=f"left translation of {G.name}")


def trivial_unary(G: FiniteGroup, points=(0,)) -> UnaryAction:
    return UnaryAction(G.whole, Carrier(FINITE_SET, tuple(points)), lambda g, x: x,
                       name=f"trivial action of {G.name}")


def coset_action(G: FiniteGroup, K: Subgroup) -> UnaryAction:
    """G acting on its left cosets of K by left multiplication.

    Points are the cosets, each as a frozenset of element ids; the kernel is
    the core of K.
    """
    from bispace.groups import left_cosets

    cosets = tuple(left_cosets(G, K))
    owner = {g: c for c in cosets for g in c}
    rep = {c: min(c) for c in cosets}

    def fn(g, c):
        return owner[G.mul(g, rep[c])]

    def labeler(c):
        return G.names[rep[c]] + "K"

    return UnaryAction(G.whole, Carrier(FINITE_SET, cosets, labeler=labeler), fn,
                       name=f"{G.name} on cosets of order-{K.order} subgroup")


def natural_g_square(A: BinaryAction) -> UnaryAction:
    """g . (x1, x2) = (x1, g(x1, x2)) on X x X."""
    pts = tuple(product(A.carrier.points, repeat=2))
    inner = A.carrier

    def universe(p):
        return isinstance(p, tuple) and len(p) == 2 and p[0] in inner and p[1] in inner

    def labeler(p):
        return f"({inner.label(p[0])}, {inner.label(p[1])})"

    carrier = Carrier(A.carrier.kind, pts, universe, A.carrier.exhaustive, labeler)
    return UnaryAction(A.group, carrier, lambda g, p: (p[0], A.fn(g, p[0], p[1])),
                       name=f"G-square[{A.name}]")


def kernel(U: UnaryAction):
    """Elements fixing every carrier point; a Subgroup for finite-table groups."""
    if U.group.elements is None:
        raise DomainError("kernel needs an enumerable acting group")
    ker = frozenset(g for g in U.group.elements if all(U.fn(g, x) == x for x in U.carrier.points))
    if isinstance(U.group, Subgroup):
        return Subgroup(U.group.parent, ker)
    return ker


def is_effective(U: UnaryAction) -> bool:
    return len(kernel(U)) == 1


def is_invariant(U: UnaryAction, S) -> bool:
    S = frozenset(S)
    gs = U.group.elements if U.group.elements is not None else U.group.samples
    return all(U.fn(g, s) in S for g in gs for s in S)
