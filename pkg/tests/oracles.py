"""Brute-force reference computations used to derive expected values.

Nothing here touches the package's kernels, orbit engine or law checker;
actions are only evaluated through their plain ``fn``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product


# -- permutations -------------------------------------------------------

def compose(p, q):
    """(p q)(i) = p(q(i)), 0-based tuples."""
    return tuple(p[i] for i in q)


def perm_inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def symmetric_perms(n):
    return list(permutations(range(n)))


def closure(gens, mul, identity):
    S = {identity}
    changed = True
    while changed:
        changed = False
        for a in list(S):
            for g in gens:
                v = mul(a, g)
                if v not in S:
                    S.add(v)
                    changed = True
    return S


# -- finite groups given as (elements, mul, inv) --------------------------

def normalizer(elems, mul, inv, H):
    H = set(H)
    return {g for g in elems if {mul(mul(inv(g), h), g) for h in H} == H}


def commutator_closure(elems, mul, inv, identity):
    comms = {mul(mul(inv(a), inv(b)), mul(a, b)) for a in elems for b in elems}
    return closure(comms, mul, identity)


def left_cosets(elems, mul, H):
    return {frozenset(mul(g, h) for h in H) for g in elems}


# -- binary actions ------------------------------------------------------

def worklist_orbit(fn, K, x):
    """Minimal set containing x and closed under (a, b) -> g(a, b)."""
    S = {x}
    work = [x]
    while work:
        a = work.pop()
        for b in list(S):
            for g in K:
                for v in (fn(g, a, b), fn(g, b, a)):
                    if v not in S:
                        S.add(v)
                        work.append(v)
    return S


def naive_layers(fn, K, x, n):
    out, S = [], {x}
    for _ in range(n):
        S = {fn(g, a, b) for g in K for a in S for b in S}
        out.append(frozenset(S))
    return out


def image(fn, K, S):
    return {fn(g, a, b) for g in K for a in S for b in S}


def bi_invariant(fn, K, S):
    return image(fn, K, S) <= set(S)


def first_distributive_failure(fn, K, X):
    """First (g, h, x, x1, x2) in the given orders with unequal sides."""
    for g, h, x, x1, x2 in product(K, K, X, X, X):
        if fn(g, fn(h, x, x1), fn(h, x, x2)) != fn(h, x, fn(g, x1, x2)):
            return (g, h, x, x1, x2)
    return None


def axiom_failures(fn, K, X, mul, e):
    bad = [(g, h, a, b) for g, h, a, b in product(K, K, X, X) if fn(mul(g, h), a, b) != fn(g, a, fn(h, a, b))]
    bad += [(e, None, a, b) for a, b in product(X, X) if fn(e, a, b) != b]
    return bad


# -- 2x2 matrices as nested lists ---------------------------------------

def mm(A, B):
    return [[sum(Fraction(A[i][k]) * B[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def minv(A):
    det = Fraction(A[0][0]) * A[1][1] - Fraction(A[0][1]) * A[1][0]
    return [[A[1][1] / det, -A[0][1] / det], [-A[1][0] / det, A[0][0] / det]]


def mat_key(A):
    return tuple(Fraction(v) for row in A for v in row)


# -- the infinite dihedral group as reduced letter strings ----------------

def reduce_letters(w: str) -> str:
    out = []
    for ch in w:
        if ch == "e":
            continue
        if out and out[-1] == ch:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def letters_inverse(w: str) -> str:
    return w[::-1]


def letters_apply(hgen: str, x1: str, x2: str) -> str:
    return reduce_letters(letters_inverse(x1) + hgen + x1 + x2)


def letters_layers(n):
    return naive_layers(letters_apply, ("", "h"), "x", n)


def letters_matrix(w: str):
    H = [[1, 0], [0, -1]]
    X = [[-1, 0], [1, 1]]
    M = [[1, 0], [0, 1]]
    for ch in w:
        M = mm(M, H if ch == "h" else X)
    return mat_key(M)
