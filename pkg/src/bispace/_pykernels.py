"""Reference kernels over tabulated binary actions (numpy, no compiled code).

A tabulated action is an int32 array ``T`` of shape ``(ng, nx, nx)`` with
``T[g, x1, x2]`` the carrier index of ``g(x1, x2)``. Group and carrier
elements are indices into canonical orderings. ``_ckernels`` implements the
same functions with the same results.
"""
import numpy as np


def expand(T, mask, delta, ks, first_only=False):
    """Points of K(S, S) outside S coming from pairs that touch ``delta``.

    ``mask`` flags the members of S; ``delta`` must be a subset of S.
    Returns sorted new indices; with ``first_only`` any nonempty result
    means "S is not closed" and may be truncated.
    """
    members = np.flatnonzero(mask)
    delta = np.asarray(delta, dtype=np.intp)
    ks = np.asarray(ks, dtype=np.intp)
    if delta.size == 0 or ks.size == 0:
        return np.empty(0, dtype=np.int64)
    a = T[np.ix_(ks, delta, members)].ravel()
    b = T[np.ix_(ks, members, delta)].ravel()
    vals = np.unique(np.concatenate([a, b]))
    new = vals[mask[vals] == 0].astype(np.int64)
    if first_only:
        return new[:1]
    return new


def image(T, members, ks):
    members = np.asarray(members, dtype=np.intp)
    ks = np.asarray(ks, dtype=np.intp)
    if members.size == 0 or ks.size == 0:
        return np.empty(0, dtype=np.int64)
    return np.unique(T[np.ix_(ks, members, members)]).astype(np.int64)


def axiom_scan(T, M, e, limit=0):
    """Violations of gh(x1,x2) = g(x1, h(x1,x2)) and e(x1,x2) = x2.

    ``M`` is the acting group's table on indices. Violations are listed in
    lexicographic order, at most ``limit`` of each kind (0 = all).
    """
    ng, nx, _ = T.shape
    eq1 = []
    rows = np.arange(nx)[:, None]
    for g in range(ng):
        for h in range(ng):
            lhs = T[M[g, h]]
            rhs = T[g][rows, T[h]]
            bad = np.flatnonzero((lhs != rhs).ravel())
            for flat in bad:
                x1, x2 = divmod(int(flat), nx)
                eq1.append((g, h, x1, x2, int(lhs[x1, x2]), int(rhs[x1, x2])))
                if limit and len(eq1) >= limit:
                    break
            if limit and len(eq1) >= limit:
                break
        if limit and len(eq1) >= limit:
            break
    eq2 = []
    bad = np.flatnonzero((T[e] != np.arange(nx)[None, :]).ravel())
    for flat in bad[: limit or None]:
        x1, x2 = divmod(int(flat), nx)
        eq2.append((x1, x2, int(T[e, x1, x2])))
    return eq1, eq2


def distributive_scan(T):
    """First (g, h, x, x1, x2, lhs, rhs) in lexicographic order violating
    g(h(x,x1), h(x,x2)) = h(x, g(x1,x2)), or None."""
    ng, nx, _ = T.shape
    xs = np.arange(nx)[:, None, None]
    for g in range(ng):
        Tg = T[g]
        for h in range(ng):
            Th = T[h]
            lhs = Tg[Th[:, :, None], Th[:, None, :]]
            rhs = Th[xs, Tg[None, :, :]]
            diff = (lhs != rhs).ravel()
            if diff.any():
                flat = int(np.argmax(diff))
                x, rest = divmod(flat, nx * nx)
                x1, x2 = divmod(rest, nx)
                return (g, h, x, x1, x2, int(lhs[x, x1, x2]), int(rhs[x, x1, x2]))
    return None
