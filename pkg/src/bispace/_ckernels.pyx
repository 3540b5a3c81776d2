# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels over tabulated binary actions.

Same contracts as ``bispace._pykernels``; see there for the table layout.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def expand(const int[:, :, ::1] T, const unsigned char[::1] mask, delta, ks, bint first_only=False):
    cdef const int[::1] d = np.ascontiguousarray(delta, dtype=np.int32)
    cdef const int[::1] k = np.ascontiguousarray(ks, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] mem_arr = np.flatnonzero(mask).astype(np.int32)
    cdef const int[::1] mem = mem_arr
    cdef Py_ssize_t nx = T.shape[1]
    cdef unsigned char[::1] seen = np.array(mask, dtype=np.uint8, copy=True)
    cdef Py_ssize_t i, j, q, nd = d.shape[0], nm = mem.shape[0], nk = k.shape[0]
    cdef int a, b, g, v
    out = []
    for i in range(nd):
        a = d[i]
        for j in range(nm):
            b = mem[j]
            for q in range(nk):
                g = k[q]
                v = T[g, a, b]
                if not seen[v]:
                    seen[v] = 1
                    out.append(v)
                    if first_only:
                        return np.array(out, dtype=np.int64)
                v = T[g, b, a]
                if not seen[v]:
                    seen[v] = 1
                    out.append(v)
                    if first_only:
                        return np.array(out, dtype=np.int64)
    return np.sort(np.array(out, dtype=np.int64))


def image(const int[:, :, ::1] T, members, ks):
    cdef const int[::1] m = np.ascontiguousarray(members, dtype=np.int32)
    cdef const int[::1] k = np.ascontiguousarray(ks, dtype=np.int32)
    cdef Py_ssize_t nx = T.shape[1]
    cdef unsigned char[::1] hit = np.zeros(nx, dtype=np.uint8)
    cdef Py_ssize_t i, j, q
    for q in range(k.shape[0]):
        for i in range(m.shape[0]):
            for j in range(m.shape[0]):
                hit[T[k[q], m[i], m[j]]] = 1
    return np.flatnonzero(np.asarray(hit)).astype(np.int64)


def axiom_scan(const int[:, :, ::1] T, const int[:, ::1] M, int e, Py_ssize_t limit=0):
    cdef Py_ssize_t ng = T.shape[0], nx = T.shape[1]
    cdef Py_ssize_t g, h, x1, x2
    cdef int lhs, rhs, gh
    eq1 = []
    for g in range(ng):
        for h in range(ng):
            gh = M[g, h]
            for x1 in range(nx):
                for x2 in range(nx):
                    lhs = T[gh, x1, x2]
                    rhs = T[g, x1, T[h, x1, x2]]
                    if lhs != rhs:
                        eq1.append((g, h, x1, x2, lhs, rhs))
                        if limit and len(eq1) >= limit:
                            break
                if limit and len(eq1) >= limit:
                    break
            if limit and len(eq1) >= limit:
                break
        if limit and len(eq1) >= limit:
            break
    eq2 = []
    for x1 in range(nx):
        for x2 in range(nx):
            if T[e, x1, x2] != x2:
                if limit and len(eq2) >= limit:
                    break
                eq2.append((x1, x2, T[e, x1, x2]))
    return eq1, eq2


def distributive_scan(const int[:, :, ::1] T):
    cdef Py_ssize_t ng = T.shape[0], nx = T.shape[1]
    cdef Py_ssize_t g, h, x, x1, x2
    cdef int lhs, rhs
    for g in range(ng):
        for h in range(ng):
            for x in range(nx):
                for x1 in range(nx):
                    for x2 in range(nx):
                        lhs = T[g, T[h, x, x1], T[h, x, x2]]
                        rhs = T[h, x, T[g, x1, x2]]
                        if lhs != rhs:
                            return (g, h, x, x1, x2, lhs, rhs)
    return None
