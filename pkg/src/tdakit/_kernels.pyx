# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Z/2 boundary-matrix reduction with clearing, and
threshold bipartite matching (Hopcroft-Karp) for bottleneck feasibility.

Contracts mirror `_kernels_py.py`; both backends must produce identical
output on identical input.
"""
from libcpp.vector cimport vector

import numpy as np

ctypedef long long i64


def reduce_lows(dims, col_ptr, col_rows):
    """Column reduction with the twist/clearing optimization.

    See `_kernels_py.reduce_lows` for the full contract.  Columns live in
    C++ vectors; a column addition is a sorted symmetric-difference merge.
    """
    cdef long long[::1] dims_v = np.ascontiguousarray(dims, dtype=np.int64)
    cdef long long[::1] ptr_v = np.ascontiguousarray(col_ptr, dtype=np.int64)
    cdef long long[::1] rows_v = np.ascontiguousarray(col_rows, dtype=np.int64)
    cdef Py_ssize_t n = dims_v.shape[0]

    out = np.full(n, -1, dtype=np.int64)
    cdef long long[::1] lows = out
    if n == 0:
        return out

    cdef vector[vector[i64]] cols = vector[vector[i64]](n)
    cdef vector[i64] owner = vector[i64](n, -1)
    cdef vector[char] cleared = vector[char](n, 0)
    cdef vector[i64] tmp
    cdef Py_ssize_t i, j
    cdef long long d, maxdim = 0, piv, k
    cdef size_t a, b
    cdef vector[i64]* col
    cdef vector[i64]* other

    for j in range(n):
        cols[j].reserve(ptr_v[j + 1] - ptr_v[j])
        for i in range(ptr_v[j], ptr_v[j + 1]):
            cols[j].push_back(rows_v[i])
        if dims_v[j] > maxdim:
            maxdim = dims_v[j]

    for d in range(maxdim, 0, -1):
        for j in range(n):
            if dims_v[j] != d or cleared[j]:
                continue
            col = &cols[j]
            while col.size() > 0:
                piv = col.back()
                k = owner[piv]
                if k < 0:
                    break
                # cols[j] ^= cols[k] (both ascending)
                other = &cols[k]
                tmp.clear()
                a = 0
                b = 0
                while a < col.size() and b < other.size():
                    if col[0][a] < other[0][b]:
                        tmp.push_back(col[0][a]); a += 1
                    elif col[0][a] > other[0][b]:
                        tmp.push_back(other[0][b]); b += 1
                    else:
                        a += 1; b += 1
                while a < col.size():
                    tmp.push_back(col[0][a]); a += 1
                while b < other.size():
                    tmp.push_back(other[0][b]); b += 1
                col.swap(tmp)
            if col.size() > 0:
                piv = col.back()
                owner[piv] = j
                lows[j] = piv
                cleared[piv] = 1
    return out


def max_matching_under(cost, double thresh):
    """Maximum bipartite matching size over edges with cost <= thresh.

    See `_kernels_py.max_matching_under`.  The augmenting DFS is iterative
    (explicit stack) so long augmenting paths cannot overflow the C stack.
    """
    cdef double[:, ::1] c = np.ascontiguousarray(cost, dtype=np.float64)
    cdef Py_ssize_t nl = c.shape[0]
    cdef Py_ssize_t nr = c.shape[1]
    if nl == 0 or nr == 0:
        return 0

    cdef vector[i64] match_l = vector[i64](nl, -1)
    cdef vector[i64] match_r = vector[i64](nr, -1)
    cdef vector[i64] dist = vector[i64](nl, 0)
    cdef vector[i64] queue = vector[i64](nl, 0)
    cdef vector[i64] stack
    cdef vector[i64] next_v = vector[i64](nl, 0)
    cdef vector[i64] edge_v = vector[i64](nl, -1)
    cdef long long INF = nl + nr + 1
    cdef Py_ssize_t qh, qt
    cdef long long size = 0, u, v, w, t, p, vp
    cdef bint found, augmented, descended

    while True:
        # BFS phase: layer left vertices by alternating-path depth.
        qt = 0
        for u in range(nl):
            if match_l[u] < 0:
                dist[u] = 0
                queue[qt] = u
                qt += 1
            else:
                dist[u] = INF
        found = False
        qh = 0
        while qh < qt:
            u = queue[qh]
            qh += 1
            for v in range(nr):
                if c[u, v] <= thresh:
                    w = match_r[v]
                    if w < 0:
                        found = True
                    elif dist[w] == INF:
                        dist[w] = dist[u] + 1
                        queue[qt] = w
                        qt += 1
        if not found:
            return size

        # DFS phase: vertex-disjoint augmenting paths along the layers.
        for u in range(nl):
            if match_l[u] >= 0:
                continue
            stack.clear()
            stack.push_back(u)
            next_v[u] = 0
            augmented = False
            while stack.size() > 0 and not augmented:
                w = stack.back()
                descended = False
                v = next_v[w]
                while v < nr:
                    if c[w, v] <= thresh:
                        t = match_r[v]
                        if t < 0:
                            # Free right vertex: flip matches up the path.
                            match_r[v] = w
                            match_l[w] = v
                            stack.pop_back()
                            while stack.size() > 0:
                                p = stack.back()
                                stack.pop_back()
                                vp = edge_v[p]
                                match_r[vp] = p
                                match_l[p] = vp
                            augmented = True
                            size += 1
                            break
                        elif dist[t] == dist[w] + 1:
                            next_v[w] = v + 1
                            edge_v[w] = v
                            stack.push_back(t)
                            next_v[t] = 0
                            descended = True
                            break
                    v += 1
                if augmented or descended:
                    continue
                dist[w] = INF
                stack.pop_back()
    return size
