"""Pure-Python reference implementations of the hot kernels.

Same contracts as the compiled extension in `_kernels.pyx`; selected as a
fallback when the extension is not built (or forced via TDAKIT_BACKEND).
"""
from __future__ import annotations


def _symdiff(a, b):
    """Symmetric difference of two ascending integer lists (Z/2 column add)."""
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x < y:
            out.append(x)
            i += 1
        elif x > y:
            out.append(y)
            j += 1
        else:
            i += 1
            j += 1
    if i < na:
        out.extend(a[i:])
    if j < nb:
        out.extend(b[j:])
    return out


def reduce_lows(dims, col_ptr, col_rows):
    """Column reduction of a Z/2 boundary matrix with the clearing (twist)
    optimization.

    Columns are given in CSR-like form: column j holds the ascending row
    indices col_rows[col_ptr[j]:col_ptr[j+1]].  Columns must appear in
    filtration order and every row index of column j must be < j.

    Returns lows: lows[j] = final pivot row of column j, or -1 when the
    column reduces to zero.  Pairs (lows[j], j) are the persistence pairs;
    zero columns whose index is never a pivot are essential classes.

    Dimensions are processed in decreasing order so that when column j
    acquires pivot i, column i is cleared without reduction (it must reduce
    to zero).
    """
    dims = [int(d) for d in dims]
    col_ptr = [int(p) for p in col_ptr]
    col_rows = [int(r) for r in col_rows]
    n = len(dims)
    cols = [col_rows[col_ptr[j] : col_ptr[j + 1]] for j in range(n)]
    lows = [-1] * n
    owner = [-1] * n  # pivot row -> column owning it
    cleared = [False] * n
    maxdim = max(dims, default=0)
    for d in range(maxdim, 0, -1):
        for j in range(n):
            if dims[j] != d or cleared[j]:
                continue
            col = cols[j]
            while col:
                k = owner[col[-1]]
                if k < 0:
                    break
                col = _symdiff(col, cols[k])
            cols[j] = col
            if col:
                piv = col[-1]
                owner[piv] = j
                lows[j] = piv
                cleared[piv] = True
    return lows


def max_matching_under(cost, thresh):
    """Size of a maximum bipartite matching using only edges (u, v) with
    cost[u][v] <= thresh.  Hopcroft-Karp; the graph is scanned from the dense
    cost matrix and the augmenting DFS is iterative."""
    nl = len(cost)
    nr = len(cost[0]) if nl else 0
    if nl == 0 or nr == 0:
        return 0
    INF = nl + nr + 1
    match_l = [-1] * nl
    match_r = [-1] * nr
    dist = [0] * nl
    next_v = [0] * nl
    edge_v = [-1] * nl
    size = 0
    while True:
        queue = []
        for u in range(nl):
            if match_l[u] < 0:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = False
        qh = 0
        while qh < len(queue):
            u = queue[qh]
            qh += 1
            row = cost[u]
            for v in range(nr):
                if row[v] <= thresh:
                    w = match_r[v]
                    if w < 0:
                        found = True
                    elif dist[w] == INF:
                        dist[w] = dist[u] + 1
                        queue.append(w)
        if not found:
            return size

        for u in range(nl):
            if match_l[u] >= 0:
                continue
            stack = [u]
            next_v[u] = 0
            augmented = False
            while stack and not augmented:
                w = stack[-1]
                descended = False
                row = cost[w]
                v = next_v[w]
                while v < nr:
                    if row[v] <= thresh:
                        t = match_r[v]
                        if t < 0:
                            match_r[v] = w
                            match_l[w] = v
                            stack.pop()
                            while stack:
                                p = stack.pop()
                                vp = edge_v[p]
                                match_r[vp] = p
                                match_l[p] = vp
                            augmented = True
                            size += 1
                            break
                        if dist[t] == dist[w] + 1:
                            next_v[w] = v + 1
                            edge_v[w] = v
                            stack.append(t)
                            next_v[t] = 0
                            descended = True
                            break
                    v += 1
                if augmented or descended:
                    continue
                dist[w] = INF
                stack.pop()
