"""Compiled inner loops (numba).

Every routine here is deterministic: scans run in index order and ties are
resolved towards the smallest index, so results never depend on timing or
thread count.
"""
import numba as nb
import numpy as np

_jit = nb.njit(cache=True, nogil=True)


# ---------------------------------------------------------------- MST kernels

@_jit
def prim_dense(D):
    """Dense Prim from vertex 0. Returns MST edge weights in insertion order."""
    n = D.shape[0]
    out = np.empty(max(n - 1, 0))
    if n < 2:
        return out
    best = D[0].copy()
    used = np.zeros(n, np.bool_)
    used[0] = True
    for k in range(n - 1):
        bi = -1
        bv = np.inf
        for v in range(n):
            if not used[v] and best[v] < bv:
                bv = best[v]
                bi = v
        used[bi] = True
        out[k] = bv
        row = D[bi]
        for v in range(n):
            if not used[v] and row[v] < best[v]:
                best[v] = row[v]
    return out


@_jit
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@_jit
def kruskal_sorted(n, I, J, W, order):
    """Kruskal over edges visited in ``order``.

    Returns (weights, merges). ``merges < n - 1`` means the graph is disconnected
    and ``n - merges`` is its component count.
    """
    parent = np.arange(n)
    rank = np.zeros(n, np.int64)
    out = np.empty(max(n - 1, 0))
    k = 0
    for e in order:
        if k == n - 1:
            break
        a = _find(parent, I[e])
        b = _find(parent, J[e])
        if a == b:
            continue
        if rank[a] < rank[b]:
            a, b = b, a
        parent[b] = a
        if rank[a] == rank[b]:
            rank[a] += 1
        out[k] = W[e]
        k += 1
    return out[:k], k


# ------------------------------------------------------- greedy permutations

@_jit
def greedy_dense(D):
    """Farthest-point traversal over a distance matrix, starting at index 0."""
    n = D.shape[0]
    order = np.empty(n, np.int64)
    radii = np.empty(n)
    order[0] = 0
    radii[0] = np.inf
    md = D[0].copy()
    done = np.zeros(n, np.bool_)
    done[0] = True
    for k in range(1, n):
        bi = -1
        bv = -1.0
        for q in range(n):
            if not done[q] and md[q] > bv:
                bv = md[q]
                bi = q
        order[k] = bi
        radii[k] = bv
        done[bi] = True
        row = D[bi]
        for q in range(n):
            if not done[q] and row[q] < md[q]:
                md[q] = row[q]
    return order, radii


@_jit
def _dist(X, a, b):
    s = 0.0
    for t in range(X.shape[1]):
        z = X[a, t] - X[b, t]
        s += z * z
    return np.sqrt(s)


@_jit
def build_kdtree(X, leaf_size):
    """Median-split KD-tree. Node ranges index into the returned permutation."""
    n, d = X.shape
    idx = np.arange(n)
    cap = 2 * n + 1
    start = np.empty(cap, np.int64)
    end = np.empty(cap, np.int64)
    left = np.full(cap, -1, np.int64)
    right = np.full(cap, -1, np.int64)
    lo = np.empty((cap, d))
    hi = np.empty((cap, d))
    start[0] = 0
    end[0] = n
    n_nodes = 1
    stack = np.empty(cap, np.int64)
    sp = 0
    stack[sp] = 0
    sp += 1
    while sp > 0:
        sp -= 1
        node = stack[sp]
        s = start[node]
        e = end[node]
        for t in range(d):
            mn = np.inf
            mx = -np.inf
            for k in range(s, e):
                v = X[idx[k], t]
                if v < mn:
                    mn = v
                if v > mx:
                    mx = v
            lo[node, t] = mn
            hi[node, t] = mx
        if e - s <= leaf_size:
            continue
        dim = 0
        spread = -1.0
        for t in range(d):
            if hi[node, t] - lo[node, t] > spread:
                spread = hi[node, t] - lo[node, t]
                dim = t
        if spread <= 0.0:
            continue
        sub = idx[s:e].copy()
        keys = np.empty(e - s)
        for k in range(e - s):
            keys[k] = X[sub[k], dim]
        perm = np.argsort(keys, kind="mergesort")
        for k in range(e - s):
            idx[s + k] = sub[perm[k]]
        mid = (s + e) // 2
        l = n_nodes
        r = n_nodes + 1
        n_nodes += 2
        start[l] = s
        end[l] = mid
        start[r] = mid
        end[r] = e
        left[node] = l
        right[node] = r
        stack[sp] = l
        sp += 1
        stack[sp] = r
        sp += 1
    return idx, start[:n_nodes], end[:n_nodes], left[:n_nodes], right[:n_nodes], lo[:n_nodes], hi[:n_nodes]


@_jit
def _box_dist2(lo, hi, node, X, c):
    s = 0.0
    for t in range(X.shape[1]):
        x = X[c, t]
        if x < lo[node, t]:
            z = lo[node, t] - x
            s += z * z
        elif x > hi[node, t]:
            z = x - hi[node, t]
            s += z * z
    return s


@_jit
def _seg_better(val, a, b):
    # larger value wins; equal values go to the smaller index
    if a < 0:
        return b
    if b < 0:
        return a
    if val[a] > val[b] or (val[a] == val[b] and a < b):
        return a
    return b


@_jit
def _seg_update(seg, val, leaf):
    p = leaf // 2
    while p >= 1:
        seg[p] = _seg_better(val, seg[2 * p], seg[2 * p + 1])
        p //= 2


@_jit
def greedy_points(X, idx, start, end, left, right, lo, hi):
    """Farthest-point traversal over coordinates (euclidean), starting at 0.

    Identical semantics to ``greedy_dense`` but only revisits points inside a
    ball of the current insertion radius, found through the KD-tree. A
    segment tree over the running nearest-centre distances yields the argmax.
    """
    n = X.shape[0]
    order = np.empty(n, np.int64)
    radii = np.empty(n)
    md = np.empty(n)
    for q in range(n):
        md[q] = _dist(X, q, 0)
    md[0] = -1.0
    order[0] = 0
    radii[0] = np.inf

    size = 1
    while size < n:
        size *= 2
    seg = np.full(2 * size, -1, np.int64)
    for q in range(n):
        seg[size + q] = q
    for p in range(size - 1, 0, -1):
        seg[p] = _seg_better(md, seg[2 * p], seg[2 * p + 1])

    stack = np.empty(left.shape[0] + 1, np.int64)
    for k in range(1, n):
        c = seg[1]
        lam = md[c]
        order[k] = c
        radii[k] = lam
        md[c] = -1.0
        seg[size + c] = c
        _seg_update(seg, md, size + c)
        r2 = lam * lam
        sp = 0
        stack[sp] = 0
        sp += 1
        while sp > 0:
            sp -= 1
            node = stack[sp]
            if _box_dist2(lo, hi, node, X, c) > r2:
                continue
            if left[node] < 0:
                for kk in range(start[node], end[node]):
                    q = idx[kk]
                    if md[q] <= 0.0:
                        continue
                    dq = _dist(X, q, c)
                    if dq < md[q]:
                        md[q] = dq
                        _seg_update(seg, md, size + q)
            else:
                stack[sp] = left[node]
                sp += 1
                stack[sp] = right[node]
                sp += 1
    return order, radii


# ------------------------------------------------------- sparse Rips edges

@_jit
def _edge_weight(d, tp, tq):
    m = min(tp, tq)
    if d <= 2.0 * m:
        return d
    return 2.0 * (d - m)


@_jit
def _grow(a, cnt):
    b = np.empty(max(2 * a.shape[0], 16), a.dtype)
    b[:cnt] = a[:cnt]
    return b


@_jit
def sparse_edges_dense(D, T):
    """All pairs i < j with D[i,j] <= T[i] + T[j], with sparse filtration weights."""
    n = D.shape[0]
    I = np.empty(4 * n + 16, np.int64)
    J = np.empty(4 * n + 16, np.int64)
    W = np.empty(4 * n + 16)
    cnt = 0
    for i in range(n):
        for j in range(i + 1, n):
            d = D[i, j]
            if d <= T[i] + T[j]:
                if cnt == I.shape[0]:
                    I = _grow(I, cnt)
                    J = _grow(J, cnt)
                    W = _grow(W, cnt)
                I[cnt] = i
                J[cnt] = j
                W[cnt] = _edge_weight(d, T[i], T[j])
                cnt += 1
    return I[:cnt], J[:cnt], W[:cnt]


@_jit
def sparse_edges_points(X, T, rank, idx, start, end, left, right, lo, hi):
    """Point-cloud counterpart of ``sparse_edges_dense`` using ball queries.

    For each p only partners inserted later are considered; their caps are no
    larger than p's, so a ball of radius 2*T[p] contains every candidate.
    """
    n = X.shape[0]
    I = np.empty(4 * n + 16, np.int64)
    J = np.empty(4 * n + 16, np.int64)
    W = np.empty(4 * n + 16)
    cnt = 0
    stack = np.empty(left.shape[0] + 1, np.int64)
    for p in range(n):
        r = 2.0 * T[p]
        r2 = r * r
        sp = 0
        stack[sp] = 0
        sp += 1
        while sp > 0:
            sp -= 1
            node = stack[sp]
            if _box_dist2(lo, hi, node, X, p) > r2:
                continue
            if left[node] < 0:
                for kk in range(start[node], end[node]):
                    q = idx[kk]
                    if rank[q] <= rank[p]:
                        continue
                    d = _dist(X, p, q)
                    if d <= T[p] + T[q]:
                        if cnt == I.shape[0]:
                            I = _grow(I, cnt)
                            J = _grow(J, cnt)
                            W = _grow(W, cnt)
                        I[cnt] = min(p, q)
                        J[cnt] = max(p, q)
                        W[cnt] = _edge_weight(d, T[p], T[q])
                        cnt += 1
            else:
                stack[sp] = left[node]
                sp += 1
                stack[sp] = right[node]
                sp += 1
    return I[:cnt], J[:cnt], W[:cnt]
