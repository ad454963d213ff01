"""Slow, obviously-correct reference implementations used only by the tests."""
import itertools
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def spanning_trees(n):
    """Every labeled spanning tree of K_n as rows of edge indices into triu order.

    Trees are enumerated by decoding all n^(n-2) Pruefer sequences at once.
    """
    pairs = list(itertools.combinations(range(n), 2))
    index = {p: k for k, p in enumerate(pairs)}
    if n == 2:
        return np.array([[0]])
    seqs = np.array(list(itertools.product(range(n), repeat=n - 2)), dtype=np.int64)
    m = len(seqs)
    deg = np.ones((m, n), dtype=np.int64)
    for k in range(n - 2):
        np.add.at(deg, (np.arange(m), seqs[:, k]), 1)
    lut = np.full((n, n), -1, dtype=np.int64)
    for (a, b), k in index.items():
        lut[a, b] = lut[b, a] = k
    edges = np.empty((m, n - 1), dtype=np.int64)
    rows = np.arange(m)
    for k in range(n - 2):
        leaf = np.argmax(deg == 1, axis=1)
        edges[:, k] = lut[leaf, seqs[:, k]]
        deg[rows, leaf] = 0
        deg[rows, seqs[:, k]] -= 1
    last = np.argsort(deg != 1, axis=1, kind="stable")[:, :2]
    edges[:, n - 2] = lut[last[:, 0], last[:, 1]]
    return edges


def brute_mst_weights(D):
    """Sorted edge weights of a minimum-total-weight spanning tree, by enumeration."""
    n = len(D)
    if n < 2:
        return np.empty(0)
    w = D[np.triu_indices(n, 1)]
    trees = spanning_trees(n)
    best = trees[np.argmin(w[trees].sum(axis=1))]
    return np.sort(w[best])


def brute_greedy(D):
    """Farthest-point order from index 0 by direct definition."""
    n = len(D)
    order = [0]
    radii = [np.inf]
    while len(order) < n:
        rest = [i for i in range(n) if i not in order]
        dmin = [min(D[i, j] for j in order) for i in rest]
        best = max(dmin)
        pick = rest[dmin.index(best)]  # first maximiser = smallest index
        order.append(pick)
        radii.append(best)
    return order, radii


def brute_sparse_edges(D, eps):
    """Sparse Rips edges by scanning every pair against the grow-then-freeze rule."""
    order, radii = brute_greedy(D)
    n = len(D)
    lam = np.empty(n)
    lam[order] = radii
    T = (1 + eps) / eps * lam
    out = {}
    for p in range(n):
        for q in range(p + 1, n):
            d = D[p, q]
            if d <= T[p] + T[q]:
                m = min(T[p], T[q])
                out[(p, q)] = d if d <= 2 * m else 2 * (d - m)
    return out


def landscape_on_grid(pairs, grid):
    """k-th largest tent value at every grid point: shape (len(pairs), len(grid))."""
    if not pairs:
        return np.zeros((0, len(grid)))
    tents = np.array([np.maximum(0.0, np.minimum(grid - b, d - grid)) for b, d in pairs])
    return -np.sort(-tents, axis=0)
