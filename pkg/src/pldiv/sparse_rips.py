"""(1+eps)-approximate sparse Rips 1-skeleton for fast H0 persistence.

Each point p gets a ball that grows with the scale alpha until it freezes at the
cap ``T_p = (1 + eps) / eps * lambda_p``, where ``lambda_p`` is p's insertion
radius in the greedy permutation. Two points are joined once their balls touch.
Only the 1-skeleton is built because only H0 is consumed downstream.

Both entry points accept either a ``DistanceMatrix`` (O(n^2) scans) or a
``PointCloud`` (euclidean only; KD-tree ball queries, no n x n storage).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ParameterError
from .geometry import DistanceMatrix, PointCloud
from .landscape import pldiv_closed_form
from .persistence import SparseGraph, h0_sparse

KDTREE_LEAF_SIZE = 16


@dataclass(frozen=True)
class SparseRipsParams:
    epsilon: float

    def __post_init__(self):
        if not (math.isfinite(self.epsilon) and self.epsilon > 0):
            raise ParameterError(f"epsilon must be finite and > 0, got {self.epsilon}")

    @property
    def cap_factor(self) -> float:
        return (1.0 + self.epsilon) / self.epsilon


@dataclass(frozen=True, eq=False)
class GreedyPermutation:
    """Farthest-point order; ``insertion_radii[0]`` is +inf."""

    order: np.ndarray
    insertion_radii: np.ndarray

    def ranks(self) -> np.ndarray:
        r = np.empty_like(self.order)
        r[self.order] = np.arange(len(self.order))
        return r

    def radii_by_point(self) -> np.ndarray:
        lam = np.empty(len(self.order))
        lam[self.order] = self.insertion_radii
        return lam


def _params(params) -> SparseRipsParams:
    return params if isinstance(params, SparseRipsParams) else SparseRipsParams(float(params))


def _kdtree(points):
    return _kernels.build_kdtree(points, KDTREE_LEAF_SIZE)


def greedy_permutation(data, _tree=None) -> GreedyPermutation:
    """Farthest-point traversal from index 0; ties go to the smallest index."""
    if isinstance(data, PointCloud):
        pts = np.ascontiguousarray(data.points)
        if data.n == 1:
            return GreedyPermutation(np.zeros(1, np.int64), np.array([np.inf]))
        tree = _tree if _tree is not None else _kdtree(pts)
        order, radii = _kernels.greedy_points(pts, *tree)
    else:
        D = np.ascontiguousarray(data.values)
        order, radii = _kernels.greedy_dense(D)
    return GreedyPermutation(order, radii)


def sparse_rips_graph(data, params) -> SparseGraph:
    """Sparse Rips edge list with filtration weights on the dense d-scale.

    An edge {p, q} is kept iff d(p, q) <= T_p + T_q. Its weight is d(p, q)
    while both balls are still growing at contact, and 2 * (d - min(T_p, T_q))
    once the smaller ball has frozen. The first point's cap is infinite, so
    every point is adjacent to it and the graph is always connected.
    """
    params = _params(params)
    if isinstance(data, PointCloud):
        pts = np.ascontiguousarray(data.points)
        tree = _kdtree(pts) if data.n > 1 else None
        perm = greedy_permutation(data, _tree=tree)
        caps = params.cap_factor * perm.radii_by_point()
        if data.n == 1:
            return SparseGraph(1, [], [], [])
        i, j, w = _kernels.sparse_edges_points(pts, caps, perm.ranks(), *tree)
        n = data.n
    else:
        perm = greedy_permutation(data)
        caps = params.cap_factor * perm.radii_by_point()
        i, j, w = _kernels.sparse_edges_dense(np.ascontiguousarray(data.values), caps)
        n = data.n
    return SparseGraph(n, i, j, w)


def pldiv_sparse(data, params) -> float:
    """Approximate PLDiv from the MST of the sparse Rips graph."""
    return pldiv_closed_form(h0_sparse(sparse_rips_graph(data, params)))
