"""H0 persistence of the Vietoris-Rips filtration through minimum spanning trees.

Convention: the edge {i, j} enters the filtration at d(i, j), so every
component is born at 0 and dies at the weight of the MST edge that absorbs it.
The single component that never dies is left out of the diagram.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from . import _kernels
from .errors import InputError, StructuralError
from .geometry import DistanceMatrix


class PersistencePair(NamedTuple):
    birth: float
    death: float

    @property
    def lifetime(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True, eq=False)
class PersistenceDiagram:
    """Finite H0 pairs, stored column-wise and sorted by (death, birth)."""

    births: np.ndarray
    deaths: np.ndarray
    n_points: int = 0
    degree: int = 0

    def __post_init__(self):
        b = np.asarray(self.births, dtype=np.float64).ravel()
        d = np.asarray(self.deaths, dtype=np.float64).ravel()
        if b.shape != d.shape:
            raise InputError("births and deaths must have the same length")
        if not (np.isfinite(b).all() and np.isfinite(d).all()):
            raise InputError("persistence pairs must be finite")
        if (d < b).any():
            i = int(np.argmax(d < b))
            raise InputError(f"pair {i} dies before it is born: ({b[i]}, {d[i]})")
        order = np.lexsort((b, d))
        b, d = b[order], d[order]
        b.flags.writeable = False
        d.flags.writeable = False
        object.__setattr__(self, "births", b)
        object.__setattr__(self, "deaths", d)

    @classmethod
    def from_pairs(cls, pairs, n_points: int = 0) -> "PersistenceDiagram":
        arr = np.asarray(list(pairs), dtype=np.float64).reshape(-1, 2)
        return cls(arr[:, 0], arr[:, 1], n_points=n_points)

    @property
    def lifetimes(self) -> np.ndarray:
        return self.deaths - self.births

    def pairs(self) -> list[PersistencePair]:
        return [PersistencePair(float(b), float(d)) for b, d in zip(self.births, self.deaths)]

    def __iter__(self) -> Iterator[PersistencePair]:
        return iter(self.pairs())

    def __len__(self):
        return len(self.deaths)

    def __repr__(self):
        return f"PersistenceDiagram(n_pairs={len(self)}, n_points={self.n_points})"


@dataclass(frozen=True, eq=False)
class SparseGraph:
    """Undirected weighted edge list with i < j for every edge."""

    n_vertices: int
    i: np.ndarray
    j: np.ndarray
    weight: np.ndarray

    def __post_init__(self):
        i = np.asarray(self.i, dtype=np.int64).ravel()
        j = np.asarray(self.j, dtype=np.int64).ravel()
        w = np.asarray(self.weight, dtype=np.float64).ravel()
        if not (i.shape == j.shape == w.shape):
            raise InputError("edge arrays must have equal length")
        if self.n_vertices < 0:
            raise InputError("n_vertices must be >= 0")
        if len(i):
            if (i < 0).any() or (j >= self.n_vertices).any() or (i >= j).any():
                k = int(np.argmax((i < 0) | (j >= self.n_vertices) | (i >= j)))
                raise InputError(
                    f"edge {k} = ({i[k]}, {j[k]}) violates 0 <= i < j < {self.n_vertices}"
                )
            if not np.isfinite(w).all() or (w < 0).any():
                raise InputError("edge weights must be finite and non-negative")
            key = i * self.n_vertices + j
            if len(np.unique(key)) != len(key):
                raise InputError("duplicate edges in sparse graph")
        for name, arr in (("i", i), ("j", j), ("weight", w)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @classmethod
    def from_edges(cls, n_vertices: int, edges) -> "SparseGraph":
        edges = list(edges)
        if not edges:
            return cls(n_vertices, [], [], [])
        i, j, w = zip(*edges)
        lo = np.minimum(i, j)
        hi = np.maximum(i, j)
        return cls(n_vertices, lo, hi, w)

    @classmethod
    def complete(cls, dist: DistanceMatrix) -> "SparseGraph":
        i, j = np.triu_indices(dist.n, 1)
        return cls(dist.n, i, j, dist.values[i, j])

    @property
    def n_edges(self) -> int:
        return len(self.weight)


def _diagram_from_deaths(deaths, n_points) -> PersistenceDiagram:
    deaths = np.sort(np.asarray(deaths, dtype=np.float64))
    return PersistenceDiagram(np.zeros_like(deaths), deaths, n_points=n_points)


def h0_dense(dist: DistanceMatrix) -> PersistenceDiagram:
    """H0 diagram of a full distance matrix via an O(n^2) Prim scan."""
    D = np.ascontiguousarray(dist.values)
    if D.shape[0] < 2:
        return _diagram_from_deaths([], D.shape[0])
    return _diagram_from_deaths(_kernels.prim_dense(D), D.shape[0])


def mst_total_and_weights(graph: SparseGraph) -> np.ndarray:
    """Ascending MST edge weights of ``graph`` (Kruskal, ties broken by (i, j)).

    Raises StructuralError if the graph is disconnected.
    """
    n = graph.n_vertices
    if n <= 1:
        return np.empty(0)
    order = np.lexsort((graph.j, graph.i, graph.weight))
    weights, merges = _kernels.kruskal_sorted(n, graph.i, graph.j, graph.weight, order)
    if merges != n - 1:
        comps = n - merges
        raise StructuralError(f"graph is disconnected: {comps} components", n_components=comps)
    return weights


def h0_sparse(graph: SparseGraph) -> PersistenceDiagram:
    return _diagram_from_deaths(mst_total_and_weights(graph), graph.n_vertices)
