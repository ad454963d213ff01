"""Point clouds, distance matrices and similarity kernels.

Everything is float64. Matrices handed out by this module are read-only so they
can be shared between metrics without defensive copies.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import InputError, ParameterError, ValidationError

METRICS = ("euclidean", "l1", "cosine_distance")
KERNELS = ("rbf", "laplacian", "cosine_similarity")

SYMMETRY_TOL = 1e-9
DIAGONAL_TOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class PointCloud:
    """n points in R^d, stored as an (n, d) float64 array."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2:
            raise InputError(f"point cloud must be 2-D, got shape {pts.shape}")
        if pts.shape[0] < 1 or pts.shape[1] < 1:
            raise InputError(f"point cloud needs n >= 1 and d >= 1, got shape {pts.shape}")
        bad = np.argwhere(~np.isfinite(pts))
        if len(bad):
            i, j = bad[0]
            raise InputError(f"non-finite coordinate at point {i}, dimension {j}")
        object.__setattr__(self, "points", _frozen(pts))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.n


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    values: np.ndarray
    metric_name: str = "precomputed"

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __len__(self):
        return self.n

    def diameter(self) -> float:
        return float(self.values.max()) if self.n else 0.0


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    values: np.ndarray
    kernel_name: str = "precomputed"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values))

    @property
    def n(self) -> int:
        return self.values.shape[0]


def as_point_cloud(x) -> PointCloud:
    return x if isinstance(x, PointCloud) else PointCloud(x)


def _row_norms(pts: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(pts, axis=1)
    zero = np.flatnonzero(norms == 0.0)
    if len(zero):
        raise InputError(f"point {zero[0]} has zero norm; cosine geometry is undefined")
    return norms


def pairwise_distances(cloud, metric: str = "euclidean") -> DistanceMatrix:
    """All pairwise distances of a point cloud.

    ``metric`` is one of ``euclidean``, ``l1`` or ``cosine_distance``. Each pair
    is evaluated once and mirrored, so the result is exactly symmetric.
    """
    if metric not in METRICS:
        raise ParameterError(f"unknown metric {metric!r}; expected one of {METRICS}")
    cloud = as_point_cloud(cloud)
    pts = cloud.points
    if cloud.n == 1:
        return DistanceMatrix(np.zeros((1, 1)), metric)
    if metric == "euclidean":
        condensed = pdist(pts, "euclidean")
    elif metric == "l1":
        condensed = pdist(pts, "cityblock")
    else:
        unit = pts / _row_norms(pts)[:, None]
        sim = np.clip(unit @ unit.T, -1.0, 1.0)
        iu = np.triu_indices(cloud.n, 1)
        condensed = np.maximum(1.0 - sim[iu], 0.0)
    return DistanceMatrix(squareform(condensed), metric)


def kernel_matrix(data, kernel: str = "rbf", gamma: float = 1.0) -> SimilarityMatrix:
    """Similarity matrix for Vendi Score / DCScore.

    rbf is exp(-gamma * d^2) on euclidean distance, laplacian is exp(-gamma * d)
    on l1 distance. A ``DistanceMatrix`` input is used as-is for either kernel.
    cosine_similarity needs coordinates.
    """
    if kernel not in KERNELS:
        raise ParameterError(f"unknown kernel {kernel!r}; expected one of {KERNELS}")
    if kernel == "cosine_similarity":
        if isinstance(data, DistanceMatrix):
            raise InputError("cosine_similarity needs a point cloud, not a distance matrix")
        pts = as_point_cloud(data).points
        unit = pts / _row_norms(pts)[:, None]
        k = np.clip(unit @ unit.T, -1.0, 1.0)
        k = 0.5 * (k + k.T)
        np.fill_diagonal(k, 1.0)
        return SimilarityMatrix(k, kernel, {})

    if not (np.isfinite(gamma) and gamma > 0):
        raise ParameterError(f"gamma must be a finite positive number, got {gamma}")
    if isinstance(data, DistanceMatrix):
        d = data.values
    else:
        d = pairwise_distances(data, "euclidean" if kernel == "rbf" else "l1").values
    k = np.exp(-gamma * d * d) if kernel == "rbf" else np.exp(-gamma * d)
    return SimilarityMatrix(k, kernel, {"gamma": float(gamma)})


def validate_distance_matrix(values) -> DistanceMatrix:
    """Check a user-supplied matrix and return it as a ``precomputed`` DistanceMatrix.

    Asymmetry up to 1e-9 is repaired by averaging and diagonal noise up to 1e-12
    is zeroed; anything worse raises ``ValidationError`` naming the first
    offending (row, column) pair.
    """
    a = np.asarray(values, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"distance matrix must be square, got shape {a.shape}")
    if a.shape[0] == 0:
        raise ValidationError("distance matrix is empty")

    def first(mask):
        i, j = np.argwhere(mask)[0]
        return int(i), int(j)

    if not np.isfinite(a).all():
        i, j = first(~np.isfinite(a))
        raise ValidationError(f"non-finite entry at ({i}, {j})")
    if (a < 0).any():
        i, j = first(a < 0)
        raise ValidationError(f"negative entry {a[i, j]!r} at ({i}, {j})")
    diag = np.abs(np.diagonal(a))
    if (diag > DIAGONAL_TOL).any():
        i = int(np.argmax(diag > DIAGONAL_TOL))
        raise ValidationError(f"nonzero diagonal entry {a[i, i]!r} at ({i}, {i})")
    asym = np.abs(a - a.T) > SYMMETRY_TOL
    if asym.any():
        i, j = first(asym)
        raise ValidationError(f"asymmetric entries at ({i}, {j}): {a[i, j]!r} vs {a[j, i]!r}")

    sym = 0.5 * (a + a.T)
    np.fill_diagonal(sym, 0.0)
    return DistanceMatrix(sym, "precomputed")
