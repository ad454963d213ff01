"""One entry point per metric plus a dispatcher that shares the distance matrix."""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import baselines
from .errors import MetricError, ParameterError, PLDivError, UsageError
from .geometry import (METRICS, KERNELS, DistanceMatrix, PointCloud, as_point_cloud,
                       kernel_matrix, pairwise_distances)
from .landscape import pldiv_closed_form
from .persistence import h0_dense
from .sparse_rips import pldiv_sparse

METRIC_NAMES = ("pldiv", "vendi", "dcscore", "magarea")
VENDI_MAX_N = 5000


def pldiv(data, distance: str = "euclidean", epsilon: float | None = None) -> float:
    """PLDiv of a point cloud or distance matrix; ``epsilon`` selects the sparse path."""
    if not isinstance(data, (PointCloud, DistanceMatrix)):
        data = as_point_cloud(data)
    if epsilon is not None:
        if isinstance(data, PointCloud) and distance == "euclidean":
            return pldiv_sparse(data, epsilon)
        dist = data if isinstance(data, DistanceMatrix) else pairwise_distances(data, distance)
        return pldiv_sparse(dist, epsilon)
    dist = data if isinstance(data, DistanceMatrix) else pairwise_distances(data, distance)
    return pldiv_closed_form(h0_dense(dist))


@dataclass(frozen=True)
class MetricOptions:
    distance: str = "euclidean"
    kernel: str | None = None
    gamma: float = 1.0
    tau: float = 1.0
    epsilon: float | None = None
    t0: float = 0.01
    n_grid: int = 64
    target: float = 0.95
    t_cut: float | None = None
    vendi_max_n: int = VENDI_MAX_N

    def __post_init__(self):
        if self.distance not in METRICS:
            raise ParameterError(f"distance must be one of {METRICS}, got {self.distance!r}")
        if self.kernel is not None and self.kernel not in KERNELS:
            raise ParameterError(f"kernel must be one of {KERNELS}, got {self.kernel!r}")
        if self.epsilon is not None and not (math.isfinite(self.epsilon) and self.epsilon > 0):
            raise ParameterError(f"epsilon must be finite and > 0, got {self.epsilon}")

    def echo(self) -> dict:
        return asdict(self)


def parse_metrics(spec) -> tuple:
    """Accept 'all', a comma list, or an iterable; keep canonical order, no repeats."""
    names = spec.split(",") if isinstance(spec, str) else list(spec)
    names = [m.strip().lower() for m in names if m.strip()]
    if "all" in names:
        return METRIC_NAMES
    bad = [m for m in names if m not in METRIC_NAMES]
    if bad:
        raise UsageError(f"unknown metric(s) {bad}; choose from {METRIC_NAMES} or 'all'")
    if not names:
        raise UsageError("no metrics requested")
    return tuple(m for m in METRIC_NAMES if m in names)


def _ms(t0):
    return 1e3 * (time.perf_counter() - t0)


def compute_metrics(data, metrics, opts: MetricOptions | None = None):
    """Compute the requested metrics on one dataset.

    Returns ``(values, timings_ms)``. The distance matrix is built at most once
    and its cost is reported under the ``distance_matrix`` timing key.
    """
    opts = opts or MetricOptions()
    metrics = parse_metrics(metrics)
    if not isinstance(data, (PointCloud, DistanceMatrix)):
        data = as_point_cloud(data)
    n = data.n
    needs_kernel = {"vendi", "dcscore"} & set(metrics)
    if needs_kernel and isinstance(data, DistanceMatrix) and opts.kernel is None:
        raise UsageError(f"{sorted(needs_kernel)} on a distance matrix needs --kernel to form similarities")
    if "vendi" in metrics and n > opts.vendi_max_n:
        raise UsageError(f"vendi is capped at n <= {opts.vendi_max_n} (n = {n}); raise the cap to override")

    timings = {}
    cache = {}

    def dist():
        if "dist" not in cache:
            t = time.perf_counter()
            cache["dist"] = data if isinstance(data, DistanceMatrix) else pairwise_distances(data, opts.distance)
            timings["distance_matrix"] = _ms(t)
        return cache["dist"]

    def kern():
        if "kern" not in cache:
            cache["kern"] = kernel_matrix(data, opts.kernel or "rbf", opts.gamma)
        return cache["kern"]

    sparse_points = opts.epsilon is not None and isinstance(data, PointCloud) and opts.distance == "euclidean"
    needs_dist = [m for m in metrics if m == "magarea" or (m == "pldiv" and not sparse_points)]
    if needs_dist:
        try:
            dist()
        except (PLDivError, ValueError) as exc:
            raise MetricError(needs_dist[0], exc) from exc
    dist_label = data.metric_name if isinstance(data, DistanceMatrix) else opts.distance

    values = []
    for m in metrics:
        t = time.perf_counter()
        try:
            if m == "pldiv":
                if sparse_points:
                    v = pldiv_sparse(data, opts.epsilon)
                elif opts.epsilon is not None:
                    v = pldiv_sparse(dist(), opts.epsilon)
                else:
                    v = pldiv_closed_form(h0_dense(dist()))
                params = {"distance": dist_label, "epsilon": opts.epsilon,
                          "path": "dense" if opts.epsilon is None else "sparse"}
                dv = baselines.DiversityValue("pldiv", v, params)
            elif m == "vendi":
                dv = baselines.vendi_score(kern())
                dv = baselines.DiversityValue("vendi", dv.value,
                                              {"kernel": opts.kernel or "rbf", "gamma": opts.gamma})
            elif m == "dcscore":
                dv = baselines.dcscore(kern(), opts.tau)
                dv = baselines.DiversityValue("dcscore", dv.value, {"kernel": opts.kernel or "rbf",
                                                                    "gamma": opts.gamma, "tau": opts.tau})
            else:
                dv = baselines.magarea(dist(), opts.t0, opts.n_grid, opts.target, opts.t_cut)
        except UsageError:
            raise
        except (PLDivError, ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
            raise MetricError(m, exc) from exc
        timings[m] = _ms(t)
        values.append(dv)
    return values, timings
