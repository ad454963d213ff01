"""Seeded synthetic point clouds: toy D1-D4, long-tail, and eight A/B pairs.

Randomness comes from numpy's counter-based Philox generator. Each generator
stage draws from its own substream, keyed by (seed, dataset name, stage), so a
dataset never depends on what else was generated before it.
"""
from __future__ import annotations

import warnings
import zlib
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .geometry import PointCloud

N_POINTS = 200
WINDOW = (0.0, 2.0)
BOUNDS = (-1.0, 3.0)
TOY_COV = 0.02

HAWKES_IMMIGRANTS = 91.0
HAWKES_BRANCHING = 0.6
HAWKES_SIGMA = 0.1

LONGTAIL_OUTLIERS = (20, 40, 60, 80, 100)

TOY_NAMES = ("D1", "D2", "D3", "D4")
PAIR_NAMES = (
    "ring_vs_disk",
    "bridge_vs_two_clusters",
    "nested_vs_gaussian",
    "crescent_vs_blob",
    "two_rings_vs_random",
    "snake_vs_blob",
    "hole_vs_filled",
    "hierarchical_vs_gaussian",
)


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if not (0 <= int(self.seed) < 2**64):
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def as_dict(self):
        return {"name": self.name, "params": dict(self.params), "seed": int(self.seed)}


@dataclass(frozen=True, eq=False)
class LabeledCloudPair:
    name: str
    cloud_a: PointCloud
    cloud_b: PointCloud
    expectation: str = "B more diverse than A"


def stream(seed: int, name: str, stage: int = 0) -> np.random.Generator:
    """Independent Philox substream for one stage of one named generator."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(zlib.crc32(name.encode()), int(stage)))
    return np.random.Generator(np.random.Philox(ss))


# ------------------------------------------------------------------ primitives

def uniform_square(rng, n, lo=WINDOW[0], hi=WINDOW[1]):
    return rng.uniform(lo, hi, size=(n, 2))


def gaussian(rng, n, center, sigma):
    """Isotropic Gaussian; draws outside the [-1, 3]^2 box are redrawn."""
    center = np.asarray(center, dtype=np.float64)
    out = np.empty((0, 2))
    while len(out) < n:
        draw = center + sigma * rng.standard_normal((n - len(out), 2))
        ok = ((draw >= BOUNDS[0]) & (draw <= BOUNDS[1])).all(axis=1)
        out = np.vstack([out, draw[ok]])
    return out


def ring(rng, n, center, radius, noise, arc=(0.0, 2 * np.pi)):
    theta = rng.uniform(arc[0], arc[1], n)
    r = radius + noise * rng.standard_normal(n)
    return np.asarray(center) + np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def disk(rng, n, center, radius, inner=0.0):
    # area-uniform radius on the annulus [inner, radius]
    u = rng.uniform(inner**2, radius**2, n)
    theta = rng.uniform(0, 2 * np.pi, n)
    r = np.sqrt(u)
    return np.asarray(center) + np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def holed_gaussian(rng, n, center, sigma, hole):
    out = np.empty((0, 2))
    while len(out) < n:
        draw = gaussian(rng, n, center, sigma)
        keep = np.linalg.norm(draw - center, axis=1) >= hole
        out = np.vstack([out, draw[keep]])
    return out[:n]


def hawkes(rng, n=N_POINTS, immigrants=HAWKES_IMMIGRANTS, branching=HAWKES_BRANCHING,
           sigma=HAWKES_SIGMA):
    """Spatial Hawkes process on the [0, 2]^2 window via its cluster representation.

    Immigrants (Poisson(immigrants) of them) are uniform in the window; every
    event has Poisson(branching) children displaced by N(0, sigma^2 I), and
    children landing outside the window are dropped. Rounds are added until at
    least ``n`` events exist, then a uniform subset of ``n`` is kept.
    """
    events = []
    total = 0
    while total < n:
        gen = uniform_square(rng, rng.poisson(immigrants))
        while len(gen):
            events.append(gen)
            total += len(gen)
            kids = rng.poisson(branching, len(gen))
            parents = np.repeat(gen, kids, axis=0)
            child = parents + sigma * rng.standard_normal(parents.shape)
            inside = ((child >= WINDOW[0]) & (child <= WINDOW[1])).all(axis=1)
            gen = child[inside]
    pts = np.vstack(events)
    keep = np.sort(rng.choice(len(pts), n, replace=False))
    return pts[keep]


# ------------------------------------------------------------------ datasets

def toy_dataset(which: str, seed: int = 0) -> PointCloud:
    """D1 uniform square, D2 Hawkes, D3 two Gaussians, D4 one Gaussian (200 points)."""
    sigma = np.sqrt(TOY_COV)
    if which == "D1":
        pts = uniform_square(stream(seed, "D1"), N_POINTS)
    elif which == "D2":
        pts = hawkes(stream(seed, "D2"))
    elif which == "D3":
        pts = np.vstack([
            gaussian(stream(seed, "D3", 0), N_POINTS // 2, (0.5, 0.5), sigma),
            gaussian(stream(seed, "D3", 1), N_POINTS - N_POINTS // 2, (1.5, 1.5), sigma),
        ])
    elif which == "D4":
        pts = gaussian(stream(seed, "D4"), N_POINTS, (0.5, 0.5), sigma)
    else:
        raise ParameterError(f"unknown toy dataset {which!r}; expected one of {TOY_NAMES}")
    return PointCloud(pts)


def longtail_dataset(n_outliers: int, seed: int = 0) -> PointCloud:
    """D4-style Gaussian core of 200 - n_outliers points plus uniform outliers in [0, 2]^2."""
    n_outliers = int(n_outliers)
    if not 0 <= n_outliers < N_POINTS:
        raise ParameterError(f"n_outliers must be in [0, {N_POINTS}), got {n_outliers}")
    if n_outliers not in (0,) + LONGTAIL_OUTLIERS:
        warnings.warn(f"n_outliers={n_outliers} is outside the studied set {LONGTAIL_OUTLIERS}",
                      stacklevel=2)
    core = gaussian(stream(seed, "longtail", 0), N_POINTS - n_outliers, (0.5, 0.5), np.sqrt(TOY_COV))
    tail = uniform_square(stream(seed, "longtail", 1), n_outliers)
    return PointCloud(np.vstack([core, tail]))


C = (1.0, 1.0)


def _ring_vs_disk(a, b):
    return ring(a, 200, C, 0.8, 0.03), disk(b, 200, C, 0.8)


def _bridge_vs_two_clusters(a, b):
    # A reuses B's blobs (first 85 points of each) and adds the bridge
    left, right = gaussian(b, 100, (0.5, 1.0), 0.12), gaussian(b, 100, (1.5, 1.0), 0.12)
    t = a.uniform(0.0, 1.0, 30)
    bridge = np.column_stack([0.5 + t, np.full(30, 1.0)]) + 0.02 * a.standard_normal((30, 2))
    return np.vstack([left[:85], right[:85], bridge]), np.vstack([left, right])


def _nested_vs_gaussian(a, b):
    pa = np.vstack([gaussian(a, 100, C, 0.12), ring(a, 100, C, 0.8, 0.03)])
    return pa, gaussian(b, 200, C, 0.45)


def _crescent_vs_blob(a, b):
    return ring(a, 200, (1.0, 0.7), 0.8, 0.04, arc=(0.0, np.pi)), gaussian(b, 200, C, 0.3)


def _two_rings_vs_random(a, b):
    pa = np.vstack([ring(a, 80, C, 0.4, 0.03), ring(a, 120, C, 0.9, 0.03)])
    return pa, uniform_square(b, 200)


def _snake_vs_blob(a, b):
    x = a.uniform(0.1, 1.9, 200)
    y = 1.0 + 0.5 * np.sin(2 * np.pi * (x - 0.1) / 0.9)
    pa = np.column_stack([x, y]) + 0.03 * a.standard_normal((200, 2))
    return pa, gaussian(b, 200, C, 0.3)


def _hole_vs_filled(a, b):
    # B keeps 180 of A's outer points and scatters 20 points through the void
    outer = holed_gaussian(a, 200, C, 0.45, 0.5)
    return outer, np.vstack([outer[:180], disk(b, 20, C, 0.5)])


def _hierarchical_vs_gaussian(a, b):
    parts = []
    for top in [(0.5, 0.5), (1.5, 0.5), (0.5, 1.5), (1.5, 1.5)]:
        subs = np.asarray(top) + 0.12 * a.standard_normal((5, 2))
        for s in subs:
            parts.append(gaussian(a, 10, s, 0.025))
    return np.vstack(parts), gaussian(b, 200, C, 0.45)


_PAIRS = {
    "ring_vs_disk": _ring_vs_disk,
    "bridge_vs_two_clusters": _bridge_vs_two_clusters,
    "nested_vs_gaussian": _nested_vs_gaussian,
    "crescent_vs_blob": _crescent_vs_blob,
    "two_rings_vs_random": _two_rings_vs_random,
    "snake_vs_blob": _snake_vs_blob,
    "hole_vs_filled": _hole_vs_filled,
    "hierarchical_vs_gaussian": _hierarchical_vs_gaussian,
}


def pair_dataset(name: str, seed: int = 0) -> LabeledCloudPair:
    """A (less varied geometry) and B (more varied geometry) clouds of 200 points each."""
    if name not in _PAIRS:
        raise ParameterError(f"unknown pair {name!r}; expected one of {PAIR_NAMES}")
    pa, pb = _PAIRS[name](stream(seed, name, 0), stream(seed, name, 1))
    return LabeledCloudPair(name, PointCloud(pa), PointCloud(pb))


MIXTURE_COMPONENTS = 5
MIXTURE_SIGMA = 0.2


def mixture_cloud(n: int, dim: int = 2, seed: int = 0) -> PointCloud:
    """Bench cloud: equal-weight isotropic Gaussian mixture, centers uniform in [0, 2]^dim."""
    if n < 1 or dim < 1:
        raise ParameterError(f"need n >= 1 and dim >= 1, got n={n}, dim={dim}")
    centers = stream(seed, "mixture", 0).uniform(0.0, 2.0, (MIXTURE_COMPONENTS, dim))
    rng = stream(seed, "mixture", 1)
    labels = rng.integers(0, MIXTURE_COMPONENTS, n)
    return PointCloud(centers[labels] + MIXTURE_SIGMA * rng.standard_normal((n, dim)))


def generate(spec: GeneratorSpec):
    """Dispatch a GeneratorSpec to the matching dataset constructor."""
    if spec.name in TOY_NAMES:
        return toy_dataset(spec.name, spec.seed)
    if spec.name == "longtail":
        return longtail_dataset(spec.params.get("n_outliers", 100), spec.seed)
    if spec.name in _PAIRS:
        return pair_dataset(spec.name, spec.seed)
    if spec.name == "mixture":
        return mixture_cloud(int(spec.params.get("n", N_POINTS)), int(spec.params.get("dim", 2)), spec.seed)
    raise ParameterError(f"unknown generator {spec.name!r}")
