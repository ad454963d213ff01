"""Persistence landscapes as exact piecewise-linear functions, and PLDiv.

The landscape is never rasterised: every level is stored through its
breakpoints, so integrals are exact sums of trapezoids and the closed form
``1/4 * sum (d - b)^2`` can be checked against the landscape integral to
rounding error.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .persistence import PersistenceDiagram, PersistencePair


@dataclass(frozen=True, eq=False)
class PiecewiseLinearFn:
    """Linear interpolation through (t, value) breakpoints, zero outside them."""

    t: np.ndarray = field(default_factory=lambda: np.empty(0))
    values: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self):
        t = np.asarray(self.t, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.float64)
        if t.shape != v.shape or t.ndim != 1:
            raise ValueError("breakpoint arrays must be 1-D and of equal length")
        if len(t) > 1 and not (np.diff(t) > 0).all():
            raise ValueError("breakpoint abscissae must be strictly increasing")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "values", v)

    @property
    def is_zero(self) -> bool:
        return len(self.t) == 0 or not (self.values > 0).any()

    def __call__(self, x):
        if len(self.t) == 0:
            return np.zeros_like(np.asarray(x, dtype=np.float64))
        return np.interp(x, self.t, self.values, left=0.0, right=0.0)

    def integral(self) -> float:
        if len(self.t) < 2:
            return 0.0
        dt = np.diff(self.t)
        return math.fsum(dt * (self.values[:-1] + self.values[1:]) * 0.5)

    def breakpoints(self):
        return list(zip(self.t.tolist(), self.values.tolist()))


@dataclass(frozen=True, eq=False)
class PersistenceLandscape:
    levels: tuple
    source_pairs: int = 0

    def __len__(self):
        return len(self.levels)

    def __getitem__(self, k) -> PiecewiseLinearFn:
        return self.levels[k]

    def __call__(self, x) -> np.ndarray:
        """Values of every level at ``x``; shape (levels, len(x))."""
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        if not self.levels:
            return np.zeros((0, len(x)))
        return np.vstack([lvl(x) for lvl in self.levels])

    def support(self):
        if not self.levels:
            return None
        return (min(l.t[0] for l in self.levels), max(l.t[-1] for l in self.levels))


def tent(pair) -> PiecewiseLinearFn:
    b, d = float(pair[0]), float(pair[1])
    if not d > b:
        return PiecewiseLinearFn()
    return PiecewiseLinearFn([b, 0.5 * (b + d), d], [0.0, 0.5 * (d - b), 0.0])


def _append(ts, vs, t, v):
    # crossings computed in floating point can coincide with the previous knot
    if ts and t <= ts[-1]:
        vs[-1] = max(vs[-1], v)
        return
    ts.append(t)
    vs.append(v)


def build_landscape(diagram) -> PersistenceLandscape:
    """Exact landscape levels of a diagram.

    Intervals are kept sorted by (birth ascending, death descending). Each pass
    walks the upper envelope of what is left from left to right: from the
    current interval (b, d) it jumps to the first later interval extending past
    d. If the two overlap, their pointwise minimum is the tent of (b', d), which
    goes back into the pool for the levels below.
    """
    if isinstance(diagram, PersistenceDiagram):
        pairs = list(zip(diagram.births.tolist(), diagram.deaths.tolist()))
    else:
        pairs = [(float(b), float(d)) for b, d in diagram]
    m = len(pairs)
    pool = sorted(((b, -d) for b, d in pairs if d > b))

    levels = []
    while pool:
        b, nd = pool.pop(0)
        d = -nd
        ts, vs = [b, 0.5 * (b + d)], [0.0, 0.5 * (d - b)]
        p = 0
        while True:
            k = p
            while k < len(pool) and -pool[k][1] <= d:
                k += 1
            if k == len(pool):
                _append(ts, vs, d, 0.0)
                break
            b2, nd2 = pool.pop(k)
            d2 = -nd2
            p = k
            if b2 > d:
                _append(ts, vs, d, 0.0)
            if b2 >= d:
                _append(ts, vs, b2, 0.0)
            else:
                _append(ts, vs, 0.5 * (b2 + d), 0.5 * (d - b2))
                low = (b2, -d)
                at = bisect.bisect_left(pool, low)
                pool.insert(at, low)
                if at < p:
                    p += 1
            _append(ts, vs, 0.5 * (b2 + d2), 0.5 * (d2 - b2))
            b, d = b2, d2
        levels.append(PiecewiseLinearFn(ts, vs))
    return PersistenceLandscape(tuple(levels), source_pairs=m)


def integrate_landscape(landscape: PersistenceLandscape) -> float:
    """Sum over levels of the exact integral of each piecewise-linear level."""
    return math.fsum(level.integral() for level in landscape.levels)


def pldiv_closed_form(diagram) -> float:
    """PLDiv = 1/4 * sum of squared lifetimes.

    Uses a correctly rounded sum, so the value does not depend on pair order
    and zero-lifetime pairs leave it bit-identical.
    """
    if isinstance(diagram, PersistenceDiagram):
        life = diagram.lifetimes
    else:
        life = np.asarray([d - b for b, d in diagram], dtype=np.float64)
    return 0.25 * math.fsum((life * life).tolist())


def sample_landscape(landscape: PersistenceLandscape, t_min: float, t_max: float, steps: int):
    """Evaluate every level on ``steps`` evenly spaced points of [t_min, t_max].

    Returns ``(grid, values)`` with ``values`` of shape (levels, steps).
    """
    if not (math.isfinite(t_min) and math.isfinite(t_max) and t_min < t_max):
        raise ParameterError(f"need finite t_min < t_max, got [{t_min}, {t_max}]")
    if int(steps) != steps or steps < 2:
        raise ParameterError(f"steps must be an integer >= 2, got {steps}")
    grid = np.linspace(t_min, t_max, int(steps))
    return grid, landscape(grid)


__all__ = [
    "PersistencePair",
    "PiecewiseLinearFn",
    "PersistenceLandscape",
    "tent",
    "build_landscape",
    "integrate_landscape",
    "pldiv_closed_form",
    "sample_landscape",
]
