"""Comparison metrics: Vendi Score, DCScore and magnitude / MAGAREA."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg
from scipy.linalg import lapack

from .errors import ConvergenceError, InputError, NumericError, ParameterError
from .geometry import DistanceMatrix, SimilarityMatrix

EIG_CLAMP = 1e-12
NEG_EIG_TOL = 1e-8
MAX_CONDITION = 1e12


@dataclass(frozen=True)
class DiversityValue:
    metric: str
    value: float
    params: dict = field(default_factory=dict)

    def as_dict(self):
        return {"metric": self.metric, "value": self.value, "params": dict(self.params)}


@dataclass(frozen=True, eq=False)
class MagnitudeCurve:
    scales: np.ndarray
    values: np.ndarray
    t_cut: float
    regularized: int = 0  # grid points solved through the spectral fallback

    def area(self) -> float:
        return float(np.trapezoid(self.values, self.scales))


def _values(k) -> np.ndarray:
    a = k.values if isinstance(k, SimilarityMatrix) else np.asarray(k, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise InputError(f"similarity matrix must be square and non-empty, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise InputError("similarity matrix has non-finite entries")
    return a


def vendi_score(k) -> DiversityValue:
    """exp of the Shannon entropy of the spectrum of K / n."""
    K = _values(k)
    n = K.shape[0]
    if not np.allclose(np.diagonal(K), 1.0, rtol=0, atol=1e-9):
        raise InputError("Vendi Score expects a similarity matrix with unit diagonal")
    try:
        lam = linalg.eigvalsh(0.5 * (K + K.T) / n)
    except linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed: {exc}") from exc
    if lam.min() < -NEG_EIG_TOL:
        raise NumericError(f"similarity matrix is not PSD (eigenvalue {lam.min():.3g})")
    lam = np.where(lam < EIG_CLAMP, 0.0, lam)
    lam = lam / lam.sum()
    nz = lam[lam > 0]
    entropy = -math.fsum((nz * np.log(nz)).tolist())
    return DiversityValue("vendi", float(math.exp(entropy)), {"n": n})


def dcscore(k, tau: float = 1.0) -> DiversityValue:
    """Trace of the row-wise softmax of K / tau."""
    if not (math.isfinite(tau) and tau > 0):
        raise ParameterError(f"tau must be finite and > 0, got {tau}")
    K = _values(k)
    Z = K / tau
    Z = Z - Z.max(axis=1, keepdims=True)
    E = np.exp(Z)
    diag = np.diagonal(E) / E.sum(axis=1)
    return DiversityValue("dcscore", math.fsum(diag.tolist()), {"tau": float(tau)})


# ------------------------------------------------------------------ magnitude

def _similarity(dist, t):
    D = dist.values if isinstance(dist, DistanceMatrix) else np.asarray(dist, dtype=np.float64)
    return np.exp(-t * D)


def _cholesky_magnitude(Z):
    """Magnitude and reciprocal condition estimate, or None if Z is not PD."""
    try:
        c, lower = linalg.cho_factor(Z, lower=False, check_finite=False)
    except linalg.LinAlgError:
        return None
    anorm = np.abs(Z).sum(axis=0).max()
    rcond, info = lapack.dpocon(c, anorm)
    w = linalg.cho_solve((c, lower), np.ones(Z.shape[0]), check_finite=False)
    return float(w.sum()), float(rcond)


def _spectral_magnitude(Z):
    # pseudo-inverse restricted to the numerically resolvable part of the spectrum
    mu, V = linalg.eigh(Z)
    keep = mu > mu.max() * EIG_CLAMP
    proj = V[:, keep].sum(axis=0)
    return float(np.sum(proj * proj / mu[keep]))


def magnitude_at(dist, t: float) -> float:
    """Magnitude of the metric space at scale t: sum of w solving exp(-t D) w = 1."""
    if not (math.isfinite(t) and t > 0):
        raise ParameterError(f"scale t must be finite and > 0, got {t}")
    Z = _similarity(dist, t)
    res = _cholesky_magnitude(Z)
    if res is None:
        raise NumericError(f"similarity matrix exp(-tD) is not positive definite at t={t}; try a larger t")
    mag, rcond = res
    if rcond <= 0 or 1.0 / rcond > MAX_CONDITION:
        cond = math.inf if rcond <= 0 else 1.0 / rcond
        raise NumericError(f"exp(-tD) is ill-conditioned at t={t} (condition ~{cond:.3g}); try a larger t")
    return mag


def _magnitude_tolerant(dist, t):
    Z = _similarity(dist, t)
    res = _cholesky_magnitude(Z)
    if res is not None and res[1] > 0 and 1.0 / res[1] <= MAX_CONDITION:
        return res[0], False
    return _spectral_magnitude(Z), True


def _window(t0, k, n_grid):
    lo, hi = t0 * 2.0**k, t0 * 2.0 ** (k + 1)
    return np.geomspace(lo, hi, n_grid)


def convergence_scale(dist, t0: float = 0.01, target: float = 0.95, max_doublings: int = 60) -> float:
    """First window end t0 * 2^k (k >= 1) where magnitude reaches target * n."""
    n = dist.n if isinstance(dist, DistanceMatrix) else len(dist)
    goal = target * n
    for k in range(1, max_doublings + 1):
        t = t0 * 2.0**k
        if _magnitude_tolerant(dist, t)[0] >= goal:
            return t
    raise ConvergenceError(
        f"magnitude did not reach {target:g} * n = {goal:g} within {max_doublings} doublings of t0={t0}"
    )


def magnitude_curve(dist, t0: float = 0.01, n_grid: int = 64, target: float = 0.95,
                    t_cut: float | None = None, max_doublings: int = 60) -> MagnitudeCurve:
    """Magnitude on a log grid of ``n_grid`` points per doubling, from t0 to t_cut.

    Without an explicit ``t_cut`` the grid is extended one doubling at a time
    until the magnitude at the window end reaches ``target * n``.
    """
    if not (math.isfinite(t0) and t0 > 0):
        raise ParameterError(f"t0 must be finite and > 0, got {t0}")
    if int(n_grid) != n_grid or n_grid < 8:
        raise ParameterError(f"n_grid must be an integer >= 8, got {n_grid}")
    if t_cut is None:
        t_cut = convergence_scale(dist, t0, target, max_doublings)
    elif not (math.isfinite(t_cut) and t_cut > t0):
        raise ParameterError(f"t_cut must exceed t0, got {t_cut}")

    n_windows = max(1, math.ceil(math.log2(t_cut / t0) - 1e-12))
    grid = np.unique(np.concatenate([_window(t0, k, int(n_grid)) for k in range(n_windows)]))
    grid = np.append(grid[grid < t_cut], t_cut)
    vals = np.empty(len(grid))
    reg = 0
    for i, t in enumerate(grid):
        vals[i], flag = _magnitude_tolerant(dist, t)
        reg += flag
    return MagnitudeCurve(grid, vals, float(t_cut), reg)


def magarea(dist, t0: float = 0.01, n_grid: int = 64, target: float = 0.95,
            t_cut: float | None = None) -> DiversityValue:
    """Trapezoid area under the magnitude function over [t0, t_cut].

    Pass a shared ``t_cut`` when comparing several spaces; areas over
    different intervals are not comparable.
    """
    curve = magnitude_curve(dist, t0, n_grid, target, t_cut)
    params = {"t0": t0, "t_cut": curve.t_cut, "n_grid": int(n_grid), "target": target,
              "regularized_points": curve.regularized}
    return DiversityValue("magarea", curve.area(), params)
