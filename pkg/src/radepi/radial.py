"""Grid approximation of the radial epiderivative along a ray.

For a point ``x`` and direction ``h`` the radial epiderivative is the infimum
over ``t > 0`` of ``(f(x + t h) - f(x)) / t``. :func:`radial_epiderivative`
takes that minimum over the grid ``t0 + k * beta`` (stopping where the ray
leaves the box) and also reports the probe point that achieved it, which is
the step the line-search methods take.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import EvaluationError, GridParams, InfeasiblePointError, Problem, Vector, as_vector

_CHUNK = 1 << 16


@dataclass(frozen=True)
class RadialEstimate:
    value: float
    endpoint: Vector
    t_star: float
    probes: int
    endpoint_f: float

    @property
    def is_descent(self) -> bool:
        return self.value < 0


def _check_start(problem: Problem, x, h):
    x = as_vector(x, problem.dim)
    h = np.asarray(h, dtype=float).reshape(-1)
    if h.size != problem.dim:
        raise ValueError(f"direction has dimension {h.size}, expected {problem.dim}")
    if not np.all(np.isfinite(h)):
        raise ValueError(f"direction has non-finite components: {h}")
    if not np.any(h != 0):
        raise ValueError("direction must be nonzero")
    if not problem.domain.contains(x):
        raise InfeasiblePointError(f"{problem.name}: start point {x} lies outside the box")
    return x, h


def _grid_length(box, x: Vector, h: Vector, t0: float, beta: float, cap: int) -> int:
    """Upper estimate of how many grid points stay inside the box.

    Slightly generous; the exact cut is decided by testing the probe points.
    """
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        room = np.where(h > 0, (box.upper - x) / h, np.where(h < 0, (box.lower - x) / h, np.inf))
    t_exit = float(np.min(room))
    if t_exit < t0:
        return 2
    if not math.isfinite(t_exit):
        return cap
    est = (t_exit - t0) / beta + 3
    return int(min(cap, est))


def ray_chunks(box, x: Vector, h: Vector, t0: float, beta: float, max_steps: int):
    """Yield ``(ts, points)`` blocks of the feasible grid ``t0 + k * beta``.

    Stops at the first probe outside ``box`` or after ``max_steps`` probes.
    """
    n_est = _grid_length(box, x, h, t0, beta, max_steps)
    start = 0
    while start < n_est:
        ks = np.arange(start, min(start + _CHUNK, n_est), dtype=float)
        ts = t0 + ks * beta
        pts = x[None, :] + ts[:, None] * h[None, :]
        inside = box.contains_rows(pts)
        if not inside.all():
            cut = int(np.argmin(inside))
            if cut:
                yield ts[:cut], pts[:cut]
            return
        yield ts, pts
        start += ks.size
        if start >= n_est and n_est < max_steps:
            # the estimate fell short of the true exit through rounding
            n_est = min(max_steps, n_est + _CHUNK)


def scan_ray(problem: Problem, x: Vector, h: Vector, t0: float, beta: float,
             max_steps: int, fx: Optional[float] = None) -> RadialEstimate:
    """Radial grid search with explicit ``t0``/``beta`` and no input checks.

    Optimizers call this directly with their current (possibly shrunk)
    step parameters; ``fx`` saves re-evaluating the objective at ``x``.
    """
    if fx is None:
        fx = problem(x)
    best_q = math.inf
    best_t = 0.0
    best_point = x
    best_f = fx
    probes = 0
    for ts, pts in ray_chunks(problem.domain, x, h, t0, beta, max_steps):
        vals = problem.evaluate_many(pts)
        probes += ts.size
        quot = (vals - fx) / ts
        j = int(np.argmin(quot))
        if quot[j] < best_q:
            best_q = float(quot[j])
            best_t = float(ts[j])
            best_point = pts[j]
            best_f = float(vals[j])

    if probes == 0:
        return RadialEstimate(0.0, x.copy(), 0.0, 0, fx)
    if best_q < 0:
        return RadialEstimate(best_q, np.array(best_point), best_t, probes, best_f)
    return RadialEstimate(best_q, x.copy(), 0.0, probes, fx)


def radial_epiderivative(problem: Problem, x, h, grid: GridParams, fx: Optional[float] = None) -> RadialEstimate:
    """Approximate the radial epiderivative of ``problem`` at ``x`` along ``h``.

    Probes ``t = t0 + k * beta`` for ``k = 0, 1, ...`` until the probe point
    leaves the box (or ``grid.max_steps`` points were used). The returned
    value is the smallest difference quotient seen; ties go to the smallest
    ``t``. When that minimum is negative the endpoint is the probe that
    achieved it, otherwise the endpoint is ``x`` itself. If even the first
    probe is infeasible the value is 0.
    """
    x, h = _check_start(problem, x, h)
    return scan_ray(problem, x, h, grid.t0, grid.beta, grid.max_steps, fx)


def enumerate_ray_quotients(problem: Problem, x, h, grid: GridParams):
    """Plain loop over the probe set of :func:`radial_epiderivative`.

    Returns ``(ts, quotients)`` as lists. Used as an independent reference
    for the vectorized scan.
    """
    x, h = _check_start(problem, x, h)
    fx = problem(x)
    ts, qs = [], []
    for k in range(grid.max_steps):
        t = grid.t0 + k * grid.beta
        p = x + t * h
        if not problem.domain.contains(p):
            break
        ts.append(t)
        qs.append((problem(p) - fx) / t)
    return ts, qs


def radial_epiderivative_oracle(problem: Problem, x, h, t_max: float, resolution: int) -> float:
    """Brute-force minimum of the difference quotient on ``(0, t_max]``.

    Uses ``resolution`` evenly spaced values ``t_max * j / resolution``;
    probes outside the box are skipped rather than ending the scan. Returns
    0 when no probe is feasible.
    """
    if not t_max > 0:
        raise ValueError("t_max must be positive")
    if resolution < 1:
        raise ValueError("resolution must be a positive integer")
    x, h = _check_start(problem, x, h)
    fx = problem(x)
    best = math.inf
    for lo in range(1, resolution + 1, _CHUNK):
        j = np.arange(lo, min(lo + _CHUNK, resolution + 1), dtype=float)
        ts = t_max * j / resolution
        pts = x + np.outer(ts, h)
        keep = problem.domain.contains_rows(pts)
        if not keep.any():
            continue
        vals = problem.evaluate_many(pts[keep])
        best = min(best, float(np.min((vals - fx) / ts[keep])))
    return 0.0 if best == math.inf else best


__all__ = [
    "EvaluationError",
    "RadialEstimate",
    "enumerate_ray_quotients",
    "radial_epiderivative",
    "radial_epiderivative_oracle",
    "ray_chunks",
    "scan_ray",
]
