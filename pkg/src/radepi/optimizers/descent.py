"""Generic radial descent: move along the first direction whose radial
epiderivative estimate is negative, stop when no direction descends."""

from __future__ import annotations

import time
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from ..core import GridParams, Problem, StopConfig, Vector, distance
from ..radial import RadialEstimate, scan_ray
from .result import CountingProblem, RunResult, finish, start_point

DirectionGenerator = Callable[[Vector, int], Sequence[Vector]]

_UNIT_TOL = 1e-12


def signed_axis_directions(n: int) -> list:
    """``+e_1, ..., +e_n, -e_1, ..., -e_n``."""
    eye = np.eye(n)
    return [eye[i] for i in range(n)] + [-eye[i] for i in range(n)]


def _check_directions(directions, n: int) -> list:
    out = []
    for d in directions:
        d = np.asarray(d, dtype=float).reshape(-1)
        if d.size != n or not np.all(np.isfinite(d)):
            raise ValueError(f"direction {d} is not a finite vector of dimension {n}")
        if abs(np.linalg.norm(d) - 1.0) > _UNIT_TOL:
            raise ValueError(f"direction {d} does not have unit norm")
        out.append(d)
    return out


def _search(problem, x, fx, directions, grid: GridParams):
    for d in directions:
        est = scan_ray(problem, x, d, grid.t0, grid.beta, grid.max_steps, fx)
        if est.value < 0:
            return d, est
    return None


def descent_direction_search(problem: Problem, x, directions, grid: GridParams,
                             fx: Optional[float] = None) -> Optional[Tuple[Vector, RadialEstimate]]:
    """First direction (in the given order) with a negative estimate, or None."""
    x = start_point(problem, x)
    directions = _check_directions(directions, problem.dim)
    if fx is None and directions:
        fx = problem(x)
    return _search(problem, x, fx, directions, grid)


def radial_descent_minimize(problem: Problem, direction_generator: DirectionGenerator,
                            grid: GridParams = GridParams(), stop: StopConfig = StopConfig(),
                            start=None, trace: bool = False) -> RunResult:
    """Iterate ``x <- endpoint`` along descent directions from ``direction_generator``.

    The generator is called as ``direction_generator(x_k, k)`` and must
    return unit vectors. Terminates once an iteration moves less than
    ``stop.epsilon`` or after ``stop.iteration_limit`` iterations.
    """
    started = time.perf_counter()
    counter = CountingProblem(problem)
    p = counter.problem
    x = start_point(problem, start)
    fx = p(x)
    records = [] if trace else None
    k = 0
    stopped_by = "iteration_limit"
    while k < stop.iteration_limit:
        directions = _check_directions(direction_generator(x, k), problem.dim)
        found = _search(p, x, fx, directions, grid)
        if found is None:
            x_next, f_next = x, fx
        else:
            est = found[1]
            x_next, f_next = est.endpoint, est.endpoint_f
        dist = distance(x_next, x)
        x, fx = x_next, f_next
        k += 1
        if records is not None:
            records.append((k, fx, dist))
        if dist < stop.epsilon:
            stopped_by = "distance"
            break
    return finish(problem, counter, x, k, started, trace=records, stopped_by=stopped_by)
