"""Coordinate-direction methods: radial cyclic coordinate (RCC) and a plain
grid-search cyclic coordinate baseline (CC)."""

from __future__ import annotations

import time

import numpy as np

from ..core import GridParams, Problem, StopConfig, distance
from ..radial import ray_chunks, scan_ray
from .descent import signed_axis_directions
from .result import CountingProblem, RunResult, finish, start_point


def rcc_minimize(problem: Problem, grid: GridParams = GridParams(), stop: StopConfig = StopConfig(),
                 start=None, *, consecutive_count: bool = False, trace: bool = False) -> RunResult:
    """Radial cyclic coordinate descent.

    Every outer iteration estimates the radial epiderivative along all
    ``2n`` signed axes from the current point (with a shared ``t0``/``beta``)
    and moves to the candidate endpoint with the lowest objective value, if
    it improves. An iteration that moves less than ``epsilon`` shrinks
    ``t0`` and ``beta`` by ``alpha`` and bumps the stagnation count; the run
    ends when the count reaches ``count_bar``. The count is cumulative
    unless ``consecutive_count`` is set, which resets it after every real
    move.
    """
    started = time.perf_counter()
    counter = CountingProblem(problem)
    p = counter.problem
    x = start_point(problem, start)
    fx = p(x)
    t0, beta = grid.t0, grid.beta
    directions = signed_axis_directions(problem.dim)
    records = [] if trace else None
    count = 0
    k = 0
    while k < stop.iteration_limit and count < stop.count_bar:
        x_best, f_best = x, fx
        for d in directions:
            est = scan_ray(p, x, d, t0, beta, grid.max_steps, fx)
            if est.value < 0 and est.endpoint_f < f_best:
                x_best, f_best = est.endpoint, est.endpoint_f
        dist = distance(x_best, x)
        x, fx = x_best, f_best
        k += 1
        if dist < stop.epsilon:
            t0 *= grid.alpha
            beta *= grid.alpha
            count += 1
        elif consecutive_count:
            count = 0
        if records is not None:
            records.append((k, fx, dist))
    stopped_by = "count" if count >= stop.count_bar else "iteration_limit"
    return finish(problem, counter, x, k, started, trace=records, stopped_by=stopped_by)


def _line_minimum(problem, x, h, t0, beta, max_steps):
    """Lowest objective value on the feasible ray grid and where it occurs."""
    best_f, best_x = np.inf, None
    for ts, pts in ray_chunks(problem.domain, x, h, t0, beta, max_steps):
        vals = problem.evaluate_many(pts)
        j = int(np.argmin(vals))
        if vals[j] < best_f:
            best_f, best_x = float(vals[j]), pts[j]
    return best_f, best_x


def cc_minimize(problem: Problem, stop: StopConfig = StopConfig(), line_grid: GridParams = GridParams(),
                start=None, *, consecutive_count: bool = False, trace: bool = False) -> RunResult:
    """Cyclic coordinate descent with a grid line search on function values.

    Coordinates are visited in order; along ``+e_i`` and ``-e_i`` the
    objective is sampled on the same ``t0 + k * beta`` grid as the radial
    search and the point is moved to the lowest sample when it improves.
    Stopping mirrors :func:`rcc_minimize`.
    """
    started = time.perf_counter()
    counter = CountingProblem(problem)
    p = counter.problem
    x = start_point(problem, start)
    fx = p(x)
    n = problem.dim
    eye = np.eye(n)
    t0, beta = line_grid.t0, line_grid.beta
    records = [] if trace else None
    count = 0
    k = 0
    while k < stop.iteration_limit and count < stop.count_bar:
        x_prev = x
        for i in range(n):
            for h in (eye[i], -eye[i]):
                f_new, x_new = _line_minimum(p, x, h, t0, beta, line_grid.max_steps)
                if f_new < fx:
                    x, fx = np.array(x_new), f_new
        dist = distance(x, x_prev)
        k += 1
        if dist < stop.epsilon:
            t0 *= line_grid.alpha
            beta *= line_grid.alpha
            count += 1
        elif consecutive_count:
            count = 0
        if records is not None:
            records.append((k, fx, dist))
    stopped_by = "count" if count >= stop.count_bar else "iteration_limit"
    return finish(problem, counter, x, k, started, trace=records, stopped_by=stopped_by)
