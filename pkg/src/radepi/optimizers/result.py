from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..core import InfeasiblePointError, Problem, Vector, as_vector
from ..reporting import gap as gap_metric

TraceRecord = Tuple[int, float, float]


@dataclass
class RunResult:
    best_x: Vector
    best_f: float
    gap: Optional[float]
    iterations: int
    evaluations: int
    wall_time: float
    seed: Optional[int] = None
    trace: Optional[List[TraceRecord]] = None
    stopped_by: str = ""


class CountingProblem:
    """Wraps a problem so every evaluated point is counted."""

    def __init__(self, problem: Problem):
        self.evaluations = 0

        def counted(X):
            self.evaluations += X.shape[0]
            return problem.objective(X)

        self.problem = problem.with_objective(counted)


def start_point(problem: Problem, start) -> Vector:
    if start is None:
        return problem.domain.midpoint.copy()
    x = as_vector(start, problem.dim)
    if not problem.domain.contains(x):
        raise InfeasiblePointError(f"{problem.name}: start point {x} lies outside the box")
    return x


def finish(problem: Problem, counter: CountingProblem, best_x: Vector, iterations: int,
           started: float, seed=None, trace=None, stopped_by="") -> RunResult:
    best_f = counter.problem(best_x)
    g = gap_metric(best_f, problem.f_star) if problem.f_star is not None else None
    return RunResult(
        best_x=np.array(best_x, dtype=float),
        best_f=best_f,
        gap=g,
        iterations=iterations,
        evaluations=counter.evaluations,
        wall_time=time.perf_counter() - started,
        seed=seed,
        trace=trace,
        stopped_by=stopped_by,
    )
