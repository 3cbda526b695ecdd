"""Particle swarm methods: radial PSO (velocities used as candidate
directions, accepted through the radial search) and a plain PSO baseline."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..core import GridParams, Problem, RngStream, StopConfig, Vector, clamp_to_box, distance
from ..radial import scan_ray
from .result import CountingProblem, RunResult, finish

# Per-ray probe cap for the swarm. Shrunk particle grids (beta near t_floor)
# would otherwise scan up to the library-wide cap on every move.
RPSO_MAX_STEPS = 10_000


@dataclass(frozen=True)
class SwarmConfig:
    particles: int = 30
    w: float = 0.729
    c1: float = 1.49445
    c2: float = 1.49445
    per_dimension_random: bool = False

    def __post_init__(self):
        if self.particles < 1:
            raise ValueError("particles must be at least 1")
        if not all(np.isfinite([self.w, self.c1, self.c2])):
            raise ValueError("w, c1 and c2 must be finite")


@dataclass
class SwarmState:
    positions: np.ndarray  # (P, n)
    values: np.ndarray  # f at positions
    velocities: np.ndarray  # (P, n)
    pbest_x: np.ndarray
    pbest_f: np.ndarray
    gbest_x: Vector
    gbest_f: float
    t0: Optional[np.ndarray] = None  # per-particle grid, radial variant only
    beta: Optional[np.ndarray] = None
    stagnation_count: int = 0

    @classmethod
    def initialize(cls, problem: Problem, cfg: SwarmConfig, rng: RngStream, grid: Optional[GridParams] = None):
        box = problem.domain
        P = cfg.particles
        positions = np.array([rng.uniform_in(box) for _ in range(P)])
        values = problem.evaluate_many(positions)
        g = int(np.argmin(values))
        return cls(
            positions=positions,
            values=values,
            velocities=np.zeros_like(positions),
            pbest_x=positions.copy(),
            pbest_f=values.copy(),
            gbest_x=positions[g].copy(),
            gbest_f=float(values[g]),
            t0=None if grid is None else np.full(P, grid.t0),
            beta=None if grid is None else np.full(P, grid.beta),
        )

    def update_gbest(self) -> bool:
        i = int(np.argmin(self.values))
        if self.values[i] < self.gbest_f:
            self.gbest_x = self.positions[i].copy()
            self.gbest_f = float(self.values[i])
            return True
        return False


def pso_velocity(state: SwarmState, i: int, cfg: SwarmConfig, rng: RngStream) -> Vector:
    """``w v + c1 r1 (pbest - x) + c2 r2 (gbest - x)`` for particle ``i``.

    ``r1`` then ``r2`` are drawn from ``rng`` (scalars, or one per
    coordinate when ``cfg.per_dimension_random``).
    """
    x = state.positions[i]
    size = x.size if cfg.per_dimension_random else None
    r1 = rng.uniform(size)
    r2 = rng.uniform(size)
    return (cfg.w * state.velocities[i]
            + cfg.c1 * r1 * (state.pbest_x[i] - x)
            + cfg.c2 * r2 * (state.gbest_x - x))


def rpso_minimize(problem: Problem, cfg: SwarmConfig = SwarmConfig(),
                  grid: GridParams = GridParams(max_steps=RPSO_MAX_STEPS),
                  stop: StopConfig = StopConfig(), seed: int = 0, *, trace: bool = False) -> RunResult:
    """Radial particle swarm.

    Each particle's new velocity is only used as a search direction: the
    particle moves to the endpoint of the radial grid search along it, so it
    moves only when the velocity is a descent direction. Per-particle grid
    parameters shrink while the particle's best stalls; once they are at
    the floor and the swarm best stalled too, the particle is re-seeded
    uniformly in the box. The run stops after ``count_bar`` consecutive
    iterations without a swarm-best improvement or at the iteration limit.
    """
    started = time.perf_counter()
    counter = CountingProblem(problem)
    p = counter.problem
    rng = RngStream(seed)
    state = SwarmState.initialize(p, cfg, rng, grid)
    P = cfg.particles
    pbest_moved = np.ones(P, dtype=bool)
    gbest_moved = True
    records: Optional[List] = [] if trace else None
    k = 0
    while k < stop.iteration_limit and state.stagnation_count < stop.count_bar:
        prev_gbest = state.gbest_x
        for i in range(P):
            v = pso_velocity(state, i, cfg, rng)
            if not pbest_moved[i]:
                if state.t0[i] > grid.t_floor:
                    state.t0[i] *= grid.alpha
                    state.beta[i] *= grid.alpha
                elif not gbest_moved:
                    state.positions[i] = rng.uniform_in(p.domain)
                    state.values[i] = p(state.positions[i])
                    state.t0[i], state.beta[i] = grid.t0, grid.beta
                    v = np.zeros_like(v)
            state.velocities[i] = v
            x = state.positions[i]
            if np.any(v != 0):
                est = scan_ray(p, x, v, float(state.t0[i]), float(state.beta[i]), grid.max_steps,
                               float(state.values[i]))
                state.positions[i] = est.endpoint
                state.values[i] = est.endpoint_f
            improved = state.values[i] < state.pbest_f[i]
            if improved:
                state.pbest_x[i] = state.positions[i]
                state.pbest_f[i] = state.values[i]
            pbest_moved[i] = improved
        gbest_moved = state.update_gbest()
        state.stagnation_count = 0 if gbest_moved else state.stagnation_count + 1
        k += 1
        if records is not None:
            records.append((k, state.gbest_f, distance(state.gbest_x, prev_gbest)))
    stopped_by = "count" if state.stagnation_count >= stop.count_bar else "iteration_limit"
    return finish(problem, counter, state.gbest_x, k, started, seed=seed, trace=records,
                  stopped_by=stopped_by)


def pso_minimize(problem: Problem, cfg: SwarmConfig = SwarmConfig(), stop: StopConfig = StopConfig(),
                 seed: int = 0, *, trace: bool = False) -> RunResult:
    """Standard PSO: ``x <- clamp(x + v)`` with the same velocity rule and
    stagnation stopping as :func:`rpso_minimize`."""
    started = time.perf_counter()
    counter = CountingProblem(problem)
    p = counter.problem
    rng = RngStream(seed)
    state = SwarmState.initialize(p, cfg, rng)
    records: Optional[List] = [] if trace else None
    k = 0
    while k < stop.iteration_limit and state.stagnation_count < stop.count_bar:
        prev_gbest = state.gbest_x
        for i in range(cfg.particles):
            state.velocities[i] = pso_velocity(state, i, cfg, rng)
        state.positions = np.array([clamp_to_box(x + v, p.domain)
                                    for x, v in zip(state.positions, state.velocities)])
        state.values = p.evaluate_many(state.positions)
        better = state.values < state.pbest_f
        state.pbest_x[better] = state.positions[better]
        state.pbest_f[better] = state.values[better]
        moved = state.update_gbest()
        state.stagnation_count = 0 if moved else state.stagnation_count + 1
        k += 1
        if records is not None:
            records.append((k, state.gbest_f, distance(state.gbest_x, prev_gbest)))
    stopped_by = "count" if state.stagnation_count >= stop.count_bar else "iteration_limit"
    return finish(problem, counter, state.gbest_x, k, started, seed=seed, trace=records,
                  stopped_by=stopped_by)
