"""Shared value types: boxes, problems, solver parameters and seeded streams."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

Vector = np.ndarray

# Batched objective: (m, n) array of points -> (m,) array of values.
BatchObjective = Callable[[np.ndarray], np.ndarray]


class DimensionError(ValueError):
    pass


class InfeasiblePointError(ValueError):
    pass


class EvaluationError(ArithmeticError):
    """Objective produced a non-finite value at ``point``."""

    def __init__(self, problem: str, point: Sequence[float], value: float):
        self.problem = problem
        self.point = np.array(point, dtype=float)
        self.value = value
        coords = ", ".join(repr(float(c)) for c in self.point)
        super().__init__(f"{problem}: non-finite objective {value!r} at ({coords})")


def as_vector(x, n: Optional[int] = None) -> Vector:
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.size == 0:
        raise DimensionError("vectors must have at least one coordinate")
    if n is not None and v.size != n:
        raise DimensionError(f"expected dimension {n}, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"vector has non-finite coordinates: {v}")
    return v


@dataclass(frozen=True)
class BoxDomain:
    lower: Vector
    upper: Vector

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float).reshape(-1)
        hi = np.asarray(self.upper, dtype=float).reshape(-1)
        if lo.shape != hi.shape:
            raise DimensionError("lower and upper bounds differ in dimension")
        if lo.size == 0:
            raise DimensionError("box must have at least one coordinate")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise ValueError("box bounds must be finite")
        if np.any(lo > hi):
            raise ValueError("box requires lower <= upper in every coordinate")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def uniform(cls, low: float, high: float, n: int) -> "BoxDomain":
        return cls(np.full(n, float(low)), np.full(n, float(high)))

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def midpoint(self) -> Vector:
        return 0.5 * (self.lower + self.upper)

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != self.lower.shape:
            raise DimensionError(f"expected dimension {self.dim}, got {x.size}")
        return bool(np.all((self.lower <= x) & (x <= self.upper)))

    def contains_rows(self, X: np.ndarray) -> np.ndarray:
        """Row-wise membership mask for an (m, n) array of points."""
        return np.all((self.lower <= X) & (X <= self.upper), axis=1)

    def vertices(self) -> np.ndarray:
        n = self.dim
        corners = np.array(np.meshgrid(*[[0, 1]] * n, indexing="ij")).reshape(n, -1).T
        return np.where(corners == 0, self.lower, self.upper)


@dataclass(frozen=True)
class Problem:
    """A box-constrained objective with optional known optimum.

    ``objective`` is evaluated on batches: it receives an ``(m, n)`` array
    and returns ``m`` values. Use :meth:`from_scalar` to wrap a function of
    a single point.
    """

    name: str
    objective: BatchObjective
    domain: BoxDomain
    f_star: Optional[float] = None
    x_star: tuple = ()
    lipschitz_lower: Optional[float] = None
    tags: frozenset = field(default_factory=frozenset)

    @classmethod
    def from_scalar(cls, name: str, func: Callable[[Vector], float], domain: BoxDomain, **kw) -> "Problem":
        def batched(X):
            return np.array([func(row) for row in X], dtype=float)

        return cls(name, batched, domain, **kw)

    @property
    def dim(self) -> int:
        return self.domain.dim

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.dim:
            raise DimensionError(f"expected points of dimension {self.dim}, got shape {X.shape}")
        values = np.asarray(self.objective(X), dtype=float).reshape(-1)
        if values.shape[0] != X.shape[0]:
            raise ValueError(f"{self.name}: objective returned {values.shape[0]} values for {X.shape[0]} points")
        bad = ~np.isfinite(values)
        if bad.any():
            i = int(np.argmax(bad))
            raise EvaluationError(self.name, X[i], float(values[i]))
        return values

    def __call__(self, x) -> float:
        x = as_vector(x, self.dim)
        return float(self.evaluate_many(x[None, :])[0])

    def with_objective(self, objective: BatchObjective) -> "Problem":
        return Problem(self.name, objective, self.domain, self.f_star, self.x_star, self.lipschitz_lower, self.tags)


@dataclass(frozen=True)
class GridParams:
    """Ray grid ``t0, t0 + beta, t0 + 2 beta, ...`` used by the radial search."""

    t0: float = 0.1
    beta: float = 0.1
    alpha: float = 0.1
    t_floor: float = 1e-6
    max_steps: int = 1_000_000

    def __post_init__(self):
        if not (self.t0 > 0 and self.t_floor > 0 and self.t_floor <= self.t0):
            raise ValueError(f"need 0 < t_floor <= t0, got t0={self.t0}, t_floor={self.t_floor}")
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if int(self.max_steps) != self.max_steps or self.max_steps < 1:
            raise ValueError(f"max_steps must be a positive integer, got {self.max_steps}")

    def shrunk(self) -> "GridParams":
        """Both t0 and beta scaled by alpha; the floor is not enforced here."""
        t0 = self.t0 * self.alpha
        return GridParams(t0, self.beta * self.alpha, self.alpha, min(self.t_floor, t0), self.max_steps)


@dataclass(frozen=True)
class StopConfig:
    epsilon: float = 1e-4
    iteration_limit: int = 1000
    count_bar: int = 3

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.iteration_limit < 1 or self.count_bar < 1:
            raise ValueError("iteration_limit and count_bar must be positive")


class RngStream:
    """Philox-4x64 counter-based stream keyed by ``(seed, stream)``.

    The two 64-bit key words are the seed and the stream id, so equal pairs
    replay identical sequences and distinct stream ids never overlap.
    """

    def __init__(self, seed: int, stream: int = 0):
        if not (0 <= seed < 2**64 and 0 <= stream < 2**64):
            raise ValueError("seed and stream must be unsigned 64-bit integers")
        self.seed = int(seed)
        self.stream = int(stream)
        key = np.array([self.seed, self.stream], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def uniform(self, size=None):
        """Draws in [0, 1)."""
        return self._gen.random(size)

    def uniform_in(self, box: BoxDomain) -> Vector:
        u = self._gen.random(box.dim)
        return box.lower + u * (box.upper - box.lower)


def clamp_to_box(x, box: BoxDomain) -> Vector:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != box.dim:
        raise DimensionError(f"expected dimension {box.dim}, got {x.size}")
    return np.minimum(np.maximum(x, box.lower), box.upper)


def distance(x, y) -> float:
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    if x.shape != y.shape:
        raise DimensionError(f"dimension mismatch: {x.size} vs {y.size}")
    return float(np.linalg.norm(x - y))
