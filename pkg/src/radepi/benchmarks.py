"""The 29 two-dimensional test problems and their concave counterparts.

Every objective takes an ``(m, n)`` array of points and returns ``m`` values.
Names are the public identifiers used by the command line and result files.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from .core import BoxDomain, InfeasiblePointError, Problem, as_vector


class UnknownProblemError(KeyError):
    pass


def ackley1(X):
    n = X.shape[1]
    return (-20.0 * np.exp(-0.2 * np.sqrt(np.sum(X**2, axis=1) / n))
            - np.exp(np.sum(np.cos(2 * np.pi * X), axis=1) / n) + 20.0 + np.e)


def alpine1(X):
    return np.sum(np.abs(X * np.sin(X) + 0.1 * X), axis=1)


def brent(X):
    return (X[:, 0] + 10) ** 2 + (X[:, 1] + 10) ** 2 + np.exp(-X[:, 0] ** 2 - X[:, 1] ** 2)


def brown(X):
    a, b = X[:, :-1] ** 2, X[:, 1:] ** 2
    return np.sum(a ** (b + 1) + b ** (a + 1), axis=1)


def chung_reynolds(X):
    return np.sum(X**2, axis=1) ** 2


def csendes(X):
    out = np.zeros(X.shape[0])
    live = np.all(X != 0, axis=1)
    Y = X[live]
    out[live] = np.sum(Y**6 * (np.sin(1.0 / Y) + 2.0), axis=1)
    return out


def deb1(X):
    return -np.mean(np.sin(5 * np.pi * X) ** 6, axis=1)


def deb2(X):
    return -np.mean(np.sin(5 * np.pi * (X**0.75 - 0.05)) ** 6, axis=1)


def dixon_price(X):
    i = np.arange(2, X.shape[1] + 1)
    return (X[:, 0] - 1) ** 2 + np.sum(i * (2 * X[:, 1:] ** 2 - X[:, :-1]) ** 2, axis=1)


def drop_wave(X):
    r2 = X[:, 0] ** 2 + X[:, 1] ** 2
    return -(1 + np.cos(12 * np.sqrt(r2))) / (0.5 * r2 + 2)


def egg_holder(X):
    a, b = X[:, :-1], X[:, 1:]
    terms = (-a * np.sin(np.sqrt(np.abs(a - b - 47)))
             - (b + 47) * np.sin(np.sqrt(np.abs(0.5 * a + b + 47))))
    return np.sum(terms, axis=1)


def exponential(X):
    # negated so the origin is a minimum (-1) rather than a maximum
    return -np.exp(-0.5 * np.sum(X**2, axis=1))


def giunta(X):
    a = 1 - 16.0 / 15.0 * X
    return 0.6 + np.sum(np.sin(a) ** 2 - np.sin(4 * a) / 50 - np.sin(a), axis=1)


def mishra1(X):
    n = X.shape[1]
    g = n - np.sum(X[:, :-1], axis=1)
    return (1 + g) ** g


def mishra2(X):
    n = X.shape[1]
    g = n - np.sum(0.5 * (X[:, :-1] + X[:, 1:]), axis=1)
    return (1 + g) ** g


def periodic(X):
    return 1 + np.sin(X[:, 0]) ** 2 + np.sin(X[:, 1]) ** 2 - 0.1 * np.exp(-X[:, 0] ** 2 - X[:, 1] ** 2)


def powell_sum(X):
    i = np.arange(1, X.shape[1] + 1)
    return np.sum(np.abs(X) ** (i + 1), axis=1)


def qing(X):
    i = np.arange(1, X.shape[1] + 1)
    return np.sum((X**2 - i) ** 2, axis=1)


def rastrigin(X):
    return np.sum(X**2 - 10 * np.cos(2 * np.pi * X) + 10, axis=1)


def rosenbrock(X):
    # absolute value in the first term, as published (nonsmooth variant)
    a, b = X[:, :-1], X[:, 1:]
    return np.sum(100 * np.abs(b - a**2) + (1 - a) ** 2, axis=1)


def salomon(X):
    r = np.sqrt(np.sum(X**2, axis=1))
    return 1 - np.cos(2 * np.pi * r) + 0.1 * r


def schumer_steiglitz(X):
    return np.sum(X**4, axis=1)


def sphere(X):
    return np.sum(X**2, axis=1)


def step(X):
    return np.sum(np.floor(np.abs(X)), axis=1)


def step_int(X):
    return 25 + np.sum(np.floor(X), axis=1)


def sum_squares(X):
    i = np.arange(1, X.shape[1] + 1)
    return np.sum(i * X**2, axis=1)


def trid(X):
    return np.sum((X - 1) ** 2, axis=1) - np.sum(X[:, 1:] * X[:, :-1], axis=1)


def vincent(X):
    # no 1/n prefactor: the optimum is -n, so -2 in two dimensions
    return -np.sum(np.sin(10 * np.log(X)), axis=1)


def w_wavy(X, k=10.0):
    return np.mean(1 - np.cos(k * X) * np.exp(-0.5 * X**2), axis=1)


@dataclass(frozen=True)
class BenchmarkEntry:
    problem: Problem
    continuous: bool
    differentiable: bool
    convex: bool
    source: str

    @property
    def name(self) -> str:
        return self.problem.name


# name: (objective, low, high, x_star, f_star, continuous, differentiable, convex, separable)
_TABLE = {
    "Ackley1": (ackley1, -35, 35, [(0, 0)], 0.0, True, True, False, False),
    "Alpine1": (alpine1, -10, 10, [(0, 0)], 0.0, True, False, False, True),
    "Brent": (brent, -10, 10, [(-10, -10)], 1.3839e-87, True, True, True, False),
    "Brown": (brown, -1, 4, [(0, 0)], 0.0, True, True, True, False),
    "ChungReynolds": (chung_reynolds, -100, 100, [(0, 0)], 0.0, True, True, True, True),
    "Csendes": (csendes, -2, 2, [(0, 0)], 0.0, True, False, False, True),
    "Deb1": (deb1, -1, 1, [(-0.1, -0.1), (0.5, 0.3)], -1.0, True, True, False, True),
    "Deb2": (deb2, 0, 1, [(0.079699, 0.079699)], -1.0, True, True, False, True),
    "DixonPrice": (dixon_price, -10, 10, [(1, 2**-0.5)], 0.0, True, True, True, False),
    "DropWave": (drop_wave, -5.12, 5.12, [(0, 0)], -1.0, True, True, False, False),
    "EggHolder": (egg_holder, -512, 512, [(512, 404.2319)], -959.6407, True, True, False, False),
    "Exponential": (exponential, -1, 1, [(0, 0)], -1.0, True, True, True, True),
    "Giunta": (giunta, -1, 1, [(0.46732, 0.46732)], 0.06447, True, True, False, True),
    "Mishra1": (mishra1, 0, 1, [(1, 1)], 2.0, True, True, False, False),
    "Mishra2": (mishra2, 0, 1, [(1, 1)], 2.0, True, True, False, False),
    "Periodic": (periodic, -10, 10, [(0, 0)], 0.9, True, True, False, False),
    "PowellSum": (powell_sum, -1, 1, [(0, 0)], 0.0, True, True, True, True),
    "Qing": (qing, -500, 500, [(1, 2**0.5)], 0.0, True, True, False, True),
    "Rastrigin": (rastrigin, -5.12, 5.12, [(0, 0)], 0.0, True, True, False, True),
    "Rosenbrock": (rosenbrock, -5, 10, [(1, 1)], 0.0, True, True, False, False),
    "Salomon": (salomon, -100, 100, [(0, 0)], 0.0, True, True, False, False),
    "SchumerSteiglitz": (schumer_steiglitz, -100, 100, [(0, 0)], 0.0, True, True, True, True),
    "Sphere": (sphere, -5.12, 5.12, [(0, 0)], 0.0, True, True, True, True),
    "Step": (step, -100, 100, [(0, 0)], 0.0, False, False, False, True),
    "StepInt": (step_int, -5.12, 5.12, [(-5.12, -5.12)], 13.0, False, False, False, True),
    "SumSquares": (sum_squares, -10, 10, [(0, 0)], 0.0, True, True, True, True),
    "Trid": (trid, -8, 8, [(2, 2)], -2.0, True, True, False, False),
    "Vincent": (vincent, 0.25, 10, [(7.70628098, 7.70628098)], -2.0, True, True, False, True),
    "WWavy": (w_wavy, -np.pi, np.pi, [(0, 0)], 0.0, True, True, False, True),
}

NAMES: List[str] = sorted(_TABLE)

CONCAVE_NAMES: List[str] = [
    "Brown", "Brent", "ChungReynolds", "DixonPrice", "Exponential",
    "PowellSum", "SchumerSteiglitz", "Sphere", "SumSquares",
]


def _tags(continuous, differentiable, convex):
    tags = {"convex" if convex else "nonconvex"}
    if not differentiable:
        tags.add("nondifferentiable")
    if not continuous:
        tags.add("discontinuous")
    return frozenset(tags)


def get_entry(name: str, dim: Optional[int] = None) -> BenchmarkEntry:
    """Registry entry for ``name``.

    ``dim`` other than 2 is accepted for separable functions only; their
    optimizer is the 2-D one's first coordinate repeated (Qing excepted).
    """
    try:
        func, lo, hi, xs, fs, cont, diff, cvx, separable = _TABLE[name]
    except KeyError:
        raise UnknownProblemError(f"unknown problem {name!r}") from None
    n = 2 if dim is None else int(dim)
    if n != 2:
        if not separable:
            raise ValueError(f"{name} is only defined here in dimension 2")
        if name in ("Qing", "Vincent", "Deb1", "Deb2", "Giunta", "StepInt"):
            xs, fs = [], None
        else:
            xs = [tuple([x[0]] * n) for x in xs]
    problem = Problem(
        name=name,
        objective=func,
        domain=BoxDomain.uniform(lo, hi, n),
        f_star=fs,
        x_star=tuple(np.array(x, dtype=float) for x in xs),
        tags=_tags(cont, diff, cvx),
    )
    return BenchmarkEntry(problem, cont, diff, cvx, source=func.__name__)


def registry() -> List[BenchmarkEntry]:
    return [get_entry(name) for name in NAMES]


def get_problem(name: str, concave: bool = False) -> Problem:
    return concave_variant(name) if concave else get_entry(name).problem


def evaluate(name: str, x) -> float:
    problem = get_entry(name).problem
    x = as_vector(x, problem.dim)
    if not problem.domain.contains(x):
        raise InfeasiblePointError(f"{name}: point {x} lies outside the box")
    return problem(x)


def _negated(func: Callable) -> Callable:
    def neg(X):
        return -func(X)

    neg.__name__ = f"neg_{func.__name__}"
    return neg


def concave_variant(name: str) -> Problem:
    """``-f`` on the same box, with ``f_star`` taken over the box vertices.

    The supported functions grow (or, for Exponential, decay towards zero)
    monotonically away from their minimizer in every coordinate, so the
    negated function is minimized at a vertex.
    """
    if name not in CONCAVE_NAMES:
        raise UnknownProblemError(f"no concave variant for {name!r}; choose from {CONCAVE_NAMES}")
    base = get_entry(name).problem
    neg = _negated(base.objective)
    corners = base.domain.vertices()
    values = neg(corners)
    best = values.min()
    x_star = tuple(c for c, v in zip(corners, values) if v == best)
    return Problem(
        name=name,
        objective=neg,
        domain=base.domain,
        f_star=float(best),
        x_star=x_star,
        tags=frozenset({"concave-variant"}),
    )


BY_NAME: Dict[str, Callable] = {name: row[0] for name, row in _TABLE.items()}
