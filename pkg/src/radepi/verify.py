"""Self-checks run by ``radepi verify``.

Each check returns ``(passed, detail)`` where ``detail`` names the first
counterexample on failure. The samplers are shared with the test suite.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from . import benchmarks
from .core import BoxDomain, GridParams, Problem, StopConfig
from .optimizers import rcc_minimize
from .radial import enumerate_ray_quotients, radial_epiderivative

Check = Tuple[bool, str]


def random_ray(problem: Problem, rng: np.random.Generator):
    """A feasible point, a direction scaled to the box, and a random grid."""
    box = problem.domain
    width = box.upper - box.lower
    x = box.lower + rng.random(box.dim) * width
    h = rng.standard_normal(box.dim) * width * rng.uniform(0.05, 1.0)
    t0 = rng.uniform(1e-3, 0.3)
    beta = rng.uniform(1e-3, 0.3)
    return x, h, GridParams(t0=t0, beta=beta, alpha=0.1, t_floor=min(t0, beta) / 2, max_steps=100_000)


def sample_rays(count: int, seed: int, problems: Optional[List[Problem]] = None):
    rng = np.random.default_rng(seed)
    problems = problems or [e.problem for e in benchmarks.registry()]
    for _ in range(count):
        p = problems[int(rng.integers(len(problems)))]
        yield (p,) + random_ray(p, rng)


def check_registry(entries: Optional[Iterable] = None) -> Check:
    """Every listed minimizer is feasible and evaluates to its recorded optimum."""
    for entry in entries if entries is not None else benchmarks.registry():
        p = entry.problem
        for xs in p.x_star:
            if not p.domain.contains(xs):
                return False, f"{p.name}: x* {xs.tolist()} outside the box"
            fx = p(xs)
            if abs(fx - p.f_star) > 1e-6 * (1 + abs(p.f_star)):
                return False, f"{p.name}: f(x*) = {fx!r} but f_star = {p.f_star!r}"
    return True, "all entries consistent"


def check_oracle_equivalence(count: int = 100, seed: int = 0) -> Check:
    for p, x, h, grid in sample_rays(count, seed):
        est = radial_epiderivative(p, x, h, grid)
        ts, qs = enumerate_ray_quotients(p, x, h, grid)
        if not ts:
            ok = est.value == 0.0 and est.probes == 0
        else:
            j = int(np.argmin(qs))
            ok = est.value == qs[j] and est.probes == len(ts)
            if ok and qs[j] < 0:
                ok = est.t_star == ts[j] and np.array_equal(est.endpoint, x + ts[j] * h)
        if not ok:
            return False, f"{p.name}: x={x.tolist()} h={h.tolist()} t0={grid.t0!r} beta={grid.beta!r}"
    return True, f"{count} rays matched"


def check_descent_soundness(count: int = 2000, seed: int = 1) -> Check:
    for p, x, h, grid in sample_rays(count, seed):
        est = radial_epiderivative(p, x, h, grid)
        fx = p(x)
        if est.value < 0:
            ok = p.domain.contains(est.endpoint) and p(est.endpoint) < fx
        else:
            ok = np.array_equal(est.endpoint, x)
        if not ok:
            return False, f"{p.name}: x={x.tolist()} h={h.tolist()} value={est.value!r}"
    return True, f"{count} calls sound"


def random_linear(rng: np.random.Generator, n: int = 2):
    c = rng.standard_normal(n)
    box = BoxDomain.uniform(-1.0, 1.0, n)
    problem = Problem(name="linear", objective=lambda X, c=c: X @ c, domain=box, f_star=None)
    x = rng.uniform(-1.0, 1.0, n)
    h = rng.standard_normal(n)
    grid = GridParams(t0=rng.uniform(1e-3, 0.2), beta=rng.uniform(1e-3, 0.2), max_steps=100_000)
    return problem, c, x, h, grid


def ulp_distance(a: float, b: float) -> float:
    return abs(a - b) / np.spacing(max(abs(a), abs(b), np.finfo(float).tiny))


def linear_error_scale(c, x, h, t_min: float) -> float:
    """Rounding scale of a difference quotient of ``c . x`` along ``h``.

    Evaluating ``c . (x + t h)`` rounds at the magnitude of
    ``|c| . (|x| + t |h|)``; dividing the difference by ``t`` magnifies it,
    worst at the smallest probe ``t_min``.
    """
    c, x, h = (np.abs(np.asarray(v, dtype=float)) for v in (c, x, h))
    return float(np.spacing(c @ (x + t_min * h)) / t_min + np.spacing(c @ h))


def check_linear_exactness(count: int = 100, seed: int = 2, max_units: float = 8.0) -> Check:
    """Quotients of linear objectives equal ``c . h`` up to rounding.

    Measured in units of :func:`linear_error_scale`; plain ulps of ``c . h``
    are not attainable when either difference cancels.
    """
    rng = np.random.default_rng(seed)
    for _ in range(count):
        p, c, x, h, grid = random_linear(rng)
        est = radial_epiderivative(p, x, h, grid)
        if est.probes == 0:
            continue
        target = float(c @ h)
        if abs(est.value - target) > max_units * linear_error_scale(c, x, h, grid.t0):
            return False, f"c={c.tolist()} x={x.tolist()} h={h.tolist()} value={est.value!r} c.h={target!r}"
    return True, f"{count} linear objectives within rounding"


def check_rcc_monotone(names: Iterable[str] = ("Sphere", "Rastrigin", "Trid", "EggHolder", "Step")) -> Check:
    for name in names:
        p = benchmarks.get_problem(name)
        res = rcc_minimize(p, GridParams(), StopConfig(), trace=True)
        fs = [rec[1] for rec in res.trace]
        if any(b > a for a, b in zip(fs, fs[1:])):
            return False, f"{name}: trace increases"
        if not p.domain.contains(res.best_x):
            return False, f"{name}: best_x {res.best_x.tolist()} infeasible"
    return True, "traces non-increasing"


CHECKS: Dict[str, Callable[[int], Check]] = {
    "registry": lambda seed: check_registry(),
    "oracle_equivalence": lambda seed: check_oracle_equivalence(100, seed),
    "descent_soundness": lambda seed: check_descent_soundness(2000, seed + 1),
    "linear_exactness": lambda seed: check_linear_exactness(100, seed + 2),
    "rcc_monotone": lambda seed: check_rcc_monotone(),
}


def run_all(seed: int = 0) -> List[dict]:
    report = []
    for name, check in CHECKS.items():
        try:
            passed, detail = check(seed)
        except Exception as exc:  # a crash is a failed check, not a crashed report
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        report.append({"check": name, "passed": bool(passed), "detail": detail})
    return report
