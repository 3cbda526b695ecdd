import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radepi import benchmarks
from radepi.core import BoxDomain, EvaluationError, GridParams, InfeasiblePointError, Problem
from radepi.radial import (
    enumerate_ray_quotients,
    radial_epiderivative,
    radial_epiderivative_oracle,
)

GRID = GridParams(t0=0.1, beta=0.1)


def sphere():
    return benchmarks.get_problem("Sphere")


def linear(c, lo=-10.0, hi=10.0):
    c = np.asarray(c, dtype=float)
    return Problem("linear", lambda X: X @ c, BoxDomain.uniform(lo, hi, c.size))


def test_sphere_example():
    # phi(t) = ((1 - t)^2 - 1) / t = t - 2, increasing, so the minimum sits at t0.
    est = radial_epiderivative(sphere(), [1.0, 0.0], [-1.0, 0.0], GRID)
    ts, qs = enumerate_ray_quotients(sphere(), [1.0, 0.0], [-1.0, 0.0], GRID)
    assert est.value == pytest.approx(-1.9, abs=1e-12)
    assert est.value == min(qs)
    np.testing.assert_allclose(est.endpoint, [0.9, 0.0], atol=1e-15)
    assert est.t_star == 0.1
    assert est.is_descent


def test_constant_is_never_descent():
    p = Problem("const", lambda X: np.full(X.shape[0], 5.0), BoxDomain.uniform(-1, 1, 2))
    est = radial_epiderivative(p, [0.3, -0.2], [1.0, 1.0], GRID)
    assert est.value == 0.0 and est.t_star == 0.0
    np.testing.assert_array_equal(est.endpoint, [0.3, -0.2])
    assert not est.is_descent


def test_linear_example():
    est = radial_epiderivative(linear([3.0, -1.0]), [0.0, 0.0], [0.0, 1.0], GRID)
    assert est.value == -1.0
    np.testing.assert_array_equal(est.endpoint, [0.0, 0.1])
    assert est.t_star == 0.1


def test_concave_example_goes_to_the_last_feasible_probe():
    p = Problem("negsq", lambda X: -X[:, 0] ** 2, BoxDomain.uniform(-1, 1, 1))
    est = radial_epiderivative(p, [0.0], [1.0], GRID)
    # quotient is -t; the last grid point inside [-1, 1] is t = 0.1 + 9 * 0.1
    assert est.t_star == pytest.approx(1.0)
    assert est.value == pytest.approx(-1.0)
    assert est.probes == 10


def test_infeasible_first_probe_returns_zero():
    est = radial_epiderivative(sphere(), [5.12, 0.0], [1.0, 0.0], GRID)
    assert (est.value, est.t_star, est.probes) == (0.0, 0.0, 0)
    np.testing.assert_array_equal(est.endpoint, [5.12, 0.0])


def test_pinned_coordinate_exits_at_t0():
    p = Problem("lin", lambda X: -X[:, 1], BoxDomain([1.0, 0.0], [1.0, 1.0]))
    assert radial_epiderivative(p, [1.0, 0.5], [1.0, 1.0], GRID).value == 0.0


def test_max_steps_caps_the_scan():
    p = Problem("negsq", lambda X: -X[:, 0] ** 2, BoxDomain.uniform(-1, 1, 1))
    est = radial_epiderivative(p, [0.0], [1.0], GridParams(t0=0.1, beta=0.1, max_steps=3))
    assert est.probes == 3
    assert est.t_star == pytest.approx(0.3)


def test_ties_go_to_smallest_t():
    # |x| along +1 from 0: quotient is 1 everywhere; along -1 from 1 it is -1 until 0 is crossed.
    p = Problem("abs", lambda X: np.abs(X[:, 0]), BoxDomain.uniform(-2, 2, 1))
    est = radial_epiderivative(p, [1.0], [-1.0], GridParams(t0=0.25, beta=0.25))
    assert est.value == -1.0 and est.t_star == 0.25


def test_long_scan_crosses_chunk_boundaries():
    # about 2e5 probes: several vectorized blocks
    p = Problem("negsq", lambda X: -X[:, 0] ** 2, BoxDomain.uniform(-1, 1, 1))
    g = GridParams(t0=1e-5, beta=1e-5, t_floor=1e-6)
    est = radial_epiderivative(p, [0.0], [0.5], g)
    ts, qs = enumerate_ray_quotients(p, [0.0], [0.5], g)
    assert est.probes == len(ts) > 1 << 17
    assert est.value == min(qs)
    assert est.t_star == ts[int(np.argmin(qs))]


def test_input_errors():
    with pytest.raises(InfeasiblePointError):
        radial_epiderivative(sphere(), [6.0, 0.0], [1.0, 0.0], GRID)
    with pytest.raises(ValueError):
        radial_epiderivative(sphere(), [0.0, 0.0], [0.0, 0.0], GRID)
    with pytest.raises(ValueError):
        radial_epiderivative(sphere(), [0.0, 0.0], [np.nan, 0.0], GRID)


def test_non_finite_objective_names_the_probe():
    p = Problem("pole", lambda X: np.where(X[:, 0] == 0.5, np.inf, X[:, 0]), BoxDomain.uniform(0, 1, 1))
    with pytest.raises(EvaluationError) as info:
        radial_epiderivative(p, [0.0], [1.0], GRID)
    assert info.value.point[0] == 0.5


def test_oracle_examples():
    v = radial_epiderivative_oracle(sphere(), [1.0, 0.0], [-1.0, 0.0], 2.0, 100_000)
    assert v == pytest.approx(-2.0 + 2e-5, abs=1e-9)
    const = Problem("c", lambda X: np.zeros(X.shape[0]), BoxDomain.uniform(-1, 1, 2))
    assert radial_epiderivative_oracle(const, [0, 0], [1, 0], 1.0, 50) == 0.0
    assert radial_epiderivative_oracle(linear([2.0, 1.0]), [0, 0], [0.5, 1.0], 3.0, 1000) == pytest.approx(2.0)


def test_oracle_skips_infeasible_probes():
    assert radial_epiderivative_oracle(sphere(), [5.12, 5.12], [1.0, 1.0], 1.0, 100) == 0.0
    with pytest.raises(ValueError):
        radial_epiderivative_oracle(sphere(), [0, 0], [1, 0], 0.0, 10)


def test_lower_lipschitz_bound():
    # |x1| + |x2| is Lipschitz with L = sqrt(2) in the Euclidean norm
    p = Problem("l1", lambda X: np.abs(X).sum(axis=1), BoxDomain.uniform(-1, 1, 2), lipschitz_lower=np.sqrt(2))
    rng = np.random.default_rng(0)
    for _ in range(200):
        x = rng.uniform(-1, 1, 2)
        h = rng.standard_normal(2)
        est = radial_epiderivative(p, x, h, GridParams(t0=rng.uniform(1e-3, 0.1), beta=rng.uniform(1e-3, 0.1)))
        assert est.value >= -p.lipschitz_lower * np.linalg.norm(h) - 1e-12


names = st.sampled_from(benchmarks.NAMES)
unit = st.floats(0.0, 1.0)


@settings(max_examples=150, deadline=None)
@given(names, st.tuples(unit, unit), st.tuples(st.floats(-1, 1), st.floats(-1, 1)),
       st.floats(1e-3, 0.5), st.floats(1e-3, 0.5))
def test_estimate_invariants(name, u, d, t0, beta):
    p = benchmarks.get_problem(name)
    box = p.domain
    x = box.lower + np.array(u) * (box.upper - box.lower)
    h = np.array(d) * (box.upper - box.lower)
    if not np.any(h != 0):
        return
    est = radial_epiderivative(p, x, h, GridParams(t0=t0, beta=beta, t_floor=min(t0, beta)))
    assert box.contains(est.endpoint)
    fx = p(x)
    if est.value < 0:
        assert est.t_star > 0
        np.testing.assert_array_equal(est.endpoint, x + est.t_star * h)
        assert est.endpoint_f == p(est.endpoint) < fx
    else:
        assert est.t_star == 0.0
        np.testing.assert_array_equal(est.endpoint, x)


@settings(max_examples=60, deadline=None)
@given(names, st.tuples(unit, unit), st.tuples(st.floats(-1, 1), st.floats(-1, 1)), st.integers(1, 4))
def test_refinement_never_raises_the_value(name, u, d, m):
    # halving beta (exactly, in binary) keeps every coarse probe in the fine grid
    p = benchmarks.get_problem(name)
    box = p.domain
    x = box.lower + np.array(u) * (box.upper - box.lower)
    h = np.array(d) * (box.upper - box.lower) * 0.25
    if not np.any(h != 0):
        return
    coarse = radial_epiderivative(p, x, h, GridParams(t0=0.125, beta=0.125))
    fine = radial_epiderivative(p, x, h, GridParams(t0=0.125, beta=0.125 / 2**m))
    assert fine.value <= coarse.value
