from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radepi import benchmarks, verify
from radepi.radial import radial_epiderivative


def test_registry_check_passes_and_names_corruption():
    assert verify.check_registry() == (True, "all entries consistent")
    entries = benchmarks.registry()
    i = benchmarks.NAMES.index("Trid")
    entries[i] = replace(entries[i], problem=replace(entries[i].problem, f_star=-1.5))
    passed, detail = verify.check_registry(entries)
    assert not passed and detail.startswith("Trid:")


def test_registry_check_flags_infeasible_minimizer():
    e = benchmarks.get_entry("Sphere")
    e = replace(e, problem=replace(e.problem, x_star=(np.array([9.0, 0.0]),)))
    passed, detail = verify.check_registry([e])
    assert not passed and "outside the box" in detail


def test_sampled_rays_are_feasible_and_reproducible():
    a = list(verify.sample_rays(20, seed=5))
    b = list(verify.sample_rays(20, seed=5))
    for (p, x, h, grid), (q, y, k, _) in zip(a, b):
        assert p.name == q.name
        np.testing.assert_array_equal(x, y)
        np.testing.assert_array_equal(h, k)
        assert p.domain.contains(x)
        assert grid.t_floor <= min(grid.t0, grid.beta)


@pytest.mark.parametrize("name", list(verify.CHECKS))
def test_each_check_passes(name):
    passed, detail = verify.CHECKS[name](0)
    assert passed, detail


def test_run_all_turns_crashes_into_failures(monkeypatch):
    def boom(seed):
        raise RuntimeError("kaput")

    monkeypatch.setitem(verify.CHECKS, "registry", boom)
    report = {c["check"]: c for c in verify.run_all()}
    assert report["registry"] == {"check": "registry", "passed": False, "detail": "RuntimeError: kaput"}
    assert report["oracle_equivalence"]["passed"]


def test_ulp_distance():
    assert verify.ulp_distance(1.0, 1.0) == 0
    assert verify.ulp_distance(1.0, np.nextafter(1.0, 2.0)) == 1
    assert verify.ulp_distance(0.0, 0.0) == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_linear_quotients_within_rounding_scale(seed):
    p, c, x, h, grid = verify.random_linear(np.random.default_rng(seed))
    est = radial_epiderivative(p, x, h, grid)
    if est.probes:
        scale = verify.linear_error_scale(c, x, h, grid.t0)
        assert abs(est.value - c @ h) <= 8 * scale
