import json
import logging
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from radepi.reporting import (
    CSV_HEADER,
    ResultRow,
    UnmatchedRowsError,
    aggregate,
    emit,
    gap,
    read_rows,
    summarize,
    win_counts,
)

reals = st.floats(-1e300, 1e300, allow_nan=False, allow_infinity=False)


def row(problem="Sphere", algorithm="RPSO", best_f=0.5, f_star=0.0, seed=0, particles=30, iters=1000):
    return ResultRow.build(problem, algorithm, best_f, f_star, seed=seed, particles=particles,
                           iteration_limit=iters, evaluations=10, time_ms=1.5)


def test_gap_examples():
    assert gap(-894.5789, -959.6407) == pytest.approx(0.0677, abs=5e-5)
    assert gap(-430.9689, -800.0) == pytest.approx(0.4607, abs=5e-5)
    assert gap(3.0, 3.0) == 0.0


def test_gap_errors_and_warning(caplog):
    with pytest.raises(ValueError):
        gap(math.nan, 0.0)
    with pytest.raises(ValueError):
        gap(0.0, math.inf)
    with caplog.at_level(logging.WARNING, logger="radepi.reporting"):
        assert gap(-1.0, 0.0) == -1.0
    assert "negative gap" in caplog.text


@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_gap_monotone_in_f(a, b, fs):
    lo, hi = sorted((a, b))
    assert gap(lo, fs) <= gap(hi, fs)


def test_row_invariants():
    r = row(best_f=2.0, f_star=1.0)
    assert r.gap == 0.5
    assert row(f_star=None).gap is None
    with pytest.raises(ValueError):
        ResultRow("x", "NOPE", 0, 0, 1, 0.0, None, None, 0, 0.0)
    with pytest.raises(ValueError):
        ResultRow("x", "RCC", None, None, 1, 0.0, 1.0, None, 0, 0.0)


def test_summarize_examples():
    c = summarize([1, 2, 3])
    assert (c.mean, c.std_dev, c.median, c.min, c.max, c.n) == (2, 1, 2, 1, 3, 3)
    assert summarize([5]).std_dev == 0.0
    c = summarize([0.0677, 0.0677])
    assert c.mean == 0.0677 and c.std_dev == 0.0
    with pytest.raises(ValueError):
        summarize([])


@given(st.lists(st.floats(-1e12, 1e12), min_size=1, max_size=20))
def test_summary_ordering(values):
    c = summarize(values)
    assert c.min <= c.median <= c.max
    assert c.min - 1e-9 * abs(c.min) <= c.mean <= c.max + 1e-9 * abs(c.max)
    assert c.std_dev >= 0


def test_aggregate_groups():
    rows = [row(best_f=v, seed=s) for s, v in enumerate([1.0, 2.0, 3.0])] + [row(algorithm="PSO", best_f=9.0)]
    cells = aggregate(rows)
    assert cells[("Sphere", "RPSO")].mean == 2.0
    assert cells[("Sphere", "PSO")].n == 1
    gaps = aggregate(rows + [row(f_star=None, seed=7)], value="gap")
    assert gaps[("Sphere", "RPSO")].n == 3
    with pytest.raises(ValueError):
        aggregate([])


def test_win_counts_examples():
    a = [row(algorithm="RPSO", best_f=0.0, seed=s) for s in range(5)]
    b = [row(algorithm="PSO", best_f=1.0, seed=s) for s in range(5)]
    assert win_counts(a + b, ("RPSO", "PSO")) == (5, 0, 0)
    assert win_counts(a + b, ("PSO", "RPSO")) == (0, 5, 0)
    same = [row(algorithm="PSO", best_f=0.0 + 1e-10, seed=s) for s in range(5)]
    assert win_counts(a + same, ("RPSO", "PSO")) == (0, 0, 5)


def test_win_counts_table_scale():
    rpso, pso = [], []
    for s in range(216):
        rpso.append(row("Alpine1", "RPSO", 0.0 if s < 194 else 1.0, seed=s))
        pso.append(row("Alpine1", "PSO", 0.5, seed=s))
    assert win_counts(rpso + pso, ("RPSO", "PSO")) == (194, 22, 0)


def test_win_counts_orphans_and_duplicates():
    with pytest.raises(UnmatchedRowsError) as info:
        win_counts([row(algorithm="RPSO", seed=1), row(algorithm="PSO", seed=2)], ("RPSO", "PSO"))
    assert len(info.value.orphans) == 2
    with pytest.raises(ValueError):
        win_counts([row(seed=1), row(seed=1), row(algorithm="PSO", seed=1)], ("RPSO", "PSO"))


@given(st.lists(st.tuples(reals, reals), min_size=1, max_size=10))
def test_win_counts_swap_symmetry(pairs):
    rows = []
    for s, (fa, fb) in enumerate(pairs):
        rows += [row(algorithm="RPSO", best_f=fa, f_star=None, seed=s),
                 row(algorithm="PSO", best_f=fb, f_star=None, seed=s)]
    wa, wb, t = win_counts(rows, ("RPSO", "PSO"))
    assert win_counts(rows, ("PSO", "RPSO")) == (wb, wa, t)
    assert wa + wb + t == len(pairs)


def test_emit_csv(tmp_path):
    path = tmp_path / "r.csv"
    emit([row()], "csv", path)
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[0] == "problem,algorithm,seed,particles,iteration_limit,best_f,f_star,gap,evaluations,time_ms"
    assert len(lines) == 2
    emit([], "csv", path)
    assert path.read_text().splitlines() == [lines[0]]


def test_emit_json(tmp_path):
    path = tmp_path / "r.json"
    emit([row(), row(seed=None, particles=None, algorithm="RCC")], "json", path)
    data = json.loads(path.read_text())
    assert list(data[0]) == CSV_HEADER
    assert read_rows(path) == [row(), row(seed=None, particles=None, algorithm="RCC")]


def test_emit_errors(tmp_path):
    with pytest.raises(OSError) as info:
        emit([row()], "csv", tmp_path / "missing" / "r.csv")
    assert "missing" in str(info.value)
    with pytest.raises(ValueError):
        emit([row()], "xml", tmp_path / "r.xml")


@given(st.lists(st.tuples(reals, st.one_of(st.none(), reals)), max_size=8))
def test_csv_round_trip(tmp_path_factory, values):
    rows = [row(best_f=f, f_star=fs, seed=i) for i, (f, fs) in enumerate(values)]
    path = tmp_path_factory.mktemp("rt") / "r.csv"
    emit(rows, "csv", path)
    assert read_rows(path) == rows


def test_read_rows_rejects_foreign_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError):
        read_rows(path)
