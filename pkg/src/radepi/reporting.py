"""Gap metric, per-cell statistics, win counts and result-file I/O."""

from __future__ import annotations

import csv
import json
import logging
import math
import statistics
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

log = logging.getLogger(__name__)

ALGORITHMS = ("CC", "RCC", "PSO", "RPSO")

CSV_HEADER = ["problem", "algorithm", "seed", "particles", "iteration_limit",
              "best_f", "f_star", "gap", "evaluations", "time_ms"]


def gap(f: float, f_star: float) -> float:
    """Normalized optimality gap ``(f - f*) / (1 + |f*|)``."""
    if not (math.isfinite(f) and math.isfinite(f_star)):
        raise ValueError(f"gap needs finite inputs, got f={f!r}, f_star={f_star!r}")
    g = (f - f_star) / (1.0 + abs(f_star))
    if g < 0:
        log.warning("negative gap %.6g: f=%r is below f_star=%r", g, f, f_star)
    return g


@dataclass(frozen=True)
class ResultRow:
    problem: str
    algorithm: str
    seed: Optional[int]
    particles: Optional[int]
    iteration_limit: int
    best_f: float
    f_star: Optional[float]
    gap: Optional[float]
    evaluations: int
    time_ms: float

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if (self.f_star is None) != (self.gap is None):
            raise ValueError("gap must be present exactly when f_star is")

    @classmethod
    def build(cls, problem, algorithm, best_f, f_star, *, seed=None, particles=None,
              iteration_limit, evaluations, time_ms) -> "ResultRow":
        g = None if f_star is None else gap(best_f, f_star)
        return cls(problem, algorithm, seed, particles, iteration_limit, float(best_f),
                   None if f_star is None else float(f_star), g, int(evaluations), float(time_ms))

    def key(self) -> Tuple:
        return (self.problem, self.seed, self.particles, self.iteration_limit)


@dataclass(frozen=True)
class AggregateCell:
    mean: float
    std_dev: float
    median: float
    min: float
    max: float
    n: int


def summarize(values: Sequence[float]) -> AggregateCell:
    values = [float(v) for v in values]
    if not values:
        raise ValueError("cannot aggregate an empty group")
    sd = statistics.stdev(values) if len(values) > 1 else 0.0
    return AggregateCell(statistics.fmean(values), sd, statistics.median(values),
                         min(values), max(values), len(values))


def aggregate(rows: Iterable[ResultRow], key: Sequence[str] = ("problem", "algorithm"),
              value: str = "best_f") -> Dict[Tuple, AggregateCell]:
    """Group ``rows`` by the ``key`` fields and summarize ``value`` per group.

    Groups where ``value`` is missing (e.g. ``gap`` without ``f_star``) are
    skipped.
    """
    groups: Dict[Tuple, List[float]] = {}
    rows = list(rows)
    if not rows:
        raise ValueError("aggregate needs at least one row")
    for row in rows:
        v = getattr(row, value)
        if v is None:
            continue
        groups.setdefault(tuple(getattr(row, k) for k in key), []).append(v)
    return {k: summarize(v) for k, v in groups.items()}


class UnmatchedRowsError(ValueError):
    def __init__(self, orphans):
        self.orphans = orphans
        listing = "; ".join(f"{alg} {key}" for alg, key in orphans)
        super().__init__(f"unmatched configurations: {listing}")


def win_counts(rows: Iterable[ResultRow], pair: Tuple[str, str], tolerance: float = 1e-9,
               problem: Optional[str] = None) -> Tuple[int, int, int]:
    """Head-to-head tally ``(wins_a, wins_b, ties)`` over matched runs.

    Runs are matched on (problem, seed, particles, iteration_limit); a pair
    whose ``best_f`` values differ by at most ``tolerance`` is a tie.
    """
    a, b = pair
    side = {a: {}, b: {}}
    for row in rows:
        if row.algorithm in side and (problem is None or row.problem == problem):
            bucket = side[row.algorithm]
            if row.key() in bucket:
                raise ValueError(f"duplicate {row.algorithm} row for {row.key()}")
            bucket[row.key()] = row.best_f
    orphans = [(a, k) for k in side[a] if k not in side[b]] + [(b, k) for k in side[b] if k not in side[a]]
    if orphans:
        raise UnmatchedRowsError(orphans)
    wa = wb = ties = 0
    for k, fa in side[a].items():
        fb = side[b][k]
        if abs(fa - fb) <= tolerance:
            ties += 1
        elif fa < fb:
            wa += 1
        else:
            wb += 1
    return wa, wb, ties


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def write_csv(rows: Sequence[ResultRow], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([_fmt(getattr(row, name)) for name in CSV_HEADER])


def emit(rows: Sequence[ResultRow], format: str, path) -> None:
    """Write rows as CSV or JSON; I/O failures raise OSError naming ``path``."""
    path = Path(path)
    if format not in ("csv", "json"):
        raise ValueError(f"unknown format {format!r}")
    try:
        with open(path, "w", newline="") as fh:
            if format == "csv":
                write_csv(rows, fh)
            else:
                json.dump([asdict(r) for r in rows], fh, indent=1)
                fh.write("\n")
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write results to {path}: {exc.strerror}") from exc


_INT_FIELDS = {"seed", "particles", "iteration_limit", "evaluations"}
_FLOAT_FIELDS = {"best_f", "f_star", "gap", "time_ms"}


def _parse(name: str, text: str):
    if text == "" or text is None:
        return None
    if name in _INT_FIELDS:
        return int(text)
    if name in _FLOAT_FIELDS:
        return float(text)
    return text


def read_rows(path) -> List[ResultRow]:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json" or text.lstrip().startswith("["):
        return [ResultRow(**{f.name: d.get(f.name) for f in fields(ResultRow)}) for d in json.loads(text)]
    reader = csv.DictReader(text.splitlines())
    if reader.fieldnames != CSV_HEADER:
        raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
    return [ResultRow(**{k: _parse(k, v) for k, v in rec.items()}) for rec in reader]
