"""Comparison layouts rendered from result rows.

Each cell summarizes all matching rows by their median, so sweeps over
several seeds collapse to one number per cell.
"""

from __future__ import annotations

import csv
import statistics
import sys
from typing import Dict, List, Sequence, Tuple

from . import benchmarks
from .reporting import ResultRow, win_counts

STYLES = ("table2", "table3", "table5", "table6", "table7")


class MissingCellsError(LookupError):
    def __init__(self, style: str, missing: Sequence[str]):
        self.missing = list(missing)
        super().__init__(f"{style}: missing cells: {', '.join(self.missing)}")


def _order(names):
    rank = {n: i for i, n in enumerate(benchmarks.NAMES)}
    return sorted(set(names), key=lambda n: rank.get(n, len(rank)))


def _median(rows: Sequence[ResultRow], attr: str):
    vals = [getattr(r, attr) for r in rows if getattr(r, attr) is not None]
    return statistics.median(vals) if vals else None


def _index(rows, *fields) -> Dict[Tuple, List[ResultRow]]:
    out: Dict[Tuple, List[ResultRow]] = {}
    for r in rows:
        out.setdefault(tuple(getattr(r, f) for f in fields), []).append(r)
    return out


def _table2(rows):
    algos = ("CC", "RCC", "PSO", "RPSO")
    idx = _index(rows, "problem", "algorithm")
    problems = _order(r.problem for r in rows)
    missing = [f"{p}/{a}" for p in problems for a in algos if (p, a) not in idx]
    if missing:
        raise MissingCellsError("table2", missing)
    header = ["problem", "f_star"] + [f"{a}-Obj" for a in algos] + [f"{a}-Gap" for a in algos]
    body = []
    for p in problems:
        cells = [idx[(p, a)] for a in algos]
        body.append([p, cells[0][0].f_star] + [_median(c, "best_f") for c in cells]
                    + [_median(c, "gap") for c in cells])
    return header, body


def _sweep(rows, style, attr, value):
    algos = ("PSO", "RPSO")
    idx = _index(rows, "problem", "algorithm", attr)
    problems = _order(r.problem for r in rows)
    levels = sorted({getattr(r, attr) for r in rows if r.algorithm in algos and getattr(r, attr) is not None})
    if not levels:
        raise MissingCellsError(style, [f"no PSO/RPSO rows with {attr}"])
    missing = [f"{p}/{a}/{attr}={lv}" for p in problems for lv in levels for a in algos
               if (p, a, lv) not in idx]
    if missing:
        raise MissingCellsError(style, missing)
    header = ["problem"] + [f"{a}@{lv}" for lv in levels for a in algos]
    body = [[p] + [_median(idx[(p, a, lv)], value) for lv in levels for a in algos] for p in problems]
    return header, body


def _table6(rows):
    problems = _order(r.problem for r in rows)
    header = ["problem", "RPSO", "PSO", "ties", "RPSO%", "PSO%"]
    body, missing = [], []
    for p in problems:
        sub = [r for r in rows if r.problem == p and r.algorithm in ("PSO", "RPSO")]
        if not sub:
            missing.append(f"{p}/PSO+RPSO")
            continue
        try:
            wr, wp, ties = win_counts(sub, ("RPSO", "PSO"))
        except ValueError as exc:
            missing.append(f"{p}: {exc}")
            continue
        decided = wr + wp
        body.append([p, wr, wp, ties,
                     100.0 * wr / decided if decided else 0.0,
                     100.0 * wp / decided if decided else 0.0])
    if missing:
        raise MissingCellsError("table6", missing)
    return header, body


def _table7(rows):
    idx = _index(rows, "problem", "algorithm")
    missing = [f"{p}/{a}" for p in benchmarks.CONCAVE_NAMES for a in ("PSO", "RPSO") if (p, a) not in idx]
    if missing:
        raise MissingCellsError("table7", missing)
    header = ["problem", "PSO", "RPSO", "f_star", "Gap-PSO", "Gap-RPSO"]
    body = []
    for p in benchmarks.CONCAVE_NAMES:
        pso, rpso = idx[(p, "PSO")], idx[(p, "RPSO")]
        body.append([p, _median(pso, "best_f"), _median(rpso, "best_f"), pso[0].f_star,
                     _median(pso, "gap"), _median(rpso, "gap")])
    return header, body


def build(style: str, rows: Sequence[ResultRow]):
    rows = list(rows)
    if style == "table2":
        return _table2(rows)
    if style == "table3":
        return _sweep(rows, style, "iteration_limit", "gap")
    if style == "table5":
        return _sweep(rows, style, "particles", "best_f")
    if style == "table6":
        return _table6(rows)
    if style == "table7":
        return _table7(rows)
    raise ValueError(f"unknown table style {style!r}")


def _cell(v) -> str:
    if v is None:
        return "na"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def format_row(row) -> List[str]:
    return [_cell(v) for v in row]


def write_csv(header, body, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in body:
            w.writerow(["" if v is None else (format(v, ".17g") if isinstance(v, float) else v) for v in row])


def print_aligned(lines: Sequence[Sequence[str]], out=None):
    out = out or sys.stdout
    widths = [max(len(str(line[i])) for line in lines) for i in range(len(lines[0]))]
    for line in lines:
        cells = [str(c).ljust(w) if i == 0 else str(c).rjust(w) for i, (c, w) in enumerate(zip(line, widths))]
        print("  ".join(cells).rstrip(), file=out)
