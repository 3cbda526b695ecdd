"""Command line: ``radepi run``, ``radepi table`` and ``radepi verify``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import List, Optional, Sequence

from . import benchmarks, tables
from .core import EvaluationError, GridParams, StopConfig
from .optimizers import RPSO_MAX_STEPS, SwarmConfig, cc_minimize, pso_minimize, rcc_minimize, rpso_minimize
from .reporting import ResultRow, emit, read_rows, summarize

ALGOS = ("cc", "rcc", "pso", "rpso")
STOCHASTIC = ("pso", "rpso")


class SpecError(ValueError):
    pass


@dataclass
class RunSpec:
    problems: List[str]
    algorithms: List[str]
    seeds: List[int]
    particles: List[int]
    iteration_limit: int = 1000
    grid: GridParams = GridParams()
    stop: StopConfig = StopConfig()
    swarm: SwarmConfig = SwarmConfig()
    concave: bool = False
    out: Optional[str] = None
    format: str = "csv"
    trace: bool = False
    jobs: int = 1
    rpso_max_steps: int = RPSO_MAX_STEPS

    def __post_init__(self):
        pool = benchmarks.CONCAVE_NAMES if self.concave else benchmarks.NAMES
        bad = [p for p in self.problems if p not in pool]
        if bad:
            kind = "concave problems" if self.concave else "problems"
            raise SpecError(f"unknown {kind}: {', '.join(bad)}")
        bad = [a for a in self.algorithms if a not in ALGOS]
        if bad:
            raise SpecError(f"unknown algorithms: {', '.join(bad)} (choose from {', '.join(ALGOS)})")
        if not self.problems or not self.algorithms:
            raise SpecError("need at least one problem and one algorithm")
        if self.format not in ("csv", "json"):
            raise SpecError(f"unknown format {self.format!r}")
        if self.jobs < 1:
            raise SpecError("--jobs must be at least 1")

    def cells(self):
        """Run cells in output order; deterministic algorithms run once per problem."""
        for problem in self.problems:
            for algo in self.algorithms:
                if algo in STOCHASTIC:
                    for particles in self.particles:
                        for seed in self.seeds:
                            yield (problem, algo, seed, particles)
                else:
                    yield (problem, algo, None, None)


@dataclass
class CellOutcome:
    row: ResultRow
    trace: Optional[list] = field(default=None)


def run_cell(spec: RunSpec, cell) -> CellOutcome:
    name, algo, seed, particles = cell
    problem = benchmarks.get_problem(name, concave=spec.concave)
    stop = replace(spec.stop, iteration_limit=spec.iteration_limit)
    if algo == "rcc":
        res = rcc_minimize(problem, spec.grid, stop, trace=spec.trace)
    elif algo == "cc":
        res = cc_minimize(problem, stop, spec.grid, trace=spec.trace)
    else:
        swarm = replace(spec.swarm, particles=particles)
        if algo == "rpso":
            grid = replace(spec.grid, max_steps=spec.rpso_max_steps)
            res = rpso_minimize(problem, swarm, grid, stop, seed, trace=spec.trace)
        else:
            res = pso_minimize(problem, swarm, stop, seed, trace=spec.trace)
    row = ResultRow.build(name, algo.upper(), res.best_f, problem.f_star, seed=seed, particles=particles,
                          iteration_limit=spec.iteration_limit, evaluations=res.evaluations,
                          time_ms=res.wall_time * 1e3)
    return CellOutcome(row, res.trace)


def _run_cell_safe(args):
    spec, cell = args
    try:
        return run_cell(spec, cell)
    except (EvaluationError, ValueError, ArithmeticError) as exc:
        return exc


def _print_summary(rows: Sequence[ResultRow], out=None):
    groups = {}
    for r in rows:
        groups.setdefault((r.problem, r.algorithm, r.particles), []).append(r)
    lines = [("problem", "algorithm", "particles", "runs", "median best_f", "median gap")]
    for (problem, algo, particles), rs in groups.items():
        f = summarize([r.best_f for r in rs]).median
        gaps = [r.gap for r in rs if r.gap is not None]
        g = summarize(gaps).median if gaps else None
        lines.append((problem, algo, "" if particles is None else str(particles), str(len(rs)),
                      f"{f:.6g}", "" if g is None else f"{g:.4g}"))
    tables.print_aligned(lines, out)


def cmd_run(spec: RunSpec) -> int:
    cells = list(spec.cells())
    work = [(spec, c) for c in cells]
    if spec.jobs > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            outcomes = list(pool.map(_run_cell_safe, work))
    else:
        outcomes = []
        for w in work:
            outcomes.append(_run_cell_safe(w))
            if isinstance(outcomes[-1], Exception):
                break
    for cell, outcome in zip(cells, outcomes):
        if isinstance(outcome, Exception):
            name, algo, seed, particles = cell
            print(f"error: {name}/{algo} seed={seed} particles={particles}: {outcome}", file=sys.stderr)
            return 1
    rows = [o.row for o in outcomes]
    if spec.out:
        emit(rows, spec.format, spec.out)
        if spec.trace:
            _write_traces(Path(spec.out), outcomes)
    _print_summary(rows)
    return 0


def _write_traces(out: Path, outcomes: Sequence[CellOutcome]):
    path = out.with_name(out.stem + ".trace.csv")
    with open(path, "w") as fh:
        fh.write("problem,algorithm,seed,particles,iteration,best_f,distance\n")
        for o in outcomes:
            r = o.row
            for k, f, d in o.trace or ():
                fh.write(f"{r.problem},{r.algorithm},{'' if r.seed is None else r.seed},"
                         f"{'' if r.particles is None else r.particles},{k},{f:.17g},{d:.17g}\n")


def cmd_table(style: str, in_path, out_path) -> int:
    try:
        rows = read_rows(in_path)
    except (OSError, ValueError) as exc:
        print(f"error: cannot read {in_path}: {exc}", file=sys.stderr)
        return 1
    try:
        header, body = tables.build(style, rows)
    except tables.MissingCellsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if out_path:
        tables.write_csv(header, body, out_path)
    tables.print_aligned([header] + [tables.format_row(r) for r in body])
    return 0


def cmd_verify(seed: int = 0) -> int:
    from .verify import run_all

    report = run_all(seed=seed)
    for check in report:
        print(json.dumps(check))
    failed = [c for c in report if not c["passed"]]
    if failed:
        print(f"FAILED {failed[0]['check']}: {failed[0]['detail']}", file=sys.stderr)
        return 1
    return 0


def _int_list(text) -> List[int]:
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    return [int(v) for v in str(text).split(",") if v.strip()]


def _name_list(text) -> List[str]:
    if isinstance(text, (list, tuple)):
        return [str(v) for v in text]
    return [v.strip() for v in str(text).split(",") if v.strip()]


def _seed_list(value) -> List[int]:
    """An integer is a count (base seed from RADIAL_SEED); a list is explicit."""
    if isinstance(value, (list, tuple)) or "," in str(value):
        return _int_list(value)
    count = int(value)
    if count < 1:
        raise SpecError("--seeds count must be positive")
    base = int(os.environ.get("RADIAL_SEED", "0"))
    return [base + i for i in range(count)]


_CONFIG_ALIASES = {
    "algorithms": "algos", "iteration_limit": "iters", "t_floor": "tfloor", "epsilon": "eps",
    "count-bar": "count_bar", "max-steps": "max_steps",
}


def _load_config(path: str) -> dict:
    text = Path(path).read_text()
    if path.endswith(".json"):
        data = json.loads(text)
    else:
        try:
            import tomllib
        except ModuleNotFoundError:  # Python < 3.11
            import tomli as tomllib
        data = tomllib.loads(text)
    return {_CONFIG_ALIASES.get(k, k).replace("-", "_"): v for k, v in data.items()}


def _run_parser(sub):
    p = sub.add_parser("run", help="run optimizers over problems and seeds")
    p.add_argument("--config", help="TOML or JSON file with defaults for any flag below")
    p.add_argument("--problems", default="all", help="comma-separated names or 'all'")
    p.add_argument("--algos", default="rcc", help="comma-separated subset of cc,rcc,pso,rpso")
    p.add_argument("--seeds", default="1", help="count (base from $RADIAL_SEED) or comma list")
    p.add_argument("--particles", default="30", help="comma-separated swarm sizes")
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--t0", type=float, default=0.1)
    p.add_argument("--beta", type=float, default=0.1)
    p.add_argument("--alpha", type=float, default=0.1)
    p.add_argument("--tfloor", type=float, default=1e-6)
    p.add_argument("--max-steps", dest="max_steps", type=int, default=None,
                   help="cap on grid points per ray (default: per-algorithm)")
    p.add_argument("--eps", type=float, default=1e-4)
    p.add_argument("--count-bar", dest="count_bar", type=int, default=3)
    p.add_argument("--w", type=float, default=0.729)
    p.add_argument("--c1", type=float, default=1.49445)
    p.add_argument("--c2", type=float, default=1.49445)
    p.add_argument("--concave", action="store_true")
    p.add_argument("--out")
    p.add_argument("--format", default="csv", choices=["csv", "json"])
    p.add_argument("--trace", action="store_true", help="also write <out>.trace.csv")
    p.add_argument("--jobs", type=int, default=1)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="radepi", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    _run_parser(sub)
    t = sub.add_parser("table", help="render a comparison table from result rows")
    t.add_argument("style", choices=tables.STYLES)
    t.add_argument("--in", dest="in_path", required=True)
    t.add_argument("--out")
    v = sub.add_parser("verify", help="run the oracle and invariant checks")
    v.add_argument("--seed", type=int, default=0)
    return parser


def spec_from_args(args) -> RunSpec:
    concave = bool(args.concave)
    if args.problems == "all" or args.problems == ["all"]:
        problems = list(benchmarks.CONCAVE_NAMES if concave else benchmarks.NAMES)
    else:
        problems = _name_list(args.problems)
    algos = [a.lower() for a in _name_list(args.algos)]
    grid_kw = dict(t0=args.t0, beta=args.beta, alpha=args.alpha, t_floor=args.tfloor)
    if args.max_steps is not None:
        grid_kw["max_steps"] = args.max_steps
    try:
        grid = GridParams(**grid_kw)
        stop = StopConfig(epsilon=args.eps, iteration_limit=args.iters, count_bar=args.count_bar)
        particles = _int_list(args.particles)
        swarm = SwarmConfig(particles=particles[0] if particles else 1, w=args.w, c1=args.c1, c2=args.c2)
        seeds = _seed_list(args.seeds)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc
    if not particles or min(particles) < 1:
        raise SpecError("--particles needs positive integers")
    return RunSpec(problems, algos, seeds, particles, args.iters, grid, stop, swarm, concave,
                   args.out, args.format, bool(args.trace), args.jobs,
                   rpso_max_steps=grid.max_steps if args.max_steps is not None else RPSO_MAX_STEPS)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    if args.command == "run":
        if args.config:
            try:
                defaults = _load_config(args.config)
            except (OSError, ValueError) as exc:
                print(f"error: config {args.config}: {exc}", file=sys.stderr)
                return 2
            run_p = parser._subparsers._group_actions[0].choices["run"]
            unknown = set(defaults) - {a.dest for a in run_p._actions}
            if unknown:
                print(f"error: unknown config keys: {', '.join(sorted(unknown))}", file=sys.stderr)
                return 2
            run_p.set_defaults(**defaults)
            args = parser.parse_args(argv)
        try:
            spec = spec_from_args(args)
        except SpecError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        try:
            return cmd_run(spec)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    if args.command == "table":
        return cmd_table(args.style, args.in_path, args.out)
    return cmd_verify(args.seed)


if __name__ == "__main__":
    sys.exit(main())
