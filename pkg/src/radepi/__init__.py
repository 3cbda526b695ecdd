"""Derivative-free box-constrained minimization driven by grid estimates of
the radial epiderivative, with swarm and coordinate direction generators and
a 29-function benchmark harness.

    >>> from radepi import benchmarks, rcc_minimize
    >>> res = rcc_minimize(benchmarks.get_problem("Trid"))
    >>> round(res.best_f, 3)
    -2.0
"""

from .core import (BoxDomain, EvaluationError, GridParams, InfeasiblePointError, Problem, RngStream,
                   StopConfig, clamp_to_box, distance)
from .optimizers import (RunResult, SwarmConfig, cc_minimize, descent_direction_search, pso_minimize,
                         pso_velocity, radial_descent_minimize, rcc_minimize, rpso_minimize)
from .radial import RadialEstimate, radial_epiderivative, radial_epiderivative_oracle

__version__ = "0.1.0"

__all__ = [
    "BoxDomain",
    "EvaluationError",
    "GridParams",
    "InfeasiblePointError",
    "Problem",
    "RadialEstimate",
    "RngStream",
    "RunResult",
    "StopConfig",
    "SwarmConfig",
    "cc_minimize",
    "clamp_to_box",
    "descent_direction_search",
    "distance",
    "pso_minimize",
    "pso_velocity",
    "radial_descent_minimize",
    "radial_epiderivative",
    "radial_epiderivative_oracle",
    "rcc_minimize",
    "rpso_minimize",
]
