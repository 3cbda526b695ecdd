from .coordinate import cc_minimize, rcc_minimize
from .descent import descent_direction_search, radial_descent_minimize, signed_axis_directions
from .result import CountingProblem, RunResult
from .swarm import RPSO_MAX_STEPS, SwarmConfig, SwarmState, pso_minimize, pso_velocity, rpso_minimize

__all__ = [
    "CountingProblem",
    "RPSO_MAX_STEPS",
    "RunResult",
    "SwarmConfig",
    "SwarmState",
    "cc_minimize",
    "descent_direction_search",
    "pso_minimize",
    "pso_velocity",
    "radial_descent_minimize",
    "rcc_minimize",
    "rpso_minimize",
    "signed_axis_directions",
]
