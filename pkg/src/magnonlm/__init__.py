"""Stationary light-microwave entanglement mediated by a magnon mode.

Linearized three-mode model (magnon, optical whispering-gallery mode,
microwave cavity) of a pumped YIG sphere: steady-state covariance matrix
from a Lyapunov equation and bipartite logarithmic negativity.
"""

__version__ = "0.1.0"

from .params import (  # noqa: E402
    G_BASE,
    MaterialParams,
    PhysicalConstants,
    PhysicalParams,
    derive,
)
from .dynamics import build_matrices, check_stability, steady_state  # noqa: E402
from .entanglement import PAIRS, all_pairs, log_negativity, reduce  # noqa: E402
from .errors import (  # noqa: E402
    AllUnstableError,
    NonPhysicalStateError,
    NoConvergenceError,
    ParameterError,
    SingularSolveError,
    StabilityError,
)


def solve_point(params, constants=None):
    """Steady state and the three log-negativities at one parameter point."""
    dp = derive(params) if constants is None else derive(params, constants)
    ss = steady_state(build_matrices(dp, params))
    return ss, all_pairs(ss.v)
