"""Networked resource-consumption dynamics: simulation and certification.

A single renewable resource grows logistically and is harvested by n agents
whose consumption efforts adjust to a blend of ecological information
(stock vs. a scarcity threshold) and social comparison over a directed,
row-stochastic influence network.  The package builds and validates such
models, computes their equilibrium, integrates the equilibrium-centered
dynamics with fixed-step RK4 (numba-accelerated, numpy fallback), verifies
an energy-descent stability certificate, and computes finite-horizon
sustainability certificates based on box invariance of the log-resource
trajectory.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    AssumptionThreeViolated,
    CommonsDynError,
    ConnectivityResampleExhausted,
    DimensionMismatch,
    HorizonNotCovered,
    InfeasibleEquilibrium,
    InitialStateOutsideBox,
    InvalidBox,
    NegativeWeight,
    NonPositiveDelta,
    NonPositiveResource,
    NonPositiveTheta,
    NonSquareWeights,
    NonSymmetric,
    NonzeroDiagonal,
    RowSumMismatch,
    TooFewEdges,
    TooManyEdges,
    WindowInfeasible,
    ZeroOutDegreeRow,
)
from .network import (  # noqa: F401
    AgentParams,
    AssumptionReport,
    Network,
    build_network,
    check_assumptions,
    interaction_matrix,
    is_strongly_connected,
    one_norm,
)
from .dynamics import (  # noqa: F401
    Equilibrium,
    OriginalState,
    ShiftedState,
    coordinate_transform,
    equilibrium,
    from_shifted,
    original_field,
    shifted_field,
    to_shifted,
)
from .integrator import (  # noqa: F401
    DEFAULT_STEP,
    Trajectory,
    convergence_time,
    integrate,
    integrate_shifted,
)
from .stability import (  # noqa: F401
    DescentReport,
    SpectralReport,
    descent_check,
    gram_matrix,
    lyapunov,
    lyapunov_rate,
    lyapunov_values,
    spectral_certificate,
)
from .sustainability import (  # noqa: F401
    SustainabilityBox,
    SustainabilityCertificate,
    SustainabilityConstants,
    box_invariance,
    certify,
    constants,
    minimal_window,
)
from .scenarios import (  # noqa: F401
    PRO_ECOLOGICAL_DELTA,
    PRO_SOCIAL_DELTA,
    ScenarioConfig,
    admissible_theta,
    delta_parameterization,
    draw_agent_inputs,
    equal_delta,
    preset,
    random_network,
    reference_theta,
)
from ._kernels import active_backend  # noqa: F401
