"""Vector fields, equilibrium, and coordinate charts of the coupled model.

Original chart: resource stock x > 0 (relative to carrying capacity) and
consumption efforts y.  Shifted chart: v = ln x - gamma0 and w = y - y0,
which places the equilibrium at the origin and keeps x = e^(v + gamma0)
structurally positive, so all integration happens there.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InfeasibleEquilibrium, NonPositiveResource
from .network import (
    COND_LIMIT,
    HARVEST_GAP,
    AgentParams,
    Network,
    interaction_matrix,
    _readonly,
)

EQ_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class OriginalState:
    """Resource stock x (> 0) and consumption-effort vector y."""

    x: float
    y: np.ndarray

    def __post_init__(self):
        if self.x <= 0.0:
            raise NonPositiveResource(f"resource stock must be positive, got {self.x}")
        object.__setattr__(self, "y", _readonly(self.y))


@dataclass(frozen=True)
class ShiftedState:
    """Log-resource deviation v and consumption deviation vector w."""

    v: float
    w: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "w", _readonly(self.w))

    @property
    def n(self) -> int:
        return self.w.shape[0]


@dataclass(frozen=True)
class Equilibrium:
    """Equilibrium consumption y0, log-resource gamma0, and stock x0 = e^gamma0."""

    y0: np.ndarray
    gamma0: float
    x0: float

    def __post_init__(self):
        object.__setattr__(self, "y0", _readonly(self.y0))


def original_field(state: OriginalState, params: AgentParams, net: Network):
    """Time derivatives (dx, dy) of the stock/consumption dynamics.

    dx = (1 - x) x - x sum(y);  dy_i = b_i (alpha_i (x - rho_i)
    - nu_i sum_j w_ij (y_i - y_j)).
    """
    y = np.asarray(state.y, dtype=float)
    if y.shape[0] != net.n or params.n != net.n:
        raise DimensionMismatch("state/params/network sizes disagree")
    x = state.x
    if x <= 0.0:
        raise NonPositiveResource(f"resource stock must be positive, got {x}")
    dx = (1.0 - x) * x - x * y.sum()
    social = y - net.weights @ y  # row sums are 1, so this is sum_j w_ij (y_i - y_j)
    dy = params.b * (params.alpha * (x - params.rho) - params.nu * social)
    return dx, dy


def equilibrium(params: AgentParams, net: Network) -> Equilibrium:
    """Solve for the unique equilibrium of the aggregate dynamics.

    y0 solves (A 11^T + V T) y0 = A (1 - rho); gamma0 = ln(1 - sum(y0)).
    Raises InfeasibleEquilibrium when the system is numerically singular,
    the total harvest reaches one, or the residual cannot be driven below
    1e-10 even after one step of iterative refinement.
    """
    if params.n != net.n:
        raise DimensionMismatch(f"params for {params.n} agents, network has {net.n}")
    n = net.n
    T = interaction_matrix(net)
    M = params.alpha[:, None] * np.ones((n, n)) + params.nu[:, None] * T
    rhs = params.alpha * (1.0 - params.rho)
    cond = float(np.linalg.cond(M))
    if not np.isfinite(cond) or cond >= COND_LIMIT:
        raise InfeasibleEquilibrium(f"equilibrium system condition estimate {cond:.3e}")
    y0 = np.linalg.solve(M, rhs)
    residual = rhs - M @ y0
    if np.abs(residual).max() >= EQ_RESIDUAL_TOL:
        y0 = y0 + np.linalg.solve(M, residual)
        residual = rhs - M @ y0
    total = float(y0.sum())
    if total >= 1.0 - HARVEST_GAP:
        raise InfeasibleEquilibrium(
            f"total equilibrium harvest {total!r} leaves no resource")
    field_residual = float(np.abs(params.b * residual).max())
    if field_residual >= EQ_RESIDUAL_TOL:
        raise InfeasibleEquilibrium(
            f"equilibrium residual {field_residual:.3e} exceeds {EQ_RESIDUAL_TOL}")
    gamma0 = float(np.log1p(-total))
    return Equilibrium(y0=y0, gamma0=gamma0, x0=float(np.exp(gamma0)))


def shifted_field(state: ShiftedState, params: AgentParams, net: Network,
                  eq: Equilibrium):
    """Time derivatives (dv, dw) of the equilibrium-centered dynamics.

    dv = -e^gamma0 (e^v - 1) - sum(w);  dw = e^gamma0 B A 1 (e^v - 1) - B V T w.
    """
    w = np.asarray(state.w, dtype=float)
    if w.shape[0] != net.n or params.n != net.n or eq.y0.shape[0] != net.n:
        raise DimensionMismatch("state/params/network/equilibrium sizes disagree")
    ev1 = np.expm1(state.v)
    dv = -eq.x0 * ev1 - w.sum()
    Tw = w - net.weights @ w
    dw = eq.x0 * params.b * params.alpha * ev1 - params.b * params.nu * Tw
    return float(dv), dw


def to_shifted(state: OriginalState, eq: Equilibrium) -> ShiftedState:
    """Map (x, y) to the equilibrium-centered chart; requires x > 0."""
    if state.x <= 0.0:
        raise NonPositiveResource(f"resource stock must be positive, got {state.x}")
    return ShiftedState(v=float(np.log(state.x) - eq.gamma0), w=state.y - eq.y0)


def from_shifted(state: ShiftedState, eq: Equilibrium) -> OriginalState:
    """Map (v, w) back to the stock/consumption chart."""
    return OriginalState(x=float(np.exp(state.v + eq.gamma0)), y=state.w + eq.y0)


def coordinate_transform(state, direction: str, eq: Equilibrium):
    """Convert between charts; ``direction`` is 'to_shifted' or 'from_shifted'."""
    if direction == "to_shifted":
        return to_shifted(state, eq)
    if direction == "from_shifted":
        return from_shifted(state, eq)
    raise ValueError(f"unknown direction {direction!r}")
