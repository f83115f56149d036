"""Agent network, interaction matrix, and structural assumption checks.

The model couples a logistic resource with n consuming agents whose
consumption adjustments blend ecological information (resource vs. a
scarcity threshold) with social comparison against neighbors.  The social
side is encoded by a row-stochastic influence matrix ``omega`` where
``omega[i, j]`` is the weight agent i places on agent j's consumption.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    NegativeWeight,
    NonSquareWeights,
    NonzeroDiagonal,
    RowSumMismatch,
    ZeroOutDegreeRow,
)

ROW_SUM_TOL = 1e-9
# Equality slack for the social-dominance inequality.  Row-stochasticity makes
# the per-agent slacks sum to zero, so every admissible profile sits exactly at
# equality and the check is honest only with a small absolute allowance.
DOMINANCE_SLACK = 1e-12
COND_LIMIT = 1e12
HARVEST_GAP = 1e-12


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Network:
    """Directed weighted agent graph with row-stochastic influence weights.

    ``weights[i, j]`` > 0 means agent j influences agent i.  Zero diagonal,
    nonnegative entries, unit row sums (within 1e-9).
    """

    n: int
    weights: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "weights", _readonly(self.weights))

    def neighbors(self, i: int) -> np.ndarray:
        """Indices of agents that influence agent i."""
        return np.nonzero(self.weights[i] > 0.0)[0]


@dataclass(frozen=True)
class AgentParams:
    """Per-agent parameters: ecological/social weights, sensitivity, threshold.

    alpha and nu are convex weights (alpha + nu = 1); alpha must be positive
    so the sociability ratio theta = nu / alpha exists.  b is the gain on the
    consumption adjustment rate, rho the perceived-scarcity threshold.
    """

    alpha: np.ndarray
    nu: np.ndarray
    b: np.ndarray
    rho: np.ndarray

    def __post_init__(self):
        alpha = _readonly(self.alpha)
        nu = _readonly(self.nu)
        b = _readonly(self.b)
        rho = _readonly(self.rho)
        lengths = {arr.shape for arr in (alpha, nu, b, rho)}
        if len(lengths) != 1 or alpha.ndim != 1:
            raise DimensionMismatch("alpha, nu, b, rho must be equal-length vectors")
        if np.any(alpha <= 0.0) or np.any(alpha > 1.0):
            raise ValueError("ecological weights must lie in (0, 1]")
        if np.any(nu < 0.0) or np.any(nu >= 1.0):
            raise ValueError("social weights must lie in [0, 1)")
        if np.any(np.abs(alpha + nu - 1.0) > 1e-12):
            raise ValueError("alpha + nu must equal 1 per agent")
        if np.any(b <= 0.0):
            raise ValueError("sensitivities must be positive")
        if np.any(rho <= 0.0):
            raise ValueError("scarcity thresholds must be positive")
        for name, arr in (("alpha", alpha), ("nu", nu), ("b", b), ("rho", rho)):
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return self.alpha.shape[0]

    @property
    def theta(self) -> np.ndarray:
        """Sociability ratios nu / alpha."""
        return self.nu / self.alpha


@dataclass(frozen=True)
class AssumptionReport:
    """Outcome of the three structural checks plus diagnostics.

    Aggregate flags are conjunctions of their per-agent entries; ``details``
    carries violating agents, the condition estimate, and inequality slacks.
    """

    row_stochastic: bool
    strongly_connected: bool
    social_dominance: bool
    social_dominance_per_agent: tuple
    equilibrium_feasible: bool
    details: dict = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return (self.row_stochastic and self.strongly_connected
                and self.social_dominance and self.equilibrium_feasible)


def build_network(raw_weights, normalize: bool = False) -> Network:
    """Validate a raw weight matrix and return a row-stochastic Network.

    With ``normalize=True`` each row is divided by its sum; otherwise rows
    must already sum to one within 1e-9.
    """
    w = np.array(raw_weights, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise NonSquareWeights(f"weight matrix must be square, got shape {w.shape}")
    n = w.shape[0]
    if n < 2:
        raise NonSquareWeights("need at least two agents")
    if np.any(w < 0.0):
        i, j = np.argwhere(w < 0.0)[0]
        raise NegativeWeight(f"negative weight at ({i}, {j})")
    diag = np.abs(np.diag(w))
    if np.any(diag > 0.0):
        raise NonzeroDiagonal(f"self-influence at agent {int(np.argmax(diag > 0))}")
    row_sums = w.sum(axis=1)
    if np.any(row_sums <= 0.0):
        raise ZeroOutDegreeRow(
            f"agent {int(np.argmax(row_sums <= 0))} has no neighbors")
    if normalize:
        w = w / row_sums[:, None]
    else:
        bad = np.abs(row_sums - 1.0) > ROW_SUM_TOL
        if np.any(bad):
            i = int(np.argmax(bad))
            raise RowSumMismatch(
                f"row {i} sums to {row_sums[i]!r}; pass normalize=True to rescale")
    return Network(n=n, weights=w, normalized=normalize)


def interaction_matrix(net: Network) -> np.ndarray:
    """Identity minus the influence weights; every row sums to zero."""
    return np.eye(net.n) - net.weights


def one_norm(matrix) -> float:
    """Largest absolute column sum of a square matrix."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSquareWeights(f"expected a square matrix, got shape {m.shape}")
    return float(np.abs(m).sum(axis=0).max())


def _reachable(adj: np.ndarray, start: int) -> np.ndarray:
    """Boolean reachability from ``start`` over a dense adjacency matrix."""
    n = adj.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[start] = True
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for v in np.nonzero(adj[u])[0]:
                if not seen[v]:
                    seen[v] = True
                    nxt.append(int(v))
        frontier = nxt
    return seen


def is_strongly_connected(net: Network) -> bool:
    """Forward plus reverse reachability from node 0 on the influence digraph.

    Edge j -> i whenever weights[i, j] > 0; strong connectivity does not
    depend on which orientation is used.
    """
    adj = net.weights.T > 0.0
    return bool(_reachable(adj, 0).all() and _reachable(adj.T, 0).all())


def check_assumptions(net: Network, params: AgentParams) -> AssumptionReport:
    """Run the three structural checks required for the stability results.

    1. Equilibrium feasibility: (A 11^T + V T) numerically invertible and the
       implied total equilibrium harvest below one.
    2. Strong connectivity of the influence digraph.
    3. Social dominance: each agent's sociability bounds the weighted
       sociability of the agents it influences.
    """
    if params.n != net.n:
        raise DimensionMismatch(
            f"params for {params.n} agents, network has {net.n}")

    w = net.weights
    row_sums = w.sum(axis=1)
    row_stochastic = bool(
        np.all(np.abs(row_sums - 1.0) <= ROW_SUM_TOL)
        and np.all(w >= 0.0)
        and np.all(np.diag(w) == 0.0))

    connected = is_strongly_connected(net)

    theta = params.theta
    incoming = w.T @ theta  # entry i: sum_k w_ki theta_k
    slack = theta - incoming
    per_agent = slack >= -DOMINANCE_SLACK
    dominance = bool(per_agent.all())

    T = interaction_matrix(net)
    M = params.alpha[:, None] * np.ones((net.n, net.n)) + params.nu[:, None] * T
    cond = float(np.linalg.cond(M))
    feasible = False
    total_harvest = float("nan")
    if np.isfinite(cond) and cond < COND_LIMIT:
        y0 = np.linalg.solve(M, params.alpha * (1.0 - params.rho))
        total_harvest = float(y0.sum())
        feasible = total_harvest < 1.0 - HARVEST_GAP

    details = {
        "row_sums": row_sums.tolist(),
        "dominance_slack": slack.tolist(),
        "dominance_violators": np.nonzero(~per_agent)[0].tolist(),
        "condition_estimate": cond,
        "total_equilibrium_harvest": total_harvest,
    }
    return AssumptionReport(
        row_stochastic=row_stochastic,
        strongly_connected=connected,
        social_dominance=dominance,
        social_dominance_per_agent=tuple(bool(x) for x in per_agent),
        equilibrium_feasible=feasible,
        details=details,
    )
