"""Numerical ingredients of the global-stability certificate.

The energy function e^v - v - 1 + (1/2) e^(-gamma0) w^T (AB)^{-1} w decreases
along trajectories whenever the symmetrized interaction form
T^T Theta + Theta T (Theta = diag(nu_i / alpha_i)) is positive semidefinite,
which the social-dominance condition guarantees.  This module evaluates the
function, its analytic rate, and the spectral structure of that form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import Equilibrium
from .errors import DimensionMismatch, NonSymmetric
from .integrator import Trajectory
from .network import AgentParams, Network, interaction_matrix

PSD_RTOL = 1e-8
NULLSPACE_RTOL = 1e-9
RANK_RTOL = 1e-8
DESCENT_RTOL = 1e-8


@dataclass(frozen=True)
class SpectralReport:
    """Spectrum summary of the symmetrized interaction form."""

    eigenvalues: np.ndarray
    psd: bool
    one_in_nullspace: bool
    rank_deficiency: int

    def __post_init__(self):
        arr = np.asarray(self.eigenvalues, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "eigenvalues", arr)


@dataclass(frozen=True)
class DescentReport:
    """Monotonicity audit of the energy function along a trajectory."""

    monotone: bool
    max_increase: float
    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)


def lyapunov(v: float, w, params: AgentParams, eq: Equilibrium) -> float:
    """Energy of a shifted state; zero exactly at the origin, positive elsewhere."""
    w = np.asarray(w, dtype=float)
    if w.shape[0] != params.n:
        raise DimensionMismatch("w length does not match params")
    quad = 0.5 * np.exp(-eq.gamma0) * np.sum(w * w / (params.alpha * params.b))
    return float(np.expm1(v) - v + quad)


def lyapunov_values(traj: Trajectory, params: AgentParams, eq: Equilibrium) -> np.ndarray:
    """Energy at every stored trajectory sample (vectorized)."""
    quad = 0.5 * np.exp(-eq.gamma0) * (traj.w ** 2 / (params.alpha * params.b)).sum(axis=1)
    return np.expm1(traj.v) - traj.v + quad


def lyapunov_rate(v: float, w, params: AgentParams, net: Network,
                  eq: Equilibrium) -> float:
    """Analytic time derivative of the energy along the shifted flow.

    -e^gamma0 (e^v - 1)^2 - e^(-gamma0) w^T Theta T w.  Matches directional
    finite differences of the energy along the vector field.
    """
    w = np.asarray(w, dtype=float)
    if w.shape[0] != params.n or params.n != net.n:
        raise DimensionMismatch("state/params/network sizes disagree")
    ev1 = np.expm1(v)
    Tw = w - net.weights @ w
    quad = float(w @ (params.theta * Tw))
    return float(-eq.x0 * ev1 * ev1 - np.exp(-eq.gamma0) * quad)


def gram_matrix(net: Network, params: AgentParams) -> np.ndarray:
    """Symmetrized interaction form T^T Theta + Theta T; diagonal is 2 theta."""
    if params.n != net.n:
        raise DimensionMismatch(f"params for {params.n} agents, network has {net.n}")
    T = interaction_matrix(net)
    theta_T = params.theta[:, None] * T
    return theta_T.T + theta_T


def spectral_certificate(matrix) -> SpectralReport:
    """Eigen-analysis of a symmetric matrix with scale-relative tolerances.

    psd: min eigenvalue >= -1e-8 (1 + max |eigenvalue|);
    one_in_nullspace: ||M 1||_inf < 1e-9 ||M||_inf;
    rank_deficiency: count of eigenvalues below 1e-8 max |eigenvalue|.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSymmetric(f"expected a square matrix, got shape {m.shape}")
    scale = float(np.abs(m).max()) if m.size else 0.0
    if not np.allclose(m, m.T, rtol=0.0, atol=1e-12 * (1.0 + scale)):
        raise NonSymmetric("matrix is not symmetric")
    eigs = np.linalg.eigvalsh(m)
    lam_max = float(np.abs(eigs).max()) if eigs.size else 0.0
    psd = bool(eigs.min() >= -PSD_RTOL * (1.0 + lam_max))
    inf_norm = float(np.abs(m).sum(axis=1).max())
    m_one = float(np.abs(m.sum(axis=1)).max())
    one_null = bool(m_one < NULLSPACE_RTOL * inf_norm) if inf_norm > 0.0 else True
    if lam_max > 0.0:
        deficiency = int(np.count_nonzero(np.abs(eigs) < RANK_RTOL * lam_max))
    else:
        deficiency = m.shape[0]
    return SpectralReport(eigenvalues=np.sort(eigs), psd=psd,
                          one_in_nullspace=one_null, rank_deficiency=deficiency)


def descent_check(traj: Trajectory, params: AgentParams, net: Network,
                  eq: Equilibrium) -> DescentReport:
    """Audit energy monotonicity along a stored trajectory.

    A successive difference counts as monotone when it stays below
    1e-8 (1 + V); the worst positive jump is reported either way.
    """
    if params.n != net.n:
        raise DimensionMismatch(f"params for {params.n} agents, network has {net.n}")
    values = lyapunov_values(traj, params, eq)
    diffs = np.diff(values)
    if diffs.size == 0:
        return DescentReport(monotone=True, max_increase=0.0, values=values)
    allowance = DESCENT_RTOL * (1.0 + values[:-1])
    monotone = bool(np.all(diffs <= allowance))
    max_increase = float(max(0.0, diffs.max()))
    return DescentReport(monotone=monotone, max_increase=max_increase, values=values)
