"""Finite-horizon sustainability certificates for the resource trajectory.

Sustainability over [0, t_max] means the pair (v, dv/dt) stays inside a box
of log-resource and rate bounds.  A Gronwall bound on the consumption
deviation turns that requirement into four threshold constants and a single
sufficient condition on the 1-norm of the interaction matrix; this module
computes the constants, checks the condition, inverts it for the tightest
box (the minimal window), and audits trajectories against a box sample by
sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import Equilibrium
from .errors import (
    HorizonNotCovered,
    InitialStateOutsideBox,
    InvalidBox,
    WindowInfeasible,
)
from .integrator import Trajectory
from .network import AgentParams, Network, interaction_matrix, one_norm

BACKSUB_RTOL = 1e-9


@dataclass(frozen=True)
class SustainabilityBox:
    """Allowed ranges for the log-resource deviation and its rate."""

    v_min: float
    v_max: float
    d_min: float
    d_max: float
    t_max: float

    def __post_init__(self):
        if not self.v_min < self.v_max:
            raise InvalidBox("requires v_min < v_max")
        if not self.v_max > 0.0:
            raise InvalidBox("requires v_max > 0")
        if not (self.d_min < 0.0 < self.d_max):
            raise InvalidBox("requires d_min < 0 < d_max")
        if not self.t_max > 0.0:
            raise InvalidBox("requires t_max > 0")

    def area(self) -> float:
        return (self.v_max - self.v_min) * (self.d_max - self.d_min)


@dataclass(frozen=True)
class SustainabilityConstants:
    """Gronwall constants and the four feasibility thresholds.

    beta = max_i b_i nu_i; C1 bounds ||w||_1 contributions over the horizon;
    C2 = beta ||T||_1 t_max; xi are the four thresholds that must each
    exceed C1 for the certificate to be feasible.
    """

    beta: float
    C1: float
    C2: float
    xi: tuple

    def min_xi(self) -> float:
        return min(self.xi)

    def binding_index(self) -> int:
        """1-based index of the smallest threshold (smallest index on ties)."""
        return 1 + min(range(4), key=lambda i: (self.xi[i], i))


@dataclass(frozen=True)
class SustainabilityCertificate:
    """Outcome of the sufficient sustainability condition for one instance."""

    constants: SustainabilityConstants
    feasible: bool
    t_norm: float
    t_norm_bound: float | None
    certified: bool
    binding_index: int


def constants(params: AgentParams, net: Network, eq: Equilibrium,
              box: SustainabilityBox, v0: float, w0) -> SustainabilityConstants:
    """Evaluate the Gronwall constants and thresholds for one configuration."""
    w0 = np.asarray(w0, dtype=float)
    if w0.shape[0] != params.n:
        raise InitialStateOutsideBox("w0 length does not match params")
    if not box.v_min < v0 < box.v_max:
        raise InitialStateOutsideBox(
            f"v0={v0!r} must lie strictly inside [{box.v_min!r}, {box.v_max!r}]")
    x0 = eq.x0
    growth_cap = x0 * math.expm1(box.v_max)  # max regrowth rate inside the box
    sens = float(np.sum(params.b * params.alpha))
    beta = float(np.max(params.b * params.nu))
    C1 = float(np.abs(w0).sum() + box.t_max * growth_cap * sens)
    C2 = beta * one_norm(interaction_matrix(net)) * box.t_max
    xi1 = growth_cap
    xi2 = (v0 - box.t_max * growth_cap - box.v_min) / box.t_max
    xi3 = box.d_max + x0 * math.expm1(box.v_min)
    xi4 = -box.d_min - growth_cap
    return SustainabilityConstants(beta=beta, C1=C1, C2=C2,
                                   xi=(xi1, xi2, xi3, xi4))


def certify(params: AgentParams, net: Network, eq: Equilibrium,
            box: SustainabilityBox, v0: float, w0) -> SustainabilityCertificate:
    """Check the sufficient condition: every threshold above C1 and
    ||T||_1 within the admissible bound."""
    consts = constants(params, net, eq, box, v0, w0)
    t_norm = one_norm(interaction_matrix(net))
    feasible = consts.min_xi() > consts.C1
    bound = None
    certified = False
    if feasible:
        if consts.beta > 0.0:
            bound = math.log(consts.min_xi() / consts.C1) / (consts.beta * box.t_max)
        else:
            # no social coupling: the Gronwall amplification degenerates and
            # the consumption bound holds for any interaction matrix
            bound = math.inf
        certified = t_norm <= bound
    return SustainabilityCertificate(constants=consts, feasible=feasible,
                                     t_norm=t_norm, t_norm_bound=bound,
                                     certified=certified,
                                     binding_index=consts.binding_index())


def minimal_window(params: AgentParams, net: Network, eq: Equilibrium,
                   t_max: float, v0: float, w0) -> SustainabilityBox:
    """Tightest box whose certificate holds with equality.

    All four thresholds are pinned to e^(beta ||T||_1 t_max) C1.  The v_max
    equation is a linear fixed point (C1 itself contains v_max); the
    remaining bounds follow in the order v_min, d_min, d_max since d_max
    depends on v_min.
    """
    w0 = np.asarray(w0, dtype=float)
    if w0.shape[0] != params.n:
        raise InitialStateOutsideBox("w0 length does not match params")
    if t_max <= 0.0:
        raise InvalidBox("requires t_max > 0")
    beta = float(np.max(params.b * params.nu))
    sens = float(np.sum(params.b * params.alpha))
    k = math.exp(beta * one_norm(interaction_matrix(net)) * t_max)
    if k * t_max * sens >= 1.0:
        raise WindowInfeasible(
            f"amplified sensitivity k*t_max*sum(b*alpha)={k * t_max * sens!r} >= 1")
    u = k * float(np.abs(w0).sum()) / (1.0 - k * t_max * sens)
    if u <= 0.0:
        raise WindowInfeasible("fixed point has no positive solution (w0 = 0)")
    x0 = eq.x0
    v_max = math.log1p(u / x0)
    if not v0 < v_max:
        raise InitialStateOutsideBox(
            f"v0={v0!r} exceeds the window ceiling {v_max!r}")
    v_min = v0 - 2.0 * t_max * u
    d_min = -2.0 * u
    d_max = u - x0 * math.expm1(v_min)
    return SustainabilityBox(v_min=v_min, v_max=v_max, d_min=d_min,
                             d_max=d_max, t_max=t_max)


def box_invariance(traj: Trajectory, box: SustainabilityBox):
    """Sample-wise box check over [0, t_max].

    Returns (sustainable, first_violation) where first_violation is None or
    a (time, bound-name) pair.  The trajectory must cover the horizon.
    """
    if traj.times[-1] < box.t_max - 1e-12:
        raise HorizonNotCovered(
            f"trajectory ends at {traj.times[-1]!r}, horizon is {box.t_max!r}")
    mask = traj.times <= box.t_max + 1e-12
    times = traj.times[mask]
    v = traj.v[mask]
    dv = traj.dv[mask]
    checks = (
        ("v_min", v < box.v_min),
        ("v_max", v > box.v_max),
        ("d_min", dv < box.d_min),
        ("d_max", dv > box.d_max),
    )
    first_time = None
    first_bound = None
    for name, bad in checks:
        if bad.any():
            t = float(times[int(np.argmax(bad))])
            if first_time is None or t < first_time:
                first_time, first_bound = t, name
    if first_bound is None:
        return True, None
    return False, (first_time, first_bound)
