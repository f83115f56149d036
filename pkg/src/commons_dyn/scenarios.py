"""Scenario generation: sociability profiles, regime presets, random networks.

Societies are parameterized by a positive sociability profile theta and a
single multiplier delta: alpha_i = 1/(1 + delta theta_i) and nu_i = 1 -
alpha_i, so nu_i / alpha_i = delta theta_i.  Scaling delta trades ecological
against social weighting without touching the dominance condition, which is
scale-invariant.

Because the influence weights are row-stochastic, the per-agent dominance
slacks sum to zero: an admissible profile must satisfy the condition with
equality everywhere, i.e. theta must be a positive left fixed point of the
weight matrix (its stationary distribution, up to scale).  Profiles for
arbitrary networks are therefore derived from that fixed point rather than
sampled.

All randomness flows through ``numpy.random.default_rng`` (PCG64) with a
64-bit seed; generated objects are reproducible from (seed, shape) alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import equilibrium
from .errors import (
    AssumptionThreeViolated,
    ConnectivityResampleExhausted,
    DimensionMismatch,
    InfeasibleEquilibrium,
    NonPositiveDelta,
    NonPositiveTheta,
    TooFewEdges,
    TooManyEdges,
)
from .network import (
    DOMINANCE_SLACK,
    AgentParams,
    Network,
    is_strongly_connected,
)

# Regime multipliers: chosen so the mean ecological weight on the reference
# profile lands at ~0.98 (ecology-driven), ~0.53 (balanced), ~0.06
# (socially-driven).
PRO_ECOLOGICAL_DELTA = 0.1
PRO_SOCIAL_DELTA = 100.0

PRESET_LABELS = ("pro_social", "pro_ecological", "equal")

_REFERENCE_THETA = (
    0.1826, 0.3296, 0.2313, 0.3454, 0.1987, 0.1923, 0.1642, 0.1989, 0.1182,
    0.2198, 0.1124, 0.0734, 0.1592, 0.3608, 0.1913, 0.1810, 0.2098, 0.1206,
    0.3210, 0.0606, 0.0597, 0.1302, 0.0808, 0.1336, 0.1638,
)

CONNECTIVITY_ATTEMPTS = 10_000
FEASIBILITY_ATTEMPTS = 100


@dataclass(frozen=True)
class ScenarioConfig:
    """One runnable configuration: network, parameters, and provenance."""

    network: Network
    params: AgentParams
    theta: np.ndarray
    delta: float
    label: str
    seed: int
    def __post_init__(self):
        arr = np.asarray(self.theta, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "theta", arr)


def reference_theta() -> np.ndarray:
    """Built-in 25-agent sociability profile used by the bundled scenarios."""
    return np.array(_REFERENCE_THETA)


def equal_delta(theta) -> float:
    """Multiplier that balances ecological and social weights on average."""
    theta = np.asarray(theta, dtype=float)
    return float(1.0 / theta.mean())


def delta_parameterization(theta, delta: float):
    """Ecological/social weight vectors for a scaled sociability profile.

    alpha = 1/(1 + delta theta), nu = 1 - alpha; the pair sums to one
    exactly and nu/alpha reproduces delta theta to rounding.
    """
    theta = np.asarray(theta, dtype=float)
    if np.any(theta <= 0.0) or not np.all(np.isfinite(theta)):
        raise NonPositiveTheta("sociability entries must be positive and finite")
    if not (np.isfinite(delta) and delta > 0.0):
        raise NonPositiveDelta(f"delta must be positive, got {delta!r}")
    alpha = 1.0 / (1.0 + delta * theta)
    nu = 1.0 - alpha
    return alpha, nu


def random_network(n: int, m: int, seed: int) -> Network:
    """Uniform random strongly connected digraph with m edges, uniform rows.

    Edges are drawn without replacement from the n(n-1) ordered pairs and
    redrawn until the digraph is strongly connected (capped).  Each agent
    weights its drawn neighbors uniformly.
    """
    if n < 2:
        raise TooFewEdges("need at least two agents")
    if m < n:
        raise TooFewEdges(f"{m} edges cannot strongly connect {n} agents")
    if m > n * (n - 1):
        raise TooManyEdges(f"{m} edges exceed the {n * (n - 1)} ordered pairs")
    rng = np.random.default_rng(seed)
    for _ in range(CONNECTIVITY_ATTEMPTS):
        flat = rng.choice(n * (n - 1), size=m, replace=False)
        rows = flat // (n - 1)
        cols = flat % (n - 1)
        cols = np.where(cols >= rows, cols + 1, cols)
        w = np.zeros((n, n))
        w[rows, cols] = 1.0
        deg = w.sum(axis=1)
        if np.any(deg == 0.0):
            continue
        w /= deg[:, None]
        net = Network(n=n, weights=w, normalized=True)
        if is_strongly_connected(net):
            return net
    raise ConnectivityResampleExhausted(
        f"no strongly connected draw in {CONNECTIVITY_ATTEMPTS} attempts")


def admissible_theta(net: Network, mean: float | None = None) -> np.ndarray:
    """Dominance-admissible sociability profile for a network.

    Returns the stationary distribution of the influence weights scaled to
    the requested mean (default: the reference profile's mean).  Requires
    strong connectivity for positivity.
    """
    n = net.n
    system = np.vstack([np.eye(n) - net.weights.T, np.ones((1, n))])
    rhs = np.zeros(n + 1)
    rhs[-1] = 1.0
    pi, *_ = np.linalg.lstsq(system, rhs, rcond=None)
    if np.any(pi <= 0.0):
        raise AssumptionThreeViolated(
            "no positive admissible profile; is the network strongly connected?")
    target = float(np.mean(reference_theta())) if mean is None else float(mean)
    return pi * (target / pi.mean())


def dominance_holds(net: Network, theta) -> bool:
    """Social-dominance condition for a profile on a network."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape[0] != net.n:
        raise DimensionMismatch("theta length does not match network")
    slack = theta - net.weights.T @ theta
    return bool(np.all(slack >= -DOMINANCE_SLACK))


def preset(name: str, theta, net: Network, b, rho, seed: int = 0) -> ScenarioConfig:
    """Build a labeled configuration in one of the three weighting regimes."""
    theta = np.asarray(theta, dtype=float)
    if name == "pro_social":
        delta = PRO_SOCIAL_DELTA
    elif name == "pro_ecological":
        delta = PRO_ECOLOGICAL_DELTA
    elif name == "equal":
        delta = equal_delta(theta)
    else:
        raise ValueError(f"unknown preset {name!r}; choose from {PRESET_LABELS}")
    if not dominance_holds(net, theta):
        raise AssumptionThreeViolated(
            f"profile is not admissible on this network (preset {name!r})")
    alpha, nu = delta_parameterization(theta, delta)
    params = AgentParams(alpha=alpha, nu=nu, b=np.asarray(b, dtype=float),
                         rho=np.asarray(rho, dtype=float))
    return ScenarioConfig(network=net, params=params, theta=theta, delta=delta,
                          label=name, seed=seed)


def draw_agent_inputs(net: Network, theta, deltas, seed: int,
                      b_value: float | None = None):
    """Seeded default draws of sensitivities and scarcity thresholds.

    b and rho are uniform on [0, 1] (b optionally pinned to a constant);
    rho is redrawn, up to a cap, until the equilibrium is feasible for every
    requested regime multiplier.
    """
    rng = np.random.default_rng(seed)
    n = net.n
    if b_value is None:
        b = rng.uniform(size=n)
        b = np.where(b <= 0.0, 0.5, b)
    else:
        b = np.full(n, float(b_value))
    theta = np.asarray(theta, dtype=float)
    for _ in range(FEASIBILITY_ATTEMPTS):
        rho = rng.uniform(size=n)
        if np.any(rho <= 0.0):
            continue
        try:
            for delta in deltas:
                alpha, nu = delta_parameterization(theta, delta)
                params = AgentParams(alpha=alpha, nu=nu, b=b, rho=rho)
                equilibrium(params, net)
        except InfeasibleEquilibrium:
            continue
        return b, rho
    raise InfeasibleEquilibrium(
        f"no feasible threshold draw in {FEASIBILITY_ATTEMPTS} attempts")
