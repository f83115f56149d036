"""Deterministic fixed-step RK4 integration and trajectory post-processing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import rk4_shifted
from .dynamics import Equilibrium, ShiftedState
from .network import AgentParams, Network

DEFAULT_STEP = 0.01
# Final partial steps shorter than this fraction of t_end are rounding noise,
# not a real remainder.
_REM_EPS = 1e-12


@dataclass(frozen=True)
class Trajectory:
    """Stored states and rates of one integration run.

    times are uniformly spaced by ``step`` except for an optional shorter
    final step; ``diverged`` is set when a non-finite state aborted the run,
    in which case the arrays hold the finite prefix.
    """

    times: np.ndarray
    v: np.ndarray
    w: np.ndarray
    dv: np.ndarray
    dw: np.ndarray
    step: float
    diverged: bool = False

    def __post_init__(self):
        for name in ("times", "v", "w", "dv", "dw"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self) -> int:
        return self.times.shape[0]

    @property
    def n(self) -> int:
        return self.w.shape[1]

    def state(self, k: int) -> ShiftedState:
        return ShiftedState(v=float(self.v[k]), w=self.w[k])

    def state_norms(self) -> np.ndarray:
        """Max-norm of (v, w) at every stored sample."""
        if self.n == 0:
            return np.abs(self.v)
        return np.maximum(np.abs(self.v), np.abs(self.w).max(axis=1))


def _step_layout(t_end: float, h: float):
    if h <= 0.0:
        raise ValueError("step size must be positive")
    if t_end <= 0.0:
        raise ValueError("integration horizon must be positive")
    if h > t_end:
        raise ValueError("step size must not exceed the horizon")
    n_full = int(np.floor(t_end / h + _REM_EPS))
    rem = t_end - n_full * h
    if rem <= _REM_EPS * max(1.0, t_end):
        rem = 0.0
    return n_full, rem


def _times(n_full: int, rem: float, h: float, t_end: float) -> np.ndarray:
    times = h * np.arange(n_full + 1, dtype=float)
    if rem > 0.0:
        times = np.append(times, t_end)
    return times


def integrate(field, state0: ShiftedState, t_end: float, h: float) -> Trajectory:
    """Classical RK4 over [0, t_end] for an arbitrary field callable.

    ``field(state) -> (dv, dw)``.  States and the field evaluated at them are
    stored at every step; integration aborts (``diverged=True``) on the first
    non-finite state, keeping the finite prefix.
    """
    n_full, rem = _step_layout(t_end, h)
    n_steps = n_full + (1 if rem > 0.0 else 0)
    n = state0.w.shape[0]

    v = np.empty(n_steps + 1)
    w = np.empty((n_steps + 1, n))
    dv = np.empty(n_steps + 1)
    dw = np.empty((n_steps + 1, n))
    v[0] = state0.v
    w[0] = state0.w

    def f(vc, wc):
        dvc, dwc = field(ShiftedState(v=float(vc), w=wc))
        return float(dvc), np.asarray(dwc, dtype=float)

    stored = 0
    for step in range(n_steps):
        hs = h if step < n_full else rem
        vc, wc = v[step], w[step]
        k1v, k1w = f(vc, wc)
        dv[step], dw[step] = k1v, k1w
        k2v, k2w = f(vc + 0.5 * hs * k1v, wc + 0.5 * hs * k1w)
        k3v, k3w = f(vc + 0.5 * hs * k2v, wc + 0.5 * hs * k2w)
        k4v, k4w = f(vc + hs * k3v, wc + hs * k3w)
        v[step + 1] = vc + (hs / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        w[step + 1] = wc + (hs / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        if not (np.isfinite(v[step + 1]) and np.isfinite(w[step + 1]).all()):
            break
        stored = step + 1
    dv[stored], dw[stored] = f(v[stored], w[stored])

    diverged = stored < n_steps
    times = _times(n_full, rem, h, t_end)[:stored + 1]
    return Trajectory(times=times, v=v[:stored + 1], w=w[:stored + 1],
                      dv=dv[:stored + 1], dw=dw[:stored + 1], step=h,
                      diverged=diverged)


def integrate_shifted(params: AgentParams, net: Network, eq: Equilibrium,
                      state0: ShiftedState, t_end: float, h: float = DEFAULT_STEP,
                      backend: str | None = None) -> Trajectory:
    """RK4 run of the shifted model dynamics via the compiled kernel.

    Equivalent to ``integrate`` with the shifted field, but routed through
    the numba kernel (or the pure-numpy fallback, see ``_kernels``).
    """
    n_full, rem = _step_layout(t_end, h)
    T = np.eye(net.n) - net.weights
    M = (params.b * params.nu)[:, None] * T
    g = eq.x0 * params.b * params.alpha
    v, w, dv, dw, stored, diverged = rk4_shifted(
        eq.x0, g, M, state0.v, state0.w, h, n_full, rem, backend=backend)
    times = _times(n_full, rem, h, t_end)[:stored + 1]
    return Trajectory(times=times, v=v[:stored + 1], w=w[:stored + 1],
                      dv=dv[:stored + 1], dw=dw[:stored + 1], step=h,
                      diverged=bool(diverged))


def convergence_time(traj: Trajectory, tol: float, on: str = "state"):
    """First stored time after which the chosen norm stays below tol.

    ``on`` selects the norm: 'state' for max(|v|, |w|), 'v' or 'w' for the
    individual components.  Returns None when the tail never settles.
    """
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    if on == "state":
        norms = traj.state_norms()
    elif on == "v":
        norms = np.abs(traj.v)
    elif on == "w":
        norms = np.abs(traj.w).max(axis=1) if traj.n else np.zeros(len(traj))
    else:
        raise ValueError(f"unknown norm selector {on!r}")
    above = norms >= tol
    if above[-1]:
        return None
    if not above.any():
        return float(traj.times[0])
    last_bad = int(np.nonzero(above)[0][-1])
    return float(traj.times[last_bad + 1])
