"""File formats: model JSON, report/certificate JSON, trajectory CSV, manifests.

The model file is a scenario description::

    {
      "label": "custom",            # optional
      "delta": 1.0,                 # optional sociability multiplier
      "seed": 0,                    # optional
      "theta": [...],               # per-agent sociability, positive
      "b": [...], "rho": [...],     # sensitivities and thresholds
      "network": {"n": 2, "weights": [[...]], "normalized": false}
    }

All emitted text is UTF-8 with '\n' line endings and repr-rounded floats, so
identical runs produce identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from jsonschema import Draft202012Validator

from . import __version__
from .network import AgentParams, AssumptionReport, Network, build_network
from .scenarios import ScenarioConfig, delta_parameterization
from .stability import SpectralReport
from .sustainability import SustainabilityBox, SustainabilityCertificate

MODEL_SCHEMA = {
    "type": "object",
    "required": ["theta", "b", "rho", "network"],
    "properties": {
        "label": {"type": "string"},
        "delta": {"type": "number", "exclusiveMinimum": 0},
        "seed": {"type": "integer"},
        "theta": {"type": "array", "minItems": 2,
                  "items": {"type": "number", "exclusiveMinimum": 0}},
        "b": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}},
        "rho": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}},
        "network": {
            "type": "object",
            "required": ["n", "weights"],
            "properties": {
                "n": {"type": "integer", "minimum": 2},
                "weights": {"type": "array",
                            "items": {"type": "array",
                                      "items": {"type": "number"}}},
                "normalized": {"type": "boolean"},
            },
        },
    },
}

_validator = Draft202012Validator(MODEL_SCHEMA)


class SchemaError(ValueError):
    """Model file does not match the schema; message carries JSON pointers."""


def _json_pointer(error) -> str:
    return "/" + "/".join(str(p) for p in error.absolute_path)


def validate_model_dict(data) -> None:
    errors = sorted(_validator.iter_errors(data), key=_json_pointer)
    if errors:
        lines = [f"{_json_pointer(e) or '/'}: {e.message}" for e in errors]
        raise SchemaError("; ".join(lines))


def scenario_from_dict(data) -> ScenarioConfig:
    """Build a ScenarioConfig from a validated model dictionary."""
    validate_model_dict(data)
    netd = data["network"]
    net = build_network(np.array(netd["weights"], dtype=float),
                        normalize=bool(netd.get("normalized", False)))
    theta = np.array(data["theta"], dtype=float)
    b = np.array(data["b"], dtype=float)
    rho = np.array(data["rho"], dtype=float)
    if not (len(theta) == len(b) == len(rho) == net.n):
        raise SchemaError(
            f"/theta,/b,/rho,/network/n: lengths must all equal {net.n}")
    delta = float(data.get("delta", 1.0))
    alpha, nu = delta_parameterization(theta, delta)
    params = AgentParams(alpha=alpha, nu=nu, b=b, rho=rho)
    return ScenarioConfig(network=net, params=params, theta=theta, delta=delta,
                          label=str(data.get("label", "custom")),
                          seed=int(data.get("seed", 0)))


def load_scenario(path) -> ScenarioConfig:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return scenario_from_dict(data)


def network_to_dict(net: Network) -> dict:
    return {"n": net.n, "weights": net.weights.tolist(),
            "normalized": bool(net.normalized)}


def scenario_to_dict(cfg: ScenarioConfig) -> dict:
    return {
        "label": cfg.label,
        "delta": cfg.delta,
        "seed": cfg.seed,
        "theta": cfg.theta.tolist(),
        "b": cfg.params.b.tolist(),
        "rho": cfg.params.rho.tolist(),
        "network": network_to_dict(cfg.network),
    }


def assumption_report_to_dict(report: AssumptionReport) -> dict:
    return {
        "row_stochastic": report.row_stochastic,
        "strongly_connected": report.strongly_connected,
        "social_dominance": report.social_dominance,
        "social_dominance_per_agent": list(report.social_dominance_per_agent),
        "equilibrium_feasible": report.equilibrium_feasible,
        "all_pass": report.all_pass,
        "details": report.details,
    }


def spectral_report_to_dict(report: SpectralReport) -> dict:
    return {
        "eigenvalues": report.eigenvalues.tolist(),
        "psd": report.psd,
        "one_in_nullspace": report.one_in_nullspace,
        "rank_deficiency": report.rank_deficiency,
    }


def box_to_dict(box: SustainabilityBox) -> dict:
    return {"v_min": box.v_min, "v_max": box.v_max, "d_min": box.d_min,
            "d_max": box.d_max, "t_max": box.t_max}


def certificate_to_dict(cert: SustainabilityCertificate) -> dict:
    out = {
        "beta": cert.constants.beta,
        "C1": cert.constants.C1,
        "C2": cert.constants.C2,
        "xi": list(cert.constants.xi),
        "feasible": cert.feasible,
        "t_norm": cert.t_norm,
        "certified": cert.certified,
        "binding_index": cert.binding_index,
    }
    if cert.t_norm_bound is not None:
        out["t_norm_bound"] = cert.t_norm_bound
    return out


def dump_json(data, path=None) -> str:
    """Deterministic JSON text; optionally written to a file."""
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text


@dataclass(frozen=True)
class RunManifest:
    """Provenance record written before any data output."""

    command: str
    inputs: tuple
    outputs: tuple
    seed: int | None = None
    step: float | None = None
    horizon: float | None = None
    backend: str | None = None
    args: dict | None = None

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "tool_version": __version__,
            "inputs": list(self.inputs),
            "outputs": list(self.outputs),
            "seed": self.seed,
            "step": self.step,
            "horizon": self.horizon,
            "backend": self.backend,
            "args": self.args or {},
        }


def manifest_path(output_path) -> str:
    return str(output_path) + ".manifest.json"


def write_manifest(manifest: RunManifest, output_path) -> str:
    path = manifest_path(output_path)
    dump_json(manifest.to_dict(), path)
    return path


def write_trajectory_csv(path, traj, params: AgentParams, eq, lyapunov_col) -> None:
    """Trajectory CSV: t, v, dv, x, w_1..w_n, y_1..y_n, V (one row per step)."""
    n = traj.n
    header = (["t", "v", "dv", "x"]
              + [f"w_{i + 1}" for i in range(n)]
              + [f"y_{i + 1}" for i in range(n)] + ["V"])
    x = np.exp(traj.v + eq.gamma0)
    y = traj.w + eq.y0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for k in range(len(traj)):
            row = [traj.times[k], traj.v[k], traj.dv[k], x[k]]
            row.extend(traj.w[k])
            row.extend(y[k])
            row.append(lyapunov_col[k])
            fh.write(",".join(repr(float(val)) for val in row) + "\n")
