"""File formats: complex-matrix JSON, trajectory CSV/JSON, report JSON.

Matrices travel as ``{"n": int, "re": [[...]], "im": [[...]]}``, row-major.
Trajectory CSV flattens density states row-major with interleaved real and
imaginary parts (``t,re_00,im_00,re_01,...``) and sphere states as
``t,w_1,...,w_n``; values carry 17 significant digits so identical runs
produce identical bytes.  The JSON mirror wraps the same numbers with a meta
block.
"""

from __future__ import annotations

import json

import numpy as np

from .dynamics import SphereVector, Trajectory
from .errors import ParseError
from .qss import DensityMatrix


def _fmt(x: float) -> str:
    return "%.17g" % x


def matrix_to_json_dict(a: np.ndarray) -> dict:
    a = np.asarray(a, dtype=complex)
    return {
        "n": a.shape[0],
        "re": a.real.tolist(),
        "im": a.imag.tolist(),
    }


def matrix_from_json_dict(d: dict) -> np.ndarray:
    try:
        n = int(d["n"])
        re = np.asarray(d["re"], dtype=float)
        im = np.asarray(d["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed matrix object: {exc}") from exc
    if re.shape != (n, n) or im.shape != (n, n):
        raise ParseError(
            f"matrix shape mismatch: declared n={n}, got re {re.shape}, im {im.shape}"
        )
    return re + 1j * im


def save_matrix(path: str, a: np.ndarray) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_json_dict(a), fh, indent=2)
        fh.write("\n")


def load_matrix(path: str) -> np.ndarray:
    with open(path) as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    return matrix_from_json_dict(payload)


def _trajectory_kind(traj: Trajectory) -> str:
    if all(isinstance(s, DensityMatrix) for s in traj.states):
        return "density"
    if all(isinstance(s, SphereVector) for s in traj.states):
        return "sphere"
    raise ValueError("trajectory mixes state types")


def trajectory_to_csv(traj: Trajectory) -> str:
    kind = _trajectory_kind(traj)
    n = traj.states[0].dim
    if kind == "density":
        header = ["t"]
        for i in range(n):
            for j in range(n):
                header += [f"re_{i}{j}", f"im_{i}{j}"]
    else:
        header = ["t"] + [f"w_{j + 1}" for j in range(n)]
    lines = [",".join(header)]
    for t, state in zip(traj.times, traj.states):
        row = [_fmt(t)]
        if kind == "density":
            for z in state.entries.ravel():
                row += [_fmt(z.real), _fmt(z.imag)]
        else:
            row += [_fmt(x) for x in state.values]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def trajectory_to_json_dict(traj: Trajectory) -> dict:
    kind = _trajectory_kind(traj)
    if kind == "density":
        states = [matrix_to_json_dict(s.entries) for s in traj.states]
    else:
        states = [s.values.tolist() for s in traj.states]
    return {
        "meta": {
            "integrator": traj.meta.integrator,
            "dt": traj.meta.dt,
            "coupling": list(traj.meta.coupling),
            "seed": traj.meta.seed,
            "kind": kind,
            "n": traj.states[0].dim,
        },
        "times": traj.times.tolist(),
        "states": states,
    }


def trajectory_to_text(traj: Trajectory, fmt: str) -> str:
    if fmt == "csv":
        return trajectory_to_csv(traj)
    if fmt == "json":
        return json.dumps(trajectory_to_json_dict(traj), indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def report_to_dict(report) -> dict:
    return {
        "case_id": report.case_id,
        "n": report.n,
        "seed": report.seed,
        "max_deviation": report.max_deviation,
        "time_grid": report.time_grid.tolist(),
        "per_time_deviation": report.per_time_deviation.tolist(),
        "passed": report.passed,
        "tolerance": report.tolerance,
    }


def reports_to_json(reports) -> str:
    return json.dumps([report_to_dict(r) for r in reports], indent=2) + "\n"


def probe_result_to_dict(result) -> dict:
    a, b = result.best_time_affine
    return {
        "n": result.target_spec.dim,
        "residual": result.residual,
        "best_coupling": result.best_coupling.values.tolist(),
        "best_time_affine": {"a": a, "b": b},
        "best_unitary": matrix_to_json_dict(result.best_unitary),
        "target_start": matrix_to_json_dict(result.target_spec.start.entries),
        "target_initial_tangent": matrix_to_json_dict(
            result.target_spec.initial_tangent.entries
        ),
    }
