"""Run configuration, CSV trajectory files, and JSON report files.

CSV layout: header row, time column ``t`` first, then the trajectory columns
(hypercolumn-major for the full network, ``d,e`` for the reduced system).
Values are written in shortest round-trip decimal form, so write/read is
exact. Reports are JSON objects whose keys mirror the dataclass field names.
"""

from __future__ import annotations

import csv
import dataclasses
import enum
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ContractError
from .integrate import Trajectory


@dataclass
class RunConfig:
    """Flat run configuration; file values are overridden by CLI flags."""

    n: int = 12
    omega: float = 1.8
    g_a: float = 97.0
    tau: float = 54.0
    kappa: float | None = None
    dt: float = 0.005
    t_end: float = 500.0
    record_stride: int = 100
    trial_count: int = 8
    seed: int = 0
    kappa_min: float = 2.0
    kappa_max: float = 15.0
    kappa_step: float = 0.1
    d0: float = 0.1
    e0: float = 0.0
    out: str | None = None

    def validate(self) -> None:
        checks = [
            ("n", self.n >= 2, "must be an integer >= 2"),
            ("omega", self.omega > 0, "must be > 0"),
            ("g_a", self.g_a > 0, "must be > 0"),
            ("tau", self.tau > 1, "must be > 1"),
            ("dt", self.dt > 0, "must be > 0"),
            ("t_end", self.t_end >= self.dt, "must be >= dt"),
            ("record_stride", self.record_stride >= 1, "must be >= 1"),
            ("trial_count", self.trial_count >= 8, "must be >= 8"),
            ("kappa_step", self.kappa_step > 0, "must be > 0"),
            ("kappa_min", self.kappa_min <= self.kappa_max,
             "must not exceed kappa_max"),
        ]
        for name, ok, msg in checks:
            if not ok:
                raise ContractError(f"config field '{name}' {msg} "
                                    f"(got {getattr(self, name)!r})")


def load_config(path: str | Path) -> RunConfig:
    """Load a flat JSON key-value config file."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ContractError(f"config file {path} must hold a flat JSON object")
    known = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise ContractError(f"unknown config keys: {sorted(unknown)}")
    cfg = RunConfig(**data)
    cfg.validate()
    return cfg


def write_trajectory_csv(traj: Trajectory, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", *traj.columns])
        for t, row in zip(traj.times, traj.values):
            writer.writerow([repr(float(t)), *(repr(float(v)) for v in row)])


def write_series_csv(path: str | Path, header: list[str],
                     columns: list[np.ndarray]) -> None:
    """Write aligned 1-D series as CSV with shortest round-trip decimals."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in zip(*columns):
            writer.writerow([repr(float(v)) for v in row])


def read_trajectory_csv(path: str | Path) -> tuple[np.ndarray, np.ndarray, tuple[str, ...]]:
    """Read back (times, values, columns) from a trajectory CSV."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    data = np.asarray(rows)
    return data[:, 0], data[:, 1:], tuple(header[1:])


def to_jsonable(obj):
    """Recursively convert reports (dataclasses, enums, arrays) to JSON types."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name))
                for f in dataclasses.fields(obj)}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, dict):
        return {k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, float) and obj != obj:  # NaN has no JSON literal
        return None
    return obj


def write_report_json(report, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(to_jsonable(report), fh, indent=2, sort_keys=True)
        fh.write("\n")
