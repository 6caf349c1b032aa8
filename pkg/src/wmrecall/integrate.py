"""Fixed-step RK4 integration with trajectory recording and crossing detection.

Generic ``rk4_step``/``integrate`` work on plain 1-D state vectors and an
arbitrary autonomous right-hand side. The model systems have dedicated entry
points (:func:`integrate_reduced`, :func:`integrate_network`) that dispatch to
the compiled kernels when available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import backend
from .errors import BlowUpError, ContractError
from .model import NetworkParams, NetworkState, ReducedState

#: Any state component beyond this magnitude aborts the integration. The
#: model is bounded in every regime studied, so this only catches
#: misconfiguration.
BLOWUP_LIMIT = 1e6

#: Default step sizes: the reduced system is mild; the full network at
#: tau = 54 has a wider timescale spread and gets a smaller step.
DEFAULT_DT_REDUCED = 0.01
DEFAULT_DT_NETWORK = 0.005


@dataclass(frozen=True)
class IntegrationConfig:
    dt: float
    t_end: float
    record_stride: int = 1

    def __post_init__(self):
        if not (self.dt > 0):
            raise ContractError(f"dt must be > 0, got {self.dt}")
        if not (self.t_end >= self.dt):
            raise ContractError(f"t_end must be >= dt, got t_end={self.t_end} dt={self.dt}")
        if self.record_stride < 1:
            raise ContractError(f"record_stride must be >= 1, got {self.record_stride}")

    def n_steps(self) -> int:
        """Total steps, rounded up to a whole number of record strides."""
        n = math.ceil(self.t_end / self.dt - 1e-9)
        return ((n + self.record_stride - 1) // self.record_stride) * self.record_stride


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled trajectory; immutable once returned.

    ``values`` has one row per sample; ``columns`` names its columns.
    Network trajectories are hypercolumn-major: s_1_1, s_1_2, a_1_1, a_1_2,
    s_2_1, ... Reduced trajectories use columns (d, e).
    """

    times: np.ndarray
    values: np.ndarray
    columns: tuple[str, ...]
    dt: float
    record_stride: int
    params: NetworkParams | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.times) != len(self.values):
            raise ContractError("times and values must have equal length")
        if self.values.ndim != 2 or self.values.shape[1] != len(self.columns):
            raise ContractError("values must be (n_samples, n_columns)")

    def column(self, selector: int | str) -> np.ndarray:
        if isinstance(selector, str):
            try:
                selector = self.columns.index(selector)
            except ValueError:
                raise ContractError(f"unknown column {selector!r}; have {self.columns}")
        return self.values[:, selector]

    def network_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(s, a) arrays of shape (n_samples, N, 2) for a network trajectory."""
        n_cols = self.values.shape[1]
        if n_cols % 4 != 0 or not self.columns[0].startswith("s_"):
            raise ContractError("not a network trajectory")
        n = n_cols // 4
        blocks = self.values.reshape(len(self.times), n, 4)
        return blocks[:, :, 0:2].copy(), blocks[:, :, 2:4].copy()


def rk4_step(rhs: Callable, y: np.ndarray, dt: float, t: float = 0.0) -> np.ndarray:
    """One classical RK4 step of the autonomous system y' = rhs(y)."""
    if not (dt > 0):
        raise ContractError(f"dt must be > 0, got {dt}")
    y = np.asarray(y, dtype=float)
    k1 = np.asarray(rhs(y), dtype=float)
    k2 = np.asarray(rhs(y + 0.5 * dt * k1), dtype=float)
    k3 = np.asarray(rhs(y + 0.5 * dt * k2), dtype=float)
    k4 = np.asarray(rhs(y + dt * k3), dtype=float)
    out = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.isfinite(out).all():
        raise BlowUpError(f"non-finite state after step at t={t}", time=t)
    return out


def integrate(rhs: Callable, initial, config: IntegrationConfig,
              columns: Sequence[str] | None = None) -> Trajectory:
    """Integrate an arbitrary 1-D system, recording every record_stride steps."""
    y = np.atleast_1d(np.asarray(initial, dtype=float)).copy()
    n_steps = config.n_steps()
    stride = config.record_stride
    n_rec = n_steps // stride + 1
    values = np.empty((n_rec, y.size))
    values[0] = y
    rec = 0
    for step in range(n_steps):
        t = step * config.dt
        y = rk4_step(rhs, y, config.dt, t=t)
        if np.abs(y).max() > BLOWUP_LIMIT:
            raise BlowUpError(
                f"state magnitude exceeded {BLOWUP_LIMIT:g} at t={t + config.dt:g}",
                time=t + config.dt,
            )
        if (step + 1) % stride == 0:
            rec += 1
            values[rec] = y
    times = np.arange(n_rec) * (config.dt * stride)
    if columns is None:
        columns = tuple(f"y{i}" for i in range(y.size))
    return Trajectory(times=times, values=values, columns=tuple(columns),
                      dt=config.dt, record_stride=stride)


def integrate_reduced(initial: ReducedState, kappa: float, g_a: float, tau: float,
                      config: IntegrationConfig) -> Trajectory:
    """Integrate the (d, e) difference system via the active kernel backend."""
    n_steps = config.n_steps()
    stride = config.record_stride
    n_rec = n_steps // stride + 1
    d = np.empty(n_rec)
    e = np.empty(n_rec)
    bad = backend.reduced_trajectory(initial.d, initial.e, kappa, g_a, tau,
                                     config.dt, n_steps, stride, BLOWUP_LIMIT, d, e)
    if bad >= 0:
        raise BlowUpError(f"reduced system blew up at t={bad * config.dt:g}",
                          time=bad * config.dt)
    times = np.arange(n_rec) * (config.dt * stride)
    return Trajectory(times=times, values=np.column_stack([d, e]),
                      columns=("d", "e"), dt=config.dt, record_stride=stride,
                      meta={"kappa": kappa, "g_a": g_a, "tau": tau})


def integrate_network(initial: NetworkState, params: NetworkParams,
                      config: IntegrationConfig) -> Trajectory:
    """Integrate the full N-hypercolumn network via the active kernel backend."""
    if initial.n_hypercolumns != params.n_hypercolumns:
        raise ContractError("initial state and params disagree on N")
    n = params.n_hypercolumns
    n_steps = config.n_steps()
    stride = config.record_stride
    n_rec = n_steps // stride + 1
    out_s = np.empty((n_rec, n, 2))
    out_a = np.empty((n_rec, n, 2))
    scratch = np.empty((8, n, 2))
    bad = backend.network_trajectory(
        np.ascontiguousarray(initial.s), np.ascontiguousarray(initial.a),
        params.omega, params.g_a, params.tau,
        config.dt, n_steps, stride, BLOWUP_LIMIT, out_s, out_a, scratch)
    if bad >= 0:
        raise BlowUpError(f"network blew up at t={bad * config.dt:g}",
                          time=bad * config.dt)
    times = np.arange(n_rec) * (config.dt * stride)
    values = np.concatenate([out_s, out_a], axis=2).reshape(n_rec, 4 * n)
    columns = tuple(
        f"{var}_{i + 1}_{j + 1}"
        for i in range(n)
        for var, j in (("s", 0), ("s", 1), ("a", 0), ("a", 1))
    )
    return Trajectory(times=times, values=values, columns=columns,
                      dt=config.dt, record_stride=stride, params=params)


def detect_crossings(traj: Trajectory, component: int | str, level: float,
                     direction: str = "both") -> list[float]:
    """Linearly interpolated times where a component crosses ``level``.

    direction is one of 'up', 'down', 'both'.
    """
    if direction not in ("up", "down", "both"):
        raise ContractError(f"direction must be up/down/both, got {direction!r}")
    if len(traj.times) < 2:
        raise ContractError("trajectory must have at least 2 samples")
    x = traj.column(component) - level
    t = traj.times
    out = []
    for i in range(len(x) - 1):
        a, b = x[i], x[i + 1]
        up = a < 0.0 <= b
        down = a > 0.0 >= b
        if (direction == "up" and not up) or (direction == "down" and not down):
            continue
        if not (up or down):
            continue
        frac = -a / (b - a)
        out.append(float(t[i] + frac * (t[i + 1] - t[i])))
    return out
