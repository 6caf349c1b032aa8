"""Core model types and right-hand sides.

The network is a complete graph of N hypercolumns, each holding two
minicolumns with activation s_ij and adaptation a_ij. Minicolumns inside a
hypercolumn compete through a softmax, so each hypercolumn behaves as a soft
winner-take-all unit. With homogeneous coupling of strength omega the
per-hypercolumn dynamics are

    ds_i/dt = -s_i - a_i - kappa/2 + omega * sum_{k != i} softmax(s_k)
    da_i/dt = (g_a * softmax(s_i) - a_i) / tau

with kappa = (N - 1) * omega. On the synchronization manifold (all
hypercolumns equal) the difference coordinates d = s_i1 - s_i2 and
e = a_i1 - a_i2 close into the planar system

    dd/dt = -d - e + kappa * tanh(d/2)
    de/dt = (g_a * tanh(d/2) - e) / tau

All functions here are pure; nothing holds shared mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, DomainError


@dataclass(frozen=True)
class NetworkParams:
    """Scalar model constants. kappa is always derived, never stored."""

    n_hypercolumns: int
    omega: float
    g_a: float
    tau: float

    def __post_init__(self):
        if self.n_hypercolumns < 2:
            raise DomainError(f"n_hypercolumns must be >= 2, got {self.n_hypercolumns}")
        if not (self.omega > 0):
            raise DomainError(f"omega must be > 0, got {self.omega}")
        if not (self.g_a > 0):
            raise DomainError(f"g_a must be > 0, got {self.g_a}")
        if not (self.tau > 1):
            raise DomainError(f"tau must be > 1, got {self.tau}")

    @property
    def kappa(self) -> float:
        return (self.n_hypercolumns - 1) * self.omega

    @property
    def alpha(self) -> float:
        """Inverse adaptation time constant, 1/tau."""
        return 1.0 / self.tau

    @property
    def g_bar(self) -> float:
        """Adaptation gain scaled by alpha: g_a / tau."""
        return self.alpha * self.g_a

    @property
    def beta(self) -> float:
        """g_bar + (alpha - 1) * omega; positive inside the sync window."""
        return self.g_bar + (self.alpha - 1.0) * self.omega


@dataclass(frozen=True)
class NetworkState:
    """Activations s and adaptations a, each an (N, 2) array."""

    s: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.s, dtype=float)
        a = np.asarray(self.a, dtype=float)
        if s.ndim != 2 or s.shape[1] != 2 or s.shape != a.shape:
            raise ContractError(f"state arrays must both be (N, 2), got s{s.shape} a{a.shape}")
        if not (np.isfinite(s).all() and np.isfinite(a).all()):
            raise ContractError("state entries must be finite")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "a", a)

    @property
    def n_hypercolumns(self) -> int:
        return self.s.shape[0]


@dataclass(frozen=True)
class ReducedState:
    """Difference coordinates of one hypercolumn: d = s1 - s2, e = a1 - a2."""

    d: float
    e: float

    def __post_init__(self):
        if not (math.isfinite(self.d) and math.isfinite(self.e)):
            raise ContractError(f"reduced state must be finite, got ({self.d}, {self.e})")


@dataclass(frozen=True)
class Output:
    """Softmax outputs o, (N, 2), each row a point of the open simplex."""

    o: np.ndarray

    def __post_init__(self):
        o = np.asarray(self.o, dtype=float)
        if o.ndim != 2 or o.shape[1] != 2:
            raise ContractError(f"output must be (N, 2), got {o.shape}")
        if not ((o > 0).all() and (o < 1).all()):
            raise ContractError("output entries must lie strictly in (0, 1)")
        if np.abs(o.sum(axis=1) - 1.0).max() > 1e-12:
            raise ContractError("output rows must sum to 1")
        object.__setattr__(self, "o", o)

    @classmethod
    def from_state(cls, state: NetworkState) -> "Output":
        return cls(softmax_rows(state.s))


def softmax(s_row) -> np.ndarray:
    """Softmax of a pair, computed with max-subtraction for overflow safety."""
    s = np.asarray(s_row, dtype=float)
    if s.shape != (2,):
        raise ContractError(f"softmax expects a pair, got shape {s.shape}")
    if not np.isfinite(s).all():
        raise DomainError(f"softmax input must be finite, got {s}")
    e = np.exp(s - s.max())
    return e / e.sum()


def softmax_rows(s: np.ndarray) -> np.ndarray:
    """Row-wise softmax of an (N, 2) activation array."""
    s = np.asarray(s, dtype=float)
    m = s.max(axis=1, keepdims=True)
    e = np.exp(s - m)
    return e / e.sum(axis=1, keepdims=True)


def output_difference(d: float) -> float:
    """o1 - o2 of a hypercolumn as a function of d = s1 - s2: tanh(d/2)."""
    if not math.isfinite(d):
        raise DomainError(f"output_difference input must be finite, got {d}")
    return math.tanh(0.5 * d)


def output_difference_deriv(d: float, order: int = 1) -> float:
    """Derivatives of tanh(d/2), orders 1..3, in closed form."""
    h = math.tanh(0.5 * d)
    if order == 1:
        return 0.5 * (1.0 - h * h)
    if order == 2:
        return -0.5 * h * (1.0 - h * h)
    if order == 3:
        return 0.25 * (1.0 - h * h) * (3.0 * h * h - 1.0)
    raise DomainError(f"order must be 1, 2 or 3, got {order}")


def network_rhs(state: NetworkState, params: NetworkParams) -> NetworkState:
    """Time derivative of the full network, returned as a NetworkState-shaped pair."""
    if state.n_hypercolumns != params.n_hypercolumns:
        raise ContractError(
            f"state has {state.n_hypercolumns} hypercolumns, params expect "
            f"{params.n_hypercolumns}"
        )
    ds, da = network_rhs_arrays(state.s, state.a, params.omega, params.g_a, params.tau)
    return NetworkState(s=ds, a=da)


def network_rhs_arrays(s, a, omega: float, g_a: float, tau: float):
    """Array form of the network right-hand side (used by the integrator)."""
    n = s.shape[0]
    kappa = (n - 1) * omega
    o = softmax_rows(s)
    coupling = o.sum(axis=0, keepdims=True) - o  # sum over k != i, per column j
    ds = -s - a - 0.5 * kappa + omega * coupling
    da = (g_a * o - a) / tau
    return ds, da


def reduced_rhs(state: ReducedState, kappa: float, g_a: float, tau: float) -> ReducedState:
    """Time derivative of the per-hypercolumn difference system."""
    if not math.isfinite(kappa):
        raise DomainError(f"kappa must be finite, got {kappa}")
    if not (g_a > 0):
        raise DomainError(f"g_a must be > 0, got {g_a}")
    if not (tau > 1):
        raise DomainError(f"tau must be > 1, got {tau}")
    f = math.tanh(0.5 * state.d)
    return ReducedState(
        d=-state.d - state.e + kappa * f,
        e=(g_a * f - state.e) / tau,
    )


def project_reduced(state: NetworkState) -> list[ReducedState]:
    """Difference coordinates (d_i, e_i) of every hypercolumn."""
    d = state.s[:, 0] - state.s[:, 1]
    e = state.a[:, 0] - state.a[:, 1]
    return [ReducedState(d=float(di), e=float(ei)) for di, ei in zip(d, e)]
