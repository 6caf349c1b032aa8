"""Closed-form and numerical analysis of the model.

Covers: the coupling window that guarantees synchronization of the full
network, the quadratic Lyapunov functional used to certify it, equilibria of
the planar difference system with their eigenvalues, the characteristic
polynomial at the origin, and the Hopf point at kappa* = 2(1 + 1/tau)
including the normal-form cubic coefficient (which evaluates to -kappa*/64,
i.e. the bifurcation is supercritical).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .integrate import Trajectory
from .model import NetworkParams, NetworkState, output_difference_deriv

#: Eigenvalue real parts closer to zero than this are treated as marginal.
STABILITY_TOL = 1e-9


@dataclass(frozen=True)
class SyncBounds:
    """Coupling window (omega_min, omega_max) sufficient for synchronization."""

    omega_min: float
    omega_max: float

    def contains(self, omega: float) -> bool:
        return self.omega_min < omega < self.omega_max


@dataclass(frozen=True)
class Equilibrium:
    d_star: float
    e_star: float
    eigenvalues: tuple[complex, complex]
    stable: bool
    marginal: bool = False
    degenerate: bool = False


@dataclass(frozen=True)
class HopfReport:
    kappa_star: float
    condition_ga: bool
    eigenvalues_at_star: tuple[complex, complex]
    transversality: float
    cubic_coefficient: float


@dataclass(frozen=True)
class CorollaryReport:
    """The three combined conditions for a synchronized oscillatory network."""

    sync_condition: bool
    unique_equilibrium_condition: bool
    limit_cycle_condition: bool
    ga_condition: bool
    omega_cycle_condition: bool
    kappa: float
    omega_min: float
    omega_max: float
    omega_unique_max: float
    omega_cycle_min: float

    def all_satisfied(self) -> bool:
        return (self.sync_condition and self.unique_equilibrium_condition
                and self.limit_cycle_condition)


def sync_bounds(g_a: float, tau: float) -> SyncBounds:
    """Sufficient coupling window for synchronization: g_a/tau < omega < g_a/(tau-1)."""
    if not (g_a > 0):
        raise DomainError(f"g_a must be > 0, got {g_a}")
    if not (tau > 1):
        raise DomainError(f"tau must be > 1, got {tau}")
    return SyncBounds(omega_min=g_a / tau, omega_max=g_a / (tau - 1.0))


def lyapunov_value(state: NetworkState, params: NetworkParams) -> float:
    """Quadratic disagreement functional, summed over hypercolumns 2..N.

    V = sum_k 1/2 ||g_bar*D_k + omega*E_k||^2 + 1/2 beta*omega ||D_k||^2
    with D_k = s_1 - s_k, E_k = a_1 - a_k. Positive definite (zero exactly on
    the synchronization manifold) whenever beta > 0, i.e. omega below the
    upper sync bound.
    """
    beta = params.beta
    if beta <= 0:
        raise DomainError(
            f"beta = g_a/tau + (1/tau - 1)*omega = {beta:g} must be positive; "
            f"omega={params.omega:g} is not below g_a/(tau-1)="
            f"{params.g_a / (params.tau - 1):g}")
    g_bar = params.g_bar
    omega = params.omega
    d = state.s[0] - state.s[1:]  # (N-1, 2)
    e = state.a[0] - state.a[1:]
    mixed = g_bar * d + omega * e
    return float(0.5 * np.sum(mixed * mixed) + 0.5 * beta * omega * np.sum(d * d))


def sync_error(traj: Trajectory) -> np.ndarray:
    """Per-sample max deviation of any hypercolumn from hypercolumn 1."""
    s, a = traj.network_arrays()
    ds = np.abs(s - s[:, :1, :]).max(axis=(1, 2))
    da = np.abs(a - a[:, :1, :]).max(axis=(1, 2))
    return np.maximum(ds, da)


def jacobian_at(d_star: float, kappa: float, g_a: float, tau: float) -> np.ndarray:
    """Jacobian of the difference system at an equilibrium (d*, e*)."""
    fp = output_difference_deriv(d_star, order=1)
    return np.array([[-1.0 + kappa * fp, -1.0],
                     [g_a * fp / tau, -1.0 / tau]])


def _eigenvalues_2x2(j: np.ndarray) -> tuple[complex, complex]:
    tr = float(j[0, 0] + j[1, 1])
    det = float(j[0, 0] * j[1, 1] - j[0, 1] * j[1, 0])
    disc = cmath.sqrt(complex(tr * tr - 4.0 * det))
    return ((tr + disc) / 2.0, (tr - disc) / 2.0)


def _make_equilibrium(d_star: float, kappa: float, g_a: float, tau: float,
                      degenerate: bool = False) -> Equilibrium:
    e_star = g_a * math.tanh(0.5 * d_star)
    eigs = _eigenvalues_2x2(jacobian_at(d_star, kappa, g_a, tau))
    max_re = max(ev.real for ev in eigs)
    return Equilibrium(
        d_star=d_star, e_star=e_star, eigenvalues=eigs,
        stable=bool(max_re < -STABILITY_TOL),
        marginal=bool(abs(max_re) <= STABILITY_TOL),
        degenerate=degenerate,
    )


def find_equilibria(kappa: float, g_a: float, tau: float) -> list[Equilibrium]:
    """All equilibria of the difference system, with eigenvalues and stability.

    The origin is always an equilibrium. For kappa > g_a + 2 the pitchfork
    branch contributes a symmetric pair +-d*, with d* the unique positive root
    of (kappa - g_a) tanh(d/2) = d, located by bisection plus a Newton polish.
    """
    if not (g_a > 0):
        raise DomainError(f"g_a must be > 0, got {g_a}")
    if not (tau > 1):
        raise DomainError(f"tau must be > 1, got {tau}")
    if kappa == g_a + 2.0:
        return [_make_equilibrium(0.0, kappa, g_a, tau, degenerate=True)]
    out = [_make_equilibrium(0.0, kappa, g_a, tau)]
    if kappa > g_a + 2.0:
        c = kappa - g_a

        def resid(d):
            return c * math.tanh(0.5 * d) - d

        # resid > 0 just right of 0 (slope c/2 - 1 > 0) and < 0 at d = c.
        lo, hi = 1e-12, c
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if resid(mid) > 0:
                lo = mid
            else:
                hi = mid
            if abs(resid(mid)) < 1e-14:
                break
        d_star = 0.5 * (lo + hi)
        for _ in range(4):  # Newton polish
            fp = 0.5 * c * (1.0 - math.tanh(0.5 * d_star) ** 2) - 1.0
            d_star -= resid(d_star) / fp
        out.append(_make_equilibrium(d_star, kappa, g_a, tau))
        out.append(_make_equilibrium(-d_star, kappa, g_a, tau))
    return out


def char_poly_coeffs(kappa: float, g_a: float, tau: float) -> tuple[float, float]:
    """(sigma, delta) of the origin's characteristic polynomial l^2 - sigma*l + delta."""
    if not (tau > 1):
        raise DomainError(f"tau must be > 1, got {tau}")
    sigma = (-2.0 * tau - 2.0 + tau * kappa) / (2.0 * tau)
    delta = (-2.0 * kappa + 2.0 * g_a + 4.0) / (4.0 * tau)
    return sigma, delta


def hopf_kappa(tau: float) -> float:
    """Critical coupling kappa* = 2(1 + 1/tau) where the origin loses stability."""
    return 2.0 * (1.0 + 1.0 / tau)


def cubic_coefficient(g_a: float, tau: float) -> float:
    """Normal-form cubic coefficient of the Hopf point at kappa*.

    The difference system is split as linear part A plus nonlinearity
    (F1(d), F2(d)) with F1(d) = (-1 - 1/tau) d + kappa* tanh(d/2) and
    F2(d) = -g_a/(2 tau) d + (g_a/tau) tanh(d/2). In the rotated coordinates
    (u, v) = E^{-1} (d, e) that bring A to [[0, -b], [b, 0]] the standard
    planar Hopf formula

        a = (f_uuu + f_uvv + g_uuv + g_vvv)/16
          + (f_uv (f_uu + f_vv) - g_uv (g_uu + g_vv) - f_uu g_uu + f_vv g_vv)/(16 b)

    applies. Both nonlinear components depend on v only, and all second
    derivatives of tanh vanish at the origin, so the result reduces to
    g_vvv/16 = -kappa*/64; the full formula is evaluated regardless so that
    the reduction itself is checked.
    """
    if not (tau > 1):
        raise DomainError(f"tau must be > 1, got {tau}")
    if not (g_a > 2.0 / tau):
        raise DomainError(f"requires g_a > 2/tau, got g_a={g_a} tau={tau}")
    kappa_star = hopf_kappa(tau)
    _, delta = char_poly_coeffs(kappa_star, g_a, tau)
    b = math.sqrt(delta)  # rotation rate at the Hopf point

    # second/third v-derivatives of the nonlinearity at the origin
    t2 = output_difference_deriv(0.0, order=2)
    t3 = output_difference_deriv(0.0, order=3)
    f1_vv, f1_vvv = kappa_star * t2, kappa_star * t3
    f2_vv, f2_vvv = (g_a / tau) * t2, (g_a / tau) * t3

    # E = [[0, 1], [-b, 1/tau]]; rows of E^{-1} compose f and g
    c11, c12 = 1.0 / (tau * b), -1.0 / b
    c21, c22 = 1.0, 0.0
    f_vv = c11 * f1_vv + c12 * f2_vv
    f_vvv = c11 * f1_vvv + c12 * f2_vvv
    g_vv = c21 * f1_vv + c22 * f2_vv
    g_vvv = c21 * f1_vvv + c22 * f2_vvv
    # u never enters the nonlinearity
    f_uu = f_uv = f_uuu = f_uvv = 0.0
    g_uu = g_uv = g_uuv = 0.0

    return (f_uuu + f_uvv + g_uuv + g_vvv) / 16.0 + (
        f_uv * (f_uu + f_vv) - g_uv * (g_uu + g_vv) - f_uu * g_uu + f_vv * g_vv
    ) / (16.0 * b)


def hopf_report(g_a: float, tau: float) -> HopfReport:
    """Summary of the Hopf point at the origin for the given (g_a, tau)."""
    if not (tau > 1):
        raise DomainError(f"tau must be > 1, got {tau}")
    kappa_star = hopf_kappa(tau)
    condition_ga = g_a > 2.0 / tau
    _, delta = char_poly_coeffs(kappa_star, g_a, tau)
    if condition_ga:
        b = math.sqrt(delta)
        eigs = (complex(0.0, b), complex(0.0, -b))
        cubic = cubic_coefficient(g_a, tau)
    else:
        # no imaginary pair; the report is flagged non-oscillatory
        eigs = _eigenvalues_2x2(jacobian_at(0.0, kappa_star, g_a, tau))
        cubic = math.nan
    # sigma(kappa) = (tau*kappa - 2*tau - 2)/(2*tau) is affine in kappa with
    # slope tau/(2*tau) = 1/2, independent of every parameter.
    transversality = tau / (2.0 * tau)
    return HopfReport(kappa_star=kappa_star, condition_ga=condition_ga,
                      eigenvalues_at_star=eigs, transversality=transversality,
                      cubic_coefficient=cubic)


def corollary_check(n: int, omega: float, g_a: float, tau: float) -> CorollaryReport:
    """Combined network-level conditions for synchronized pattern recall."""
    if n < 2:
        raise DomainError(f"N must be >= 2, got {n}")
    bounds = sync_bounds(g_a, tau)
    omega_unique_max = (g_a + 2.0) / (n - 1)
    omega_cycle_min = (2.0 / (n - 1)) * (1.0 + 1.0 / tau)
    ga_ok = g_a > 2.0 / tau
    omega_cycle_ok = omega > omega_cycle_min
    return CorollaryReport(
        sync_condition=bounds.contains(omega),
        unique_equilibrium_condition=omega < omega_unique_max,
        limit_cycle_condition=ga_ok and omega_cycle_ok,
        ga_condition=ga_ok,
        omega_cycle_condition=omega_cycle_ok,
        kappa=(n - 1) * omega,
        omega_min=bounds.omega_min,
        omega_max=bounds.omega_max,
        omega_unique_max=omega_unique_max,
        omega_cycle_min=omega_cycle_min,
    )
