"""Simulation-based attractor classification and coupling sweeps.

For each coupling value the planar difference system is integrated from a
deterministic low-discrepancy batch of initial conditions; sustained
oscillation is recognized from the post-transient window, and the outcomes
are combined with the equilibrium stability flags into one of four regimes:

    UniqueStableFixedPoint -> StableLimitCycle -> Coexistence -> BistableFixedPoints

which is the sequence observed when the coupling kappa is swept upward at
fixed (g_a, tau).
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from .analysis import Equilibrium, corollary_check, find_equilibria
from .errors import ClassificationError, ContractError
from .integrate import (DEFAULT_DT_NETWORK, DEFAULT_DT_REDUCED, IntegrationConfig,
                        Trajectory, integrate_network, integrate_reduced)
from .model import NetworkParams, NetworkState, ReducedState, softmax_rows

#: Peak-to-peak floor separating sustained oscillation from decaying spirals.
EPS_OSC = 1e-2

#: Maximum allowed relative spread of successive oscillation periods.
PERIOD_SPREAD_TOL = 0.02

#: Default integration horizon for the reduced system; the first half is
#: discarded as transient.
DEFAULT_HORIZON = 500.0

#: Near the Hopf point a weakly damped spiral decays too slowly for the
#: default horizon to tell it from a sustained cycle; when the origin is
#: stable the horizon is stretched so the envelope contracts by e^-12
#: (amplitude ~20 down to well below EPS_OSC), up to a hard cap.
RESOLVE_DECAY = 12.0
HORIZON_CAP = 2.5e5

TRANSITION_WIDTH = 1e-3


class Regime(enum.Enum):
    UNIQUE_STABLE_FIXED_POINT = "UniqueStableFixedPoint"
    STABLE_LIMIT_CYCLE = "StableLimitCycle"
    COEXISTENCE = "Coexistence"
    BISTABLE_FIXED_POINTS = "BistableFixedPoints"


@dataclass(frozen=True)
class LimitCycle:
    amplitude_d: float
    period: float


@dataclass(frozen=True)
class TrialSummary:
    d0: float
    e0: float
    outcome: str  # "limit_cycle" or "equilibrium"
    final_d: float
    final_e: float
    attractor_d: float | None = None  # matched equilibrium, if any
    cycle: LimitCycle | None = None


@dataclass(frozen=True)
class RegimeReport:
    kappa: float
    regime: Regime
    equilibria: list[Equilibrium]
    limit_cycle: LimitCycle | None
    evidence: list[TrialSummary]


@dataclass(frozen=True)
class Transition:
    kappa_low: float
    kappa_high: float
    from_regime: Regime
    to_regime: Regime


@dataclass(frozen=True)
class SweepResult:
    grid: list[tuple[float, RegimeReport]]
    transitions: list[Transition]


@dataclass(frozen=True)
class RecallDemo:
    """Everything needed to regenerate the sync/alternation figures."""

    trajectory: Trajectory
    sync_error: np.ndarray
    outputs: np.ndarray      # hypercolumn-1 outputs, (n_samples, 2)
    adaptation: np.ndarray   # hypercolumn-1 adaptation, (n_samples, 2)
    warnings: list[str] = field(default_factory=list)


def _cycle_from_window(times: np.ndarray, d: np.ndarray) -> LimitCycle | None:
    """Sustained-oscillation test on a post-transient window of d(t)."""
    amp = float(d.max() - d.min())
    if amp < EPS_OSC:
        return None
    # a slowly decaying spiral can keep whole-window amplitude above the
    # floor; require the oscillation to persist into the last quarter
    tail = d[3 * len(d) // 4:]
    if float(tail.max() - tail.min()) < EPS_OSC:
        return None
    level = 0.0 if d.min() < 0.0 < d.max() else float(d.mean())
    ups = []
    x = d - level
    for i in range(len(x) - 1):
        if x[i] < 0.0 <= x[i + 1]:
            frac = -x[i] / (x[i + 1] - x[i])
            ups.append(times[i] + frac * (times[i + 1] - times[i]))
    if len(ups) < 3:
        return None
    periods = np.diff(ups)
    if (periods.max() - periods.min()) / periods.mean() >= PERIOD_SPREAD_TOL:
        return None
    return LimitCycle(amplitude_d=amp, period=float(periods.mean()))


def detect_limit_cycle(kappa: float, g_a: float, tau: float,
                       initial: ReducedState, horizon: float = DEFAULT_HORIZON,
                       dt: float = DEFAULT_DT_REDUCED,
                       record_stride: int = 5) -> LimitCycle | None:
    """Integrate from ``initial`` and report a sustained cycle, if any.

    The first half of the horizon is discarded as transient. A cycle is
    reported when the retained peak-to-peak amplitude of d exceeds EPS_OSC
    and successive up-crossing periods agree within PERIOD_SPREAD_TOL.
    """
    config = IntegrationConfig(dt=dt, t_end=horizon, record_stride=record_stride)
    traj = integrate_reduced(initial, kappa, g_a, tau, config)
    half = len(traj.times) // 2
    return _cycle_from_window(traj.times[half:], traj.column("d")[half:])


def sample_initial_conditions(trial_count: int, g_a: float, seed: int) -> np.ndarray:
    """Deterministic low-discrepancy ICs in the box d in [-8, 8], e in [-g_a, g_a].

    Antithetic: each Halton point is paired with its negation, so by the odd
    symmetry of the system both nonzero attractors are probed evenly.
    """
    half = (trial_count + 1) // 2
    pts = qmc.Halton(d=2, seed=seed).random(half)
    lo = np.array([-8.0, -g_a])
    hi = np.array([8.0, g_a])
    ics = lo + pts * (hi - lo)
    return np.vstack([ics, -ics])[:trial_count]


def _match_equilibrium(d: float, e: float, equilibria: list[Equilibrium],
                       tol: float = 1e-2) -> float | None:
    best = None
    best_dist = tol
    for eq in equilibria:
        dist = math.hypot(d - eq.d_star, e - eq.e_star)
        if dist < best_dist:
            best, best_dist = eq.d_star, dist
    return best


def classify_regime(kappa: float, g_a: float, tau: float,
                    trial_count: int = 8, seed: int = 0,
                    horizon: float = DEFAULT_HORIZON,
                    dt: float = DEFAULT_DT_REDUCED) -> RegimeReport:
    """Classify the attractor landscape at one coupling value."""
    if trial_count < 8:
        raise ContractError(f"trial_count must be >= 8, got {trial_count}")
    equilibria = find_equilibria(kappa, g_a, tau)
    origin = next(eq for eq in equilibria if eq.d_star == 0.0)
    max_re = max(ev.real for ev in origin.eigenvalues)
    if origin.stable:
        horizon = min(max(horizon, RESOLVE_DECAY / -max_re), HORIZON_CAP)
    stride = 5 if horizon <= 2e4 else 25
    config = IntegrationConfig(dt=dt, t_end=horizon, record_stride=stride)

    evidence: list[TrialSummary] = []
    cycle: LimitCycle | None = None
    for d0, e0 in sample_initial_conditions(trial_count, g_a, seed):
        traj = integrate_reduced(ReducedState(d=float(d0), e=float(e0)),
                                 kappa, g_a, tau, config)
        half = len(traj.times) // 2
        d = traj.column("d")
        e = traj.column("e")
        found = _cycle_from_window(traj.times[half:], d[half:])
        if found is not None:
            cycle = cycle or found
            evidence.append(TrialSummary(d0=float(d0), e0=float(e0),
                                         outcome="limit_cycle",
                                         final_d=float(d[-1]), final_e=float(e[-1]),
                                         cycle=found))
        else:
            evidence.append(TrialSummary(
                d0=float(d0), e0=float(e0), outcome="equilibrium",
                final_d=float(d[-1]), final_e=float(e[-1]),
                attractor_d=_match_equilibrium(float(d[-1]), float(e[-1]), equilibria)))

    origin_stable = any(eq.stable and eq.d_star == 0.0 for eq in equilibria)
    nonzero_stable = any(eq.stable and eq.d_star != 0.0 for eq in equilibria)
    cycle_found = cycle is not None

    if cycle_found and origin_stable:
        raise ClassificationError(
            f"inconsistent evidence at kappa={kappa}: sustained cycle detected "
            "while the origin is stable", evidence=evidence)
    if cycle_found and nonzero_stable:
        regime = Regime.COEXISTENCE
    elif cycle_found:
        regime = Regime.STABLE_LIMIT_CYCLE
    elif nonzero_stable:
        regime = Regime.BISTABLE_FIXED_POINTS
    elif origin_stable:
        regime = Regime.UNIQUE_STABLE_FIXED_POINT
    else:
        raise ClassificationError(
            f"inconsistent evidence at kappa={kappa}: no stable equilibrium and "
            "no sustained cycle", evidence=evidence)
    return RegimeReport(kappa=kappa, regime=regime, equilibria=equilibria,
                        limit_cycle=cycle, evidence=evidence)


def _classify_point(args) -> RegimeReport:
    return classify_regime(*args)


def refine_transition(kappa_low: float, kappa_high: float, g_a: float, tau: float,
                      trial_count: int = 8, seed: int = 0,
                      width: float = TRANSITION_WIDTH) -> Transition:
    """Bisect a regime-change bracket down to the requested width."""
    low_regime = classify_regime(kappa_low, g_a, tau, trial_count, seed).regime
    high_regime = classify_regime(kappa_high, g_a, tau, trial_count, seed).regime
    lo, hi = kappa_low, kappa_high
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if classify_regime(mid, g_a, tau, trial_count, seed).regime == low_regime:
            lo = mid
        else:
            hi = mid
    return Transition(kappa_low=lo, kappa_high=hi,
                      from_regime=low_regime, to_regime=high_regime)


def sweep_kappa(kappa_range: tuple[float, float], step: float, g_a: float,
                tau: float, trial_count: int = 8, seed: int = 0,
                refine: bool = False, workers: int = 1) -> SweepResult:
    """Classify a kappa grid and bracket every regime change.

    With ``refine=True`` each bracket is bisected down to width 1e-3.
    Grid points are independent; ``workers > 1`` evaluates them in parallel
    while the result is always assembled in grid order.
    """
    if not (step > 0):
        raise ContractError(f"step must be > 0, got {step}")
    lo, hi = kappa_range
    grid_k = np.arange(lo, hi + 0.5 * step, step)
    args = [(float(k), g_a, tau, trial_count, seed) for k in grid_k]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_classify_point, args))
    else:
        reports = [_classify_point(a) for a in args]
    grid = [(float(k), r) for k, r in zip(grid_k, reports)]

    transitions = []
    for (k0, r0), (k1, r1) in zip(grid, grid[1:]):
        if r0.regime != r1.regime:
            if refine:
                transitions.append(refine_transition(k0, k1, g_a, tau,
                                                     trial_count, seed))
            else:
                transitions.append(Transition(kappa_low=k0, kappa_high=k1,
                                              from_regime=r0.regime,
                                              to_regime=r1.regime))
    return SweepResult(grid=grid, transitions=transitions)


def recall_demo(params: NetworkParams, config: IntegrationConfig | None = None,
                seed: int = 0) -> RecallDemo:
    """Full-network free-recall run from seeded random initial conditions.

    Initial s and a entries are uniform in [-1, 1]. Returns the trajectory
    together with the sync-error series and hypercolumn-1 outputs and
    adaptations (the three figure datasets).
    """
    from .analysis import sync_error  # local import to avoid cycle at module load

    if config is None:
        config = IntegrationConfig(dt=DEFAULT_DT_NETWORK, t_end=500.0,
                                   record_stride=100)
    warnings = []
    report = corollary_check(params.n_hypercolumns, params.omega,
                             params.g_a, params.tau)
    if not report.all_satisfied():
        warnings.append(
            "parameter check failed: "
            f"sync={report.sync_condition} unique={report.unique_equilibrium_condition} "
            f"cycle={report.limit_cycle_condition}")
    rng = np.random.default_rng(seed)
    state = NetworkState(
        s=rng.uniform(-1.0, 1.0, (params.n_hypercolumns, 2)),
        a=rng.uniform(-1.0, 1.0, (params.n_hypercolumns, 2)),
    )
    traj = integrate_network(state, params, config)
    s, a = traj.network_arrays()
    return RecallDemo(
        trajectory=traj,
        sync_error=sync_error(traj),
        outputs=softmax_rows(s[:, 0, :].reshape(-1, 2)),
        adaptation=a[:, 0, :].copy(),
        warnings=warnings,
    )
