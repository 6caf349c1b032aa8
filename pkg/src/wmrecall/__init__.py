"""Free-recall dynamics of a modular working-memory attractor network.

Simulates the full N-hypercolumn system, checks the coupling conditions for
synchronization, and analyzes the Hopf bifurcation structure of the reduced
per-hypercolumn dynamics, including sweep-based classification of the four
attractor regimes.
"""

__version__ = "0.1.0"

from .analysis import (CorollaryReport, Equilibrium, HopfReport, SyncBounds,
                       char_poly_coeffs, corollary_check, cubic_coefficient,
                       find_equilibria, hopf_kappa, hopf_report, jacobian_at,
                       lyapunov_value, sync_bounds, sync_error)
from .backend import active_backend
from .classify import (LimitCycle, RecallDemo, Regime, RegimeReport,
                       SweepResult, Transition, TrialSummary, classify_regime,
                       detect_limit_cycle, recall_demo, refine_transition,
                       sweep_kappa)
from .errors import (BlowUpError, ClassificationError, ContractError,
                     DomainError)
from .integrate import (IntegrationConfig, Trajectory, detect_crossings,
                        integrate, integrate_network, integrate_reduced,
                        rk4_step)
from .model import (NetworkParams, NetworkState, Output, ReducedState,
                    network_rhs, output_difference, project_reduced,
                    reduced_rhs, softmax)

__all__ = [
    "BlowUpError", "ClassificationError", "ContractError", "CorollaryReport",
    "DomainError", "Equilibrium", "HopfReport", "IntegrationConfig",
    "LimitCycle", "NetworkParams", "NetworkState", "Output", "RecallDemo",
    "ReducedState", "Regime", "RegimeReport", "SweepResult", "SyncBounds",
    "Trajectory", "Transition", "TrialSummary", "active_backend",
    "char_poly_coeffs", "classify_regime", "corollary_check",
    "cubic_coefficient", "detect_crossings", "detect_limit_cycle",
    "find_equilibria", "hopf_kappa", "hopf_report", "integrate",
    "integrate_network", "integrate_reduced", "jacobian_at", "lyapunov_value",
    "network_rhs", "output_difference", "project_reduced", "recall_demo",
    "reduced_rhs", "refine_transition", "rk4_step", "softmax", "sweep_kappa",
    "sync_bounds", "sync_error",
]
