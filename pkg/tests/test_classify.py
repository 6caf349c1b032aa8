import dataclasses

import numpy as np
import pytest

from wmrecall import (ContractError, IntegrationConfig, NetworkParams, Regime,
                      ReducedState, classify_regime, detect_crossings,
                      detect_limit_cycle, recall_demo, sweep_kappa)
from wmrecall.classify import sample_initial_conditions


class TestDetectLimitCycle:
    def test_subcritical_no_cycle(self):
        assert detect_limit_cycle(2.0, 10.0, 2.0, ReducedState(0.5, 0.0)) is None

    def test_supercritical_cycle(self):
        cycle = detect_limit_cycle(5.0, 10.0, 2.0, ReducedState(0.1, 0.0))
        assert cycle is not None
        assert cycle.amplitude_d > 0.5
        assert cycle.period > 0

    def test_bistable_no_cycle(self):
        for d0, e0 in [(0.1, 0.0), (6.0, 0.0), (-4.0, 5.0)]:
            assert detect_limit_cycle(13.5, 10.0, 2.0, ReducedState(d0, e0)) is None

    def test_decaying_spiral_rejected(self):
        # kappa just below the Hopf point: oscillatory but decaying
        assert detect_limit_cycle(2.9, 10.0, 2.0, ReducedState(4.0, 0.0),
                                  horizon=2000.0) is None


class TestSampling:
    def test_antithetic_and_in_box(self):
        ics = sample_initial_conditions(8, 10.0, seed=3)
        assert ics.shape == (8, 2)
        assert (np.abs(ics[:, 0]) <= 8.0).all()
        assert (np.abs(ics[:, 1]) <= 10.0).all()
        assert np.allclose(ics[:4], -ics[4:])

    def test_deterministic(self):
        a = sample_initial_conditions(12, 10.0, seed=5)
        b = sample_initial_conditions(12, 10.0, seed=5)
        assert np.array_equal(a, b)


class TestClassifyRegime:
    def test_unique_stable_fixed_point(self):
        report = classify_regime(2.0, 10.0, 2.0)
        assert report.regime == Regime.UNIQUE_STABLE_FIXED_POINT
        assert report.limit_cycle is None
        assert len(report.equilibria) == 1

    def test_stable_limit_cycle(self):
        report = classify_regime(5.0, 10.0, 2.0)
        assert report.regime == Regime.STABLE_LIMIT_CYCLE
        assert report.limit_cycle is not None

    def test_coexistence(self):
        report = classify_regime(13.2, 10.0, 2.0)
        assert report.regime == Regime.COEXISTENCE
        assert report.limit_cycle is not None
        assert sum(1 for eq in report.equilibria if eq.stable) == 2

    def test_bistable(self):
        report = classify_regime(14.0, 10.0, 2.0)
        assert report.regime == Regime.BISTABLE_FIXED_POINTS
        assert report.limit_cycle is None

    def test_coexistence_basins_all_reached(self):
        # at kappa = 13.2 some trial must land on each of the three attractors;
        # the equilibrium basins are narrow this close to their birth, so a
        # generous trial budget is needed for the sampler to hit both of them
        report = classify_regime(13.2, 10.0, 2.0, trial_count=64, seed=0)
        outcomes = {t.outcome for t in report.evidence}
        assert "limit_cycle" in outcomes
        attractors = {t.attractor_d for t in report.evidence
                      if t.outcome == "equilibrium"}
        positive = [d for d in attractors if d is not None and d > 0]
        negative = [d for d in attractors if d is not None and d < 0]
        assert positive and negative

    def test_deterministic(self):
        a = classify_regime(13.2, 10.0, 2.0, trial_count=8, seed=4)
        b = classify_regime(13.2, 10.0, 2.0, trial_count=8, seed=4)
        assert a.regime == b.regime
        assert dataclasses.asdict(a)["evidence"] == dataclasses.asdict(b)["evidence"]

    def test_trial_count_floor(self):
        with pytest.raises(ContractError):
            classify_regime(5.0, 10.0, 2.0, trial_count=4)

    def test_evidence_regime_consistency(self):
        # StableLimitCycle reports carry a cycle and no stable nonzero point
        report = classify_regime(12.5, 10.0, 2.0)
        assert report.regime == Regime.STABLE_LIMIT_CYCLE
        assert report.limit_cycle is not None
        assert not any(eq.stable and eq.d_star != 0 for eq in report.equilibria)


class TestSweep:
    def test_regime_sequence_coarse(self):
        result = sweep_kappa((2.0, 15.0), 0.5, 10.0, 2.0)
        regimes = [r.regime for _, r in result.grid]
        # collapse runs; coarse grid may step over the narrow coexistence band
        order = [r for i, r in enumerate(regimes) if i == 0 or regimes[i - 1] != r]
        expected_full = [Regime.UNIQUE_STABLE_FIXED_POINT,
                         Regime.STABLE_LIMIT_CYCLE,
                         Regime.COEXISTENCE,
                         Regime.BISTABLE_FIXED_POINTS]
        assert order == [r for r in expected_full if r in order]
        assert order[0] == Regime.UNIQUE_STABLE_FIXED_POINT
        assert order[-1] == Regime.BISTABLE_FIXED_POINTS

    def test_transitions_bracket_grid_changes(self):
        result = sweep_kappa((12.8, 13.4), 0.1, 10.0, 2.0)
        assert result.transitions
        grid_regimes = dict((round(k, 5), r.regime) for k, r in result.grid)
        for tr in result.transitions:
            assert tr.kappa_low < tr.kappa_high
            assert grid_regimes[round(tr.kappa_low, 5)] == tr.from_regime
            assert grid_regimes[round(tr.kappa_high, 5)] == tr.to_regime

    def test_no_cycle_above_fold_no_cycle_below_hopf(self):
        for kappa in [2.0, 2.5, 13.5, 14.5]:
            report = classify_regime(kappa, 10.0, 2.0)
            assert report.limit_cycle is None

    def test_invalid_step(self):
        with pytest.raises(ContractError):
            sweep_kappa((2.0, 3.0), 0.0, 10.0, 2.0)


def _alternation_ok(times, o, threshold_hi=0.9, threshold_lo=0.1):
    """Each output exceeds threshold_hi and falls below threshold_lo every period."""
    from wmrecall import Trajectory
    traj = Trajectory(times=times, values=o, columns=("o1", "o2"),
                      dt=times[1] - times[0], record_stride=1)
    ups = detect_crossings(traj, "o1", 0.5, "up")
    if len(ups) < 3:
        return False
    for lo, hi in zip(ups, ups[1:]):
        window = (times >= lo) & (times <= hi)
        for col in (0, 1):
            if o[window, col].max() < threshold_hi:
                return False
            if o[window, col].min() > threshold_lo:
                return False
    return True


class TestRecallDemo:
    def test_reference_configuration(self):
        params = NetworkParams(n_hypercolumns=12, omega=1.8, g_a=97.0, tau=54.0)
        demo = recall_demo(params, seed=0)
        assert not demo.warnings
        assert demo.sync_error[-1] < 1e-3
        assert _alternation_ok(demo.trajectory.times, demo.outputs)

    def test_two_hypercolumns_alternate(self):
        # same condition logic at N=2: omega inside the sync window and
        # kappa = omega above the Hopf threshold
        params = NetworkParams(n_hypercolumns=2, omega=6.0, g_a=10.0, tau=2.0)
        config = IntegrationConfig(dt=0.005, t_end=200.0, record_stride=40)
        demo = recall_demo(params, config, seed=1)
        assert not demo.warnings
        assert _alternation_ok(demo.trajectory.times, demo.outputs)

    def test_warning_when_conditions_fail(self):
        params = NetworkParams(n_hypercolumns=12, omega=1.8, g_a=10.0, tau=2.0)
        config = IntegrationConfig(dt=0.005, t_end=5.0, record_stride=10)
        demo = recall_demo(params, config, seed=0)
        assert demo.warnings

    def test_seed_reproducibility(self):
        params = NetworkParams(n_hypercolumns=12, omega=1.8, g_a=97.0, tau=54.0)
        config = IntegrationConfig(dt=0.005, t_end=20.0, record_stride=100)
        a = recall_demo(params, config, seed=9)
        b = recall_demo(params, config, seed=9)
        assert np.array_equal(a.trajectory.values, b.trajectory.values)
        assert np.array_equal(a.sync_error, b.sync_error)
        assert np.array_equal(a.outputs, b.outputs)
