import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wmrecall import (ContractError, DomainError, NetworkParams, NetworkState,
                      Output, ReducedState, network_rhs, output_difference,
                      project_reduced, reduced_rhs, softmax)
from wmrecall.model import network_rhs_arrays

finite_reals = st.floats(min_value=-50, max_value=50, allow_nan=False)


class TestParams:
    def test_kappa_is_derived(self):
        p = NetworkParams(n_hypercolumns=12, omega=1.8, g_a=97.0, tau=54.0)
        assert p.kappa == 11 * 1.8
        assert p.alpha == 1 / 54
        assert p.g_bar == 97.0 / 54

    @pytest.mark.parametrize("kwargs", [
        dict(n_hypercolumns=1, omega=1.0, g_a=1.0, tau=2.0),
        dict(n_hypercolumns=2, omega=0.0, g_a=1.0, tau=2.0),
        dict(n_hypercolumns=2, omega=1.0, g_a=-1.0, tau=2.0),
        dict(n_hypercolumns=2, omega=1.0, g_a=1.0, tau=1.0),
    ])
    def test_invalid_params_rejected(self, kwargs):
        with pytest.raises(DomainError):
            NetworkParams(**kwargs)


class TestSoftmax:
    def test_symmetric_pair(self):
        assert np.allclose(softmax((0.0, 0.0)), [0.5, 0.5])

    @given(s=finite_reals)
    def test_equal_entries_give_half(self, s):
        assert np.allclose(softmax((s, s)), [0.5, 0.5], atol=1e-12)

    def test_log3_example(self):
        o = softmax((math.log(3.0), 0.0))
        assert o == pytest.approx([0.75, 0.25], abs=1e-12)

    def test_overflow_safe(self):
        o = softmax((1000.0, 0.0))
        assert np.isfinite(o).all() and o.sum() == pytest.approx(1.0)

    def test_nonfinite_rejected(self):
        with pytest.raises(DomainError):
            softmax((np.nan, 0.0))

    @given(a=finite_reals, b=finite_reals)
    def test_rows_sum_to_one(self, a, b):
        assert abs(softmax((a, b)).sum() - 1.0) < 1e-12

    @given(a=finite_reals, b=finite_reals,
           c=st.floats(min_value=-50, max_value=50))
    def test_shift_invariance(self, a, b, c):
        assert np.allclose(softmax((a + c, b + c)), softmax((a, b)), atol=1e-12)

    @given(a=finite_reals, b=finite_reals, c=finite_reals, d=finite_reals)
    def test_monotonicity(self, a, b, c, d):
        x = np.array([a, b])
        y = np.array([c, d])
        assert (x - y) @ (softmax(x) - softmax(y)) >= -1e-12


class TestOutputDifference:
    def test_zero(self):
        assert output_difference(0.0) == 0.0

    @given(d=finite_reals)
    def test_odd(self, d):
        assert output_difference(d) == pytest.approx(-output_difference(-d), abs=1e-15)

    def test_inverse_evaluation(self):
        assert output_difference(2 * math.atanh(0.9)) == pytest.approx(0.9, abs=1e-12)

    @given(d=finite_reals)
    def test_matches_softmax_difference(self, d):
        o = softmax((d, 0.0))
        assert output_difference(d) == pytest.approx(o[0] - o[1], abs=1e-12)

    def test_nonfinite_rejected(self):
        with pytest.raises(DomainError):
            output_difference(math.inf)


def signed_weight_rhs(s, a, omega, g_a, tau):
    """Brute-force oracle: literal double sum with +-omega/2 signed weights."""
    n = s.shape[0]
    o = np.array([softmax(s[i]) for i in range(n)])
    ds = np.empty_like(s)
    da = np.empty_like(a)
    for i in range(n):
        for j in range(2):
            acc = 0.0
            for k in range(n):
                if k == i:
                    continue
                for l in range(2):
                    w = 0.5 * omega if l == j else -0.5 * omega
                    acc += w * o[k, l]
            ds[i, j] = acc - a[i, j] - s[i, j]
            da[i, j] = (g_a * o[i, j] - a[i, j]) / tau
    return ds, da


class TestNetworkRhs:
    def test_symmetric_fixed_layer(self):
        p = NetworkParams(n_hypercolumns=2, omega=1.0, g_a=10.0, tau=2.0)
        state = NetworkState(s=np.zeros((2, 2)), a=np.zeros((2, 2)))
        deriv = network_rhs(state, p)
        assert np.allclose(deriv.s, 0.0, atol=1e-15)
        assert np.allclose(deriv.a, 10.0 * 0.5 / 2.0)

    def test_sync_manifold_closure(self):
        p = NetworkParams(n_hypercolumns=5, omega=1.5, g_a=8.0, tau=3.0)
        rng = np.random.default_rng(3)
        block_s = rng.uniform(-2, 2, 2)
        block_a = rng.uniform(-2, 2, 2)
        state = NetworkState(s=np.tile(block_s, (5, 1)), a=np.tile(block_a, (5, 1)))
        deriv = network_rhs(state, p)
        assert np.abs(deriv.s - deriv.s[0]).max() < 1e-12
        assert np.abs(deriv.a - deriv.a[0]).max() < 1e-12

    def test_matches_signed_weight_oracle(self):
        rng = np.random.default_rng(11)
        p = NetworkParams(n_hypercolumns=3, omega=2.1, g_a=7.0, tau=4.0)
        for _ in range(20):
            s = rng.uniform(-3, 3, (3, 2))
            a = rng.uniform(-3, 3, (3, 2))
            ds, da = network_rhs_arrays(s, a, p.omega, p.g_a, p.tau)
            ods, oda = signed_weight_rhs(s, a, p.omega, p.g_a, p.tau)
            assert np.abs(ds - ods).max() < 1e-12
            assert np.abs(da - oda).max() < 1e-12

    def test_dimension_mismatch(self):
        p = NetworkParams(n_hypercolumns=3, omega=1.0, g_a=10.0, tau=2.0)
        state = NetworkState(s=np.zeros((2, 2)), a=np.zeros((2, 2)))
        with pytest.raises(ContractError):
            network_rhs(state, p)


class TestReducedRhs:
    def test_origin_is_equilibrium(self):
        deriv = reduced_rhs(ReducedState(0.0, 0.0), 5.0, 10.0, 2.0)
        assert deriv.d == 0.0 and deriv.e == 0.0

    @given(d=finite_reals, e=finite_reals)
    @settings(max_examples=50)
    def test_odd_symmetry(self, d, e):
        fwd = reduced_rhs(ReducedState(d, e), 5.0, 10.0, 2.0)
        bwd = reduced_rhs(ReducedState(-d, -e), 5.0, 10.0, 2.0)
        assert fwd.d == -bwd.d and fwd.e == -bwd.e

    def test_formula(self):
        out = reduced_rhs(ReducedState(1.0, 0.5), 4.0, 10.0, 2.0)
        f = math.tanh(0.5)
        assert out.d == pytest.approx(-1.0 - 0.5 + 4.0 * f, abs=1e-15)
        assert out.e == pytest.approx((10.0 * f - 0.5) / 2.0, abs=1e-15)


class TestProjection:
    def test_zero_state(self):
        state = NetworkState(s=np.zeros((3, 2)), a=np.zeros((3, 2)))
        assert all(r.d == 0.0 and r.e == 0.0 for r in project_reduced(state))

    def test_direct_subtraction(self):
        state = NetworkState(s=np.array([[3.0, 1.0]]* 2), a=np.array([[2.0, 2.0]] * 2))
        r = project_reduced(state)[0]
        assert (r.d, r.e) == (2.0, 0.0)

    def test_reduction_consistency_on_sync_manifold(self):
        # project(network_rhs) == reduced_rhs(project) when all blocks agree
        rng = np.random.default_rng(5)
        p = NetworkParams(n_hypercolumns=4, omega=1.2, g_a=9.0, tau=2.5)
        for _ in range(25):
            block_s = rng.uniform(-4, 4, 2)
            block_a = rng.uniform(-4, 4, 2)
            state = NetworkState(s=np.tile(block_s, (4, 1)),
                                 a=np.tile(block_a, (4, 1)))
            deriv = network_rhs(state, p)
            projected_deriv = project_reduced(
                NetworkState(s=deriv.s, a=deriv.a))[0]
            reduced_deriv = reduced_rhs(project_reduced(state)[0],
                                        p.kappa, p.g_a, p.tau)
            assert projected_deriv.d == pytest.approx(reduced_deriv.d, abs=1e-10)
            assert projected_deriv.e == pytest.approx(reduced_deriv.e, abs=1e-10)


class TestOutput:
    def test_from_state_valid(self):
        rng = np.random.default_rng(0)
        state = NetworkState(s=rng.uniform(-5, 5, (4, 2)), a=np.zeros((4, 2)))
        out = Output.from_state(state)
        assert np.abs(out.o.sum(axis=1) - 1.0).max() <= 1e-12

    def test_invalid_rows_rejected(self):
        with pytest.raises(ContractError):
            Output(o=np.array([[0.7, 0.7]]))
