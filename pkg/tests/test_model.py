from __future__ import annotations

import math

import numpy as np
import pytest

from influencekit.model import (InteractionKernel, MassDynamics, SystemState,
                                compute_a_min, compute_delta, diameter,
                                eval_psi, rhs_masses, rhs_positions)


def _state(x, m, t=0.0):
    return SystemState.initial(np.asarray(x, dtype=float), np.asarray(m, dtype=float), t=t)


# ---------------------------------------------------------------------------
# state validation
# ---------------------------------------------------------------------------

def test_state_records_reference_mass():
    st = _state([[0.0], [1.0]], [1.0, 3.0])
    assert st.M == 4.0
    assert st.n_agents == 2
    assert st.dim == 1


def test_state_rejects_nonpositive_weights():
    with pytest.raises(ValueError, match="weights must be positive"):
        _state([[0.0], [1.0]], [1.0, 0.0])
    with pytest.raises(ValueError, match="weights must be positive"):
        _state([[0.0], [1.0]], [1.0, -2.0])


def test_state_rejects_non_finite():
    with pytest.raises(ValueError, match="non-finite state"):
        _state([[0.0], [np.inf]], [1.0, 1.0])
    with pytest.raises(ValueError, match="non-finite state"):
        _state([[0.0], [1.0]], [1.0, np.nan])


def test_state_shape_checks():
    with pytest.raises(ValueError):
        SystemState.initial(np.zeros(3), np.ones(3))  # positions must be 2d
    with pytest.raises(ValueError):
        _state([[0.0], [1.0]], [1.0, 1.0, 1.0])


# ---------------------------------------------------------------------------
# position rhs
# ---------------------------------------------------------------------------

def test_rhs_positions_single_agent_is_static():
    st = _state([[3.0, -1.0]], [2.0])
    v = rhs_positions(st, InteractionKernel.gaussian())
    np.testing.assert_array_equal(v, np.zeros((1, 2)))


def test_rhs_positions_symmetric_pair_constant_kernel():
    st = _state([[0.0], [1.0]], [1.0, 1.0])
    v = rhs_positions(st, InteractionKernel.constant(1.0))
    np.testing.assert_allclose(v, [[0.5], [-0.5]])


def test_rhs_positions_gaussian_pair():
    # agents a unit apart, each pulled at half the kernel value
    st = _state([[0.0], [1.0]], [1.0, 1.0])
    v = rhs_positions(st, InteractionKernel.gaussian())
    np.testing.assert_allclose(v[0, 0], 0.5 * math.exp(-1.0), rtol=1e-14)
    np.testing.assert_allclose(v[1, 0], -0.5 * math.exp(-1.0), rtol=1e-14)


def test_rhs_positions_matches_loop_oracle():
    rng = np.random.default_rng(42)
    kernel = InteractionKernel.gaussian()
    for _ in range(25):
        n = int(rng.integers(2, 8))
        d = int(rng.integers(1, 4))
        st = _state(rng.normal(size=(n, d)), rng.uniform(0.5, 2.0, n))
        v = rhs_positions(st, kernel)
        expected = np.zeros((n, d))
        for i in range(n):
            for j in range(n):
                diff = st.x[j] - st.x[i]
                expected[i] += st.m[j] * kernel.a(np.linalg.norm(diff)) * diff
        expected /= st.M
        np.testing.assert_allclose(v, expected, atol=1e-13)


def test_rhs_positions_translation_and_permutation_equivariance():
    rng = np.random.default_rng(7)
    kernel = InteractionKernel.gaussian()
    x = rng.normal(size=(6, 2))
    m = rng.uniform(0.5, 2.0, 6)
    v = rhs_positions(_state(x, m), kernel)
    shift = np.array([10.0, -3.0])
    v_shift = rhs_positions(_state(x + shift, m), kernel)
    np.testing.assert_allclose(v_shift, v, atol=1e-12)
    perm = rng.permutation(6)
    v_perm = rhs_positions(_state(x[perm], m[perm]), kernel)
    np.testing.assert_allclose(v_perm, v[perm], atol=1e-12)


def test_velocity_bound_via_delta():
    # each velocity is a weight-average of kernel pulls, so delta caps it
    rng = np.random.default_rng(3)
    kernel = InteractionKernel.gaussian()
    for _ in range(20):
        n = int(rng.integers(2, 9))
        st = _state(rng.uniform(0.0, 1.0, (n, 2)), rng.uniform(0.5, 1.5, n))
        delta = compute_delta(kernel, diameter(st))
        speeds = np.linalg.norm(rhs_positions(st, kernel), axis=1)
        assert speeds.max() <= delta * st.m.sum() / st.M + 1e-12


# ---------------------------------------------------------------------------
# mass rhs and the builtin dynamics
# ---------------------------------------------------------------------------

def test_rhs_masses_zero_everything():
    st = _state([[0.0], [1.0]], [1.0, 2.0])
    rates = rhs_masses(st, MassDynamics.zero(), np.zeros(2))
    np.testing.assert_array_equal(rates, np.zeros(2))


def test_rhs_masses_pairwise_drift_pair():
    # S(x, y) = y - x on x=(0, 1): psi = (0.5, -0.5), rates m_i * psi_i
    st = _state([[0.0], [1.0]], [1.0, 1.0])
    psi = MassDynamics.pairwise(lambda xi, xj: float(xj[0] - xi[0]), skew_symmetric=True)
    rates = rhs_masses(st, psi, np.zeros(2))
    np.testing.assert_allclose(rates, [0.5, -0.5], atol=1e-15)


def test_rhs_masses_uniform_decay():
    st = _state([[0.0], [1.0]], [2.0, 1.0])
    rates = rhs_masses(st, MassDynamics.uniform_decay(3.0), np.zeros(2))
    np.testing.assert_allclose(rates, [-6.0, -3.0])


def test_rhs_masses_control_length_check():
    st = _state([[0.0], [1.0]], [1.0, 1.0])
    with pytest.raises(ValueError, match="control vector length mismatch"):
        rhs_masses(st, MassDynamics.zero(), np.zeros(3))


def test_eval_psi_pairwise_example():
    st = _state([[0.0], [2.0]], [1.0, 3.0])
    psi = MassDynamics.pairwise(lambda xi, xj: float(xj[0] - xi[0]), skew_symmetric=True)
    np.testing.assert_allclose(eval_psi(st, psi), [1.5, -0.5], atol=1e-15)


def test_eval_psi_pairwise_vectorized_matches_loop():
    rng = np.random.default_rng(11)
    gain = 0.7
    psi_vec = MassDynamics.coordinate_drift(gain, axis=1)
    psi_loop = MassDynamics.pairwise(lambda xi, xj: gain * float(xj[1] - xi[1]),
                                     skew_symmetric=True)
    for _ in range(10):
        n = int(rng.integers(2, 7))
        st = _state(rng.normal(size=(n, 3)), rng.uniform(0.5, 2.0, n))
        np.testing.assert_allclose(eval_psi(st, psi_vec), eval_psi(st, psi_loop), atol=1e-13)


def test_eval_psi_skew_symmetric_conserves_total_mass():
    rng = np.random.default_rng(5)
    psi = MassDynamics.coordinate_drift(1.3, axis=0)
    for _ in range(25):
        n = int(rng.integers(2, 9))
        st = _state(rng.normal(size=(n, 2)), rng.uniform(0.2, 3.0, n))
        rates = rhs_masses(st, psi, np.zeros(n))
        assert abs(rates.sum()) <= 1e-12 * st.M


def test_eval_psi_triple_vectorized_matches_triple_loop():
    kernel = InteractionKernel.gaussian()
    fast = MassDynamics.influence_gain(kernel)

    def s3(xi, xj, xk):
        dij = np.linalg.norm(xi - xj)
        djk = np.linalg.norm(xj - xk)
        return kernel.a(dij) * dij - kernel.a(djk) * djk

    slow = MassDynamics.triple(s3)
    rng = np.random.default_rng(17)
    for _ in range(8):
        n = int(rng.integers(2, 6))
        st = _state(rng.normal(size=(n, 2)), rng.uniform(0.5, 2.0, n))
        np.testing.assert_allclose(eval_psi(st, fast), eval_psi(st, slow), atol=1e-12)


def test_eval_psi_triple_zero_at_consensus():
    st = _state(np.tile([[0.3, -0.2]], (4, 1)), [1.0, 2.0, 0.5, 1.5])
    psi = MassDynamics.influence_gain(InteractionKernel.gaussian())
    np.testing.assert_allclose(eval_psi(st, psi), np.zeros(4), atol=1e-15)


def test_influence_gain_conserves_total_mass():
    # the gain term redistributes influence without creating any
    rng = np.random.default_rng(23)
    psi = MassDynamics.influence_gain(InteractionKernel.gaussian())
    for _ in range(15):
        n = int(rng.integers(2, 8))
        st = _state(rng.normal(size=(n, 2)), rng.uniform(0.2, 2.0, n))
        rates = rhs_masses(st, psi, np.zeros(n))
        assert abs(rates.sum()) <= 1e-12 * st.M


# ---------------------------------------------------------------------------
# kernel scalars
# ---------------------------------------------------------------------------

def test_compute_delta_constant_kernel():
    assert compute_delta(InteractionKernel.constant(1.0), 2.0) == pytest.approx(2.0, abs=1e-10)


def test_compute_delta_gaussian_interior_max():
    # stationary point of s*exp(-s^2) at s = 1/sqrt(2)
    val = compute_delta(InteractionKernel.gaussian(), 2.0)
    assert val == pytest.approx(math.exp(-0.5) / math.sqrt(2.0), abs=1e-10)


def test_compute_delta_gaussian_endpoint_max():
    val = compute_delta(InteractionKernel.gaussian(), 0.5)
    assert val == pytest.approx(0.5 * math.exp(-0.25), abs=1e-10)


def test_compute_delta_dense_grid_oracle():
    kernel = InteractionKernel.tabulated(np.linspace(0.0, 3.0, 40),
                                         np.exp(-np.linspace(0.0, 3.0, 40)))
    for d0 in (0.7, 1.9, 3.0):
        s = np.linspace(0.0, d0, 1_000_001)
        oracle = (s * kernel.a(s)).max()
        assert compute_delta(kernel, d0) == pytest.approx(oracle, abs=1e-8)


def test_compute_delta_degenerate_and_invalid():
    assert compute_delta(InteractionKernel.gaussian(), 0.0) == 0.0
    with pytest.raises(ValueError):
        compute_delta(InteractionKernel.gaussian(), -1.0)


def test_compute_a_min_gaussian():
    assert compute_a_min(InteractionKernel.gaussian(), 1.5) == pytest.approx(
        math.exp(-2.25), abs=1e-10)
    assert compute_a_min(InteractionKernel.constant(0.7), 5.0) == pytest.approx(0.7)


def test_tabulated_kernel_validation():
    with pytest.raises(ValueError):
        InteractionKernel.tabulated(np.array([0.0, 0.5, 0.4]), np.ones(3))
    with pytest.raises(ValueError):
        InteractionKernel.tabulated(np.array([0.0, 1.0]), np.array([1.0, -0.1]))


# ---------------------------------------------------------------------------
# diameter
# ---------------------------------------------------------------------------

def test_diameter_cases():
    assert diameter(_state([[5.0]], [1.0])) == 0.0
    assert diameter(_state([[0.0], [3.0], [1.0]], [1.0, 1.0, 1.0])) == 3.0
    assert diameter(_state([[0.0, 0.0], [3.0, 4.0]], [1.0, 1.0])) == 5.0
