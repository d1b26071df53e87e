"""Feature map and ansatz structure, binding rules, and encoded-state checks."""

import math

import numpy as np
import pytest

from hqloc.circuits import (
    N_ANSATZ_PARAMS,
    N_FEATURES,
    feature_state,
    real_amplitudes,
    real_amplitudes_template,
    run_circuit,
    zz_feature_map,
    zz_feature_map_template,
)
from hqloc.statevector import zero_state

from oracles import circuit_matrix


class TestFeatureMapStructure:
    def test_gate_count_three_qubits(self):
        # 3 H + 3 single phases + 2 pairs x (CX, P, CX)
        assert len(zz_feature_map_template(3).gates) == 12

    def test_layout_and_angles(self):
        x = np.array([0.2, 0.5, 0.8])
        gates = zz_feature_map(3, x).concrete_gates()
        kinds = [g.kind for g in gates]
        assert kinds == ["H", "H", "H", "P", "P", "P", "CX", "P", "CX", "CX", "P", "CX"]
        np.testing.assert_allclose([g.angle for g in gates[3:6]], 2.0 * x)
        np.testing.assert_allclose(
            gates[7].angle, 2.0 * (math.pi - x[0]) * (math.pi - x[1])
        )
        np.testing.assert_allclose(
            gates[10].angle, 2.0 * (math.pi - x[1]) * (math.pi - x[2])
        )
        # entanglers run down the line: (0,1) then (1,2), phase on the pair's target
        assert (gates[6].control, gates[6].target) == (0, 1)
        assert (gates[9].control, gates[9].target) == (1, 2)
        assert gates[7].target == 1 and gates[10].target == 2

    def test_zero_features_pair_phase(self):
        gates = zz_feature_map(3, np.zeros(3)).concrete_gates()
        np.testing.assert_allclose(gates[7].angle, 2.0 * math.pi**2)

    def test_pi_features_zero_out_pair_phase(self):
        gates = zz_feature_map(3, np.full(3, math.pi)).concrete_gates()
        np.testing.assert_allclose([gates[3].angle, gates[7].angle], [2 * math.pi, 0.0])

    def test_uniform_probabilities_from_phase_only_encoding(self):
        # all gates after the H layer are diagonal or permutations of the
        # uniform superposition, so every amplitude keeps magnitude 1/sqrt(8)
        rng = np.random.default_rng(0)
        for trial in range(20):
            state = feature_state(rng.uniform(0, 1, size=3))
            np.testing.assert_allclose(
                np.abs(state.amplitudes), np.full(8, 1 / math.sqrt(8)), atol=1e-12
            )

    def test_matches_matrix_oracle(self):
        rng = np.random.default_rng(1)
        for trial in range(20):
            x = rng.uniform(0, 1, size=3)
            gates = zz_feature_map(3, x).concrete_gates()
            expected = circuit_matrix(gates, 3)[:, 0]  # applied to |000>
            np.testing.assert_allclose(
                feature_state(x).amplitudes, expected, atol=1e-12
            )


class TestAnsatzStructure:
    def test_gate_count_and_param_count(self):
        template = real_amplitudes_template(3)
        assert len(template.gates) == 8
        assert template.n_params == N_ANSATZ_PARAMS == 6

    def test_layout(self):
        phi = np.arange(6, dtype=float)
        gates = real_amplitudes(3, phi).concrete_gates()
        kinds = [g.kind for g in gates]
        assert kinds == ["RY", "RY", "RY", "CX", "CX", "RY", "RY", "RY"]
        np.testing.assert_allclose([g.angle for g in gates[:3]], phi[:3])
        np.testing.assert_allclose([g.angle for g in gates[5:]], phi[3:])
        assert (gates[3].control, gates[3].target) == (0, 1)
        assert (gates[4].control, gates[4].target) == (1, 2)

    def test_pi_rotation_on_qubit_zero_propagates_down_the_chain(self):
        # RY(pi) flips q0; CX(0,1) then flips q1, and CX(1,2) flips q2,
        # leaving |111> = index 7
        circuit = real_amplitudes(3, np.array([math.pi, 0, 0, 0, 0, 0]))
        state = run_circuit(zero_state(3), circuit)
        probs = np.abs(state.amplitudes) ** 2
        np.testing.assert_allclose(probs[7], 1.0, atol=1e-12)

    def test_amplitudes_stay_real(self):
        rng = np.random.default_rng(2)
        for trial in range(20):
            phi = rng.uniform(-np.pi, np.pi, size=6)
            state = run_circuit(zero_state(3), real_amplitudes(3, phi))
            np.testing.assert_allclose(state.amplitudes.imag, 0.0, atol=1e-12)

    def test_zero_parameters_is_identity(self):
        state = run_circuit(zero_state(3), real_amplitudes(3, np.zeros(6)))
        np.testing.assert_allclose(np.abs(state.amplitudes[0]), 1.0, atol=1e-15)

    def test_matches_matrix_oracle(self):
        rng = np.random.default_rng(3)
        for trial in range(20):
            phi = rng.uniform(-np.pi, np.pi, size=6)
            gates = real_amplitudes(3, phi).concrete_gates()
            expected = circuit_matrix(gates, 3)[:, 0]
            state = run_circuit(zero_state(3), real_amplitudes(3, phi))
            np.testing.assert_allclose(state.amplitudes, expected, atol=1e-12)


class TestBinding:
    def test_unbound_circuit_refuses_to_run(self):
        with pytest.raises(ValueError):
            zz_feature_map_template(3).concrete_gates()

    def test_bind_requires_expected_vectors(self):
        with pytest.raises(ValueError):
            zz_feature_map_template(3).bind()
        with pytest.raises(ValueError):
            real_amplitudes_template(3).bind()

    def test_bind_rejects_wrong_lengths(self):
        with pytest.raises(ValueError):
            zz_feature_map_template(3).bind(x=np.zeros(2))
        with pytest.raises(ValueError):
            real_amplitudes_template(3).bind(phi=np.zeros(5))

    def test_feature_state_dimension_follows_input(self):
        assert feature_state(np.array([0.3])).n_qubits == 1
        assert feature_state(np.array([0.3, 0.4])).n_qubits == 2
        assert feature_state(np.zeros(N_FEATURES)).n_qubits == 3

    def test_encoding_is_deterministic(self):
        x = np.array([0.1, 0.9, 0.4])
        np.testing.assert_array_equal(
            feature_state(x).amplitudes, feature_state(x).amplitudes
        )
