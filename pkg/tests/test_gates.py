import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orthoclone import qlin
from orthoclone.gates import (
    ROTATION_PHASE,
    TRANSPOSED_ROTATION_PHASE,
    classical_field_unitary,
    cnot,
    rotation,
    rotation_on,
)

angles = st.floats(min_value=-20, max_value=20, allow_nan=False)
THETA_GRID = [k * math.pi / 40 for k in range(41)]


class TestRotation:
    def test_zero_is_identity(self):
        np.testing.assert_array_equal(rotation(0), np.eye(2))

    def test_quarter_turn(self):
        np.testing.assert_allclose(qlin.apply(rotation(math.pi / 2), qlin.basis_state("0")), [0, 1], atol=1e-16)

    def test_pi_over_8(self):
        out = qlin.apply(rotation(math.pi / 8), qlin.basis_state("0"))
        np.testing.assert_allclose(out, [0.9238795325112867, 0.3826834323650898], atol=1e-15)

    def test_columns(self):
        t = 0.81
        r = rotation(t)
        np.testing.assert_allclose(r[:, 0], [math.cos(t), math.sin(t)])
        np.testing.assert_allclose(r[:, 1], [-math.sin(t), math.cos(t)])

    @given(angles, angles)
    def test_composition(self, t1, t2):
        assert np.max(np.abs(rotation(t1) @ rotation(t2) - rotation(t1 + t2))) < 1e-12

    @given(angles)
    def test_unitary(self, t):
        assert qlin.unitarity_defect(rotation(t)) < 1e-12

    def test_rotation_on(self):
        np.testing.assert_array_equal(rotation_on(0.2, 1, 2), np.kron(np.eye(2), rotation(0.2)))


class TestCnot:
    def test_flips_when_control_set(self):
        np.testing.assert_array_equal(qlin.apply(cnot(0, 1, 2), qlin.basis_state("10")), qlin.basis_state("11"))

    def test_idle_when_control_clear(self):
        np.testing.assert_array_equal(qlin.apply(cnot(0, 1, 2), qlin.basis_state("01")), qlin.basis_state("01"))

    def test_low_control_high_target(self):
        np.testing.assert_array_equal(qlin.apply(cnot(2, 0, 3), qlin.basis_state("001")), qlin.basis_state("101"))

    def test_two_qubit_matrix(self):
        expected = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
        np.testing.assert_array_equal(cnot(0, 1, 2), expected)

    @pytest.mark.parametrize("n", [2, 3])
    def test_self_inverse_permutation(self, n):
        for c in range(n):
            for t in range(n):
                if c == t:
                    continue
                u = cnot(c, t, n)
                assert set(np.unique(u)) <= {0, 1}
                np.testing.assert_array_equal(u.sum(axis=0), 1)
                np.testing.assert_array_equal(u.sum(axis=1), 1)
                np.testing.assert_array_equal(u @ u, np.eye(2**n))

    def test_same_qubit_rejected(self):
        with pytest.raises(ValueError):
            cnot(1, 1, 3)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            cnot(0, 3, 3)


class TestClassicalField:
    def test_rotation_phase_reproduces_rotation(self):
        worst = max(np.max(np.abs(classical_field_unitary(t, ROTATION_PHASE) - rotation(t))) for t in THETA_GRID)
        assert worst < 1e-14

    def test_other_phase_gives_transpose(self):
        worst = max(
            np.max(np.abs(classical_field_unitary(t, TRANSPOSED_ROTATION_PHASE) - rotation(t).T)) for t in THETA_GRID
        )
        assert worst < 1e-14
        # and therefore not the rotation itself, except where sin(theta) = 0
        assert np.max(np.abs(classical_field_unitary(0.3, TRANSPOSED_ROTATION_PHASE) - rotation(0.3))) > 0.5

    @given(angles)
    def test_zero_pulse_is_identity(self, omega):
        np.testing.assert_allclose(classical_field_unitary(0, omega), np.eye(2), atol=1e-15)

    def test_half_pulse(self):
        out = qlin.apply(classical_field_unitary(math.pi / 2, 0), qlin.basis_state("0"))
        np.testing.assert_allclose(out, [0, -1j], atol=1e-15)

    @given(angles, angles)
    def test_unitary(self, t, w):
        assert qlin.unitarity_defect(classical_field_unitary(t, w)) < 1e-12

    def test_entries(self):
        t, w = 0.4, 1.1
        u = classical_field_unitary(t, w)
        np.testing.assert_allclose(u[0, 1], -1j * np.exp(-1j * w) * math.sin(t), atol=1e-15)
        np.testing.assert_allclose(u[1, 0], -1j * np.exp(1j * w) * math.sin(t), atol=1e-15)
        np.testing.assert_allclose(np.diag(u), [math.cos(t)] * 2, atol=1e-15)
