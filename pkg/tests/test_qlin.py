import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from orthoclone import qlin
from orthoclone.gates import cnot, rotation

X = np.array([[0, 1], [1, 0]], dtype=complex)
I2 = np.eye(2)


def ket(bits):
    return qlin.basis_state(bits)


def random_state(rng, n):
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return v / np.linalg.norm(v)


def random_hermitian(rng, dim=4):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return m + m.conj().T


class TestState:
    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="not normalized"):
            qlin.state([1, 1])

    def test_rejects_bad_length(self):
        with pytest.raises(ValueError):
            qlin.state([1, 0, 0])

    def test_rejects_large_register(self):
        with pytest.raises(ValueError, match="register too large"):
            qlin.state(np.eye(16)[0])

    def test_outputs_are_read_only(self):
        psi = ket("01")
        with pytest.raises(ValueError):
            psi[0] = 1


class TestKron:
    def test_identity(self):
        np.testing.assert_array_equal(qlin.kron(I2, I2), np.eye(4))

    def test_bit_flip_on_high_qubit(self):
        np.testing.assert_array_equal(qlin.apply(qlin.kron(X, I2), ket("00")), ket("10"))

    def test_diagonal(self):
        out = qlin.kron(np.diag([1, 2]), np.diag([3, 4]))
        np.testing.assert_array_equal(out, np.diag([3, 4, 6, 8]))

    def test_index_formula(self, rng):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(4, 4))
        out = qlin.kron(a, b)
        for i in range(2):
            for j in range(2):
                for k in range(4):
                    for l in range(4):
                        assert out[i * 4 + k, j * 4 + l] == a[i, j] * b[k, l]

    def test_too_large(self):
        with pytest.raises(ValueError, match="register too large"):
            qlin.kron(np.eye(4), np.eye(4))

    def test_associative(self, rng):
        a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
        left = qlin.kron(qlin.kron(a, b), c)
        right = qlin.kron(a, qlin.kron(b, c))
        assert np.max(np.abs(left - right)) < 1e-14


class TestEmbed:
    def test_high_qubit(self):
        np.testing.assert_array_equal(qlin.apply(qlin.embed(X, 0, 2), ket("00")), ket("10"))

    def test_low_qubit(self):
        np.testing.assert_array_equal(qlin.apply(qlin.embed(X, 1, 2), ket("00")), ket("01"))

    def test_rotation_single_qubit(self):
        out = qlin.apply(qlin.embed(rotation(math.pi / 4), 0, 1), ket("0"))
        np.testing.assert_allclose(out, [math.cos(math.pi / 4), math.sin(math.pi / 4)], atol=1e-15)

    @pytest.mark.parametrize("target", [-1, 3])
    def test_target_out_of_range(self, target):
        with pytest.raises(ValueError):
            qlin.embed(X, target, 3)

    @pytest.mark.parametrize("q", [0, 1, 2])
    def test_matches_bitwise_oracle(self, rng, q):
        psi = random_state(rng, 3)
        got = qlin.apply(qlin.embed(rotation(0.37), q, 3), psi)
        want = oracles.apply_rotation(list(psi), 0.37, q, 3)
        np.testing.assert_allclose(got, want, atol=1e-14)


class TestApply:
    def test_identity(self, rng):
        psi = random_state(rng, 3)
        np.testing.assert_array_equal(qlin.apply(np.eye(8), psi), psi)

    def test_cnot_on_10(self):
        np.testing.assert_array_equal(qlin.apply(cnot(0, 1, 2), ket("10")), ket("11"))

    def test_rotation_on_1(self):
        out = qlin.apply(rotation(math.pi / 8), ket("1"))
        np.testing.assert_allclose(out, [-math.sin(math.pi / 8), math.cos(math.pi / 8)], atol=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            qlin.apply(np.eye(4), ket("1"))

    def test_no_renormalization(self):
        out = qlin.apply(2 * np.eye(2), ket("0"))
        assert out[0] == 2


class TestPartialTrace:
    def test_product_state(self):
        rho = qlin.partial_trace(ket("000"), (1, 2))
        expected = np.zeros((4, 4))
        expected[0, 0] = 1
        np.testing.assert_array_equal(rho, expected)

    def test_ghz_marginal(self):
        ghz = (ket("000") + ket("111")) / math.sqrt(2)
        np.testing.assert_allclose(qlin.partial_trace(ghz, (1, 2)), np.diag([0.5, 0, 0, 0.5]), atol=1e-15)

    @pytest.mark.parametrize("keep", [(1, 2), (0, 1), (0, 2), (2, 1)])
    def test_matches_loop_oracle(self, rng, keep):
        psi = random_state(rng, 3)
        np.testing.assert_allclose(qlin.partial_trace(psi, keep), oracles.reduced_pair(psi, keep), atol=1e-14)

    @pytest.mark.parametrize("keep", [(1, 1), (0, 3), (-1, 2)])
    def test_bad_keep(self, keep):
        with pytest.raises(ValueError):
            qlin.partial_trace(ket("000"), keep)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_trace_and_hermiticity(self, seed):
        psi = random_state(np.random.default_rng(seed), 3)
        rho = qlin.partial_trace(psi, (1, 2))
        assert abs(np.trace(rho) - 1) < 1e-12
        assert np.max(np.abs(rho - rho.conj().T)) < 1e-15


class TestReducePair:
    def test_product(self):
        rho = np.kron(np.diag([0.25, 0.75]), np.diag([1.0, 0.0]))
        np.testing.assert_allclose(qlin.reduce_pair(rho, 0), np.diag([0.25, 0.75]))
        np.testing.assert_allclose(qlin.reduce_pair(rho, 1), np.diag([1.0, 0.0]))

    def test_bad_keep(self):
        with pytest.raises(ValueError):
            qlin.reduce_pair(np.eye(4) / 4, 2)


class TestPartialTranspose:
    def test_diagonal_invariant(self):
        rho = np.diag([0.1, 0.2, 0.3, 0.4]).astype(complex)
        np.testing.assert_array_equal(qlin.partial_transpose(rho), rho)

    def test_bell_state_negative(self):
        phi_plus = (ket("00") + ket("11")) / math.sqrt(2)
        pt = qlin.partial_transpose(np.outer(phi_plus, phi_plus.conj()))
        assert qlin.hermitian_eigenvalues(pt)[0] == pytest.approx(-0.5, abs=1e-14)

    def test_matches_loop_oracle(self, rng):
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        np.testing.assert_array_equal(qlin.partial_transpose(m), oracles.partial_transpose(m))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_involution_bit_identical(self, seed):
        m = np.random.default_rng(seed).normal(size=(4, 4, 2)).view(complex)[..., 0]
        np.testing.assert_array_equal(qlin.partial_transpose(qlin.partial_transpose(m)), m)


class TestHermitianEigenvalues:
    def test_diagonal_sorted(self):
        np.testing.assert_array_equal(qlin.hermitian_eigenvalues(np.diag([4.0, 3, 2, 1])), [1, 2, 3, 4])

    def test_rejects_non_hermitian(self):
        m = np.eye(4, dtype=complex)
        m[0, 1] = 1e-6
        with pytest.raises(ValueError, match="matrix not Hermitian"):
            qlin.hermitian_eigenvalues(m)

    def test_absorbs_small_asymmetry(self, rng):
        h = random_hermitian(rng)
        h[0, 1] += 5e-11
        np.testing.assert_allclose(qlin.hermitian_eigenvalues(h), np.linalg.eigvalsh(h), atol=1e-10)

    def test_product_state_pt_non_negative(self, rng):
        v = random_state(rng, 1)
        r1 = np.outer(v, v.conj())
        r2 = np.diag([0.3, 0.7])
        eigs = qlin.hermitian_eigenvalues(qlin.partial_transpose(np.kron(r1, r2)))
        assert eigs[0] > -1e-14

    @settings(max_examples=100, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_recovers_planted_spectrum(self, seed):
        rng = np.random.default_rng(seed)
        lam = np.sort(rng.uniform(-2, 2, size=4))
        q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
        h = q @ np.diag(lam) @ q.conj().T
        eigs = qlin.hermitian_eigenvalues(h)
        assert np.max(np.abs(eigs - lam)) < 1e-9
        assert abs(eigs.sum() - np.trace(h).real) < 1e-10

    def test_agrees_with_lapack(self, rng):
        for _ in range(200):
            h = random_hermitian(rng)
            np.testing.assert_allclose(qlin.hermitian_eigenvalues(h), np.linalg.eigvalsh(h), atol=1e-12)

    def test_degenerate_spectrum(self):
        eigs = qlin.hermitian_eigenvalues(np.eye(4) * 0.25)
        np.testing.assert_allclose(eigs, [0.25] * 4, atol=1e-15)


class TestOverlap:
    def test_self(self, rng):
        psi = random_state(rng, 2)
        assert qlin.overlap_sq(psi, psi) == pytest.approx(1, abs=1e-15)

    def test_orthogonal(self):
        assert qlin.overlap_sq(ket("0"), ket("1")) == 0

    def test_rotation_column(self):
        t = 0.3
        assert qlin.overlap_sq(ket("0"), [math.cos(t), math.sin(t)]) == pytest.approx(math.cos(t) ** 2, abs=1e-15)

    def test_global_phase_invariant(self, rng):
        x, y = random_state(rng, 3), random_state(rng, 3)
        assert qlin.overlap_sq(x, np.exp(0.7j) * y) == pytest.approx(qlin.overlap_sq(x, y), abs=1e-15)

    def test_size_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            qlin.overlap_sq(ket("0"), ket("00"))
