"""Dense complex linear algebra for registers of one to three qubits.

States are 1-D complex arrays of length 2**n, operators are square complex
arrays. Qubit 0 is the most significant bit of a basis index, so the ket
|x y z> of a three-qubit register sits at index 4x + 2y + z.

Every array returned from this module is marked read-only.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

MAX_DIM = 8
NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-10

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def _n_qubits(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or 1 << n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def state(amps: Sequence[complex], tol: float = NORM_TOL) -> np.ndarray:
    """Validate amplitudes as a normalized 1-3 qubit state vector."""
    psi = np.array(amps, dtype=complex).reshape(-1)
    dim = psi.size
    if dim > MAX_DIM:
        raise ValueError("register too large")
    _n_qubits(dim)
    if not np.all(np.isfinite(psi)):
        raise ValueError("state has non-finite amplitudes")
    norm = np.vdot(psi, psi).real
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state is not normalized (norm^2 = {norm!r})")
    return _frozen(psi)


def basis_state(bits: str) -> np.ndarray:
    """Computational basis ket from a bit string, e.g. ``basis_state("101")``."""
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError(f"bad bit string {bits!r}")
    if len(bits) > 3:
        raise ValueError("register too large")
    psi = np.zeros(2 ** len(bits), dtype=complex)
    psi[int(bits, 2)] = 1.0
    return _frozen(psi)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; the first factor holds the more significant qubits."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    for m in (a, b):
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("kron expects square matrices")
        _n_qubits(m.shape[0])
    if a.shape[0] * b.shape[0] > MAX_DIM:
        raise ValueError("register too large")
    return _frozen(np.kron(a, b))


def embed(gate: np.ndarray, target: int, n: int) -> np.ndarray:
    """Place a single-qubit ``gate`` on qubit ``target`` of an ``n``-qubit register."""
    gate = np.asarray(gate, dtype=complex)
    if gate.shape != (2, 2):
        raise ValueError("embed expects a 2x2 gate")
    if not 1 <= n <= 3:
        raise ValueError("register too large" if n > 3 else "register must have a qubit")
    if not 0 <= target < n:
        raise ValueError(f"target qubit {target} out of range for {n} qubits")
    factors = [gate if q == target else np.eye(2, dtype=complex) for q in range(n)]
    out = factors[0]
    for f in factors[1:]:
        out = kron(out, f)
    return _frozen(np.array(out))


def apply(op: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """Matrix-vector product. No renormalization is done."""
    op = np.asarray(op, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    if op.ndim != 2 or op.shape != (psi.size, psi.size):
        raise ValueError(f"dimension mismatch: operator {op.shape} vs state of length {psi.size}")
    return _frozen(op @ psi)


def compose(*ops: np.ndarray) -> np.ndarray:
    """Product of operators listed in the order they act (first listed acts first)."""
    if not ops:
        raise ValueError("nothing to compose")
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        op = np.asarray(op, dtype=complex)
        if op.shape != out.shape:
            raise ValueError(f"dimension mismatch: {op.shape} vs {out.shape}")
        out = op @ out
    return _frozen(out)


def unitarity_defect(u: np.ndarray) -> float:
    """Largest entrywise deviation of U U^dagger from the identity."""
    u = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))))


def partial_trace(psi: np.ndarray, keep: tuple[int, int] = (1, 2)) -> np.ndarray:
    """Reduced density matrix of two qubits of a pure three-qubit state.

    The qubit listed first in ``keep`` becomes the more significant qubit of
    the returned 4x4 matrix.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.size != 8:
        raise ValueError("partial_trace expects a three-qubit state")
    k0, k1 = keep
    if k0 == k1 or not (0 <= k0 < 3 and 0 <= k1 < 3):
        raise ValueError(f"invalid keep pair {keep}")
    (dropped,) = {0, 1, 2} - {k0, k1}
    m = psi.reshape(2, 2, 2).transpose(dropped, k0, k1).reshape(2, 4)
    return _frozen(m.T @ m.conj())


def reduce_pair(rho: np.ndarray, keep: int) -> np.ndarray:
    """Single-qubit marginal of a two-qubit density matrix (``keep`` is 0 or 1)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("reduce_pair expects a 4x4 matrix")
    t = rho.reshape(2, 2, 2, 2)
    if keep == 0:
        return _frozen(np.einsum("ikjk->ij", t))
    if keep == 1:
        return _frozen(np.einsum("kikj->ij", t))
    raise ValueError(f"keep must be 0 or 1, got {keep}")


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Transpose on the second (less significant) qubit of a 4x4 matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("partial_transpose expects a 4x4 matrix")
    return _frozen(rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4).copy())


def _jacobi_rotate(h: np.ndarray, p: int, q: int) -> None:
    hpq = h[p, q]
    mag = abs(hpq)
    if mag == 0.0:
        return
    phase = hpq / mag
    tau = (h[q, q].real - h[p, p].real) / (2.0 * mag)
    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    # G = diag-phase on q followed by a real Givens rotation in the (p, q) plane
    g_pp, g_pq = c, s
    g_qp, g_qq = -s * np.conj(phase), c * np.conj(phase)
    col_p = h[:, p].copy()
    col_q = h[:, q].copy()
    h[:, p] = col_p * g_pp + col_q * g_qp
    h[:, q] = col_p * g_pq + col_q * g_qq
    row_p = h[p, :].copy()
    row_q = h[q, :].copy()
    h[p, :] = np.conj(g_pp) * row_p + np.conj(g_qp) * row_q
    h[q, :] = np.conj(g_pq) * row_p + np.conj(g_qq) * row_q
    h[p, q] = h[q, p] = 0.0


def hermitian_eigenvalues(h: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending, by cyclic complex Jacobi sweeps.

    Asymmetry up to 1e-10 is absorbed by symmetrizing; anything larger raises.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.all(np.isfinite(h)):
        raise ValueError("matrix has non-finite entries")
    if np.max(np.abs(h - h.conj().T), initial=0.0) > HERMITIAN_TOL:
        raise ValueError("matrix not Hermitian")
    work = (h + h.conj().T) / 2
    n = work.shape[0]
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(work - np.diag(np.diag(work)))
        if off < JACOBI_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotate(work, p, q)
    return _frozen(np.sort(np.diag(work).real))


def overlap_sq(x: np.ndarray, y: np.ndarray) -> float:
    """|<x|y>|^2, clipped to [0, 1] against rounding."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if x.shape != y.shape:
        raise ValueError(f"register size mismatch: {x.size} vs {y.size}")
    return float(min(1.0, abs(np.vdot(x, y)) ** 2))
