"""Gate set of the copier network.

``rotation`` is the real single-qubit rotation used throughout the network,
``cnot`` the controlled NOT on a small register, and
``classical_field_unitary`` the two-level evolution operator of an atom
driven by a resonant classical field, which realizes the rotation when the
field phase is ``ROTATION_PHASE``.
"""
from __future__ import annotations

import math

import numpy as np

from .qlin import _frozen, embed

# Field phase at which classical_field_unitary(theta, phase) == rotation(theta).
ROTATION_PHASE = math.pi / 2
# The other quadrature: yields rotation(theta).T == rotation(-theta).
TRANSPOSED_ROTATION_PHASE = 3 * math.pi / 2


def rotation(theta: float) -> np.ndarray:
    """R|0> = cos t|0> + sin t|1>,  R|1> = -sin t|0> + cos t|1>."""
    c, s = math.cos(theta), math.sin(theta)
    return _frozen(np.array([[c, -s], [s, c]], dtype=complex))


def rotation_on(theta: float, target: int, n: int) -> np.ndarray:
    return embed(rotation(theta), target, n)


def cnot(control: int, target: int, n: int) -> np.ndarray:
    """Controlled NOT on an ``n``-qubit register, qubit 0 most significant."""
    if not 2 <= n <= 3:
        raise ValueError(f"cnot needs a 2- or 3-qubit register, got n={n}")
    if control == target:
        raise ValueError("control and target must differ")
    if not (0 <= control < n and 0 <= target < n):
        raise ValueError(f"qubit index out of range for {n} qubits")
    dim = 1 << n
    cbit = 1 << (n - 1 - control)
    tbit = 1 << (n - 1 - target)
    op = np.zeros((dim, dim), dtype=complex)
    for k in range(dim):
        op[k ^ tbit if k & cbit else k, k] = 1.0
    return _frozen(op)


def classical_field_unitary(theta: float, omega: float) -> np.ndarray:
    """Resonant-drive evolution operator in the {|0>, |1>} basis.

    ``theta`` is the pulse area (coupling x field amplitude x time) and
    ``omega`` the phase of the complex field amplitude.
    """
    c, s = math.cos(theta), math.sin(theta)
    upper = -1j * complex(math.cos(omega), -math.sin(omega)) * s
    lower = -1j * complex(math.cos(omega), math.sin(omega)) * s
    return _frozen(np.array([[c, upper], [lower, c]], dtype=complex))
