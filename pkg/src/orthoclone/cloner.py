"""The 1 -> 2 cloning machine for two pairs of orthogonal qubit states.

Register layout (qubit 0 is the most significant bit):

    a1  qubit 0   original, carries the input state
    a2  qubit 1   blank copy, starts in |0>
    a3  qubit 2   ancilla, starts in |0>

The machine runs in two stages. A five-gate preparation network loads
``a|00> + b(|01> + |10>) + c|11>`` onto (a2, a3); a fixed three-CNOT copy
stage then entangles the original with the prepared pair.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import qlin
from .gates import cnot, rotation

PHI_MAX = math.pi / 2
IDENTITY_TOL = 1e-12
CUSTOM_NORM_TOL = 1e-6

# (control, target) pairs in the order they act on (a1, a2, a3).
COPY_STAGE: tuple[tuple[int, int], ...] = ((0, 1), (2, 0), (1, 2))


class InputKind(enum.Enum):
    PSI1 = "psi1"
    PSI2 = "psi2"
    PSI3 = "psi3"
    PSI4 = "psi4"
    CUSTOM = "custom"

    @property
    def is_family(self) -> bool:
        return self is not InputKind.CUSTOM


FAMILY = (InputKind.PSI1, InputKind.PSI2, InputKind.PSI3, InputKind.PSI4)


@dataclass(frozen=True)
class InputSpec:
    """Which state is fed to the copier.

    Family members are fixed by the machine angle phi; custom states carry
    their own real amplitudes, renormalized on construction.
    """

    kind: InputKind
    alpha: float | None = None
    beta: float | None = None

    def __post_init__(self) -> None:
        if self.kind is not InputKind.CUSTOM:
            return
        if self.alpha is None or self.beta is None:
            raise ValueError("custom input needs both alpha and beta")
        for v in (self.alpha, self.beta):
            if isinstance(v, complex) or np.iscomplexobj(v):
                raise ValueError("custom amplitudes must be real; complex inputs lie outside the state family")
        alpha, beta = float(self.alpha), float(self.beta)
        if not (math.isfinite(alpha) and math.isfinite(beta)):
            raise ValueError("custom amplitudes must be finite")
        norm2 = alpha * alpha + beta * beta
        if norm2 == 0.0:
            raise ValueError("custom input (0, 0) cannot be normalized")
        if abs(norm2 - 1.0) > CUSTOM_NORM_TOL:
            raise ValueError(f"custom input not normalized: alpha^2 + beta^2 = {norm2:.9g}")
        norm = math.sqrt(norm2)
        object.__setattr__(self, "alpha", alpha / norm)
        object.__setattr__(self, "beta", beta / norm)

    @classmethod
    def family(cls, which: int | str | InputKind) -> InputSpec:
        if isinstance(which, int):
            return cls(FAMILY[which - 1])
        return cls(InputKind(which) if isinstance(which, str) else which)

    @classmethod
    def custom(cls, alpha: float, beta: float) -> InputSpec:
        return cls(InputKind.CUSTOM, alpha, beta)

    @property
    def label(self) -> str:
        if self.kind is InputKind.CUSTOM:
            return f"custom({self.alpha:.9g},{self.beta:.9g})"
        return self.kind.value


def check_phi(phi: float) -> float:
    phi = float(phi)
    if not (0.0 <= phi <= PHI_MAX):
        raise ValueError(f"phi out of supported range [0, pi/2]: {phi!r}")
    return phi


def coefficients(phi: float) -> tuple[float, float, float]:
    """Optimal cloning amplitudes (a, b, c) for the family at angle ``phi``."""
    phi = check_phi(phi)
    s2, c2 = math.sin(phi) ** 2, math.cos(phi) ** 2
    k = 1.0 / math.sqrt(s2 * s2 + c2 * c2)
    return 0.5 * (1.0 + c2 * k), 0.5 * s2 * k, 0.5 * (1.0 - c2 * k)


def prep_angles(a: float, b: float, c: float) -> tuple[float, float, float]:
    """Rotation angles (theta1, theta2, theta3) of the preparation network.

    Principal arcsin branches throughout; for a valid triple theta2 vanishes
    and theta1 = theta3 = asin(2b) / 2.
    """
    arg2 = math.sqrt(2.0) / 2.0 * (a + c)
    if abs(arg2) > 1.0 + IDENTITY_TOL:
        raise ValueError("arcsin domain")
    theta2 = math.asin(max(-1.0, min(1.0, arg2))) - math.pi / 4
    arg1 = 2.0 * b / (math.cos(theta2) - math.sin(theta2))
    if abs(arg1) > 1.0 + IDENTITY_TOL:
        raise ValueError("arcsin domain")
    theta1 = 0.5 * math.asin(max(-1.0, min(1.0, arg1)))
    return theta1, theta2, theta1


@dataclass(frozen=True)
class MachineParams:
    phi: float
    a: float
    b: float
    c: float
    theta1: float
    theta2: float
    theta3: float

    @classmethod
    def from_phi(cls, phi: float) -> MachineParams:
        a, b, c = coefficients(phi)
        return cls(float(phi), a, b, c, *prep_angles(a, b, c))

    @property
    def angles(self) -> tuple[float, float, float]:
        return self.theta1, self.theta2, self.theta3

    @property
    def triple(self) -> tuple[float, float, float]:
        return self.a, self.b, self.c


def family_amplitudes(phi: float) -> tuple[float, float]:
    """(alpha, beta) such that Psi1 = alpha|0> + beta|1> has Bloch vector (sin phi, 0, cos phi)."""
    phi = check_phi(phi)
    return math.cos(phi / 2), math.sin(phi / 2)


def input_amplitudes(spec: InputSpec, phi: float) -> tuple[float, float]:
    if spec.kind is InputKind.CUSTOM:
        return spec.alpha, spec.beta
    alpha, beta = family_amplitudes(phi)
    return {
        InputKind.PSI1: (alpha, beta),
        InputKind.PSI2: (alpha, -beta),
        InputKind.PSI3: (beta, -alpha),
        InputKind.PSI4: (beta, alpha),
    }[spec.kind]


def input_state(spec: InputSpec, phi: float) -> np.ndarray:
    return qlin.state(input_amplitudes(spec, phi))


def bloch_vector(psi: np.ndarray) -> tuple[float, float, float]:
    psi = np.asarray(psi, dtype=complex)
    if psi.size != 2:
        raise ValueError("bloch_vector expects a single-qubit state")
    u, v = psi
    cross = np.conj(u) * v
    return 2.0 * cross.real, 2.0 * cross.imag, float(abs(u) ** 2 - abs(v) ** 2)


def preparation_circuit(
    theta1: float,
    theta2: float,
    theta3: float,
    rotation_gate: Callable[[float], np.ndarray] = rotation,
) -> np.ndarray:
    """Run the five-gate preparation network on |00> of the (a2, a3) pair.

    Gate order: R(theta1) on a2, CNOT a2->a3, R(theta2) on a3,
    CNOT a3->a2, R(theta3) on a2. ``rotation_gate`` lets callers swap in a
    different realization of the single-qubit rotation.
    """
    network = qlin.compose(
        qlin.embed(rotation_gate(theta1), 0, 2),
        cnot(0, 1, 2),
        qlin.embed(rotation_gate(theta2), 1, 2),
        cnot(1, 0, 2),
        qlin.embed(rotation_gate(theta3), 0, 2),
    )
    return qlin.apply(network, qlin.basis_state("00"))


def preparation_state_direct(a: float, b: float, c: float) -> np.ndarray:
    norm2 = a * a + 2 * b * b + c * c
    if abs(norm2 - 1.0) > 1e-10:
        raise ValueError(f"coefficient triple is not normalized: a^2 + 2b^2 + c^2 = {norm2!r}")
    return qlin.state([a, b, b, c], tol=1e-10)


def copy_circuit(order: Sequence[tuple[int, int]] = COPY_STAGE) -> np.ndarray:
    """8x8 permutation of the copy stage; ``order`` lists (control, target) in application order."""
    return qlin.compose(*(cnot(ctl, tgt, 3) for ctl, tgt in order))


def ideal_clone_map(basis_bit: int, params: MachineParams) -> np.ndarray:
    """Target output of the machine for original |0> or |1>, written down directly."""
    a, b, c = params.triple
    amps = np.zeros(8, dtype=complex)
    if basis_bit == 0:
        amps[0b000] = a
        amps[0b011] = amps[0b101] = b
        amps[0b110] = c
    elif basis_bit == 1:
        amps[0b111] = a
        amps[0b100] = amps[0b010] = b
        amps[0b001] = c
    else:
        raise ValueError(f"basis_bit must be 0 or 1, got {basis_bit}")
    return qlin._frozen(amps)


def ideal_clone(alpha: complex, beta: complex, params: MachineParams) -> np.ndarray:
    """Linear extension of ``ideal_clone_map`` to alpha|0> + beta|1>."""
    return qlin._frozen(alpha * ideal_clone_map(0, params) + beta * ideal_clone_map(1, params))


def run_copier(
    psi_in: np.ndarray,
    prep: np.ndarray,
    order: Sequence[tuple[int, int]] = COPY_STAGE,
) -> np.ndarray:
    """Copy stage applied to |psi_in>_{a1} (x) |prep>_{a2 a3}."""
    register = np.kron(np.asarray(psi_in, dtype=complex), np.asarray(prep, dtype=complex))
    return qlin.apply(copy_circuit(order), register)


def clone(spec: InputSpec, phi: float, angle_errors: Sequence[float] = (0.0, 0.0, 0.0)) -> np.ndarray:
    """Full pipeline: input (x) prepared pair, then the copy stage.

    ``angle_errors`` are added to (theta1, theta2, theta3) before the
    preparation network runs.
    """
    params = MachineParams.from_phi(phi)
    angles = [t + d for t, d in zip(params.angles, angle_errors, strict=True)]
    return run_copier(input_state(spec, phi), preparation_circuit(*angles))
