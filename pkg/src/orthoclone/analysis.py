"""Fidelity under rotation-angle errors and entanglement of the clone pair."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import qlin
from .cloner import (
    InputKind,
    InputSpec,
    MachineParams,
    clone,
    input_state,
    preparation_circuit,
)

NEGATIVITY_THRESHOLD = -1e-12
PIPELINE_AGREEMENT_TOL = 1e-12


class Verdict(str, enum.Enum):
    ENTANGLED = "Entangled"
    SEPARABLE = "Separable"


@dataclass(frozen=True)
class PerturbationResult:
    phi: float
    delta_theta: float
    f_closed: float
    f_simulated: float

    @property
    def difference(self) -> float:
        return abs(self.f_closed - self.f_simulated)


@dataclass(frozen=True)
class EntanglementReport:
    phi: float
    input: InputSpec
    pt_eigs_numeric: tuple[float, ...]
    # None for custom inputs: the closed form only covers the four family states.
    pt_eigs_closed: tuple[float, ...] | None
    min_eig: float
    verdict: Verdict

    @property
    def min_eig_closed(self) -> float | None:
        return None if self.pt_eigs_closed is None else self.pt_eigs_closed[0]

    @property
    def negativity(self) -> float:
        return max(0.0, -self.min_eig)


def _perturbed_amplitudes(a: float, b: float, c: float, dt: float) -> tuple[float, float, float]:
    root = math.sqrt(max(0.0, 1.0 - 4.0 * b * b))
    big_a = a - 2 * b * dt + 0.5 * (1 - root) * dt
    big_b = b - b * dt + root * dt
    big_c = c + 2 * b * dt + 0.5 * (1 + root) * dt
    return big_a, big_b, big_c


def perturbed_fidelity_closed(phi: float, delta_theta: float) -> float:
    """First-order closed form of the fidelity when every rotation angle is off by ``delta_theta``.

    Agreement with the exact simulation is O(delta_theta**2).
    """
    a, b, c = MachineParams.from_phi(phi).triple
    big_a, big_b, big_c = _perturbed_amplitudes(a, b, c, delta_theta)
    norm2 = big_a**2 + 2 * big_b**2 + big_c**2
    return (a * big_a + 2 * b * big_b + c * big_c) ** 2 / norm2


def perturbed_fidelity_simulated(
    phi: float,
    delta_theta: float,
    deltas: Sequence[float] | None = None,
    spec: InputSpec = InputSpec(InputKind.PSI1),
) -> float:
    """|<ideal|perturbed>|^2 of full three-qubit outputs.

    By default all three preparation angles get the same error; pass
    ``deltas`` to perturb them independently. The overlap of the bare
    preparation states is computed alongside and must agree, since the copy
    stage is a shared unitary.
    """
    errors = tuple(deltas) if deltas is not None else (delta_theta,) * 3
    ideal = clone(spec, phi)
    actual = clone(spec, phi, errors)
    fidelity = qlin.overlap_sq(ideal, actual)

    params = MachineParams.from_phi(phi)
    prep_ideal = preparation_circuit(*params.angles)
    prep_actual = preparation_circuit(*(t + d for t, d in zip(params.angles, errors)))
    shortcut = qlin.overlap_sq(prep_ideal, prep_actual)
    if abs(fidelity - shortcut) > PIPELINE_AGREEMENT_TOL:
        raise RuntimeError(
            f"three-qubit and preparation-level fidelities disagree: {fidelity!r} vs {shortcut!r}"
        )
    return fidelity


def perturbation(phi: float, delta_theta: float) -> PerturbationResult:
    return PerturbationResult(
        phi=phi,
        delta_theta=delta_theta,
        f_closed=perturbed_fidelity_closed(phi, delta_theta),
        f_simulated=perturbed_fidelity_simulated(phi, delta_theta),
    )


def clone_pair_density(output: np.ndarray) -> np.ndarray:
    """State of the two copies (a2, a3) after discarding the original."""
    return qlin.partial_trace(output, keep=(1, 2))


def clone_pair_density_closed(alpha: float, beta: float, a: float, b: float, c: float) -> np.ndarray:
    """Clone-pair density matrix for real input alpha|0> + beta|1>, entry by entry."""
    ab = alpha * beta
    p = ab * (a * c + b * b)
    q = ab * (a * b + b * c)
    rho = np.array(
        [
            [alpha**2 * a**2 + beta**2 * b**2, p, q, a * b],
            [p, alpha**2 * b**2 + beta**2 * c**2, b * c, q],
            [q, b * c, alpha**2 * c**2 + beta**2 * b**2, p],
            [a * b, q, p, alpha**2 * b**2 + beta**2 * a**2],
        ],
        dtype=complex,
    )
    return qlin._frozen(rho)


def single_clone_fidelity(output: np.ndarray, psi_in: np.ndarray, which: str = "a2") -> float:
    """<psi_in| rho |psi_in> where rho is the marginal of qubit ``which`` ("a1", "a2" or "a3")."""
    if which == "a1":
        rho = qlin.reduce_pair(qlin.partial_trace(output, keep=(0, 1)), 0)
    elif which in ("a2", "a3"):
        rho = qlin.reduce_pair(clone_pair_density(output), 0 if which == "a2" else 1)
    else:
        raise ValueError(f"which must be 'a1', 'a2' or 'a3', got {which!r}")
    psi_in = np.asarray(psi_in, dtype=complex)
    return float(np.vdot(psi_in, rho @ psi_in).real)


def pt_eigenvalues_closed(a: float, b: float, c: float) -> tuple[float, ...]:
    r1 = math.sqrt((a * a - b * b) ** 2 + 4 * b * b * c * c)
    r2 = math.sqrt((b * b - c * c) ** 2 + 4 * a * a * b * b)
    return tuple(
        sorted(
            (
                (a * a + b * b + r1) / 2,
                (a * a + b * b - r1) / 2,
                (b * b + c * c + r2) / 2,
                (b * b + c * c - r2) / 2,
            )
        )
    )


def pt_eigenvalues_numeric(output: np.ndarray) -> tuple[float, ...]:
    pt = qlin.partial_transpose(clone_pair_density(output))
    return tuple(float(x) for x in qlin.hermitian_eigenvalues(pt))


def verdict_for(min_eig: float) -> Verdict:
    return Verdict.ENTANGLED if min_eig < NEGATIVITY_THRESHOLD else Verdict.SEPARABLE


def separability_report(spec: InputSpec, phi: float) -> EntanglementReport:
    params = MachineParams.from_phi(phi)
    eigs = pt_eigenvalues_numeric(clone(spec, phi))
    closed = pt_eigenvalues_closed(*params.triple) if spec.kind.is_family else None
    return EntanglementReport(
        phi=params.phi,
        input=spec,
        pt_eigs_numeric=eigs,
        pt_eigs_closed=closed,
        min_eig=eigs[0],
        verdict=verdict_for(eigs[0]),
    )


def clone_fidelities(spec: InputSpec, phi: float) -> tuple[float, float]:
    """Single-copy fidelities of a2 and a3 against the input state."""
    out = clone(spec, phi)
    psi = input_state(spec, phi)
    return single_clone_fidelity(out, psi, "a2"), single_clone_fidelity(out, psi, "a3")

