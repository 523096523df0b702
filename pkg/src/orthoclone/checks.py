"""Self-verification suite behind ``orthoclone verify``.

Each check sweeps a grid of machine angles and compares the simulated
network against an independently written closed form. A check is made of
named parts ``(label, value, limit)`` and passes when every ``value < limit``.

``run_checks`` accepts a deliberately broken copy-stage order or field phase
so the suite can prove it notices those defects.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import qlin
from .analysis import (
    pt_eigenvalues_closed,
    pt_eigenvalues_numeric,
    single_clone_fidelity,
)
from .cloner import (
    COPY_STAGE,
    FAMILY,
    InputSpec,
    MachineParams,
    copy_circuit,
    ideal_clone,
    input_amplitudes,
    input_state,
    preparation_circuit,
    preparation_state_direct,
    run_copier,
)
from .gates import (
    ROTATION_PHASE,
    TRANSPOSED_ROTATION_PHASE,
    classical_field_unitary,
    cnot,
    rotation,
)

GRID_POINTS = 41
PHI_GRID = tuple(k * (math.pi / 2) / (GRID_POINTS - 1) for k in range(GRID_POINTS))
THETA_GRID = tuple(k * math.pi / 40 for k in range(41))
DELTA_THETAS = (0.001, -0.001, 0.01, -0.01, 0.05, -0.05)
FD_STEP = 1e-4
N_RANDOM_INPUTS = 20
SEED = 20040101


@dataclass
class Part:
    label: str
    value: float
    limit: float

    @property
    def ok(self) -> bool:
        return bool(self.value < self.limit)


@dataclass
class CheckResult:
    name: str
    parts: list[Part]
    notes: list[str] = field(default_factory=list)
    gating: bool = True

    @property
    def passed(self) -> bool:
        return all(p.ok for p in self.parts)

    @property
    def worst(self) -> Part:
        failing = [p for p in self.parts if not p.ok]
        pool = failing or self.parts
        return max(pool, key=lambda p: p.value - p.limit)


@dataclass(frozen=True)
class Build:
    """The pieces of the machine a check exercises; defaults are the correct build."""

    copy_order: tuple[tuple[int, int], ...] = COPY_STAGE
    field_phase: float = ROTATION_PHASE

    def rotation_gate(self, theta: float) -> np.ndarray:
        return classical_field_unitary(theta, self.field_phase)

    def output(self, alpha: float, beta: float, phi: float, errors: Sequence[float] = (0, 0, 0)) -> np.ndarray:
        params = MachineParams.from_phi(phi)
        angles = [t + d for t, d in zip(params.angles, errors)]
        prep = preparation_circuit(*angles, rotation_gate=self.rotation_gate)
        return run_copier(qlin.state([alpha, beta]), prep, self.copy_order)


def _random_real_inputs(n: int = N_RANDOM_INPUTS) -> list[tuple[float, float]]:
    rng = np.random.default_rng(SEED)
    angles = rng.uniform(0.0, 2 * math.pi, size=n)
    return [(math.cos(t), math.sin(t)) for t in angles]


def _family_and_random_inputs(phi: float) -> list[tuple[float, float]]:
    family = [input_amplitudes(InputSpec(kind), phi) for kind in FAMILY]
    return family + [(1.0, 0.0), (0.0, 1.0)] + _random_real_inputs()


def check_unitarity(build: Build) -> CheckResult:
    rot = max(qlin.unitarity_defect(rotation(t)) for t in THETA_GRID)
    field_ops = max(
        qlin.unitarity_defect(classical_field_unitary(t, w))
        for t in THETA_GRID
        for w in (0.0, 0.3, ROTATION_PHASE, math.pi, TRANSPOSED_ROTATION_PHASE, 5.9)
    )
    cnots = max(
        qlin.unitarity_defect(cnot(c, t, n))
        for n in (2, 3)
        for c in range(n)
        for t in range(n)
        if c != t
    )
    copier = qlin.unitarity_defect(copy_circuit(build.copy_order))
    return CheckResult(
        "unitarity",
        [
            Part("rotation U U^dag - I", rot, 1e-12),
            Part("field unitary U U^dag - I", field_ops, 1e-12),
            Part("cnot U U^dag - I", cnots, 1e-12),
            Part("copy stage U U^dag - I", copier, 1e-12),
        ],
    )


def check_field_rotation(build: Build) -> CheckResult:
    def dev(phase: float, ref: Callable[[float], np.ndarray]) -> float:
        return max(float(np.max(np.abs(classical_field_unitary(t, phase) - ref(t)))) for t in THETA_GRID)

    wired = dev(build.field_phase, rotation)
    at_half = dev(ROTATION_PHASE, rotation)
    at_three_halves = dev(TRANSPOSED_ROTATION_PHASE, rotation)
    transposed = dev(TRANSPOSED_ROTATION_PHASE, lambda t: rotation(t).T)
    notes = [
        f"phase pi/2: max |U - R| = {at_half:.3g} ({'matches' if at_half < 1e-14 else 'does not match'} the rotation gate)",
        f"phase 3pi/2: max |U - R| = {at_three_halves:.3g}, max |U - R^T| = {transposed:.3g} (transposed rotation)",
        f"phase wired into the network: {build.field_phase!r}",
    ]
    return CheckResult(
        "field-rotation-equivalence",
        [
            Part("wired phase vs rotation", wired, 1e-14),
            Part("3pi/2 vs transposed rotation", transposed, 1e-14),
        ],
        notes,
    )


def check_coefficients(build: Build) -> CheckResult:
    norm = ident = sum_ac = theta2 = theta_sym = 0.0
    for phi in PHI_GRID:
        p = MachineParams.from_phi(phi)
        norm = max(norm, abs(p.a**2 + 2 * p.b**2 + p.c**2 - 1))
        ident = max(ident, abs(p.a * p.c - p.b**2))
        sum_ac = max(sum_ac, abs(p.a + p.c - 1))
        theta2 = max(theta2, abs(p.theta2))
        theta_sym = max(theta_sym, abs(p.theta1 - p.theta3))
    return CheckResult(
        "coefficient-identities",
        [
            Part("a^2 + 2b^2 + c^2 - 1", norm, 1e-12),
            Part("a c - b^2", ident, 1e-12),
            Part("a + c - 1", sum_ac, 1e-12),
            Part("theta2", theta2, 1e-14),
            Part("theta1 - theta3", theta_sym, 1e-14),
        ],
    )


def check_preparation(build: Build) -> CheckResult:
    dev = schmidt = 0.0
    for phi in PHI_GRID:
        p = MachineParams.from_phi(phi)
        prep = preparation_circuit(*p.angles, rotation_gate=build.rotation_gate)
        dev = max(dev, float(np.max(np.abs(prep - preparation_state_direct(*p.triple)))))
        schmidt = max(schmidt, float(np.linalg.svd(prep.reshape(2, 2), compute_uv=False)[1]))
    return CheckResult(
        "preparation-identity",
        [
            Part("network vs direct amplitudes", dev, 1e-12),
            Part("second Schmidt coefficient", schmidt, 1e-10),
        ],
    )


def _circuit_deviation(build: Build) -> float:
    worst = 0.0
    for phi in PHI_GRID:
        params = MachineParams.from_phi(phi)
        for alpha, beta in _family_and_random_inputs(phi):
            out = build.output(alpha, beta, phi)
            worst = max(worst, float(np.max(np.abs(out - ideal_clone(alpha, beta, params)))))
    return worst


def check_circuit(build: Build) -> CheckResult:
    return CheckResult(
        "circuit-vs-ideal-map",
        [Part("max amplitude error vs ideal map", _circuit_deviation(build), 1e-10)],
    )


def _pt_eigs(build: Build, alpha: float, beta: float, phi: float) -> tuple[float, ...]:
    return pt_eigenvalues_numeric(build.output(alpha, beta, phi))


def check_pt_spectrum(build: Build) -> CheckResult:
    worst, worst_at = 0.0, None
    trace = 0.0
    for phi in PHI_GRID:
        closed = np.array(pt_eigenvalues_closed(*MachineParams.from_phi(phi).triple))
        for kind in FAMILY:
            eigs = np.array(_pt_eigs(build, *input_amplitudes(InputSpec(kind), phi), phi))
            trace = max(trace, abs(eigs.sum() - 1))
            dev = float(np.max(np.abs(eigs - closed)))
            if dev > worst:
                worst, worst_at = dev, (phi, kind.value)
    notes = []
    if worst_at is not None:
        notes.append(f"largest mismatch at phi={worst_at[0]:.6f}, input {worst_at[1]}")
    return CheckResult(
        "pt-spectrum-closed-form",
        [
            Part("numeric vs closed-form PT eigenvalues", worst, 1e-9),
            Part("PT eigenvalue sum - 1", trace, 1e-10),
        ],
        notes,
    )


def check_pt_negativity(build: Build) -> CheckResult:
    interior_max = -math.inf
    edge = 0.0
    across_inputs = 0.0
    for phi in PHI_GRID:
        spectra = [np.array(_pt_eigs(build, *input_amplitudes(InputSpec(k), phi), phi)) for k in FAMILY]
        across_inputs = max(across_inputs, max(float(np.max(np.abs(s - spectra[0]))) for s in spectra))
        mins = [s[0] for s in spectra]
        if 0.1 <= phi <= math.pi / 2 - 0.1:
            interior_max = max(interior_max, max(mins))
        if phi in (PHI_GRID[0], PHI_GRID[-1]):
            edge = max(edge, max(abs(m) for m in mins))
    at_quarter = _pt_eigs(build, *input_amplitudes(InputSpec(FAMILY[0]), math.pi / 4), math.pi / 4)[0]
    return CheckResult(
        "pt-negativity",
        [
            Part("max interior min-eigenvalue", interior_max, -1e-6),
            Part("|min-eigenvalue| at phi in {0, pi/2}", edge, 1e-10),
            Part("|min-eigenvalue(pi/4) + 0.2329629|", abs(at_quarter + 0.2329629), 1e-6),
            Part("spectrum spread across the four inputs", across_inputs, 1e-9),
        ],
    )


def _fidelity(build: Build, phi: float, dt: float) -> float:
    alpha, beta = input_amplitudes(InputSpec(FAMILY[0]), phi)
    ideal = build.output(alpha, beta, phi)
    return qlin.overlap_sq(ideal, build.output(alpha, beta, phi, (dt, dt, dt)))


def check_fidelity_flatness(build: Build) -> CheckResult:
    slope = loss = 0.0
    for phi in PHI_GRID:
        d = (_fidelity(build, phi, FD_STEP) - _fidelity(build, phi, -FD_STEP)) / (2 * FD_STEP)
        slope = max(slope, abs(d))
        for dt in DELTA_THETAS:
            loss = max(loss, (1 - _fidelity(build, phi, dt)) / dt**2)
    return CheckResult(
        "fidelity-flatness",
        [
            Part("|dF/d(dtheta)| at 0", slope, 1e-6),
            Part("(1 - F) / dtheta^2", loss, 5.0 + 1e-9),
        ],
    )


def check_fidelity_closed(build: Build) -> CheckResult:
    from .analysis import perturbed_fidelity_closed

    gap = at_zero = 0.0
    for phi in PHI_GRID:
        at_zero = max(
            at_zero,
            abs(perturbed_fidelity_closed(phi, 0.0) - 1),
            abs(_fidelity(build, phi, 0.0) - 1),
        )
        for dt in DELTA_THETAS:
            gap = max(gap, abs(perturbed_fidelity_closed(phi, dt) - _fidelity(build, phi, dt)) / dt**2)
    return CheckResult(
        "fidelity-closed-vs-simulated",
        [
            Part("|F_closed - F_sim| / dtheta^2", gap, 5.0 + 1e-9),
            Part("|F - 1| at dtheta = 0", at_zero, 1e-12),
        ],
    )


def _swap_perm(i: int, j: int) -> list[int]:
    def swapped(k: int) -> int:
        bits = list(f"{k:03b}")
        bits[i], bits[j] = bits[j], bits[i]
        return int("".join(bits), 2)

    return [swapped(k) for k in range(8)]


def check_clone_symmetry(build: Build) -> CheckResult:
    swap = copies = inputs = edges = 0.0
    swap_12 = copies_12 = 0.0
    perm_23, perm_12 = _swap_perm(1, 2), _swap_perm(0, 1)
    for phi in PHI_GRID:
        per_input = []
        for kind in FAMILY:
            alpha, beta = input_amplitudes(InputSpec(kind), phi)
            out = build.output(alpha, beta, phi)
            swap = max(swap, float(np.max(np.abs(out - out[perm_23]))))
            swap_12 = max(swap_12, float(np.max(np.abs(out - out[perm_12]))))
            psi = input_state(InputSpec(kind), phi)
            f1, f2, f3 = (single_clone_fidelity(out, psi, w) for w in ("a1", "a2", "a3"))
            copies = max(copies, abs(f2 - f3))
            copies_12 = max(copies_12, abs(f1 - f2))
            per_input.append(f2)
            if phi in (PHI_GRID[0], PHI_GRID[-1]):
                edges = max(edges, abs(f2 - 1), abs(f3 - 1))
        inputs = max(inputs, max(per_input) - min(per_input))
    return CheckResult(
        "clone-symmetry",
        [
            Part("a2 <-> a3 amplitude swap", swap, 1e-15),
            Part("|F(a2) - F(a3)|", copies, 1e-12),
            Part("spread of F(a2) across inputs", inputs, 1e-12),
            Part("|F - 1| at phi in {0, pi/2}", edges, 1e-12),
        ],
        [
            f"for comparison, a1 <-> a2 amplitude swap deviation = {swap_12:.3g}, "
            f"max |F(a1) - F(a2)| = {copies_12:.3g}"
        ],
    )


def check_mutation(build: Build) -> CheckResult:
    """The circuit check must reject a copy stage with its CNOT order reversed."""
    mutant = Build(copy_order=tuple(reversed(build.copy_order)), field_phase=build.field_phase)
    dev = _circuit_deviation(mutant)
    return CheckResult(
        "mutation-self-test",
        [Part("reversed copy order still matches (1 if undetected)", 0.0 if dev >= 1e-10 else 1.0, 0.5)],
        [f"reversed copy order deviates from the ideal map by {dev:.3g}"],
    )


def report_alpha_dependence(build: Build) -> CheckResult:
    """Exploratory: closed-form PT spectrum vs arbitrary real inputs. Never gates."""
    worst = 0.0
    for phi in PHI_GRID:
        closed = np.array(pt_eigenvalues_closed(*MachineParams.from_phi(phi).triple))
        for alpha, beta in _random_real_inputs():
            worst = max(worst, float(np.max(np.abs(np.array(_pt_eigs(build, alpha, beta, phi)) - closed))))
    return CheckResult(
        "info-alpha-dependence",
        [Part("closed-form PT spectrum vs random real inputs", worst, math.inf)],
        gating=False,
    )


CHECKS = (
    check_unitarity,
    check_field_rotation,
    check_coefficients,
    check_preparation,
    check_circuit,
    check_pt_spectrum,
    check_pt_negativity,
    check_fidelity_flatness,
    check_fidelity_closed,
    check_clone_symmetry,
    check_mutation,
    report_alpha_dependence,
)


def run_checks(build: Build = Build()) -> list[CheckResult]:
    return [check(build) for check in CHECKS]


def render(results: Sequence[CheckResult]) -> tuple[str, int]:
    """Human-readable report and the exit code (0 all gating checks pass, 1 otherwise)."""
    lines = []
    for r in results:
        if r.gating:
            status = "PASS" if r.passed else "FAIL"
        else:
            status = "INFO"
        w = r.worst
        lines.append(f"{status}  {r.name}  [{w.label}: {w.value:.3e} (limit {w.limit:.1e})]")
        for p in r.parts:
            if r.gating and not p.ok and p is not w:
                lines.append(f"      also failing: {p.label}: {p.value:.3e} (limit {p.limit:.1e})")
        for note in r.notes:
            lines.append(f"      {note}")
    failing = [r for r in results if r.gating and not r.passed]
    if failing:
        first = failing[0]
        lines.append(
            f"FAILED: {len(failing)} check(s); first failing check '{first.name}', "
            f"worst deviation {first.worst.label} = {first.worst.value:.6e}"
        )
        code = 1
    else:
        lines.append("ALL CHECKS PASSED")
        code = 0
    return "\n".join(lines), code


def verify(build: Build = Build()) -> tuple[str, int]:
    return render(run_checks(build))
