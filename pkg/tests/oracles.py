"""Independent reference routines for the test-suite.

Written with explicit index loops and bit arithmetic so they share no code
path with the library's matrix-based implementation.
"""
import math

import numpy as np


def bit(k, q, n):
    return (k >> (n - 1 - q)) & 1


def apply_rotation(amps, theta, q, n):
    out = [0j] * len(amps)
    c, s = math.cos(theta), math.sin(theta)
    for k, v in enumerate(amps):
        if v == 0:
            continue
        flip = k ^ (1 << (n - 1 - q))
        if bit(k, q, n) == 0:
            out[k] += c * v
            out[flip] += s * v
        else:
            out[flip] += -s * v
            out[k] += c * v
    return out


def apply_cnot(amps, control, target, n):
    out = [0j] * len(amps)
    for k, v in enumerate(amps):
        dest = k ^ (1 << (n - 1 - target)) if bit(k, control, n) else k
        out[dest] += v
    return out


def coefficients(phi):
    k = 1 / math.sqrt(math.sin(phi) ** 4 + math.cos(phi) ** 4)
    c2 = math.cos(phi) ** 2
    return (1 + c2 * k) / 2, math.sin(phi) ** 2 * k / 2, (1 - c2 * k) / 2


def copier_output(alpha, beta, phi, errors=(0.0, 0.0, 0.0)):
    """Three-qubit output computed gate by gate on a plain list of amplitudes."""
    a, b, c = coefficients(phi)
    t = 0.5 * math.asin(min(1.0, 2 * b))
    t1, t2, t3 = t + errors[0], errors[1], t + errors[2]
    amps = [0j] * 8
    amps[0b000] = alpha
    amps[0b100] = beta
    amps = apply_rotation(amps, t1, 1, 3)
    amps = apply_cnot(amps, 1, 2, 3)
    amps = apply_rotation(amps, t2, 2, 3)
    amps = apply_cnot(amps, 2, 1, 3)
    amps = apply_rotation(amps, t3, 1, 3)
    amps = apply_cnot(amps, 0, 1, 3)
    amps = apply_cnot(amps, 2, 0, 3)
    amps = apply_cnot(amps, 1, 2, 3)
    return np.array(amps)


def reduced_pair(amps, keep=(1, 2)):
    """rho[i, j] = sum over the dropped bit d of psi(d, i) conj(psi(d, j)), by explicit loops."""
    (dropped,) = {0, 1, 2} - set(keep)
    rho = np.zeros((4, 4), dtype=complex)
    for k in range(8):
        for m in range(8):
            if bit(k, dropped, 3) != bit(m, dropped, 3):
                continue
            i = 2 * bit(k, keep[0], 3) + bit(k, keep[1], 3)
            j = 2 * bit(m, keep[0], 3) + bit(m, keep[1], 3)
            rho[i, j] += amps[k] * np.conj(amps[m])
    return rho


def partial_transpose(rho):
    out = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for k in range(2):
            for j in range(2):
                for l in range(2):
                    out[2 * i + l, 2 * j + k] = rho[2 * i + k, 2 * j + l]
    return out


def pt_spectrum_formula(a, b, c):
    r1 = math.sqrt((a * a - b * b) ** 2 + 4 * b * b * c * c)
    r2 = math.sqrt((b * b - c * c) ** 2 + 4 * a * a * b * b)
    return sorted([(a * a + b * b + r1) / 2, (a * a + b * b - r1) / 2, (b * b + c * c + r2) / 2, (b * b + c * c - r2) / 2])
