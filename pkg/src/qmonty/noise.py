"""Mixed-state evolution: Pauli noise on Alice's photon.

The noise acts on the two-photon polarization state before any rotators,
flipping (or phase-flipping) Alice's photon with weights (px, py, pz) and
leaving it untouched with weight 1 - px - py - pz.  Bob's photon and the
downstream optics stay ideal.  States are 4x4 density matrices over the
polarization basis (VV, VH, HV, HH), Alice first; after the optics they
become 9x9 density matrices over the box pairs (11, 12, ..., 33).
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    PROJECTOR_DOORS,
    SEMICLASSICAL_ANGLES,
    NORM_TOL,
    transfer_map,
)
from .exceptions import DegenerateDoorOpening, InvalidWeights

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class PauliWeights:
    """Mixing weights (px, py, pz) of the Pauli channel.

    Each weight lies in [0, 1] and the total may not exceed 1; the
    remainder 1 - px - py - pz is the probability that the photon passes
    undisturbed.
    """

    px: float
    py: float
    pz: float

    def __post_init__(self):
        for name in ("px", "py", "pz"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0.0 or v > 1.0:
                raise InvalidWeights(f"{name} must lie in [0, 1], got {v}")
            object.__setattr__(self, name, v)
        if self.total > 1.0 + 1e-12:
            raise InvalidWeights(
                f"px + py + pz must not exceed 1, got {self.total}"
            )

    @classmethod
    def equal(cls, p):
        """Split a single noise strength p evenly: (p/3, p/3, p/3)."""
        p = float(p)
        if not math.isfinite(p) or p < 0.0 or p > 1.0:
            raise InvalidWeights(f"noise strength must lie in [0, 1], got {p}")
        return cls(p / 3.0, p / 3.0, p / 3.0)

    @property
    def total(self):
        return self.px + self.py + self.pz


NO_NOISE = PauliWeights(0.0, 0.0, 0.0)


def channel_input(entangled):
    """Two-photon polarization density matrix entering the channel.

    Separable runs start in |VH> (Alice V, Bob H); entangled runs start in
    the symmetric Bell state (|VH> + |HV>)/sqrt(2).
    """
    rho = np.zeros((4, 4), dtype=complex)
    if entangled:
        rho[1, 1] = rho[2, 2] = 0.5
        rho[1, 2] = rho[2, 1] = 0.5
    else:
        rho[1, 1] = 1.0
    return rho


def _check_density_matrix(rho):
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    if not np.allclose(rho, rho.conj().T, atol=1e-9):
        raise ValueError("density matrix must be Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-9:
        raise ValueError(f"density matrix must have unit trace, got {np.trace(rho)}")
    if np.linalg.eigvalsh(rho).min() < -1e-9:
        raise ValueError("density matrix must be positive semidefinite")
    return rho


def pauli_channel(rho, weights):
    """Apply the one-sided Pauli channel to a two-photon density matrix.

    rho_out = (1 - px - py - pz) rho + sum_i p_i (sigma_i x I) rho (sigma_i x I)
    """
    rho = _check_density_matrix(rho)
    out = (1.0 - weights.total) * rho
    for p, sigma in ((weights.px, SIGMA_X), (weights.py, SIGMA_Y), (weights.pz, SIGMA_Z)):
        if p == 0.0:
            continue
        op = np.kron(sigma, IDENTITY_2)
        out = out + p * (op @ rho @ op.conj().T)
    return out


def detection_map(angles, door):
    """9x4 map from two-photon polarization to box-pair amplitudes.

    Kronecker product of Alice's transfer map with the door operator acting
    on Bob's transfer map; rows are ordered (11, 12, 13, 21, ..., 33).
    """
    e_a = transfer_map(angles.theta_a1, angles.theta_a2)
    e_b = transfer_map(angles.theta_b1, angles.theta_b2)
    d = np.diag(door.coefficients).astype(complex)
    return np.kron(e_a, d @ e_b)


def noisy_win_probabilities(angles, door, entangled, weights):
    """(p_no_switch, p_switch) after Pauli noise on Alice's photon.

    Propagates the noisy polarization state through the optics as a density
    matrix and renormalizes by the surviving weight, conditioning on the
    photons not being absorbed by the opened doors.
    """
    rho_o = pauli_channel(channel_input(entangled), weights)
    e = detection_map(angles, door)
    rho_f = e @ rho_o @ e.conj().T
    diag = np.real(np.diag(rho_f))
    total = float(diag.sum())
    if total <= NORM_TOL:
        raise DegenerateDoorOpening(
            "door opening removed all amplitude from the noisy state"
        )
    p_ns = float(diag[0] + diag[4] + diag[8]) / total
    return p_ns, 1.0 - p_ns


@dataclass(frozen=True)
class NoiseCurvePoint:
    p: float
    p_ns: float
    p_s: float

    @property
    def ratio(self):
        return self.p_s / self.p_ns


def semiclassical_noise_curve(p_values):
    """Semiclassical win probabilities versus noise strength.

    Runs the separable game at the semiclassical angles with equal Pauli
    weights p/3 and a projector door.  Of the three projector doors, the
    two that block a box Alice's guess weights evenly (boxes 1 and 2)
    respond to the channel identically; the curve averages those two and
    checks their agreement.  The box-3 door is excluded: it opens the one
    box singled out by the rotator geometry, and the channel shifts its
    probabilities the opposite way.
    """
    points = []
    for p in p_values:
        weights = PauliWeights.equal(p)
        vals = [
            noisy_win_probabilities(SEMICLASSICAL_ANGLES, PROJECTOR_DOORS[box], False, weights)
            for box in (1, 2)
        ]
        if abs(vals[0][0] - vals[1][0]) > 1e-12:
            raise AssertionError(
                "projector doors 1 and 2 must give identical semiclassical curves"
            )
        p_ns = 0.5 * (vals[0][0] + vals[1][0])
        points.append(NoiseCurvePoint(p=float(p), p_ns=p_ns, p_s=1.0 - p_ns))
    return points
