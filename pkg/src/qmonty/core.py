"""Pure-state model of the optical three-box guessing game.

Alice guesses which of three boxes hides the prize, the host partially
opens boxes, and Alice either sticks with her guess or switches.  Both the
guess and the prize placement are three-level amplitude vectors prepared by
pairs of polarization rotators acting on single photons; the host's partial
opening is a diagonal attenuation ("door") operator realized with
polarizers.  This module holds the noiseless pure-state algebra; mixed
states and the Pauli channel live in `qmonty.noise`.

Basis conventions: box amplitudes are indexed 0..2 for boxes 1..3, photon
polarization is ordered (V, H), and two-photon states are ordered
(VV, VH, HV, HH) with Alice's photon first.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import (
    DegenerateDoorOpening,
    InvalidAngles,
    InvalidBoxCount,
    InvalidDoorRegion,
)

HALF_PI = math.pi / 2.0

# Tolerance for state-vector normalization checks and for deciding that a
# door opening annihilated the state.
NORM_TOL = 1e-12


def _check_angle(name, value):
    value = float(value)
    if not math.isfinite(value) or value < 0.0 or value > HALF_PI:
        raise InvalidAngles(f"{name} must lie in [0, pi/2], got {value}")
    return value


@dataclass(frozen=True)
class RotatorAngles:
    """Rotator settings (theta_a1, theta_a2) for Alice and (theta_b1, theta_b2) for Bob.

    All four angles are restricted to [0, pi/2]; that range already reaches
    every box-amplitude configuration up to irrelevant signs.
    """

    theta_a1: float
    theta_a2: float
    theta_b1: float
    theta_b2: float

    def __post_init__(self):
        for name in ("theta_a1", "theta_a2", "theta_b1", "theta_b2"):
            object.__setattr__(self, name, _check_angle(name, getattr(self, name)))


@dataclass(frozen=True)
class DoorAngles:
    """Polarizer settings (phi1, phi2, phi3) defining the door operator.

    The diagonal door coefficients are (cos phi1, sin phi2, sin phi3).  A
    valid door keeps exactly two boxes' worth of weight closed:

        cos(phi1)^2 + sin(phi2)^2 + sin(phi3)^2 == 2

    so phi3 is a function of the free pair (phi1, phi2), defined whenever
    sin(phi1) <= sin(phi2).  Build instances through `from_pair` unless all
    three angles are already known to satisfy the constraint.
    """

    phi1: float
    phi2: float
    phi3: float

    def __post_init__(self):
        for name in ("phi1", "phi2", "phi3"):
            object.__setattr__(self, name, _check_angle(name, getattr(self, name)))
        closure = (
            math.cos(self.phi1) ** 2
            + math.sin(self.phi2) ** 2
            + math.sin(self.phi3) ** 2
        )
        if abs(closure - 2.0) > 1e-9:
            raise InvalidDoorRegion(
                "door coefficients must satisfy "
                f"cos(phi1)^2 + sin(phi2)^2 + sin(phi3)^2 = 2, got {closure}"
            )

    @classmethod
    def from_pair(cls, phi1, phi2):
        """Derive phi3 from (phi1, phi2); raises InvalidDoorRegion outside sin(phi1) <= sin(phi2)."""
        phi1 = _check_angle("phi1", phi1)
        phi2 = _check_angle("phi2", phi2)
        s = math.sin(phi1) ** 2 + math.cos(phi2) ** 2
        if s > 1.0 + 1e-12:
            raise InvalidDoorRegion(
                f"({phi1}, {phi2}) lies outside the region sin(phi1) <= sin(phi2)"
            )
        phi3 = math.asin(math.sqrt(min(s, 1.0)))
        return cls(phi1, phi2, phi3)

    @property
    def coefficients(self):
        """Diagonal door coefficients (d1, d2, d3) as a float array."""
        return np.array(
            [math.cos(self.phi1), math.sin(self.phi2), math.sin(self.phi3)]
        )

    def blocked_box(self, tol=NORM_TOL):
        """1-based index of a fully blocked box, or None if no coefficient vanishes."""
        d = self.coefficients
        for i in range(3):
            if abs(d[i]) <= tol:
                return i + 1
        return None


# Angles reproducing the classical game: both photons split evenly over the
# three boxes, all amplitudes real with |a_i|^2 = |b_i|^2 = 1/3.
SEMICLASSICAL_ANGLES = RotatorAngles(
    theta_a1=math.acos(1.0 / math.sqrt(3.0)),
    theta_a2=math.pi / 4.0,
    theta_b1=math.asin(1.0 / math.sqrt(3.0)),
    theta_b2=math.pi / 4.0,
)

# Doors that project onto two boxes, fully blocking the third.  Keyed by the
# 1-based index of the blocked box.
PROJECTOR_DOORS = {
    1: DoorAngles.from_pair(HALF_PI, HALF_PI),
    2: DoorAngles.from_pair(0.0, 0.0),
    3: DoorAngles.from_pair(0.0, HALF_PI),
}


def player_box_angles(box):
    """Alice rotator pair (theta_a1, theta_a2) concentrating her choice on one box."""
    if box not in (1, 2, 3):
        raise InvalidBoxCount(f"box must be 1, 2 or 3, got {box}")
    return {
        1: (HALF_PI, 0.0),
        2: (HALF_PI, HALF_PI),
        3: (0.0, 0.0),
    }[box]


def prize_box_angles(box):
    """Bob rotator pair (theta_b1, theta_b2) hiding the prize in exactly one box."""
    if box not in (1, 2, 3):
        raise InvalidBoxCount(f"box must be 1, 2 or 3, got {box}")
    return {
        1: (0.0, 0.0),
        2: (0.0, HALF_PI),
        3: (HALF_PI, 0.0),
    }[box]


def transfer_map(theta1, theta2):
    """3x2 map from photon polarization (V, H) to box amplitudes.

    The first column is the amplitude vector produced by a V-polarized
    photon, the second by an H-polarized one; the columns are orthonormal.
    Alice's map uses (theta_a1, theta_a2), Bob's uses (theta_b1, theta_b2)
    with the same functional form.
    """
    s1, c1 = math.sin(theta1), math.cos(theta1)
    s2, c2 = math.sin(theta2), math.cos(theta2)
    return np.array(
        [
            [-s1 * c2, c1 * c2],
            [-s1 * s2, c1 * s2],
            [c1, s1],
        ],
        dtype=complex,
    )


def separable_amplitudes(angles):
    """Box amplitudes (a, b) for Alice's choice and Bob's prize placement.

    `a` is Alice's transfer map applied to a V photon and `b` is Bob's
    applied to an H photon, each a normalized complex 3-vector.
    """
    a = transfer_map(angles.theta_a1, angles.theta_a2)[:, 0].copy()
    b = transfer_map(angles.theta_b1, angles.theta_b2)[:, 1].copy()
    return a, b


def _require_normalized(name, vec):
    n2 = float(np.sum(np.abs(vec) ** 2))
    if abs(n2 - 1.0) > 1e-9:
        raise ValueError(f"{name} must be normalized, |{name}|^2 = {n2}")


def apply_door_opening(b, door):
    """Attenuate and renormalize Bob's amplitudes after the host opens doors.

    Raises DegenerateDoorOpening when the door operator annihilates `b`
    (all remaining weight was behind fully opened doors).
    """
    _require_normalized("b", np.asarray(b))
    reduced = np.asarray(b, dtype=complex) * door.coefficients
    norm2 = float(np.sum(np.abs(reduced) ** 2))
    if norm2 <= NORM_TOL:
        raise DegenerateDoorOpening(
            "door opening removed all amplitude from the prize state"
        )
    return reduced / math.sqrt(norm2)


def joint_separable(a, beta):
    """Joint amplitudes alpha_ij = a_i * beta_j for independently prepared photons."""
    a = np.asarray(a, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    _require_normalized("a", a)
    _require_normalized("beta", beta)
    return np.outer(a, beta)


def joint_entangled(angles, door):
    """Normalized joint amplitudes gamma_ij for the entangled two-photon run.

    The photon pair starts in (|VH> + |HV>)/sqrt(2); Alice's rotators, the
    door operator, and Bob's rotators then steer it into box space.  The
    result carries both columns of each transfer map, so gamma has no
    product form and Alice's marginal depends on the door settings.
    """
    ta1, ta2 = angles.theta_a1, angles.theta_a2
    tb1, tb2 = angles.theta_b1, angles.theta_b2
    d1, d2, d3 = door.coefficients
    sab = math.sin(ta1 + tb1)
    cab = math.cos(ta1 + tb1)
    ca2, sa2 = math.cos(ta2), math.sin(ta2)
    cb2, sb2 = math.cos(tb2), math.sin(tb2)
    c = np.array(
        [
            [-ca2 * cb2 * sab * d1, -ca2 * sb2 * sab * d2, ca2 * cab * d3],
            [-sa2 * cb2 * sab * d1, -sa2 * sb2 * sab * d2, sa2 * cab * d3],
            [cb2 * cab * d1, sb2 * cab * d2, sab * d3],
        ],
        dtype=complex,
    ) / math.sqrt(2.0)
    norm2 = float(np.sum(np.abs(c) ** 2))
    if norm2 <= NORM_TOL:
        raise DegenerateDoorOpening(
            "door opening removed all amplitude from the entangled state"
        )
    return c / math.sqrt(norm2)


def win_probabilities(joint):
    """(p_no_switch, p_switch) from normalized joint amplitudes.

    p_no_switch collects the diagonal weight |gamma_ii|^2 (Alice's guess
    already sits on the prize box); p_switch is the rest.  They sum to 1.
    """
    joint = np.asarray(joint, dtype=complex)
    weights = np.abs(joint) ** 2
    total = float(weights.sum())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"joint amplitudes must be normalized, total weight {total}")
    p_ns = float(np.trace(weights))
    p_s = float(total - np.trace(weights))
    return p_ns, p_s


def classical_payoffs(n, m):
    """Exact classical win probabilities for n boxes with m opened by the host.

    Returns (p_no_switch, p_switch) as Fractions: 1/n for staying, and
    ((n - 1) / (n - m - 1)) / n for switching uniformly among the remaining
    closed boxes.  Requires n >= 2 and 0 <= m <= n - 2 so at least one
    closed box is left to switch to.
    """
    if not isinstance(n, int) or not isinstance(m, int):
        raise InvalidBoxCount("n and m must be integers")
    if n < 2:
        raise InvalidBoxCount(f"need at least two boxes, got n = {n}")
    if m < 0 or m > n - 2:
        raise InvalidBoxCount(f"m must satisfy 0 <= m <= n - 2, got m = {m}")
    p_ns = Fraction(1, n)
    p_s = Fraction(n - 1, n * (n - m - 1))
    return p_ns, p_s
