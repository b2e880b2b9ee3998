"""Pure-state algebra: angle validation, door constraint, states, payoffs."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmonty.core import (
    HALF_PI,
    PROJECTOR_DOORS,
    SEMICLASSICAL_ANGLES,
    DoorAngles,
    RotatorAngles,
    apply_door_opening,
    classical_payoffs,
    joint_entangled,
    joint_separable,
    player_box_angles,
    prize_box_angles,
    separable_amplitudes,
    transfer_map,
    win_probabilities,
)
from qmonty.exceptions import (
    DegenerateDoorOpening,
    InvalidAngles,
    InvalidBoxCount,
    InvalidDoorRegion,
)

angle = st.floats(min_value=0.0, max_value=HALF_PI)
angles4 = st.tuples(angle, angle, angle, angle)


def valid_door_pair(phi1, phi2):
    return math.sin(phi1) ** 2 + math.cos(phi2) ** 2 <= 1.0


door_pair = st.tuples(angle, angle).filter(lambda p: valid_door_pair(*p))


# ---------------------------------------------------------------- validation

@pytest.mark.parametrize("bad", [-0.1, HALF_PI + 0.1, math.nan, math.inf])
def test_rotator_angles_rejects_out_of_range(bad):
    with pytest.raises(InvalidAngles):
        RotatorAngles(bad, 0.3, 0.3, 0.3)
    with pytest.raises(InvalidAngles):
        RotatorAngles(0.3, 0.3, 0.3, bad)


def test_rotator_angles_frozen():
    a = RotatorAngles(0.1, 0.2, 0.3, 0.4)
    with pytest.raises(Exception):
        a.theta_a1 = 0.5


def test_door_from_pair_outside_region():
    # sin(phi1) > sin(phi2) leaves no consistent phi3
    with pytest.raises(InvalidDoorRegion):
        DoorAngles.from_pair(HALF_PI, 0.0)
    with pytest.raises(InvalidDoorRegion):
        DoorAngles.from_pair(1.0, 0.2)


def test_door_closure_constraint_enforced():
    with pytest.raises(InvalidDoorRegion):
        DoorAngles(0.3, 0.3, 0.3)


@given(door_pair)
@settings(max_examples=200)
def test_door_from_pair_satisfies_closure(pair):
    d = DoorAngles.from_pair(*pair)
    closure = math.cos(d.phi1) ** 2 + math.sin(d.phi2) ** 2 + math.sin(d.phi3) ** 2
    assert abs(closure - 2.0) < 1e-9
    assert 0.0 <= d.phi3 <= HALF_PI


def test_projector_doors_block_their_box():
    for box, door in PROJECTOR_DOORS.items():
        assert door.blocked_box() == box
        d = door.coefficients
        assert abs(d[box - 1]) < 1e-15
        # the other two coefficients pass everything
        mask = np.ones(3, dtype=bool)
        mask[box - 1] = False
        np.testing.assert_allclose(d[mask], 1.0, atol=1e-15)


def test_generic_door_blocks_nothing():
    assert DoorAngles.from_pair(0.4, 1.2).blocked_box() is None


# ------------------------------------------------------------- transfer maps

@given(angle, angle)
@settings(max_examples=200)
def test_transfer_map_columns_orthonormal(t1, t2):
    m = transfer_map(t1, t2)
    gram = m.conj().T @ m
    np.testing.assert_allclose(gram, np.eye(2), atol=1e-12)


def test_semiclassical_amplitudes_are_uniform():
    a, b = separable_amplitudes(SEMICLASSICAL_ANGLES)
    np.testing.assert_allclose(np.abs(a) ** 2, 1.0 / 3.0, atol=1e-12)
    np.testing.assert_allclose(np.abs(b) ** 2, 1.0 / 3.0, atol=1e-12)


@pytest.mark.parametrize("box", [1, 2, 3])
def test_classical_box_angles_concentrate(box):
    ta = player_box_angles(box)
    tb = prize_box_angles(box)
    angles = RotatorAngles(ta[0], ta[1], tb[0], tb[1])
    a, b = separable_amplitudes(angles)
    assert abs(abs(a[box - 1]) - 1.0) < 1e-12
    assert abs(abs(b[box - 1]) - 1.0) < 1e-12


@pytest.mark.parametrize("fn", [player_box_angles, prize_box_angles])
@pytest.mark.parametrize("bad", [0, 4, -1, "2"])
def test_box_angles_reject_bad_index(fn, bad):
    with pytest.raises(InvalidBoxCount):
        fn(bad)


# ------------------------------------------------------------- joint states

@given(angles4, door_pair)
@settings(max_examples=300, deadline=None)
def test_win_probabilities_complement(tup, pair):
    angles = RotatorAngles(*tup)
    door = DoorAngles.from_pair(*pair)
    a, b = separable_amplitudes(angles)
    try:
        beta = apply_door_opening(b, door)
    except DegenerateDoorOpening:
        return
    p_ns, p_s = win_probabilities(joint_separable(a, beta))
    assert abs(p_ns + p_s - 1.0) < 1e-12
    assert -1e-12 <= p_ns <= 1.0 + 1e-12


@given(angles4, door_pair)
@settings(max_examples=300, deadline=None)
def test_entangled_matches_device_chain(tup, pair):
    # closed form against explicit map composition on (|VH> + |HV>)/sqrt(2)
    angles = RotatorAngles(*tup)
    door = DoorAngles.from_pair(*pair)
    ea = transfer_map(angles.theta_a1, angles.theta_a2)
    eb = transfer_map(angles.theta_b1, angles.theta_b2)
    psi = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex) / math.sqrt(2.0)
    chain = ea @ psi @ (np.diag(door.coefficients) @ eb).T
    norm = math.sqrt(float(np.sum(np.abs(chain) ** 2)))
    try:
        c = joint_entangled(angles, door)
    except DegenerateDoorOpening:
        assert norm < 1e-6
        return
    np.testing.assert_allclose(c, chain / norm, atol=1e-12)


def test_entangled_semiclassical_projector_payoffs():
    # the 1/3 vs 2/3 split is a separable-state fact; the entangled state at
    # the same angles collapses differently per door (hand-derived values:
    # blocking box 3 leaves a coin flip, blocking box 1 or 2 leaves 5/6
    # on the diagonal)
    for box, expected in ((1, 5.0 / 6.0), (2, 5.0 / 6.0), (3, 0.5)):
        c = joint_entangled(SEMICLASSICAL_ANGLES, PROJECTOR_DOORS[box])
        p_ns, _ = win_probabilities(c)
        assert abs(p_ns - expected) < 1e-12, box


def test_separable_semiclassical_projector_payoffs():
    a, b = separable_amplitudes(SEMICLASSICAL_ANGLES)
    for door in PROJECTOR_DOORS.values():
        beta = apply_door_opening(b, door)
        p_ns, p_s = win_probabilities(joint_separable(a, beta))
        assert abs(p_ns - 1.0 / 3.0) < 1e-12
        assert abs(p_s - 2.0 / 3.0) < 1e-12


def test_door_annihilating_prize_raises():
    # prize fully in box 2, door blocks box 2
    tb = prize_box_angles(2)
    angles = RotatorAngles(0.3, 0.3, tb[0], tb[1])
    _, b = separable_amplitudes(angles)
    with pytest.raises(DegenerateDoorOpening):
        apply_door_opening(b, PROJECTOR_DOORS[2])


def test_win_probabilities_requires_normalized_input():
    with pytest.raises(ValueError):
        win_probabilities(np.ones((3, 3)))


def test_apply_door_requires_normalized_input():
    with pytest.raises(ValueError):
        apply_door_opening(np.array([1.0, 1.0, 0.0]), PROJECTOR_DOORS[3])


# --------------------------------------------------------- classical payoffs

def test_classical_three_box_payoffs():
    p_ns, p_s = classical_payoffs(3, 1)
    assert p_ns == Fraction(1, 3)
    assert p_s == Fraction(2, 3)


@pytest.mark.parametrize(
    "n,m,ns,s",
    [
        (3, 0, Fraction(1, 3), Fraction(1, 3)),
        (4, 2, Fraction(1, 4), Fraction(3, 4)),
        (100, 98, Fraction(1, 100), Fraction(99, 100)),
        (5, 1, Fraction(1, 5), Fraction(4, 15)),
    ],
)
def test_classical_general_payoffs(n, m, ns, s):
    assert classical_payoffs(n, m) == (ns, s)


@pytest.mark.parametrize("n,m", [(1, 0), (2, 1), (3, 2), (3, -1), (2.0, 0)])
def test_classical_payoffs_rejects_bad_counts(n, m):
    with pytest.raises(InvalidBoxCount):
        classical_payoffs(n, m)
