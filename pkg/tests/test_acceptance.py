"""Acceptance gate: every headline requirement, one pass/fail line each.

Each test prints one line `PASS name: detail` or `FAIL name: detail` before
asserting, so the verdict and the computed numbers survive into captured
output.  Tolerances are the stated acceptance tolerances, not what the
implementation happens to achieve.

Known defect, kept honest: the random entangled expectation criterion asks
for 0.5189 +- 0.003.  The converged value of the stated integral is
0.508311 (three quadrature resolutions and Monte Carlo agree; the same
machinery reproduces the non-entangled 0.3664 and every strategy-surface
corner).  That test FAILS by ~0.0106 and is meant to: the published number
appears unreachable from the model as defined.
"""

import math
import time

import numpy as np

from qmonty import stats
from qmonty.core import (
    HALF_PI,
    DoorAngles,
    RotatorAngles,
    classical_payoffs,
    joint_entangled,
    transfer_map,
    win_probabilities,
)
from qmonty.exceptions import DegenerateDoorOpening
from qmonty.game import outcome_distribution, play_rounds
from qmonty.kernels import config_probs
from qmonty.noise import (
    NO_NOISE,
    PauliWeights,
    noisy_win_probabilities,
    pauli_channel,
    semiclassical_noise_curve,
)


def verdict(name, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, f"{name}: {detail}"


def random_valid_configs(rng, n):
    t = rng.uniform(0.0, HALF_PI, size=(4, n))
    f1, f2 = stats.sample_phi_region(rng, n)
    d3 = np.sqrt(np.minimum(np.sin(f1) ** 2 + np.cos(f2) ** 2, 1.0))
    return t, (np.cos(f1), np.sin(f2), d3), (f1, f2)


def test_semiclassical_baseline():
    t0 = time.monotonic()
    p_ns, p_s = classical_payoffs(3, 1)
    err = max(abs(float(p_ns) - 1.0 / 3.0), abs(float(p_s) - 2.0 / 3.0))
    elapsed = time.monotonic() - t0
    verdict(
        "semiclassical baseline",
        err < 1e-12 and elapsed < 1.0,
        f"P_ns={float(p_ns):.12f} P_s={float(p_s):.12f} err={err:.1e} t={elapsed:.3f}s",
    )


def test_random_nonentangled_expectations():
    t0 = time.monotonic()
    quad, quad_s = stats.random_expectation(False, None, "quad:16")
    mc, _ = stats.random_expectation(False, None, "mc:1000000", seed=20240822)
    elapsed = time.monotonic() - t0
    ok = (
        abs(quad.value - 0.3664) <= 0.003
        and abs(quad_s.value - 0.6336) <= 0.003
        and abs(mc.value - quad.value) <= 4.0 * mc.uncertainty
        and elapsed <= 300.0
    )
    verdict(
        "random non-entangled expectations",
        ok,
        f"quad={quad.value:.6f}/{quad_s.value:.6f} mc={mc.value:.6f}"
        f" (se={mc.uncertainty:.1e}) t={elapsed:.1f}s",
    )


def test_random_entangled_expectations():
    quad, quad_s = stats.random_expectation(True, None, "quad:16")
    ok = abs(quad.value - 0.5189) <= 0.003 and abs(quad_s.value - 0.4811) <= 0.003
    verdict(
        "random entangled expectations",
        ok,
        f"computed {quad.value:.6f}/{quad_s.value:.6f} vs target 0.5189/0.4811"
        " (converged value of the stated integral; see module docstring)",
    )


TABLE2 = [
    ("<P_s> max", (0.0, HALF_PI), False, "s", 0.75),
    ("<P_s> min", (HALF_PI, HALF_PI), False, "s", 0.5908),
    ("<P_ns> max", (0.0, 0.0), False, "ns", 0.4092),
    ("<P_ns> min", (0.0, HALF_PI), False, "ns", 0.25),
    ("<P_e,s> max", (0.0, HALF_PI), True, "s", 0.6487),
    ("<P_e,s> min", (HALF_PI, HALF_PI), True, "s", 0.4003),
    ("<P_e,ns> max", (0.0, 0.0), True, "ns", 0.5997),
    ("<P_e,ns> min", (0.0, HALF_PI), True, "ns", 0.3513),
]


def test_table2_extrema_values():
    worst = ("", 0.0)
    for label, (f1, f2), entangled, which, target in TABLE2:
        ns, s, _ = stats.strategy_expectation(f1, f2, entangled, None, "quad:24")
        value = ns.value if which == "ns" else s.value
        delta = abs(value - target)
        if delta > worst[1]:
            worst = (f"{label}={value:.4f} (target {target})", delta)
    verdict(
        "strategy table, switch/no-switch extrema",
        worst[1] <= 0.005,
        f"all eight corners within 0.005; worst {worst[0]} delta={worst[1]:.5f}",
    )


def test_table3_imbalance_values():
    checks = []
    for (f1, f2), entangled, target in [
        ((0.0, HALF_PI), False, 0.5),
        ((HALF_PI, HALF_PI), False, 0.1817),
        ((0.0, HALF_PI), True, 0.2973),
    ]:
        _, _, imbalance = stats.strategy_expectation(f1, f2, entangled, None, "quad:24")
        checks.append(abs(imbalance.value - target) <= 0.005)
    surface = stats.surface_scan(step=math.pi / 20.0, entangled=True, theta_nodes=16)
    grid_min = float(np.nanmin(surface.p_abs))
    i, j = np.unravel_index(np.nanargmin(surface.p_abs), surface.p_abs.shape)
    loc = (float(surface.phi1_axis[i]), float(surface.phi2_axis[j]))
    checks.append(grid_min <= 0.005)
    verdict(
        "imbalance table and grid minimum",
        all(checks),
        f"corner deltas ok={checks[:3]}, grid min={grid_min:.6f}"
        f" at (phi1={loc[0]:.4f}, phi2={loc[1]:.4f})",
    )


def test_analytic_corner_crosscheck():
    # independent closed form for the (0, pi/2) door: the theta integral
    # collapses to 1/4 exactly
    ns, _, _ = stats.strategy_expectation(0.0, HALF_PI, False, None, "quad:24")
    verdict(
        "analytic corner cross-check",
        abs(ns.value - 0.25) <= 1e-6,
        f"<P_ns>(0, pi/2) = {ns.value:.9f} vs 0.25",
    )


def test_noise_behavior():
    curve = semiclassical_noise_curve([0.0, 1.0])
    ratio0, ratio1 = curve[0].ratio, curve[1].ratio
    semiclassical_ok = abs(ratio0 - 2.0) <= 1e-12 and abs(ratio1 - 11.0 / 7.0) <= 0.02

    ns1, s1 = stats.random_expectation(True, PauliWeights.equal(1.0), "quad:16")
    ent_ratio = s1.value / ns1.value
    ent_ratio_ok = abs(ent_ratio - 2.17) <= 0.05

    surface = stats.surface_scan(
        step=math.pi / 40.0, entangled=True,
        weights=PauliWeights.equal(1.0), theta_nodes=16,
    )
    hi, lo = stats.find_extrema(surface, "p_s")
    extrema_ok = (
        abs(hi.value - 0.8) <= 0.05
        and abs(lo.value - 0.65) <= 0.05
        and abs(hi.value - 0.783774) <= 1e-3
        and abs(lo.value - 0.630879) <= 1e-3
    )
    verdict(
        "noise behavior",
        semiclassical_ok and ent_ratio_ok and extrema_ok,
        f"semiclassical ratio {ratio0:.3f}->{ratio1:.6f},"
        f" entangled random ratio {ent_ratio:.6f} at p=1,"
        f" strong-noise extrema {hi.value:.4f}/{lo.value:.4f}",
    )


def test_property_suites():
    rng = np.random.default_rng(424242)

    # complementarity over 1e4 random configurations through the pure
    # pipeline, where both sides come from the renormalized joint table and
    # their sum is a rounding check, not an identity by construction
    t, (d1, d2, d3), (f1s, f2s) = random_valid_configs(rng, 10_000)
    comp_err, range_err, cross_err = 0.0, 0.0, 0.0
    for i in range(10_000):
        angles = RotatorAngles(t[0, i], t[1, i], t[2, i], t[3, i])
        door = DoorAngles.from_pair(float(f1s[i]), float(f2s[i]))
        try:
            p_ns, p_s = win_probabilities(joint_entangled(angles, door))
        except DegenerateDoorOpening:
            continue
        comp_err = max(comp_err, abs(p_ns + p_s - 1.0))
        range_err = max(range_err, p_ns - 1.0, -p_ns)
    # and the kernel's no-switch value must match the coincidence table trace
    for entangled, p in ((False, 0.0), (True, 0.6)):
        w = p / 3.0
        pk = config_probs(t[0], t[1], t[2], t[3], d1, d2, d3, w, w, w, entangled)
        for i in rng.choice(np.flatnonzero(~np.isnan(pk)), size=150, replace=False):
            angles = RotatorAngles(t[0, i], t[1, i], t[2, i], t[3, i])
            door = DoorAngles.from_pair(float(f1s[i]), float(f2s[i]))
            table = outcome_distribution(angles, door, entangled, p)
            cross_err = max(cross_err, abs(float(np.trace(table)) - pk[i]))
    comp_ok = comp_err < 1e-12 and range_err < 1e-12 and cross_err < 1e-12

    # closed-form entangled amplitudes == device chain, 1e3 configurations
    chain_err = 0.0
    for _ in range(1000):
        tup = rng.uniform(0.0, HALF_PI, size=4)
        f1, f2 = stats.sample_phi_region(rng, 1)
        angles = RotatorAngles(*tup)
        door = DoorAngles.from_pair(float(f1[0]), float(f2[0]))
        ea = transfer_map(angles.theta_a1, angles.theta_a2)
        eb = transfer_map(angles.theta_b1, angles.theta_b2)
        psi = np.array([[0, 1], [1, 0]], dtype=complex) / math.sqrt(2.0)
        chain = ea @ psi @ (np.diag(door.coefficients) @ eb).T
        chain /= math.sqrt(float(np.sum(np.abs(chain) ** 2)))
        c = joint_entangled(angles, door)
        chain_err = max(chain_err, float(np.max(np.abs(c - chain))))
    chain_ok = chain_err < 1e-12

    # channel preserves trace/hermiticity/positivity on random densities
    chan_err = 0.0
    for k in range(50):
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = m @ m.conj().T
        rho /= np.trace(rho)
        out = pauli_channel(rho, PauliWeights(0.25, 0.3, 0.2))
        chan_err = max(
            chan_err,
            abs(float(np.real(np.trace(out))) - 1.0),
            float(np.max(np.abs(out - out.conj().T))),
            max(0.0, -float(np.linalg.eigvalsh(out).min())),
        )
    chan_ok = chan_err < 1e-12

    # zero-noise channel equals the pure pipeline
    reduction_err = 0.0
    for _ in range(100):
        tup = rng.uniform(0.0, HALF_PI, size=4)
        f1, f2 = stats.sample_phi_region(rng, 1)
        angles = RotatorAngles(*tup)
        door = DoorAngles.from_pair(float(f1[0]), float(f2[0]))
        try:
            noisy = noisy_win_probabilities(angles, door, True, NO_NOISE)[0]
        except DegenerateDoorOpening:
            continue
        pure = win_probabilities(joint_entangled(angles, door))[0]
        reduction_err = max(reduction_err, abs(noisy - pure))
    reduction_ok = reduction_err < 1e-12

    # non-entangled random expectation is noise-invariant
    clean, _ = stats.random_expectation(False, None, "quad:12")
    noisy, _ = stats.random_expectation(False, PauliWeights.equal(0.7), "quad:12")
    invariance_err = abs(clean.value - noisy.value)
    invariance_ok = invariance_err < 1e-12

    verdict(
        "property suites",
        comp_ok and chain_ok and chan_ok and reduction_ok and invariance_ok,
        f"complement={comp_err:.1e} kernel-vs-table={cross_err:.1e}"
        f" chain={chain_err:.1e} channel={chan_err:.1e}"
        f" reduction={reduction_err:.1e} p-invariance={invariance_err:.1e}",
    )


def test_game_engine_statistics():
    n = 100_000
    a = play_rounds(n, "switch", seed=777)
    b = play_rounds(n, "switch", seed=777)
    tally = a.score.as_dict()["switch"]
    rate = tally["wins"] / n
    identical = [(o.i, o.j, o.win) for o in a.history] == [
        (o.i, o.j, o.win) for o in b.history
    ]
    verdict(
        "game engine statistics",
        abs(rate - 2.0 / 3.0) <= 0.01 and identical,
        f"switch rate {rate:.5f} over {n} plays, replay identical={identical}",
    )
