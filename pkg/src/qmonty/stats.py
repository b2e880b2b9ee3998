"""Ensemble statistics: random-game and per-strategy expectation values.

The random game draws every rotator angle uniformly from [0, pi/2] and the
door pair uniformly from the triangle phi1 <= phi2; the strategy view

fixes the door and averages over the rotators only.  Estimates come either
from tensor-product Gauss-Legendre quadrature or from seeded Monte Carlo,
both reduced deterministically so repeated runs agree bit for bit.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import kernels
from .core import HALF_PI, DoorAngles
from .exceptions import InvalidDoorRegion
from .noise import NO_NOISE

DEFAULT_QUAD_NODES = 16
DEFAULT_MC_SAMPLES = 1_000_000
DEFAULT_SURFACE_STEP = math.pi / 200
GOLDEN_TOL = 1e-6
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ExpectationEstimate:
    """A numeric estimate with a rough one-sigma / step-halving uncertainty."""

    value: float
    uncertainty: float
    method: str  # "quadrature" or "mc"
    count: int  # nodes per dimension, or sample count


def parse_method(spec):
    """Parse a method string "quad:K" or "mc:N" into (kind, size)."""
    kind, _, size = str(spec).partition(":")
    if kind == "quad":
        k = int(size) if size else DEFAULT_QUAD_NODES
        if k < 8:
            raise ValueError("quadrature needs at least 8 nodes per dimension")
        return "quad", k
    if kind == "mc":
        n = int(size) if size else DEFAULT_MC_SAMPLES
        if n <= 0:
            raise ValueError("sample count must be positive")
        return "mc", n
    raise ValueError(f"method must look like quad:K or mc:N, got {spec!r}")


def _gauss_nodes(n, lo=0.0, hi=HALF_PI):
    x, w = leggauss(n)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def _weights_tuple(weights):
    w = NO_NOISE if weights is None else weights
    return w.px, w.py, w.pz


def sample_phi_region(rng, size=None):
    """Draw door pairs uniformly from the triangle phi1 <= phi2.

    Rejection from the square keeps the joint density exactly constant;
    conditional sampling of phi2 given phi1 would not.  With `size` given,
    returns arrays (phi1, phi2); otherwise a single DoorAngles.
    """
    scalar = size is None
    need = 1 if scalar else int(size)
    got1, got2 = [], []
    have = 0
    while have < need:
        m = max(64, int(2.4 * (need - have)))
        cand = rng.uniform(0.0, HALF_PI, size=(2, m))
        keep = cand[0] <= cand[1]
        got1.append(cand[0][keep])
        got2.append(cand[1][keep])
        have += int(keep.sum())
    phi1 = np.concatenate(got1)[:need]
    phi2 = np.concatenate(got2)[:need]
    if scalar:
        return DoorAngles.from_pair(float(phi1[0]), float(phi2[0]))
    return phi1, phi2


def _door_coeffs_arrays(phi1, phi2):
    d3 = np.sqrt(np.minimum(np.sin(phi1) ** 2 + np.cos(phi2) ** 2, 1.0))
    return np.cos(phi1), np.sin(phi2), d3


def _triangle_cells(k):
    """Nodes and weights integrating over the door triangle.

    phi2 runs over [phi1, pi/2] per phi1 node; the shrinking range's
    Jacobian is folded into the weight.  Weights sum to the triangle area.
    """
    n1, w1 = _gauss_nodes(k)
    t, u = _gauss_nodes(k, 0.0, 1.0)
    phi1 = np.repeat(n1, k)
    span = HALF_PI - n1
    phi2 = (n1[:, None] + span[:, None] * t[None, :]).ravel()
    wts = (w1[:, None] * u[None, :] * span[:, None]).ravel()
    return phi1, phi2, wts


def _quad_random(entangled, weights, k):
    px, py, pz = _weights_tuple(weights)
    nodes, nw = _gauss_nodes(k)
    phi1, phi2, cell_w = _triangle_cells(k)
    d1, d2, d3 = _door_coeffs_arrays(phi1, phi2)
    vals = np.array(
        [
            kernels.theta_grid_mean(nodes, nw, d1[i], d2[i], d3[i], px, py, pz, entangled)
            for i in range(phi1.size)
        ]
    )
    good = ~np.isnan(vals)
    return float((cell_w[good] * vals[good]).sum() / cell_w[good].sum())


def random_expectation(entangled=False, weights=None, method="quad:16", seed=None):
    """Expected (no-switch, switch) win probabilities of the random game.

    Quadrature halves the node count for an error estimate; Monte Carlo
    reports the standard error of the mean.  MC requires a seed so runs
    are reproducible.
    """
    kind, size = parse_method(method)
    if kind == "quad":
        value = _quad_random(entangled, weights, size)
        coarse = _quad_random(entangled, weights, max(size // 2, 4))
        unc = abs(value - coarse)
        est = ExpectationEstimate(value, unc, "quadrature", size)
        comp = ExpectationEstimate(1.0 - value, unc, "quadrature", size)
        return est, comp
    if seed is None:
        raise ValueError("Monte Carlo estimates require a seed")
    rng = np.random.default_rng(seed)
    px, py, pz = _weights_tuple(weights)
    ta1, ta2, tb1, tb2 = rng.uniform(0.0, HALF_PI, size=(4, size))
    phi1, phi2 = sample_phi_region(rng, size)
    d1, d2, d3 = _door_coeffs_arrays(phi1, phi2)
    probs = kernels.config_probs(ta1, ta2, tb1, tb2, d1, d2, d3, px, py, pz, entangled)
    good = probs[~np.isnan(probs)]
    mean = float(good.mean())
    se = float(good.std(ddof=1) / math.sqrt(good.size))
    est = ExpectationEstimate(mean, se, "mc", size)
    comp = ExpectationEstimate(1.0 - mean, se, "mc", size)
    return est, comp


def _strategy_value(door, entangled, weights, k):
    px, py, pz = _weights_tuple(weights)
    nodes, nw = _gauss_nodes(k)
    d1, d2, d3 = door.coefficients
    return kernels.theta_grid_mean(nodes, nw, d1, d2, d3, px, py, pz, entangled)


def strategy_expectation(phi1, phi2, entangled=False, weights=None, method="quad:16", seed=None):
    """Rotator-averaged (no-switch, switch, |difference|) at a fixed door.

    The door pair must lie in the valid region.  Returns a triple of
    ExpectationEstimates; the third is the imbalance |<P_ns> - <P_s>|.
    """
    door = DoorAngles.from_pair(phi1, phi2)
    kind, size = parse_method(method)
    if kind == "quad":
        value = _strategy_value(door, entangled, weights, size)
        coarse = _strategy_value(door, entangled, weights, max(size // 2, 4))
        unc = abs(value - coarse)
        mk = lambda v, u: ExpectationEstimate(v, u, "quadrature", size)
    else:
        if seed is None:
            raise ValueError("Monte Carlo estimates require a seed")
        rng = np.random.default_rng(seed)
        px, py, pz = _weights_tuple(weights)
        ta1, ta2, tb1, tb2 = rng.uniform(0.0, HALF_PI, size=(4, size))
        d1, d2, d3 = door.coefficients
        probs = kernels.config_probs(ta1, ta2, tb1, tb2, d1, d2, d3, px, py, pz, entangled)
        good = probs[~np.isnan(probs)]
        value = float(good.mean())
        unc = float(good.std(ddof=1) / math.sqrt(good.size))
        mk = lambda v, u: ExpectationEstimate(v, u, "mc", size)
    return (
        mk(value, unc),
        mk(1.0 - value, unc),
        mk(abs(2.0 * value - 1.0), 2.0 * unc),
    )


@dataclass
class SurfaceGrid:
    """Strategy expectations tabulated over the door parameter plane."""

    phi1_axis: np.ndarray
    phi2_axis: np.ndarray
    p_ns: np.ndarray  # (n1, n2), NaN outside the valid region
    p_s: np.ndarray
    p_abs: np.ndarray
    entangled: bool
    weights: object  # PauliWeights or None
    theta_nodes: int
    step: float

    def quantity(self, name):
        try:
            return {"p_ns": self.p_ns, "p_s": self.p_s, "p_abs": self.p_abs}[name]
        except KeyError:
            raise ValueError(f"unknown surface quantity {name!r}") from None


def surface_scan(step=DEFAULT_SURFACE_STEP, entangled=False, weights=None,
                 theta_nodes=DEFAULT_QUAD_NODES):
    """Evaluate strategy expectations on a regular (phi1, phi2) grid.

    Grid nodes outside the valid triangle are NaN-masked.  `step` is the
    grid spacing in radians for both axes.
    """
    if not 0.0 < step <= math.pi / 4:
        raise ValueError(f"step must lie in (0, pi/4], got {step}")
    px, py, pz = _weights_tuple(weights)
    nodes, nw = _gauss_nodes(theta_nodes)
    n_ax = int(round(HALF_PI / step)) + 1
    axis = np.linspace(0.0, HALF_PI, n_ax)
    p_ns = np.full((n_ax, n_ax), np.nan)
    for i, f1 in enumerate(axis):
        s1 = math.sin(f1) ** 2
        for j, f2 in enumerate(axis):
            if f2 < f1 - 1e-12:
                continue
            d3 = math.sqrt(min(s1 + math.cos(f2) ** 2, 1.0))
            p_ns[i, j] = kernels.theta_grid_mean(
                nodes, nw, math.cos(f1), math.sin(f2), d3, px, py, pz, entangled
            )
    p_s = 1.0 - p_ns
    return SurfaceGrid(
        phi1_axis=axis,
        phi2_axis=axis,
        p_ns=p_ns,
        p_s=p_s,
        p_abs=np.abs(p_ns - p_s),
        entangled=entangled,
        weights=weights,
        theta_nodes=theta_nodes,
        step=float(step),
    )


@dataclass(frozen=True)
class ExtremumReport:
    kind: str  # "max" or "min"
    quantity: str
    value: float
    phi1: float
    phi2: float


def _golden_minimize(fn, lo, hi, tol=GOLDEN_TOL):
    """Golden-section minimum of a unimodal fn on [lo, hi]."""
    a, b = lo, hi
    h = b - a
    if h <= tol:
        m = 0.5 * (a + b)
        return m, fn(m)
    c = b - _INV_PHI * h
    d = a + _INV_PHI * h
    fc, fd = fn(c), fn(d)
    while h > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INV_PHI * h
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INV_PHI * h
            fd = fn(d)
    x = c if fc < fd else d
    return x, min(fc, fd)


def find_extrema(surface, quantity):
    """Locate and refine the extremes of one surface quantity.

    Starts from the grid argmax/argmin, then golden-section refines each
    door angle in turn inside the neighboring cells, clipped to the valid
    region.  Returns (max_report, min_report).
    """
    vals = surface.quantity(quantity)
    px, py, pz = _weights_tuple(surface.weights)
    nodes, nw = _gauss_nodes(surface.theta_nodes)

    def evaluate(f1, f2):
        d3 = math.sqrt(min(math.sin(f1) ** 2 + math.cos(f2) ** 2, 1.0))
        pns = kernels.theta_grid_mean(
            nodes, nw, math.cos(f1), math.sin(f2), d3, px, py, pz, surface.entangled
        )
        return {"p_ns": pns, "p_s": 1.0 - pns, "p_abs": abs(2.0 * pns - 1.0)}[quantity]

    step = surface.step
    reports = []
    for kind, sign in (("max", -1.0), ("min", 1.0)):
        flat = np.nanargmax(vals) if kind == "max" else np.nanargmin(vals)
        i, j = np.unravel_index(flat, vals.shape)
        f1 = float(surface.phi1_axis[i])
        f2 = float(surface.phi2_axis[j])
        for _ in range(2):
            lo = max(0.0, f1 - step)
            hi = min(f2, f1 + step)
            f1, _v = _golden_minimize(lambda x: sign * evaluate(x, f2), lo, hi)
            lo = max(f1, f2 - step)
            hi = min(HALF_PI, f2 + step)
            f2, _v = _golden_minimize(lambda x: sign * evaluate(f1, x), lo, hi)
        reports.append(
            ExtremumReport(kind=kind, quantity=quantity, value=evaluate(f1, f2), phi1=f1, phi2=f2)
        )
    return tuple(reports)


@dataclass(frozen=True)
class SweepPoint:
    p: float
    values: dict


def noise_sweep(quantity, p_grid, entangled=True, method="quad:16",
                step=math.pi / 40, theta_nodes=DEFAULT_QUAD_NODES, seed=None):
    """Recompute a quantity along a grid of equal-weight noise strengths.

    quantity "random": the random-game expectations per p.
    quantity "ps-extrema": max/min of the switch surface per p.
    """
    from .noise import PauliWeights

    out = []
    for p in p_grid:
        w = PauliWeights.equal(p)
        if quantity == "random":
            ns, s = random_expectation(entangled, w, method, seed)
            out.append(SweepPoint(p=float(p), values={
                "p_ns": ns.value, "p_s": s.value, "uncertainty": ns.uncertainty,
            }))
        elif quantity == "ps-extrema":
            surf = surface_scan(step, entangled, w, theta_nodes)
            mx, mn = find_extrema(surf, "p_s")
            out.append(SweepPoint(p=float(p), values={
                "max": mx.value, "max_phi1": mx.phi1, "max_phi2": mx.phi2,
                "min": mn.value, "min_phi1": mn.phi1, "min_phi2": mn.phi2,
            }))
        else:
            raise ValueError(f"unknown sweep quantity {quantity!r}")
    return out
