"""Pure-numpy evaluation kernels.

Drop-in twin of the compiled `_native` extension.  Both backends evaluate
the diagonal of the final box-pair density matrix for batches of rotator
configurations; this one vectorizes with numpy contractions, the compiled
one runs explicit per-node loops.  The two must agree to near machine
precision, which the kernel tests check.

Notation per configuration: aV, aH are the V- and H-photon columns of
Alice's transfer map, bV, bH Bob's; BH = d * bH and BV = d * bV fold in
the door coefficients d.  With Pauli weights (px, py, pz) on Alice's
photon the unnormalized no-switch weight and total surviving weight are

  separable (input |VH>):
      num = (1 - px - py) sum_i (aV_i BH_i)^2 + (px + py) sum_i (aH_i BH_i)^2
      tot = |BH|^2
  entangled (input (|VH> + |HV>)/sqrt(2)):
      num = 1/2 [ (1 - px - py - pz) sum_i (aV_i BH_i + aH_i BV_i)^2
                  + pz sum_i (aV_i BH_i - aH_i BV_i)^2
                  + px sum_i (aH_i BH_i + aV_i BV_i)^2
                  + py sum_i (aH_i BH_i - aV_i BV_i)^2 ]
      tot = (|BH|^2 + |BV|^2) / 2

where the totals collapse because the columns (aV, aH) are orthonormal.
"""

import numpy as np

# Below this surviving weight a configuration counts as fully absorbed.
DEGENERATE_TOL = 1e-12


def _columns(t1, t2):
    s1, c1 = np.sin(t1), np.cos(t1)
    s2, c2 = np.sin(t2), np.cos(t2)
    v = np.stack([-s1 * c2, -s1 * s2, c1], axis=-1)
    h = np.stack([c1 * c2, c1 * s2, s1], axis=-1)
    return v, h


def config_probs(ta1, ta2, tb1, tb2, d1, d2, d3, px, py, pz, entangled):
    """No-switch probability for each configuration in a batch.

    Angle arguments broadcast against each other; door coefficients may be
    scalars or arrays of the same shape.  Returns an array with NaN at
    configurations whose surviving weight falls below DEGENERATE_TOL.
    """
    ta1, ta2, tb1, tb2, d1, d2, d3 = np.broadcast_arrays(
        *(np.asarray(x, dtype=float) for x in (ta1, ta2, tb1, tb2, d1, d2, d3))
    )
    aV, aH = _columns(ta1, ta2)
    bV, bH = _columns(tb1, tb2)
    d = np.stack([d1, d2, d3], axis=-1)
    BH = d * bH
    BV = d * bV
    if entangled:
        n_x = np.einsum("...i,...i->...", aV * aV, BH * BH)
        n_y = np.einsum("...i,...i->...", aH * aH, BV * BV)
        n_z = np.einsum("...i,...i->...", aH * aH, BH * BH)
        n_w = np.einsum("...i,...i->...", aV * aV, BV * BV)
        n_cross = np.einsum("...i,...i->...", aV * aH, BH * BV)
        w0 = 1.0 - px - py - pz
        num = 0.5 * (
            w0 * (n_x + n_y + 2.0 * n_cross)
            + pz * (n_x + n_y - 2.0 * n_cross)
            + px * (n_z + n_w + 2.0 * n_cross)
            + py * (n_z + n_w - 2.0 * n_cross)
        )
        tot = 0.5 * ((BH * BH).sum(axis=-1) + (BV * BV).sum(axis=-1))
    else:
        q = px + py
        n_x = np.einsum("...i,...i->...", aV * aV, BH * BH)
        n_z = np.einsum("...i,...i->...", aH * aH, BH * BH)
        num = (1.0 - q) * n_x + q * n_z
        tot = (BH * BH).sum(axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(tot > DEGENERATE_TOL, num / np.where(tot > 0, tot, 1.0), np.nan)
    return out


def _side_products(nodes):
    """Per-node products (vv, hh, vh) for one party, flattened over the node pairs."""
    t1, t2 = np.meshgrid(nodes, nodes, indexing="ij")
    v, h = _columns(t1.ravel(), t2.ravel())
    return v * v, h * h, v * h


def theta_grid_mean(nodes, weights, d1, d2, d3, px, py, pz, entangled):
    """Weighted mean of the no-switch probability over a 4-D rotator grid.

    The same 1-D nodes and weights are used for all four angles; the door
    is fixed.  Absorbed grid points are dropped and the weights of the
    survivors renormalized; returns NaN if everything is absorbed.
    """
    nodes = np.asarray(nodes, dtype=float)
    weights = np.asarray(weights, dtype=float)
    a_vv, a_hh, a_vh = _side_products(nodes)
    b_vv, b_hh, b_vh = _side_products(nodes)
    d2_row = np.array([d1 * d1, d2 * d2, d3 * d3])
    B_hh = b_hh * d2_row
    B_vv = b_vv * d2_row
    B_vh = b_vh * d2_row
    pair_w = np.outer(weights, weights).ravel()
    if entangled:
        n_x = a_vv @ B_hh.T
        n_y = a_hh @ B_vv.T
        n_z = a_hh @ B_hh.T
        n_w = a_vv @ B_vv.T
        n_cross = a_vh @ B_vh.T
        w0 = 1.0 - px - py - pz
        num = 0.5 * (
            w0 * (n_x + n_y + 2.0 * n_cross)
            + pz * (n_x + n_y - 2.0 * n_cross)
            + px * (n_z + n_w + 2.0 * n_cross)
            + py * (n_z + n_w - 2.0 * n_cross)
        )
        tot = 0.5 * (B_hh.sum(axis=1) + B_vv.sum(axis=1))
    else:
        q = px + py
        num = (1.0 - q) * (a_vv @ B_hh.T) + q * (a_hh @ B_hh.T)
        tot = B_hh.sum(axis=1)
    valid = tot > DEGENERATE_TOL
    if not valid.any():
        return float("nan")
    probs = num[:, valid] / tot[valid]
    w_b = pair_w[valid]
    mean = float(pair_w @ probs @ w_b)
    norm = float(pair_w.sum() * w_b.sum())
    return mean / norm
