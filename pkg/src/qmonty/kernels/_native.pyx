# Compiled evaluation kernels: per-node loops over rotator configurations.
# Mirrors qmonty.kernels._reference; the reference docstring spells out the
# probability formulas.  Keep the two in sync.

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef double DEGENERATE_TOL = 1e-12


cdef extern from "math.h" nogil:
    double sin(double)
    double cos(double)
    double NAN


cdef inline void _fill_columns(double t1, double t2, double* v, double* h) nogil:
    cdef double s1 = sin(t1)
    cdef double c1 = cos(t1)
    cdef double s2 = sin(t2)
    cdef double c2 = cos(t2)
    v[0] = -s1 * c2
    v[1] = -s1 * s2
    v[2] = c1
    h[0] = c1 * c2
    h[1] = c1 * s2
    h[2] = s1


cdef inline double _config_prob(double ta1, double ta2, double tb1, double tb2,
                                double d1, double d2, double d3,
                                double px, double py, double pz,
                                bint entangled) nogil:
    cdef double aV[3]
    cdef double aH[3]
    cdef double bV[3]
    cdef double bH[3]
    cdef double BH[3]
    cdef double BV[3]
    cdef double num = 0.0
    cdef double tot = 0.0
    cdef double w0, q, sp, sm, eh, ev
    cdef int i, j
    _fill_columns(ta1, ta2, aV, aH)
    _fill_columns(tb1, tb2, bV, bH)
    BH[0] = d1 * bH[0]; BH[1] = d2 * bH[1]; BH[2] = d3 * bH[2]
    BV[0] = d1 * bV[0]; BV[1] = d2 * bV[1]; BV[2] = d3 * bV[2]
    if entangled:
        w0 = 1.0 - px - py - pz
        for i in range(3):
            for j in range(3):
                sp = aV[i] * BH[j] + aH[i] * BV[j]
                sm = aV[i] * BH[j] - aH[i] * BV[j]
                eh = aH[i] * BH[j] + aV[i] * BV[j]
                ev = aH[i] * BH[j] - aV[i] * BV[j]
                sp = 0.5 * (w0 * sp * sp + pz * sm * sm + px * eh * eh + py * ev * ev)
                tot += sp
                if i == j:
                    num += sp
    else:
        q = px + py
        for i in range(3):
            for j in range(3):
                sp = aV[i] * BH[j]
                eh = aH[i] * BH[j]
                sp = (1.0 - q) * sp * sp + q * eh * eh
                tot += sp
                if i == j:
                    num += sp
    if tot <= DEGENERATE_TOL:
        return NAN
    return num / tot


def config_probs(ta1, ta2, tb1, tb2, d1, d2, d3,
                 double px, double py, double pz, bint entangled):
    """No-switch probability per configuration; see the reference backend."""
    arrs = np.broadcast_arrays(*(np.asarray(x, dtype=np.float64)
                                 for x in (ta1, ta2, tb1, tb2, d1, d2, d3)))
    shape = arrs[0].shape
    flat = [np.ascontiguousarray(a.ravel()) for a in arrs]
    cdef double[::1] va1 = flat[0]
    cdef double[::1] va2 = flat[1]
    cdef double[::1] vb1 = flat[2]
    cdef double[::1] vb2 = flat[3]
    cdef double[::1] vd1 = flat[4]
    cdef double[::1] vd2 = flat[5]
    cdef double[::1] vd3 = flat[6]
    cdef Py_ssize_t n = va1.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t k
    with nogil:
        for k in range(n):
            out[k] = _config_prob(va1[k], va2[k], vb1[k], vb2[k],
                                  vd1[k], vd2[k], vd3[k], px, py, pz, entangled)
    return out_arr.reshape(shape)


def theta_grid_mean(nodes, weights, double d1, double d2, double d3,
                    double px, double py, double pz, bint entangled):
    """Weighted mean over the 4-D rotator grid; see the reference backend.

    The grid factors into Alice node pairs crossed with Bob node pairs, so
    both sides are tabulated once and the hot loop runs over the pair
    product with no trigonometry.
    """
    cdef double[::1] x = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t m = n * n
    av_arr = np.empty((m, 3))
    ah_arr = np.empty((m, 3))
    bh_arr = np.empty((m, 3))
    bv_arr = np.empty((m, 3))
    pw_arr = np.empty(m)
    tot_arr = np.empty(m)
    cdef double[:, ::1] aV = av_arr
    cdef double[:, ::1] aH = ah_arr
    cdef double[:, ::1] BH = bh_arr
    cdef double[:, ::1] BV = bv_arr
    cdef double[::1] pw = pw_arr
    cdef double[::1] tot = tot_arr
    cdef Py_ssize_t i, j, a, b, idx
    cdef double cv[3]
    cdef double ch[3]
    cdef double w0 = 1.0 - px - py - pz
    cdef double q = px + py
    cdef double acc = 0.0
    cdef double wb_valid = 0.0
    cdef double wa_sum = 0.0
    cdef double bh0, bh1, bh2, bv0, bv1, bv2, wb, inv_tb
    cdef double xp, xm, zp, zm, xv, xh, num
    with nogil:
        for i in range(n):
            for j in range(n):
                idx = i * n + j
                pw[idx] = w[i] * w[j]
                _fill_columns(x[i], x[j], cv, ch)
                aV[idx, 0] = cv[0]; aV[idx, 1] = cv[1]; aV[idx, 2] = cv[2]
                aH[idx, 0] = ch[0]; aH[idx, 1] = ch[1]; aH[idx, 2] = ch[2]
                BV[idx, 0] = d1 * cv[0]; BV[idx, 1] = d2 * cv[1]; BV[idx, 2] = d3 * cv[2]
                BH[idx, 0] = d1 * ch[0]; BH[idx, 1] = d2 * ch[1]; BH[idx, 2] = d3 * ch[2]
        for b in range(m):
            # surviving weight is Alice-independent: orthonormal columns
            # kill the cross terms when summing over all box pairs
            if entangled:
                tot[b] = 0.5 * (
                    BH[b, 0] * BH[b, 0] + BH[b, 1] * BH[b, 1] + BH[b, 2] * BH[b, 2]
                    + BV[b, 0] * BV[b, 0] + BV[b, 1] * BV[b, 1] + BV[b, 2] * BV[b, 2]
                )
            else:
                tot[b] = BH[b, 0] * BH[b, 0] + BH[b, 1] * BH[b, 1] + BH[b, 2] * BH[b, 2]
        for a in range(m):
            wa_sum += pw[a]
        for b in range(m):
            if tot[b] <= DEGENERATE_TOL:
                continue
            wb = pw[b]
            wb_valid += wb
            inv_tb = 1.0 / tot[b]
            bh0 = BH[b, 0]; bh1 = BH[b, 1]; bh2 = BH[b, 2]
            bv0 = BV[b, 0]; bv1 = BV[b, 1]; bv2 = BV[b, 2]
            if entangled:
                for a in range(m):
                    xp = aV[a, 0] * bh0 + aH[a, 0] * bv0
                    xm = aV[a, 0] * bh0 - aH[a, 0] * bv0
                    zp = aH[a, 0] * bh0 + aV[a, 0] * bv0
                    zm = aH[a, 0] * bh0 - aV[a, 0] * bv0
                    num = w0 * xp * xp + pz * xm * xm + px * zp * zp + py * zm * zm
                    xp = aV[a, 1] * bh1 + aH[a, 1] * bv1
                    xm = aV[a, 1] * bh1 - aH[a, 1] * bv1
                    zp = aH[a, 1] * bh1 + aV[a, 1] * bv1
                    zm = aH[a, 1] * bh1 - aV[a, 1] * bv1
                    num += w0 * xp * xp + pz * xm * xm + px * zp * zp + py * zm * zm
                    xp = aV[a, 2] * bh2 + aH[a, 2] * bv2
                    xm = aV[a, 2] * bh2 - aH[a, 2] * bv2
                    zp = aH[a, 2] * bh2 + aV[a, 2] * bv2
                    zm = aH[a, 2] * bh2 - aV[a, 2] * bv2
                    num += w0 * xp * xp + pz * xm * xm + px * zp * zp + py * zm * zm
                    acc += pw[a] * wb * (0.5 * num * inv_tb)
            else:
                for a in range(m):
                    xv = aV[a, 0] * bh0
                    xh = aH[a, 0] * bh0
                    num = (1.0 - q) * xv * xv + q * xh * xh
                    xv = aV[a, 1] * bh1
                    xh = aH[a, 1] * bh1
                    num += (1.0 - q) * xv * xv + q * xh * xh
                    xv = aV[a, 2] * bh2
                    xh = aH[a, 2] * bh2
                    num += (1.0 - q) * xv * xv + q * xh * xh
                    acc += pw[a] * wb * (num * inv_tb)
    if wb_valid <= 0.0:
        return float("nan")
    return acc / (wa_sum * wb_valid)
