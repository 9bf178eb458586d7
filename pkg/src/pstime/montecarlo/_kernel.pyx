# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-event record transform (hot loop of the event generator).

Scalar mirror of ``_kernel_py.transform_chunk``; operation order matches
the NumPy ufunc passes and the extension is built with -ffp-contract=off,
so both produce bit-identical columns (modulo the libm atan2 in the
acollinearity column). Keep the two implementations in lockstep.
"""

from libc.math cimport sqrt, atan2

import numpy as np


def transform_chunk(double[::1] t0, double[:, ::1] src, double[:, ::1] pc,
                    double[:, ::1] gvec, double[::1] e1, double[::1] e2,
                    double[::1] jit1, double[::1] jit2,
                    double[::1] d1, double[::1] d2,
                    double m, double c, double cos_half):
    """See ``_kernel_py.transform_chunk`` for the argument contract."""
    cdef Py_ssize_t n = t0.shape[0]
    cdef Py_ssize_t i

    tau1_arr = np.empty(n)
    tau2_arr = np.empty(n)
    t1_arr = np.empty(n)
    t2_arr = np.empty(n)
    dtau_arr = np.empty(n)
    dt_arr = np.empty(n)
    om1_arr = np.empty(n)
    om2_arr = np.empty(n)
    acol_arr = np.empty(n)
    det_arr = np.empty(n, dtype=np.uint8)

    cdef double[::1] tau1 = tau1_arr
    cdef double[::1] tau2 = tau2_arr
    cdef double[::1] t1 = t1_arr
    cdef double[::1] t2 = t2_arr
    cdef double[::1] dtau = dtau_arr
    cdef double[::1] dt = dt_arr
    cdef double[::1] om1 = om1_arr
    cdef double[::1] om2 = om2_arr
    cdef double[::1] acol = acol_arr
    cdef unsigned char[::1] det = det_arr

    cdef double d1x = d1[0], d1y = d1[1], d1z = d1[2]
    cdef double d2x = d2[0], d2y = d2[1], d2z = d2[2]

    cdef double gx, gy, gz, gn, hx, hy, hz
    cdef double px, py, pz
    cdef double k1x, k1y, k1z, k2x, k2y, k2z
    cdef double w1, w2, cx, cy, cz, cross, dot
    cdef double sx, sy, sz
    cdef double u1x, u1y, u1z, u2x, u2y, u2z, len1, len2
    cdef double a1, a2, eta1, eta2, ta, tb, arr1, arr2, acc1, acc2
    cdef bint swap

    with nogil:
        for i in range(n):
            gx = gvec[i, 0]
            gy = gvec[i, 1]
            gz = gvec[i, 2]
            gn = sqrt(gx * gx + gy * gy + gz * gz)
            hx = gx / gn
            hy = gy / gn
            hz = gz / gn

            px = pc[i, 0]
            py = pc[i, 1]
            pz = pc[i, 2]
            k1x = m * hx + 0.5 * px
            k1y = m * hy + 0.5 * py
            k1z = m * hz + 0.5 * pz
            k2x = 0.5 * px - m * hx
            k2y = 0.5 * py - m * hy
            k2z = 0.5 * pz - m * hz

            w1 = sqrt(k1x * k1x + k1y * k1y + k1z * k1z)
            w2 = sqrt(k2x * k2x + k2y * k2y + k2z * k2z)

            cx = k1y * k2z - k1z * k2y
            cy = k1z * k2x - k1x * k2z
            cz = k1x * k2y - k1y * k2x
            cross = sqrt(cx * cx + cy * cy + cz * cz)
            dot = -(k1x * k2x + k1y * k2y + k1z * k2z)

            sx = src[i, 0]
            sy = src[i, 1]
            sz = src[i, 2]
            u1x = d1x - sx
            u1y = d1y - sy
            u1z = d1z - sz
            len1 = sqrt(u1x * u1x + u1y * u1y + u1z * u1z)
            u2x = d2x - sx
            u2y = d2y - sy
            u2z = d2z - sz
            len2 = sqrt(u2x * u2x + u2y * u2y + u2z * u2z)

            a1 = (hx * u1x + hy * u1y + hz * u1z) / len1
            a2 = (hx * u2x + hy * u2y + hz * u2z) / len2
            swap = a2 > a1

            eta1 = t0[i] + e1[i]
            eta2 = t0[i] + e2[i]
            if swap:
                ta = eta2
                tb = eta1
            else:
                ta = eta1
                tb = eta2
            arr1 = ta + len1 / c + jit1[i]
            arr2 = tb + len2 / c + jit2[i]

            tau1[i] = ta
            tau2[i] = tb
            t1[i] = arr1
            t2[i] = arr2
            dtau[i] = ta - tb
            dt[i] = arr1 - arr2
            if swap:
                om1[i] = w2
                om2[i] = w1
                acc1 = -a1
                acc2 = a2
            else:
                om1[i] = w1
                om2[i] = w2
                acc1 = a1
                acc2 = -a2
            acol[i] = atan2(cross, dot) * 1000.0
            det[i] = 1 if (acc1 >= cos_half) and (acc2 >= cos_half) else 0

    return (tau1_arr, tau2_arr, t1_arr, t2_arr, dtau_arr, dt_arr,
            om1_arr, om2_arr, acol_arr, det_arr)
