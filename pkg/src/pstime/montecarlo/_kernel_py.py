"""Vectorized NumPy implementation of the per-event record transform.

This is the import-time fallback for the compiled kernel in ``_kernel.pyx``.
Both implementations perform the *same* floating-point operations in the
same order (the extension is compiled with FP contraction disabled), so
records are bit-identical whichever one is active, except for the arctan2
used in the acollinearity column, which may differ by a rounding unit
between libm builds.
"""

import numpy as np


def transform_chunk(t0, src, pc, gvec, e1, e2, jit1, jit2, d1, d2, m, c, cos_half):
    """Turn raw per-event draws into detector-frame record columns.

    Parameters
    ----------
    t0 : (n,) injection times, ps
    src : (n, 3) annihilation points, mm
    pc : (n, 3) centre momenta, keV
    gvec : (n, 3) isotropic direction seeds (raw standard normals)
    e1, e2 : (n,) per-photon emission delays after t0, ps (pass the same
        array twice for the shared-emission-time model)
    jit1, jit2 : (n,) detector time jitter, ps (zeros when disabled)
    d1, d2 : (3,) detector positions, mm
    m : photon momentum magnitude (electron rest energy), keV
    c : speed of light, mm/ps
    cos_half : acceptance cone cosine; -1.0 accepts every event

    Returns
    -------
    tuple of (n,) arrays
        (tau1, tau2, t1, t2, dtau, dt, omega1, omega2, acol_mrad, detected)
        where subscript 1/2 means "the photon that reached detector 1/2".
    """
    gx, gy, gz = gvec[:, 0], gvec[:, 1], gvec[:, 2]
    gn = np.sqrt(gx * gx + gy * gy + gz * gz)
    hx = gx / gn
    hy = gy / gn
    hz = gz / gn

    px, py, pz = pc[:, 0], pc[:, 1], pc[:, 2]
    k1x = m * hx + 0.5 * px
    k1y = m * hy + 0.5 * py
    k1z = m * hz + 0.5 * pz
    k2x = 0.5 * px - m * hx
    k2y = 0.5 * py - m * hy
    k2z = 0.5 * pz - m * hz

    om1 = np.sqrt(k1x * k1x + k1y * k1y + k1z * k1z)
    om2 = np.sqrt(k2x * k2x + k2y * k2y + k2z * k2z)

    # angle between k1 and -k2 via atan2(|k1 x k2|, -k1.k2)
    cx = k1y * k2z - k1z * k2y
    cy = k1z * k2x - k1x * k2z
    cz = k1x * k2y - k1y * k2x
    cross = np.sqrt(cx * cx + cy * cy + cz * cz)
    dot = -(k1x * k2x + k1y * k2y + k1z * k2z)
    acol = np.arctan2(cross, dot) * 1000.0

    sx, sy, sz = src[:, 0], src[:, 1], src[:, 2]
    u1x = d1[0] - sx
    u1y = d1[1] - sy
    u1z = d1[2] - sz
    len1 = np.sqrt(u1x * u1x + u1y * u1y + u1z * u1z)
    u2x = d2[0] - sx
    u2y = d2[1] - sy
    u2z = d2[2] - sz
    len2 = np.sqrt(u2x * u2x + u2y * u2y + u2z * u2z)

    a1 = (hx * u1x + hy * u1y + hz * u1z) / len1
    a2 = (hx * u2x + hy * u2y + hz * u2z) / len2
    swap = a2 > a1          # photon 1 (+khat side) goes to detector 2

    eta1 = t0 + e1
    eta2 = t0 + e2
    tau1 = np.where(swap, eta2, eta1)
    tau2 = np.where(swap, eta1, eta2)
    t1 = tau1 + len1 / c + jit1
    t2 = tau2 + len2 / c + jit2
    dtau = tau1 - tau2
    dt = t1 - t2

    o1 = np.where(swap, om2, om1)
    o2 = np.where(swap, om1, om2)

    acc1 = np.where(swap, -a1, a1)
    acc2 = np.where(swap, a2, -a2)
    detected = ((acc1 >= cos_half) & (acc2 >= cos_half)).astype(np.uint8)

    return tau1, tau2, t1, t2, dtau, dt, o1, o2, acol, detected
