"""Photon-pair kinematics in centre/relative coordinates.

Vectors are plain ndarrays of shape (3,) or (..., 3); momenta in keV,
positions in mm. The centre wave vector is the pair sum k1 + k2 and the
relative wave vector is (k1 - k2)/2; positions transform with the roles of
sum and difference interchanged so the Fourier phase k1.x1 + k2.x2 is
preserved.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

#: |k_c|/m ratio above which the first-order (counterpropagating) pair
#: construction is questionable and a warning is emitted.
BETA_WARN = 0.1


def norm3(v):
    """Euclidean norm along the last axis of an (..., 3) array."""
    v = np.asarray(v, dtype=float)
    return np.sqrt(v[..., 0] * v[..., 0] + v[..., 1] * v[..., 1]
                   + v[..., 2] * v[..., 2])


@dataclass(frozen=True)
class PhotonPair:
    """A momentum-conserving annihilation photon pair.

    ``omega1``/``omega2`` satisfy the massless dispersion omega = |k|
    exactly; ``khat`` is the sampled relative direction (photon 1 travels
    along approximately +khat, photon 2 along -khat).
    """

    k1: np.ndarray       # keV
    k2: np.ndarray       # keV
    omega1: float        # keV
    omega2: float        # keV
    khat: np.ndarray     # unit vector


def to_center_relative(k1, k2):
    """Map individual wave vectors to (centre, relative): (k1+k2, (k1-k2)/2)."""
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    return k1 + k2, 0.5 * (k1 - k2)


def from_center_relative(kc, kr):
    """Inverse of :func:`to_center_relative`."""
    kc = np.asarray(kc, dtype=float)
    kr = np.asarray(kr, dtype=float)
    return 0.5 * kc + kr, 0.5 * kc - kr


def pair_from_direction(khat, kc, m: float) -> PhotonPair:
    """Build a photon pair from a unit direction and centre momentum.

    k1 = m*khat + kc/2 and k2 = -m*khat + kc/2, so k1 + k2 = kc holds to
    rounding regardless of |kc|, while the energy sum deviates from
    2m + |kc|^2/(4m) by at most |kc|^2/(4m) (second order in the pair
    velocity). The relative momentum magnitude is fixed at m; its
    radiative linewidth (~1e-8 keV) is irrelevant for kinematics.
    """
    khat = np.asarray(khat, dtype=float)
    kc = np.asarray(kc, dtype=float)
    n = norm3(khat)
    if abs(n - 1.0) > 1e-12:
        raise ParameterError(f"khat must be a unit vector, |khat| = {n!r}")
    if norm3(kc) > BETA_WARN * m:
        warnings.warn("centre momentum exceeds 0.1*m; first-order pair "
                      "construction is inaccurate", stacklevel=2)
    k1 = m * khat + 0.5 * kc
    k2 = 0.5 * kc - m * khat
    return PhotonPair(k1=k1, k2=k2, omega1=float(norm3(k1)),
                      omega2=float(norm3(k2)), khat=khat)


def ps_total_energy(pc, m: float):
    """Positronium total energy 2m + |pc|^2/(4m) (second order in velocity)."""
    pc = np.asarray(pc, dtype=float)
    return 2.0 * m + norm3(pc) ** 2 / (4.0 * m)


def acollinearity(k1, k2):
    """Angle in rad between k1 and -k2 (0 for exactly back-to-back photons).

    Uses atan2(|k1 x k2|, -k1.k2), stable for the sub-10-mrad angles this
    geometry produces.
    """
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    cx = k1[..., 1] * k2[..., 2] - k1[..., 2] * k2[..., 1]
    cy = k1[..., 2] * k2[..., 0] - k1[..., 0] * k2[..., 2]
    cz = k1[..., 0] * k2[..., 1] - k1[..., 1] * k2[..., 0]
    cross = np.sqrt(cx * cx + cy * cy + cz * cz)
    dot = -(k1[..., 0] * k2[..., 0] + k1[..., 1] * k2[..., 1]
            + k1[..., 2] * k2[..., 2])
    return np.arctan2(cross, dot)


def phase_invariant_check(k1, k2, x1, x2):
    """Return (k1.x1 + k2.x2, kc.xc + kr.xr); the two must agree.

    Test helper for the phase-preservation identity of the centre/relative
    transform (positions use xc = (x1+x2)/2, xr = x1-x2).
    """
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    lhs = float(np.dot(k1, x1) + np.dot(k2, x2))
    kc, kr = to_center_relative(k1, k2)
    xc = 0.5 * (x1 + x2)
    xr = x1 - x2
    rhs = float(np.dot(kc, xc) + np.dot(kr, xr))
    return lhs, rhs
