"""Closed-form densities for annihilation timing and their fit-model shapes.

Three groups:

* line shape and decay densities: :func:`lorentzian_line`,
  :func:`relative_density`, :func:`pal_rate`,
  :func:`conditional_second_photon_density`, :func:`doppler_pdf`;
* the coincidence time-difference law: :func:`coincidence_pdf` /
  :func:`coincidence_cdf` (a Laplace distribution at the decay rate);
* the three comparison shapes used as fit models
  (:func:`model_shape`, plus location-scale pdf/cdf helpers used by the
  fitters). :func:`comparison_shape` gives the figure-style
  parameterization of the same three curves, which is not unit-normalized.

All functions broadcast over ndarray inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .errors import ParameterError
from .kinematics import norm3

MODEL_KINDS = ("double_exponential", "lorentzian", "gaussian")

_SQRT2 = np.sqrt(2.0)
_LN2 = np.log(2.0)


def _require_positive(name, value):
    if not np.isfinite(value) or value <= 0.0:
        raise ParameterError(f"{name} must be finite and positive, got {value!r}")


# ---------------------------------------------------------------------------
# line shape / decay densities

def lorentzian_line(omega, energy, width):
    """Unit-normalized Lorentzian line (width/pi) / ((omega-energy)^2 + width^2).

    ``width`` is the HWHM; the relative-energy amplitude of the decaying
    pair has this form with width equal to the decay rate.
    """
    _require_positive("width", width)
    omega = np.asarray(omega, dtype=float)
    return (width / np.pi) / ((omega - energy) ** 2 + width ** 2)


def relative_density(r, dt, gamma, c=1.0):
    """Relative-separation density of the photon pair at time dt after injection.

    (gamma / (4 pi c)) * r^-2 * exp[-2 gamma (dt - r/(2c))] inside the
    causal ball 0 < r <= 2 c dt, zero outside. Integrated over the ball it
    gives 1 - exp(-2 gamma dt) (unit mass once the decay is complete).
    With c = 1 this is the natural-units expression, which carries no
    explicit 1/c.

    ``r`` in mm, ``dt`` in ps for the default unit system.
    """
    _require_positive("gamma", gamma)
    _require_positive("c", c)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise ParameterError("r must be positive (relative separation)")
    dt = np.asarray(dt, dtype=float)
    inside = r <= 2.0 * c * dt
    exponent = -2.0 * gamma * (dt - r / (2.0 * c))
    dens = (gamma / (4.0 * np.pi * c)) / (r * r) * np.exp(np.where(inside, exponent, 0.0))
    return np.where(inside, dens, 0.0)


def _causal_exponential(dt, distance, gamma, c, normalized):
    """exp[-gamma (dt - distance/c)] for dt >= distance/c, else 0."""
    dt = np.asarray(dt, dtype=float)
    t0 = distance / c
    inside = dt >= t0
    out = np.exp(np.where(inside, -gamma * (dt - t0), 0.0))
    out = np.where(inside, out, 0.0)
    if normalized:
        out = gamma * out
    return out


def pal_rate(dt, x1, gamma, c, normalized=False):
    """Positron-lifetime counting rate at a detector a distance x1 from the source.

    Proportional to exp[-gamma (dt - x1/c)] once the photon can have
    arrived (dt >= x1/c) and zero before; ``normalized=True`` scales it to
    unit integral over dt in (x1/c, inf). The log-slope of the tail is
    -gamma.
    """
    _require_positive("gamma", gamma)
    _require_positive("c", c)
    if x1 <= 0.0:
        raise ParameterError("x1 must be positive")
    return _causal_exponential(dt, x1, gamma, c, normalized)


def conditional_second_photon_density(dt, x2, gamma, c, normalized=False):
    """Arrival density of the partner photon after the first detection.

    Detecting one photon collapses the pair state; the survivor's counting
    density at distance x2 keeps the same causal-exponential form (and the
    same log-slope -gamma) as the single-photon lifetime rate.
    """
    _require_positive("gamma", gamma)
    _require_positive("c", c)
    if x2 <= 0.0:
        raise ParameterError("x2 must be positive")
    return _causal_exponential(dt, x2, gamma, c, normalized)


def doppler_pdf(kc, sigma):
    """Isotropic Gaussian density of the centre momentum, (pi sigma^2)^{-3/2} exp(-|kc|^2/sigma^2).

    Each Cartesian component is then Gaussian with standard deviation
    sigma/sqrt(2). ``kc`` has shape (..., 3) in keV.
    """
    _require_positive("sigma", sigma)
    kc = np.asarray(kc, dtype=float)
    return (np.pi * sigma ** 2) ** -1.5 * np.exp(-(norm3(kc) ** 2) / sigma ** 2)


# ---------------------------------------------------------------------------
# coincidence time-difference law

def coincidence_pdf(dtau, gamma, mu=0.0):
    """Density of the emission-time difference: (gamma/2) exp(-gamma |dtau - mu|).

    A Laplace distribution at the decay rate; FWHM = 2 ln2 / gamma. The
    location mu is zero for a centred source and shifts with source
    offset.
    """
    _require_positive("gamma", gamma)
    dtau = np.asarray(dtau, dtype=float)
    return 0.5 * gamma * np.exp(-gamma * np.abs(dtau - mu))


def coincidence_cdf(dtau, gamma, mu=0.0):
    """CDF of :func:`coincidence_pdf`."""
    _require_positive("gamma", gamma)
    z = np.asarray(dtau, dtype=float) - mu
    return np.where(z < 0.0, 0.5 * np.exp(gamma * np.where(z < 0, z, 0.0)),
                    1.0 - 0.5 * np.exp(-gamma * np.where(z >= 0, z, 0.0)))


@dataclass(frozen=True)
class CoincidencePdf:
    """Coincidence time-difference distribution object (rate + location)."""

    gamma: float          # 1/ps
    mu: float = 0.0       # ps

    def __post_init__(self):
        _require_positive("gamma", self.gamma)

    def pdf(self, dtau):
        return coincidence_pdf(dtau, self.gamma, self.mu)

    def cdf(self, dtau):
        return coincidence_cdf(dtau, self.gamma, self.mu)

    @property
    def fwhm(self) -> float:
        return 2.0 * _LN2 / self.gamma


# ---------------------------------------------------------------------------
# fit-model shapes (location-scale form used by the fitters)

def laplace_pdf(x, loc, scale):
    x = np.asarray(x, dtype=float)
    return np.exp(-np.abs(x - loc) / scale) / (2.0 * scale)


def laplace_cdf(x, loc, scale):
    z = (np.asarray(x, dtype=float) - loc) / scale
    return np.where(z < 0.0, 0.5 * np.exp(np.where(z < 0, z, 0.0)),
                    1.0 - 0.5 * np.exp(-np.where(z >= 0, z, 0.0)))


def normal_pdf(x, loc, sigma):
    z = (np.asarray(x, dtype=float) - loc) / sigma
    return np.exp(-0.5 * z * z) / (sigma * np.sqrt(2.0 * np.pi))


def normal_cdf(x, loc, sigma):
    return ndtr((np.asarray(x, dtype=float) - loc) / sigma)


def cauchy_pdf(x, loc, hwhm):
    x = np.asarray(x, dtype=float)
    return (hwhm / np.pi) / ((x - loc) ** 2 + hwhm ** 2)


def cauchy_cdf(x, loc, hwhm):
    return 0.5 + np.arctan((np.asarray(x, dtype=float) - loc) / hwhm) / np.pi


_SHAPE_PDF = {"double_exponential": laplace_pdf,
              "lorentzian": cauchy_pdf,
              "gaussian": normal_pdf}
_SHAPE_CDF = {"double_exponential": laplace_cdf,
              "lorentzian": cauchy_cdf,
              "gaussian": normal_cdf}


def shape_pdf(kind, x, loc, scale):
    """Location-scale pdf of a named model shape (see ``MODEL_KINDS``)."""
    try:
        return _SHAPE_PDF[kind](x, loc, scale)
    except KeyError:
        raise ParameterError(f"unknown model kind {kind!r}; "
                             f"expected one of {MODEL_KINDS}") from None


def shape_cdf(kind, x, loc, scale):
    """Location-scale cdf of a named model shape."""
    try:
        return _SHAPE_CDF[kind](x, loc, scale)
    except KeyError:
        raise ParameterError(f"unknown model kind {kind!r}; "
                             f"expected one of {MODEL_KINDS}") from None


def scale_from_gamma(kind, gamma):
    """Scale parameter giving the rate-gamma parameterization of a shape.

    double_exponential: Laplace scale 1/gamma; lorentzian: HWHM gamma;
    gaussian: sigma = 1/(sqrt(2) gamma), which normalizes the
    exp(-gamma^2 x^2) profile.
    """
    _require_positive("gamma", gamma)
    if kind == "double_exponential":
        return 1.0 / gamma
    if kind == "lorentzian":
        return gamma
    if kind == "gaussian":
        return 1.0 / (_SQRT2 * gamma)
    raise ParameterError(f"unknown model kind {kind!r}; expected one of {MODEL_KINDS}")


def fwhm_from_scale(kind, scale):
    """FWHM of a named shape from its scale parameter."""
    if kind == "double_exponential":
        return 2.0 * _LN2 * scale
    if kind == "lorentzian":
        return 2.0 * scale
    if kind == "gaussian":
        return 2.0 * np.sqrt(2.0 * _LN2) * scale
    raise ParameterError(f"unknown model kind {kind!r}; expected one of {MODEL_KINDS}")


def model_shape(kind, x, gamma):
    """Unit-normalized comparison shape in the rate parameterization.

    double_exponential: (gamma/2) exp(-gamma |x|);
    lorentzian: (gamma/pi) / (x^2 + gamma^2);
    gaussian: (gamma/sqrt(pi)) exp(-gamma^2 x^2).
    """
    return shape_pdf(kind, x, 0.0, scale_from_gamma(kind, gamma))


def comparison_shape(kind, x, gamma):
    """Figure-style parameterization of the three comparison curves.

    (2 gamma)^-1 exp(-gamma |x|), (pi gamma^2)^-1 (x^2+gamma^2)^-1 and
    (gamma pi)^-3/2 exp(-gamma^2 x^2). These share the rate parameter but
    are *not* individually unit-normalized; use :func:`model_shape` for
    densities.
    """
    _require_positive("gamma", gamma)
    x = np.asarray(x, dtype=float)
    if kind == "double_exponential":
        return np.exp(-gamma * np.abs(x)) / (2.0 * gamma)
    if kind == "lorentzian":
        return 1.0 / (np.pi * gamma ** 2 * (x ** 2 + gamma ** 2))
    if kind == "gaussian":
        return (gamma * np.pi) ** -1.5 * np.exp(-(gamma ** 2) * x ** 2)
    raise ParameterError(f"unknown model kind {kind!r}; expected one of {MODEL_KINDS}")


@dataclass(frozen=True)
class ModelShape:
    """A named comparison shape bound to a rate parameter."""

    kind: str
    gamma: float

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ParameterError(f"unknown model kind {self.kind!r}; "
                                 f"expected one of {MODEL_KINDS}")
        _require_positive("gamma", self.gamma)

    @property
    def scale(self) -> float:
        return scale_from_gamma(self.kind, self.gamma)

    def pdf(self, x):
        return shape_pdf(self.kind, x, 0.0, self.scale)

    def cdf(self, x):
        return shape_cdf(self.kind, x, 0.0, self.scale)
