"""Seedable annihilation-event generator and coincidence detection.

Determinism contract
--------------------
Events are generated in fixed blocks of :data:`BLOCK` events. Block ``b``
uses ``Generator(PCG64(SeedSequence(entropy=seed, spawn_key=(b,))))`` and
draws, in this order: injection times, source-box uniforms, direction
normals, centre-momentum normals, emission delay(s), detector jitter
normals (only when jitter is enabled). Record content is therefore a pure
function of (seed, physics/geometry config, model, n_events); the
``chunk_size`` scheduling granularity and the worker count never affect
it.

Two emission-time models are provided:

* ``quantum``: the two photons carry independent exponential emission
  times after injection, which makes the emission-time difference a
  double exponential (Laplace) at the decay rate;
* ``semiclassical``: both photons share a single exponential decay time,
  predicting a zero-width time-difference spectrum for a point source.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from ..errors import ConfigError
from ..kinematics import PhotonPair, acollinearity, norm3, pair_from_direction
from ..units import PhysicalParams
from ._backend import get_kernel

#: Seeding block size in events. Fixed so that record content is
#: independent of scheduling granularity and worker count.
BLOCK = 4096

MODELS = ("quantum", "semiclassical")

#: CSV column order; the header line is part of the output contract.
COLUMNS = ("event_id", "t0_ps", "tau1_ps", "tau2_ps", "t1_ps", "t2_ps",
           "dtau_ps", "dt_ps", "omega1_kev", "omega2_kev", "acol_mrad",
           "detected")

_AXES = {"x": 0, "y": 1, "z": 2}


def _vec3(value, name):
    v = np.asarray(value, dtype=float)
    if v.shape != (3,) or not np.all(np.isfinite(v)):
        raise ConfigError(f"{name} must be three finite numbers, got {value!r}")
    return tuple(float(x) for x in v)


@dataclass(frozen=True)
class SourceConfig:
    """Positron source geometry and injection model.

    A box source: ``thickness`` along the ``normal`` axis and
    ``transverse_extent`` along each of the other two axes, centred at
    ``center``. Thickness and extent of zero give a point source.
    Positrons are injected at a constant rate; a run of n events spans a
    window n / rate and injection times are drawn uniformly in it.
    """

    thickness: float = 3.0                 # mm
    normal: str = "z"
    transverse_extent: float = 0.0         # mm
    center: tuple = (0.0, 0.0, 0.0)        # mm
    injection_rate_per_ps: float = 0.01

    def __post_init__(self):
        if self.normal not in _AXES:
            raise ConfigError(f"slab normal must be one of x|y|z, got {self.normal!r}")
        if self.thickness < 0 or not math.isfinite(self.thickness):
            raise ConfigError("slab thickness must be >= 0")
        if self.transverse_extent < 0 or not math.isfinite(self.transverse_extent):
            raise ConfigError("transverse extent must be >= 0")
        if self.injection_rate_per_ps <= 0 or not math.isfinite(self.injection_rate_per_ps):
            raise ConfigError("injection rate must be > 0")
        object.__setattr__(self, "center", _vec3(self.center, "source center"))

    def extents(self) -> np.ndarray:
        e = np.full(3, self.transverse_extent)
        e[_AXES[self.normal]] = self.thickness
        return e


@dataclass(frozen=True)
class DetectorConfig:
    """Two point detectors with an angular acceptance and time jitter.

    The default half-angle of pi accepts every event (each photon is
    assigned to the detector nearest its flight axis); tighter cones mark
    events outside either cone as undetected. ``jitter_sigma`` is a
    Gaussian timing error per detector, in ps.
    """

    d1: tuple = (0.0, 0.0, 100.0)          # mm
    d2: tuple = (0.0, 0.0, -100.0)         # mm
    half_angle: float = math.pi            # rad
    jitter_sigma: float = 0.0              # ps

    def __post_init__(self):
        object.__setattr__(self, "d1", _vec3(self.d1, "d1"))
        object.__setattr__(self, "d2", _vec3(self.d2, "d2"))
        if self.d1 == self.d2:
            raise ConfigError("detectors must be at distinct positions")
        if not 0.0 < self.half_angle <= math.pi:
            raise ConfigError("acceptance half-angle must be in (0, pi]")
        if self.jitter_sigma < 0 or not math.isfinite(self.jitter_sigma):
            raise ConfigError("jitter sigma must be >= 0")

    @property
    def cos_half_angle(self) -> float:
        # exactly -1.0 for the accept-everything default
        return -1.0 if self.half_angle == math.pi else math.cos(self.half_angle)


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a simulation's output."""

    params: PhysicalParams = field(default_factory=PhysicalParams)
    source: SourceConfig = field(default_factory=SourceConfig)
    detectors: DetectorConfig = field(default_factory=DetectorConfig)
    model: str = "quantum"
    n_events: int = 1_000_000
    seed: int = 0
    chunk_size: int = 262_144

    def __post_init__(self):
        if self.model not in MODELS:
            raise ConfigError(f"unknown model {self.model!r}; expected one of {MODELS}")
        if self.n_events <= 0:
            raise ConfigError("n_events must be positive")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        if self.chunk_size <= 0:
            raise ConfigError("chunk_size must be positive")

    @property
    def t0_window(self) -> float:
        """Injection window in ps implied by the constant-rate model."""
        return self.n_events / self.source.injection_rate_per_ps


@dataclass(frozen=True)
class AnnihilationEvent:
    """One annihilation: injection, kinematics and photon emission times.

    ``tau1``/``tau2`` are photon-indexed here (photon 1 flies along
    approximately +khat); the detector-frame relabelling happens in
    :func:`detect`.
    """

    event_id: int
    t0: float                 # ps
    source_point: np.ndarray  # mm
    pc: np.ndarray            # keV
    khat: np.ndarray
    pair: PhotonPair
    tau1: float               # ps
    tau2: float               # ps


@dataclass(frozen=True)
class CoincidenceRecord:
    """Detector-frame view of one event (index 1/2 = detector 1/2)."""

    event_id: int
    t0: float
    tau1: float
    tau2: float
    t1: float
    t2: float
    dtau: float
    dt: float
    omega1: float
    omega2: float
    acol_mrad: float
    detected: bool


def _block_rng(seed: int, block_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(block_index,))
    return np.random.Generator(np.random.PCG64(ss))


def draw_block(rng, n, t0_window, params, source, detectors, model):
    """Raw per-event random draws for one block, in the documented order."""
    t0 = rng.random(n) * t0_window
    u = rng.random((n, 3))
    src = np.asarray(source.center) + (u - 0.5) * source.extents()
    gvec = rng.standard_normal((n, 3))
    comp_sigma = params.sigma_doppler / math.sqrt(2.0)
    pc = rng.standard_normal((n, 3)) * comp_sigma
    scale = 1.0 / params.gamma
    e1 = rng.exponential(scale, n)
    e2 = rng.exponential(scale, n) if model == "quantum" else e1
    if detectors.jitter_sigma > 0.0:
        jit1 = rng.normal(0.0, detectors.jitter_sigma, n)
        jit2 = rng.normal(0.0, detectors.jitter_sigma, n)
    else:
        jit1 = np.zeros(n)
        jit2 = jit1
    return {"t0": t0, "src": src, "pc": pc, "gvec": gvec,
            "e1": e1, "e2": e2, "jit1": jit1, "jit2": jit2}


def _compute_block(config: RunConfig, block_index: int, kernel) -> dict:
    start = block_index * BLOCK
    count = min(BLOCK, config.n_events - start)
    rng = _block_rng(config.seed, block_index)
    d = draw_block(rng, count, config.t0_window, config.params,
                   config.source, config.detectors, config.model)
    cols = kernel.transform_chunk(
        d["t0"], d["src"], d["pc"], d["gvec"], d["e1"], d["e2"],
        d["jit1"], d["jit2"],
        np.asarray(config.detectors.d1), np.asarray(config.detectors.d2),
        config.params.m_e, config.params.c,
        config.detectors.cos_half_angle)
    tau1, tau2, t1, t2, dtau, dt, om1, om2, acol, det = cols
    return {"event_id": np.arange(start, start + count, dtype=np.int64),
            "t0_ps": d["t0"], "tau1_ps": tau1, "tau2_ps": tau2,
            "t1_ps": t1, "t2_ps": t2, "dtau_ps": dtau, "dt_ps": dt,
            "omega1_kev": om1, "omega2_kev": om2, "acol_mrad": acol,
            "detected": det}


def _compute_span(config: RunConfig, lo: int, hi: int, kernel_name: str) -> list:
    kernel = get_kernel(kernel_name)
    return [_compute_block(config, b, kernel) for b in range(lo, hi)]


def iter_record_batches(config: RunConfig, kernel: str = "auto", workers: int = 1):
    """Yield per-block column dicts in block order.

    ``workers > 1`` distributes spans of blocks over a process pool; the
    yield order (and hence any serialized output) is identical for every
    worker count.
    """
    n_blocks = -(-config.n_events // BLOCK)
    blocks_per_span = max(1, -(-config.chunk_size // BLOCK))
    spans = [(lo, min(lo + blocks_per_span, n_blocks))
             for lo in range(0, n_blocks, blocks_per_span)]
    if workers <= 1:
        kern = get_kernel(kernel)
        for lo, hi in spans:
            for b in range(lo, hi):
                yield _compute_block(config, b, kern)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_compute_span, config, lo, hi, kernel)
                   for lo, hi in spans]
        for fut in futures:
            yield from fut.result()


def run(config: RunConfig, kernel: str = "auto", workers: int = 1) -> dict:
    """Generate all records and return them as a dict of column arrays."""
    batches = list(iter_record_batches(config, kernel=kernel, workers=workers))
    return {name: np.concatenate([b[name] for b in batches]) for name in COLUMNS}


def write_records_csv(config: RunConfig, path, kernel: str = "auto",
                      workers: int = 1) -> int:
    """Stream records to a CSV file; returns the number of rows written.

    Output bytes are a pure function of the config (floats are written in
    shortest round-trip representation).
    """
    n = 0
    with open(path, "w", newline="") as fh:
        header = True
        for batch in iter_record_batches(config, kernel=kernel, workers=workers):
            df = pd.DataFrame({name: batch[name] for name in COLUMNS})
            df.to_csv(fh, index=False, header=header)
            header = False
            n += len(df)
    return n


def read_records_csv(path) -> pd.DataFrame:
    """Load a records CSV produced by :func:`write_records_csv`."""
    return pd.read_csv(path)


# ---------------------------------------------------------------------------
# single-event reference API

def sample_event(rng, params: PhysicalParams, source: SourceConfig,
                 model: str = "quantum", event_id: int = 0,
                 t0_window: float = 0.0) -> AnnihilationEvent:
    """Draw one annihilation event (readable reference for the batch path).

    ``t0_window`` is the injection window (a run-level quantity,
    n_events / rate); zero pins the injection to t0 = 0.
    """
    if model not in MODELS:
        raise ConfigError(f"unknown model {model!r}; expected one of {MODELS}")
    t0 = rng.random() * t0_window
    u = rng.random(3)
    src = np.asarray(source.center) + (u - 0.5) * source.extents()
    g = rng.standard_normal(3)
    khat = g / norm3(g)
    pc = rng.standard_normal(3) * (params.sigma_doppler / math.sqrt(2.0))
    scale = 1.0 / params.gamma
    e1 = rng.exponential(scale)
    e2 = rng.exponential(scale) if model == "quantum" else e1
    pair = pair_from_direction(khat, pc, params.m_e)
    return AnnihilationEvent(event_id=event_id, t0=t0, source_point=src,
                             pc=pc, khat=khat, pair=pair,
                             tau1=t0 + e1, tau2=t0 + e2)


def detect(event: AnnihilationEvent, detectors: DetectorConfig, rng,
           params: PhysicalParams) -> CoincidenceRecord:
    """Propagate an event's photons to the detectors.

    The photon travelling along +khat is assigned to the detector nearest
    that axis; arrival times are emission plus straight-line flight plus
    optional Gaussian jitter. Events with either photon outside the
    acceptance cone are flagged undetected (still recorded).
    """
    u1 = np.asarray(detectors.d1) - event.source_point
    u2 = np.asarray(detectors.d2) - event.source_point
    len1 = float(norm3(u1))
    len2 = float(norm3(u2))
    a1 = float(np.dot(event.khat, u1)) / len1
    a2 = float(np.dot(event.khat, u2)) / len2
    swap = a2 > a1
    if detectors.jitter_sigma > 0.0:
        jit1 = rng.normal(0.0, detectors.jitter_sigma)
        jit2 = rng.normal(0.0, detectors.jitter_sigma)
    else:
        jit1 = jit2 = 0.0

    if swap:
        tau1, tau2 = event.tau2, event.tau1
        om1, om2 = event.pair.omega2, event.pair.omega1
        acc1, acc2 = -a1, a2
    else:
        tau1, tau2 = event.tau1, event.tau2
        om1, om2 = event.pair.omega1, event.pair.omega2
        acc1, acc2 = a1, -a2
    t1 = tau1 + len1 / params.c + jit1
    t2 = tau2 + len2 / params.c + jit2
    cos_half = detectors.cos_half_angle
    detected = bool(acc1 >= cos_half and acc2 >= cos_half)
    acol = float(acollinearity(event.pair.k1, event.pair.k2)) * 1000.0
    return CoincidenceRecord(event_id=event.event_id, t0=event.t0,
                             tau1=tau1, tau2=tau2, t1=t1, t2=t2,
                             dtau=tau1 - tau2, dt=t1 - t2,
                             omega1=om1, omega2=om2, acol_mrad=acol,
                             detected=detected)
