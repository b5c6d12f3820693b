"""Synthetic diurnal amplitude series and permittivity sweeps."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import optics, sky
from .errors import ValidationError
from .optics import Interferometer, Medium

REFERENCE_LENGTH = 0.2  # m
REFERENCE_WAVELENGTH = 6e-7  # m
DEFAULT_STEP = 1800.0  # s
DEFAULT_SAMPLES = 48


@dataclass(frozen=True)
class NoiseModel:
    """Additive zero-mean jitter on A_m.

    ``amplitude`` is the half-width of the uniform band, or the standard
    deviation when ``distribution == "normal"``.
    """

    amplitude: float = 0.0
    seed: int = 0
    distribution: str = "uniform"

    def __post_init__(self):
        if not math.isfinite(self.amplitude) or self.amplitude < 0:
            raise ValidationError(f"noise amplitude must be >= 0, got {self.amplitude!r}")
        if self.distribution not in ("uniform", "normal"):
            raise ValidationError(f"unknown noise distribution {self.distribution!r}")
        if self.seed < 0:
            raise ValidationError(f"seed must be non-negative, got {self.seed!r}")

    def draw(self, size: int) -> np.ndarray:
        rng = np.random.default_rng(self.seed)
        if self.distribution == "normal":
            return rng.normal(0.0, self.amplitude, size)
        return rng.uniform(-self.amplitude, self.amplitude, size)


@dataclass(frozen=True)
class MeasurementSeries:
    site: sky.ObserverSite
    instrument: Interferometer
    epochs: np.ndarray
    a_m: np.ndarray
    noise: NoiseModel = field(default_factory=NoiseModel)
    a_m_clean: np.ndarray | None = None

    def __post_init__(self):
        epochs = np.asarray(self.epochs, dtype=float)
        a_m = np.asarray(self.a_m, dtype=float)
        if epochs.ndim != 1 or epochs.shape != a_m.shape:
            raise ValidationError("epochs and amplitudes must be 1-d arrays of equal length")
        if np.any(np.diff(epochs) <= 0):
            raise ValidationError("epochs must be strictly increasing")
        if not np.all(np.isfinite(a_m)):
            raise ValidationError("amplitudes must be finite")
        object.__setattr__(self, "epochs", epochs)
        object.__setattr__(self, "a_m", a_m)

    def __len__(self):
        return self.epochs.size

    @property
    def span(self) -> float:
        return float(self.epochs[-1] - self.epochs[0]) if len(self) else 0.0


def default_schedule(start: float) -> np.ndarray:
    """48 half-hourly epochs covering one day from ``start``."""
    return start + DEFAULT_STEP * np.arange(DEFAULT_SAMPLES, dtype=float)


def synthesize_series(wind, site, instrument, schedule, noise=NoiseModel()):
    """Noise-added A_m samples for a wind vector observed from ``site``.

    ``A_m(t) = fringe_amplitude(v_hor(t)) + eta``, with eta drawn once per
    call from ``noise``; the same seed always gives the same series.
    """
    epochs = np.asarray(schedule, dtype=float)
    if epochs.size == 0:
        raise ValidationError("schedule is empty")
    v_hor = np.atleast_1d(sky.horizontal_projection(wind, site, epochs))
    clean = optics.fringe_amplitude(instrument, v_hor)
    noisy = clean + noise.draw(epochs.size)
    return MeasurementSeries(site, instrument, epochs, noisy, noise, clean)


@dataclass(frozen=True)
class SweepRow:
    label: str
    eps1: float
    eps2: float
    deps: float
    x_m: float  # fringes, reduced to the reference geometry
    wavelength: float
    length: float
    x_m_raw: float  # fringes at the row's own geometry


@dataclass(frozen=True)
class EpsilonSweepTable:
    """Fringe shift against permittivity difference at a fixed wind speed.

    Every ``x_m`` is rescaled by ``(l_ref/l)(lambda/lambda_ref)`` so all rows
    share the reference geometry (0.2 m arms, 600 nm).
    """

    rows: tuple
    v_hor: float
    reference_length: float = REFERENCE_LENGTH
    reference_wavelength: float = REFERENCE_WAVELENGTH

    def __len__(self):
        return len(self.rows)

    def column(self, name):
        return np.array([getattr(r, name) for r in self.rows], dtype=float)


def sweep_row(label, forward: Medium, back: Medium, v_hor, length=REFERENCE_LENGTH,
              wavelength=REFERENCE_WAVELENGTH, reference_length=REFERENCE_LENGTH,
              reference_wavelength=REFERENCE_WAVELENGTH):
    if forward.epsilon < back.epsilon:
        raise ValidationError(f"row {label!r}: forward permittivity below return permittivity")
    instrument = Interferometer.symmetric(length, forward, back, wavelength, 1.0)
    raw = optics.fringe_shift(optics.delta_t_first_order(instrument, v_hor), wavelength).fringe_shift
    reduced = raw * (reference_length / length) * (wavelength / reference_wavelength)
    return SweepRow(label, forward.epsilon, back.epsilon, forward.epsilon - back.epsilon,
                    reduced, wavelength, length, raw)


def epsilon_sweep(pairs, v_hor, length=REFERENCE_LENGTH, wavelength=REFERENCE_WAVELENGTH):
    """Build a sweep table.

    ``pairs`` holds ``(label, forward, back)`` or
    ``(label, forward, back, wavelength, length)`` tuples; the short form uses
    the default ``length``/``wavelength``.
    """
    if not pairs:
        raise ValidationError("epsilon sweep needs at least one media pair")
    rows = []
    for pair in pairs:
        label, forward, back, *geometry = pair
        lam, arm = (geometry + [None, None])[:2]
        rows.append(sweep_row(label, forward, back, v_hor,
                              length=arm if arm is not None else length,
                              wavelength=lam if lam is not None else wavelength))
    return EpsilonSweepTable(tuple(rows), v_hor)


def figure3_pairs(microwave=False):
    """Media pairs measured optically, optionally with the CaTiO3 waveguide row at 10 cm."""
    pairs = [
        ("air/lab vacuum", optics.AIR, optics.LAB_VACUUM),
        ("CS2/air", optics.CS2, optics.AIR),
        ("plexiglas/air", optics.PLEXIGLAS, optics.AIR),
    ]
    if microwave:
        pairs.append(("CaTiO3/air (microwave)", optics.CATIO3, optics.AIR, 0.1, REFERENCE_LENGTH))
    return pairs
