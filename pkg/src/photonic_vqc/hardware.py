"""Hardware control-path emulation: thermo-optic phase calibration, phase
setting error, and finite photon-count statistics."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .mesh import N_PHASES, MeshParameters, forward, wrap_phase
from .readout import intensities_exact, intensities_sampled

# Placeholder calibration: pi phase shift at about 0.707 A. The coefficient
# never enters the classification math, only current planning.
DEFAULT_ALPHA = np.pi / 0.5


@dataclass(frozen=True)
class ShifterCalibration:
    alpha: float = DEFAULT_ALPHA  # radians per ampere^2
    phi0: float = 0.0

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("calibration alpha must be positive")


@dataclass
class NoiseConfig:
    phase_sigma: float = 0.02
    n_photons: int = 1000
    rng_seed: int = 0
    exact_readout: bool = False

    def __post_init__(self):
        if self.phase_sigma < 0:
            raise ValueError("phase_sigma must be non-negative")
        if self.n_photons < 1:
            raise ValueError("n_photons must be at least 1")


def current_to_phase(current: float, cal: ShifterCalibration) -> float:
    """Quadratic thermo-optic law: phase = (phi0 + alpha * I^2) mod 2*pi."""
    if current < 0:
        raise ValueError("heater current must be non-negative")
    return float(wrap_phase(cal.phi0 + cal.alpha * current * current))


def phase_to_current(target: float, cal: ShifterCalibration) -> float:
    """Smallest non-negative current reaching the target phase (mod 2*pi)."""
    delta = float(wrap_phase(target - cal.phi0))
    return float(np.sqrt(delta / cal.alpha))


def noisy_forward(state, params: MeshParameters, noise: NoiseConfig, rng=None):
    """Forward pass with Gaussian phase-setting error on every shifter,
    followed by shot-noise sampled (or exact) intensity readout."""
    if rng is None:
        rng = np.random.default_rng(noise.rng_seed)
    theta = params.theta + rng.normal(0.0, noise.phase_sigma, len(params.theta))
    phi = params.phi + rng.normal(0.0, noise.phase_sigma, len(params.phi))
    out = forward(state, MeshParameters(theta=theta, phi=phi))
    if noise.exact_readout:
        return intensities_exact(out)
    return intensities_sampled(out, noise.n_photons, rng)


def load_calibration(path, n_shifters: int = N_PHASES):
    """Read per-shifter calibrations from a JSON file of the form
    {"shifters": [{"index": 0, "alpha": ..., "phi0": ...}, ...]}.

    Returns a list indexed by shifter number (phi1, theta1, ..., phi6, theta6).
    """
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    entries = {int(e["index"]): e for e in data.get("shifters", [])}
    cals = []
    for i in range(n_shifters):
        if i not in entries:
            raise ValueError(f"calibration file missing shifter index {i}")
        e = entries[i]
        cals.append(ShifterCalibration(alpha=float(e["alpha"]), phi0=float(e.get("phi0", 0.0))))
    return cals
