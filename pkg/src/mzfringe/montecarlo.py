"""Event-level Monte Carlo cross-check of the analytic fringe observables.

Each particle draws a wavenumber from the spectrum and a shift from the
noise law, then lands in the ordinary channel with the exact per-event
probability cos^2(k * (shift + delta0) / 2).  Sampling that Bernoulli
variable and counting gives an unbiased estimate of the channel intensity
with quantifiable error, sharing no quadrature code with the analytic path.

Reproducibility contract: streams come from the Philox counter-based
generator, keyed by (seed, point_index, batch_index) through numpy's
SeedSequence spawn keys.  Batches have fixed size and integer counts are
summed associatively, so estimates are bit-identical across runs and across
any parallel execution layout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidParticleCount
from .interferometer import InterferencePattern
from .shift_noise import ShiftDistribution
from .spectra import MomentumSpectrum, SpectrumKind

GENERATOR_NAME = "philox"

_BATCH = 1 << 16
_MIN_PARTICLES = 1000


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo estimate of the ordinary-channel intensity."""

    n_ordinary_hat: float
    std_error: float
    particles: int
    seed: int

    def __post_init__(self) -> None:
        p = self.n_ordinary_hat
        if not 0.0 <= p <= 1.0:
            raise ValueError("n_ordinary_hat must lie in [0, 1]")
        expected = math.sqrt(p * (1.0 - p) / self.particles)
        if abs(self.std_error - expected) > 1e-15:
            raise ValueError("std_error must equal sqrt(p*(1-p)/n)")


@dataclass(frozen=True, eq=False)
class McPattern:
    """Estimated pattern over an offset grid, with per-point errors."""

    pattern: InterferencePattern
    std_errors: np.ndarray
    particles_per_point: int
    seed: int
    generator: str = GENERATOR_NAME


def _stream(seed: int, point_index: int, batch_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed,
                                spawn_key=(point_index, batch_index))
    return np.random.Generator(np.random.Philox(ss))


def _draw_wavenumbers(spectrum: MomentumSpectrum, rng: np.random.Generator,
                      n: int) -> np.ndarray:
    """Draw n wavenumbers; the plane-wave branch consumes no randomness."""
    if spectrum.kind is SpectrumKind.PLANE_WAVE:
        return np.full(n, spectrum.k)
    if spectrum.kind is SpectrumKind.GAUSSIAN_PACKET:
        return rng.normal(spectrum.k0, spectrum.wavenumber_std(), n)
    return _tabulated_inverse_cdf(spectrum, rng.random(n))


def _tabulated_inverse_cdf(spectrum: MomentumSpectrum,
                           u: np.ndarray) -> np.ndarray:
    """Invert the piecewise-linear density's CDF at uniform variates u."""
    ks, ps = spectrum.nodes_k, spectrum.nodes_p
    widths = np.diff(ks)
    masses = 0.5 * (ps[:-1] + ps[1:]) * widths
    cum = np.concatenate(([0.0], np.cumsum(masses)))
    cum /= cum[-1]
    idx = np.clip(np.searchsorted(cum, u, side="right") - 1, 0, len(masses) - 1)
    r = u - cum[idx]
    p0 = ps[idx]
    slope = (ps[idx + 1] - p0) / widths[idx]
    # solve p0*t + slope*t^2/2 = r on the segment; fall back to the linear
    # root where the density is flat
    with np.errstate(divide="ignore", invalid="ignore"):
        disc = np.sqrt(np.maximum(p0 * p0 + 2.0 * slope * r, 0.0))
        t_quad = (disc - p0) / slope
        t_lin = r / p0
    t = np.where(slope == 0.0, t_lin, t_quad)
    t = np.clip(np.nan_to_num(t, nan=0.0), 0.0, widths[idx])
    return ks[idx] + t


def simulate(spectrum: MomentumSpectrum, dist: ShiftDistribution,
             delta0: float, particles: int, seed: int,
             point_index: int = 0) -> McEstimate:
    """Estimate the ordinary-channel intensity at one offset.

    Per particle, in fixed draw order: wavenumber, shift, acceptance
    uniform.  Particles are processed in fixed-size batches with one
    independent stream each, so the count is independent of how batches
    would be scheduled in parallel.
    """
    particles = int(particles)
    if particles < _MIN_PARTICLES:
        raise InvalidParticleCount(
            f"need at least {_MIN_PARTICLES} particles, got {particles}")
    d0 = float(delta0)
    hits = 0
    for batch_index, start in enumerate(range(0, particles, _BATCH)):
        n = min(_BATCH, particles - start)
        rng = _stream(seed, point_index, batch_index)
        k = _draw_wavenumbers(spectrum, rng, n)
        shift = dist.sample(rng, size=n)
        p = np.cos(0.5 * k * (shift + d0)) ** 2
        u = rng.random(n)
        hits += int(np.count_nonzero(u < p))
    p_hat = hits / particles
    return McEstimate(
        n_ordinary_hat=p_hat,
        std_error=math.sqrt(p_hat * (1.0 - p_hat) / particles),
        particles=particles, seed=int(seed))


def estimate_pattern(spectrum: MomentumSpectrum, dist: ShiftDistribution,
                     delta0_grid: Sequence[float], particles_per_point: int,
                     seed: int) -> McPattern:
    """Estimate the pattern over a grid, one derived stream per point."""
    grid = np.asarray(delta0_grid, dtype=float)
    if grid.size == 0:
        raise ValueError("delta0 grid must be nonempty")
    estimates = [simulate(spectrum, dist, d0, particles_per_point, seed,
                          point_index=i) for i, d0 in enumerate(grid)]
    no = np.array([e.n_ordinary_hat for e in estimates])
    se = np.array([e.std_error for e in estimates])
    se.flags.writeable = False
    return McPattern(
        pattern=InterferencePattern(grid, no, 1.0 - no),
        std_errors=se, particles_per_point=int(particles_per_point),
        seed=int(seed))
