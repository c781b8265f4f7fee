"""Fringe observables for a two-channel interferometer with shift noise.

One channel of the interferometer is displaced by a controlled offset
delta0 plus a random shift drawn per event from a symmetric law.  Averaging
over both the shift law and the beam's momentum spectrum gives the channel
intensities

    N_ord(delta0) = (1 + E[char(k) * cos(k * delta0)]) / 2,
    N_ext(delta0) = (1 - E[char(k) * cos(k * delta0)]) / 2,

where char is the shift law's characteristic function and the expectation
runs over the spectrum.  The fringe contrast survives the noise only as far
as char stays near 1; this module computes the patterns, the local and
generalized visibility, the decoherence parameter epsilon = 1 - V, and the
closed forms available for Gaussian and arcsine noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .numerics import bessel_j0, integrate, maximize_abs
from .shift_noise import ShiftDistribution, ShiftKind
from .spectra import MomentumSpectrum, SpectrumKind

_TWO_PI = 2.0 * math.pi

# Slack allowed on [0, 1] range checks of quadrature-derived intensities;
# the defining sum identity is still enforced at 1e-12.
_RANGE_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class InterferencePattern:
    """Channel intensities over an ascending grid of offsets."""

    delta0_grid: np.ndarray
    n_ordinary: np.ndarray
    n_extraordinary: np.ndarray

    def __post_init__(self) -> None:
        grid = np.asarray(self.delta0_grid, dtype=float)
        no = np.asarray(self.n_ordinary, dtype=float)
        ne = np.asarray(self.n_extraordinary, dtype=float)
        if not grid.size or grid.shape != no.shape or grid.shape != ne.shape:
            raise ValueError("grid and intensity arrays must match and be nonempty")
        if np.any(np.diff(grid) < 0.0):
            raise ValueError("delta0_grid must be ascending")
        if np.max(np.abs(no + ne - 1.0)) > 1e-12:
            raise ValueError("channel intensities must sum to 1 within 1e-12")
        lo, hi = -_RANGE_SLACK, 1.0 + _RANGE_SLACK
        if np.any(no < lo) or np.any(no > hi) or np.any(ne < lo) or np.any(ne > hi):
            raise ValueError("channel intensities must lie in [0, 1]")
        for name, arr in (("delta0_grid", grid), ("n_ordinary", no),
                          ("n_extraordinary", ne)):
            arr = arr.copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class DecoherenceReport:
    """Generalized visibility and decoherence parameter with diagnostics.

    epsilon is exactly 1 - generalized_visibility; argmax_delta0 is the
    offset where the fringe term peaks, quadrature_error the tolerance the
    expectation was computed to, and search_bracket the grid bracket the
    refinement ran in.
    """

    generalized_visibility: float
    epsilon: float
    argmax_delta0: float
    quadrature_error: float
    search_bracket: tuple[float, float]

    def __post_init__(self) -> None:
        v = self.generalized_visibility
        if not 0.0 <= v <= 1.0:
            raise ValueError("generalized_visibility must lie in [0, 1]")
        if self.epsilon != 1.0 - v:
            raise ValueError("epsilon must equal 1 - generalized_visibility")
        lo, hi = self.search_bracket
        if not lo <= self.argmax_delta0 <= hi:
            raise ValueError("argmax_delta0 must lie inside search_bracket")


@dataclass(frozen=True)
class SearchSettings:
    """Controls for the generalized-visibility search.

    window of None means the spectrum-derived default; grid_n is a floor
    (the grid is refined further whenever the fringe period demands it);
    quad_tol bounds each expectation, search_tol the final bracket width.
    """

    window: tuple[float, float] | None = None
    grid_n: int = 1024
    quad_tol: float = 1e-9
    search_tol: float = 1e-10

    def __post_init__(self) -> None:
        if self.window is not None:
            lo, hi = self.window
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise ValueError("window must be a finite (lo, hi) with lo <= hi")
        if self.grid_n < 64:
            raise ValueError("grid_n must be at least 64")
        if self.quad_tol <= 0.0 or self.search_tol <= 0.0:
            raise ValueError("tolerances must be positive")


def interference_term(spectrum: MomentumSpectrum, dist: ShiftDistribution,
                      delta0: float, tol: float = 1e-9) -> float:
    """E[char(k) * cos(k * delta0)] over the spectrum.

    The shift average is folded into the closed-form characteristic, so a
    single quadrature pass over k suffices; for a plane wave the value is
    exact.
    """
    d0 = float(delta0)

    def f(k):
        return dist.characteristic_curve(k) * np.cos(k * d0)

    return spectrum.expectation(f, tol=tol)


def channel_intensities(spectrum: MomentumSpectrum, dist: ShiftDistribution,
                        delta0: float, tol: float = 1e-9) -> tuple[float, float]:
    """Ordinary and extraordinary channel intensities at one offset.

    The pair sums to 1 by construction; each lies in [0, 1] up to tol.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    e = interference_term(spectrum, dist, delta0, tol=tol)
    return 0.5 * (1.0 + e), 0.5 * (1.0 - e)


def pattern_sweep(spectrum: MomentumSpectrum, dist: ShiftDistribution,
                  delta0_grid: Sequence[float],
                  tol: float = 1e-9) -> InterferencePattern:
    """Channel intensities over an ascending offset grid."""
    grid = np.asarray(delta0_grid, dtype=float)
    pairs = [channel_intensities(spectrum, dist, d0, tol=tol) for d0 in grid]
    no = np.array([p[0] for p in pairs])
    ne = np.array([p[1] for p in pairs])
    return InterferencePattern(grid, no, ne)


def momentum_pattern(spectrum: MomentumSpectrum, dist: ShiftDistribution,
                     delta0: float, k: float) -> float:
    """Ordinary-channel momentum density at wavenumber k.

    P_ord(k) = P_in(k) * (1 + char(k) * cos(k * delta0)) / 2; integrating
    it over k recovers the ordinary channel intensity.  Raises
    DensityUndefined for a plane wave.
    """
    p_in = spectrum.spectral_density(float(k))
    omega = dist.characteristic(float(k)).value
    return 0.5 * p_in * (1.0 + omega * math.cos(float(k) * float(delta0)))


def local_visibility(dist: ShiftDistribution, k: float) -> float:
    """Fringe visibility at a single wavenumber: |char(k)|, in [0, 1]."""
    return abs(dist.characteristic(float(k)).value)


def default_search_window(spectrum: MomentumSpectrum) -> tuple[float, float]:
    """Default offset window [0, W] for the visibility search.

    W covers six of the larger of one fringe period (2*pi over the central
    wavenumber) and the packet coherence length (4*delta, with an effective
    delta of 1/(2*std) for tabulated spectra).  The fringe term is even in
    the offset, so only the nonnegative half-line is searched; beyond a few
    coherence lengths the envelope has decayed and nothing can beat the
    near-origin values.
    """
    k_char = spectrum.central_wavenumber()
    period = _TWO_PI / k_char
    if spectrum.kind is SpectrumKind.GAUSSIAN_PACKET:
        coherence = 4.0 * spectrum.delta
    elif spectrum.kind is SpectrumKind.TABULATED:
        std = spectrum.wavenumber_std()
        coherence = 2.0 / std if std > 0.0 else 0.0
    else:
        coherence = 0.0
    return (0.0, 6.0 * max(period, coherence))


def generalized_visibility(spectrum: MomentumSpectrum,
                           dist: ShiftDistribution,
                           settings: SearchSettings | None = None
                           ) -> DecoherenceReport:
    """Maximal fringe contrast over all offsets, and epsilon = 1 - V.

    V = max over delta0 of |E[char(k) * cos(k * delta0)]|.  For a plane
    wave this reduces exactly to the local visibility (the cosine reaches 1
    at delta0 = 0, where the maximum always sits); otherwise the offset
    window is scanned on a grid fine enough to resolve the fringe period
    (pitch below pi/(4 * k_max), raising grid_n when needed) and refined by
    golden section.  The maximizer is not assumed to sit at delta0 = 0: for
    sign-changing characteristics it can land on a side fringe.
    """
    if settings is None:
        settings = SearchSettings()
    if spectrum.kind is SpectrumKind.PLANE_WAVE:
        v = min(local_visibility(dist, spectrum.k), 1.0)
        return DecoherenceReport(
            generalized_visibility=v, epsilon=1.0 - v, argmax_delta0=0.0,
            quadrature_error=0.0, search_bracket=(0.0, 0.0))

    lo, hi = (settings.window if settings.window is not None
              else default_search_window(spectrum))
    needed = int(math.ceil((hi - lo) * 4.0 * spectrum.max_wavenumber() / math.pi)) + 1
    grid_n = max(settings.grid_n, needed)

    def objective(delta0: float) -> float:
        return interference_term(spectrum, dist, delta0, tol=settings.quad_tol)

    res = maximize_abs(objective, lo, hi, grid_n=grid_n, tol=settings.search_tol)
    v = min(max(res.max_abs, 0.0), 1.0)
    return DecoherenceReport(
        generalized_visibility=v, epsilon=1.0 - v, argmax_delta0=res.argmax,
        quadrature_error=settings.quad_tol, search_bracket=res.bracket)


def visibility_bound(spectrum: MomentumSpectrum, dist: ShiftDistribution,
                     tol: float = 1e-9) -> float:
    """Spectral average of |char(k)|, an upper bound on the visibility."""

    def f(k):
        return np.abs(dist.characteristic_curve(k))

    return spectrum.expectation(f, tol=tol)


# -- closed forms -----------------------------------------------------------


def epsilon_gaussian_plane(k: float, sigma: float) -> float:
    """Decoherence for Gaussian noise and a plane wave: 1 - exp(-(k*sigma)^2/2).

    Monotone increasing in both arguments: faster beams are strictly more
    fragile against the same shift noise.
    """
    if sigma < 0.0:
        raise ValueError("sigma must be nonnegative")
    return -math.expm1(-0.5 * (float(k) * sigma) ** 2)


def epsilon_gaussian_packet(k0: float, delta: float, sigma: float) -> float:
    """Decoherence for Gaussian noise and a Gaussian packet.

    With r = delta^2 / (delta^2 + sigma^2/4),

        epsilon = 1 - sqrt(r) * exp(-r * sigma^2 * k0^2 / 2).

    Monotone increasing in sigma at fixed delta; the delta -> infinity
    limit recovers the plane-wave form.
    """
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    if sigma < 0.0:
        raise ValueError("sigma must be nonnegative")
    r = delta * delta / (delta * delta + 0.25 * sigma * sigma)
    return 1.0 - math.sqrt(r) * math.exp(-0.5 * r * (sigma * float(k0)) ** 2)


def epsilon_arcsine_plane(k: float, sigma: float) -> float:
    """Decoherence for arcsine noise and a plane wave: 1 - |J0(2*k*sigma)|.

    Not monotone in sigma: past the first Bessel zero the visibility
    partially revives, so more noise can mean more contrast.
    """
    if sigma < 0.0:
        raise ValueError("sigma must be nonnegative")
    return 1.0 - abs(bessel_j0(2.0 * float(k) * sigma))


# -- split-packet route ------------------------------------------------------


def _shift_average_cos_sq(dist: ShiftDistribution, k: float, delta0: float,
                          tol: float) -> float:
    """E over the shift law of cos^2(k * (shift + delta0) / 2) at one k."""
    if dist.kind is ShiftKind.GAUSSIAN:
        s = dist.sigma
        norm = 1.0 / (s * math.sqrt(_TWO_PI))

        def f(u):
            return norm * np.exp(-0.5 * (u / s) ** 2) \
                * np.cos(0.5 * k * (u + delta0)) ** 2

        return integrate(f, -10.0 * s, 10.0 * s, tol=tol).value
    if dist.kind is ShiftKind.ARCSINE:
        amp = 2.0 * dist.sigma

        def f(t):
            return np.cos(0.5 * k * (amp * np.sin(t) + delta0)) ** 2 / math.pi

        return integrate(f, -0.5 * math.pi, 0.5 * math.pi, tol=tol).value
    # uniform
    a = dist.halfwidth

    def f(u):
        return np.cos(0.5 * k * (u + delta0)) ** 2 / (2.0 * a)

    return integrate(f, -a, a, tol=tol).value


def split_packet_intensity(spectrum: MomentumSpectrum,
                           dist: ShiftDistribution,
                           delta0: float, tol: float = 1e-9) -> float:
    """Ordinary-channel intensity through the split-and-recombine route.

    Projecting the recombined state back onto the input gives a per-event
    transmission cos^2(k * (shift + delta0) / 2).  Averaging that directly
    over the shift law (inner quadrature, or the sample mean for empirical
    laws) and then over the spectrum must reproduce channel_intensities'
    ordinary output within 2 * tol; the two routes share no algebra beyond
    the meaning of the inputs, so their agreement checks the half-angle
    reduction of the interference term.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    d0 = float(delta0)

    if dist.kind is ShiftKind.DELTA:

        def avg(k):
            return np.cos(0.5 * np.asarray(k, dtype=float) * d0) ** 2

        return spectrum.expectation(avg, tol=tol)

    if dist.kind is ShiftKind.EMPIRICAL:
        samples = dist.samples

        def avg(k):
            karr = np.atleast_1d(np.asarray(k, dtype=float))
            out = np.empty(karr.size)
            block = max(1, 8_000_000 // samples.size)
            for start in range(0, karr.size, block):
                sel = karr[start:start + block, None]
                # the empirical ensemble is symmetric: average both signs
                plus = np.cos(0.5 * sel * (samples[None, :] + d0)) ** 2
                minus = np.cos(0.5 * sel * (d0 - samples[None, :])) ** 2
                out[start:start + sel.size] = 0.5 * (
                    np.mean(plus, axis=1) + np.mean(minus, axis=1))
            return out

        return spectrum.expectation(avg, tol=tol)

    inner_tol = 0.5 * tol

    def avg(k):
        karr = np.atleast_1d(np.asarray(k, dtype=float))
        return np.array([_shift_average_cos_sq(dist, float(kk), d0, inner_tol)
                         for kk in karr])

    return spectrum.expectation(avg, tol=0.5 * tol)
