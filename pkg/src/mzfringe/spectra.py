"""Incident-beam momentum spectra.

The fringe observables are spectral averages of single-wavenumber
expressions, so a spectrum's job is to take expectations of functions of k.
Three shapes cover the use cases: an ideal plane wave (point spectrum), a
Gaussian wave packet of spatial width delta (wavenumber density
sqrt(2*delta^2/pi) * exp(-2*delta^2*(k-k0)^2), standard deviation
1/(2*delta)), and a tabulated density interpolated linearly between nodes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DensityUndefined
from .numerics import integrate

# Initial integration window half-width for the Gaussian packet, in
# standard deviations; the tail mass beyond it is erfc(8/sqrt(2)) ~ 1.2e-15
# and the window doubles until the tail bound clears the tolerance.
_PACKET_WINDOW_STD = 8.0


class SpectrumKind(enum.Enum):
    PLANE_WAVE = "plane_wave"
    GAUSSIAN_PACKET = "gaussian_packet"
    TABULATED = "tabulated"


@dataclass(frozen=True, eq=False)
class MomentumSpectrum:
    """Distribution of incident wavenumber magnitudes.

    Construct through the factory classmethods.  Instances are immutable;
    tabulated node arrays are stored read-only.
    """

    kind: SpectrumKind
    k: float = 0.0
    k0: float = 0.0
    delta: float = 0.0
    nodes_k: np.ndarray | None = None
    nodes_p: np.ndarray | None = None
    renormalization: float = 1.0

    # -- factories ---------------------------------------------------------

    @classmethod
    def plane_wave(cls, k: float) -> "MomentumSpectrum":
        """Single sharp wavenumber k > 0."""
        k = float(k)
        if not (math.isfinite(k) and k > 0.0):
            raise ValueError("plane-wave wavenumber must be finite and positive")
        return cls(kind=SpectrumKind.PLANE_WAVE, k=k)

    @classmethod
    def gaussian_packet(cls, k0: float, delta: float) -> "MomentumSpectrum":
        """Gaussian packet centered at k0 with spatial width delta.

        The wavenumber standard deviation is 1/(2*delta).  Packets with
        k0*delta below 1 put non-negligible weight at negative wavenumbers;
        they are accepted but flagged in diagnostics.
        """
        k0, delta = float(k0), float(delta)
        if not (math.isfinite(k0) and k0 > 0.0):
            raise ValueError("packet center k0 must be finite and positive")
        if not (math.isfinite(delta) and delta > 0.0):
            raise ValueError("packet width delta must be finite and positive")
        return cls(kind=SpectrumKind.GAUSSIAN_PACKET, k0=k0, delta=delta)

    @classmethod
    def tabulated(cls, nodes) -> "MomentumSpectrum":
        """Piecewise-linear density through (wavenumber, density) nodes.

        Wavenumbers must be nonnegative and strictly increasing, densities
        nonnegative with positive total mass.  The density is renormalized
        to unit trapezoid integral; the applied factor is recorded in
        diagnostics.
        """
        arr = np.asarray(nodes, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 2:
            raise ValueError("nodes must be an (n, 2) array with n >= 2")
        ks, ps = arr[:, 0].copy(), arr[:, 1].copy()
        if not np.all(np.isfinite(ks)) or not np.all(np.isfinite(ps)):
            raise ValueError("nodes must be finite")
        if ks[0] < 0.0:
            raise ValueError("wavenumbers must be nonnegative")
        if not np.all(np.diff(ks) > 0.0):
            raise ValueError("wavenumbers must be strictly increasing")
        if np.any(ps < 0.0):
            raise ValueError("densities must be nonnegative")
        mass = float(np.trapezoid(ps, ks))
        if mass <= 0.0:
            raise ValueError("density must have positive total mass")
        ps /= mass
        ks.flags.writeable = False
        ps.flags.writeable = False
        return cls(kind=SpectrumKind.TABULATED, nodes_k=ks, nodes_p=ps,
                   renormalization=1.0 / mass)

    # -- diagnostics -------------------------------------------------------

    @property
    def diagnostics(self) -> dict:
        info: dict = {"kind": self.kind.value}
        if self.kind is SpectrumKind.GAUSSIAN_PACKET:
            info["k0_delta"] = self.k0 * self.delta
            info["straddles_origin"] = self.k0 * self.delta < 1.0
        elif self.kind is SpectrumKind.TABULATED:
            info["n_nodes"] = int(self.nodes_k.size)
            info["renormalization"] = self.renormalization
        return info

    # -- pointwise density --------------------------------------------------

    def spectral_density(self, k):
        """Wavenumber density at k (scalar or ndarray, shape preserved).

        Raises DensityUndefined for a plane wave, whose spectrum is a point
        mass.
        """
        if self.kind is SpectrumKind.PLANE_WAVE:
            raise DensityUndefined("plane wave has a point spectrum")
        arr = np.asarray(k, dtype=float)
        if self.kind is SpectrumKind.GAUSSIAN_PACKET:
            d = self.delta
            out = math.sqrt(2.0 / math.pi) * d * np.exp(
                -2.0 * (d * (arr - self.k0)) ** 2)
        else:
            out = np.interp(arr, self.nodes_k, self.nodes_p,
                            left=0.0, right=0.0)
        if arr.ndim == 0:
            return float(out)
        return out

    # -- moments -------------------------------------------------------------

    def central_wavenumber(self) -> float:
        """Mean wavenumber; exact for every kind."""
        if self.kind is SpectrumKind.PLANE_WAVE:
            return self.k
        if self.kind is SpectrumKind.GAUSSIAN_PACKET:
            return self.k0
        ka, kb = self.nodes_k[:-1], self.nodes_k[1:]
        pa, pb = self.nodes_p[:-1], self.nodes_p[1:]
        # first moment of a linear density over each segment, exactly
        seg = (kb - ka) / 6.0 * (ka * (2.0 * pa + pb) + kb * (pa + 2.0 * pb))
        return float(np.sum(seg))

    def wavenumber_std(self) -> float:
        """Standard deviation of the wavenumber; exact for every kind."""
        if self.kind is SpectrumKind.PLANE_WAVE:
            return 0.0
        if self.kind is SpectrumKind.GAUSSIAN_PACKET:
            return 0.5 / self.delta
        ka, kb = self.nodes_k[:-1], self.nodes_k[1:]
        pa, pb = self.nodes_p[:-1], self.nodes_p[1:]
        km = 0.5 * (ka + kb)
        pm = 0.5 * (pa + pb)
        # Simpson is exact for k^2 times a linear density (cubic) per segment
        seg = (kb - ka) / 6.0 * (ka * ka * pa + 4.0 * km * km * pm + kb * kb * pb)
        second = float(np.sum(seg))
        mean = self.central_wavenumber()
        return math.sqrt(max(second - mean * mean, 0.0))

    def max_wavenumber(self) -> float:
        """Upper edge of the numerically relevant wavenumber range."""
        if self.kind is SpectrumKind.PLANE_WAVE:
            return self.k
        if self.kind is SpectrumKind.GAUSSIAN_PACKET:
            return self.k0 + _PACKET_WINDOW_STD * self.wavenumber_std()
        return float(self.nodes_k[-1])

    # -- expectation ----------------------------------------------------------

    def expectation(self, f: Callable[[np.ndarray], np.ndarray],
                    tol: float = 1e-9) -> float:
        """E[f(k)] over the spectrum, within absolute tolerance tol.

        f must accept a 1-d ndarray of wavenumbers and return matching
        values.  A plane wave returns f(k) exactly; the Gaussian packet
        integrates over a window of +-8 standard deviations, doubled until
        the analytic tail bound (tail mass times the observed scale of f)
        is below half of tol; a tabulated spectrum integrates each segment
        separately so interpolation kinks never slow the refinement.
        """
        if tol <= 0.0:
            raise ValueError("tol must be positive")
        if self.kind is SpectrumKind.PLANE_WAVE:
            return float(np.asarray(f(np.array([self.k]))).reshape(-1)[0])
        if self.kind is SpectrumKind.GAUSSIAN_PACKET:
            s = self.wavenumber_std()
            d = self.delta
            probe = np.asarray(f(np.linspace(
                self.k0 - _PACKET_WINDOW_STD * s,
                self.k0 + _PACKET_WINDOW_STD * s, 33)))
            scale = max(1.0, float(np.max(np.abs(probe))))
            n_std = _PACKET_WINDOW_STD
            while math.erfc(n_std / math.sqrt(2.0)) * scale > 0.5 * tol \
                    and n_std < 512.0:
                n_std *= 2.0
            amp = math.sqrt(2.0 / math.pi) * d

            def g(x):
                return amp * np.exp(-2.0 * (d * (x - self.k0)) ** 2) * f(x)

            return integrate(g, self.k0 - n_std * s, self.k0 + n_std * s,
                             tol=0.5 * tol).value
        nseg = self.nodes_k.size - 1
        share = tol / nseg
        total = 0.0
        for i in range(nseg):
            ka, kb = float(self.nodes_k[i]), float(self.nodes_k[i + 1])
            pa, pb = float(self.nodes_p[i]), float(self.nodes_p[i + 1])
            slope = (pb - pa) / (kb - ka)

            def g(x, ka=ka, pa=pa, slope=slope):
                return (pa + slope * (x - ka)) * f(x)

            total += integrate(g, ka, kb, tol=share).value
        return total
