"""Shift-noise models for the fluctuating arm of the interferometer.

The phase shifter displaces one channel by a tunable offset plus a random
shift drawn from a symmetric law.  Everything downstream needs two things
from that law: pointwise samples (for Monte Carlo) and its characteristic
function

    char(k) = E[cos(k * shift)],

which is real for symmetric laws and multiplies the interference term of the
fringe pattern.  Closed forms exist for every built-in family; a quadrature
route over the density is kept alongside as an independent cross-check.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DensityUndefined, EndpointSingular, TooFewSamples
from .numerics import bessel_j0, integrate

_TWO_PI = 2.0 * math.pi

# Quadrature window for the Gaussian density: the tail mass beyond ten
# standard deviations is ~1.5e-23, far below any tolerance used here.
_GAUSS_WINDOW_STD = 10.0

# Above this many shift values, empirical characteristic evaluations are
# chunked over wavenumbers so the outer product stays within ~64 MB.
_EMPIRICAL_CHUNK = 8_000_000


class ShiftKind(enum.Enum):
    """Families of shift laws understood by this module."""

    DELTA = "delta"
    GAUSSIAN = "gaussian"
    ARCSINE = "arcsine"
    UNIFORM = "uniform"
    EMPIRICAL = "empirical"


@dataclass(frozen=True)
class CharacteristicValue:
    """A characteristic-function value with a bound on its numerical error.

    Closed-form routes report abs_error 0.0; quadrature routes report the
    integrator's estimate.  The value always lies in [-1, 1] up to that
    error.
    """

    value: float
    abs_error: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise ValueError("value must be finite")
        if not self.abs_error >= 0.0:
            raise ValueError("abs_error must be nonnegative")
        if abs(self.value) > 1.0 + self.abs_error + 4.0 * np.finfo(float).eps:
            raise ValueError("characteristic value outside [-1, 1] "
                             "beyond its error bound")


def _require_finite_scale(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0.0:
        raise ValueError(f"{name} must be finite and nonnegative")
    return value


@dataclass(frozen=True, eq=False)
class ShiftDistribution:
    """A symmetric, zero-mean law for the random shift of one channel.

    Construct through the factory classmethods; a zero scale parameter
    degenerates to the deterministic (fluctuation-free) law.  Instances are
    immutable and safe to share across threads.
    """

    kind: ShiftKind
    sigma: float = 0.0
    halfwidth: float = 0.0
    samples: np.ndarray | None = None
    center_offset: float = 0.0

    # -- factories ---------------------------------------------------------

    @classmethod
    def delta(cls) -> "ShiftDistribution":
        """The fluctuation-free law: the shift is identically zero."""
        return cls(kind=ShiftKind.DELTA)

    @classmethod
    def gaussian(cls, sigma: float) -> "ShiftDistribution":
        """Centered normal law with standard deviation sigma."""
        sigma = _require_finite_scale("sigma", sigma)
        if sigma == 0.0:
            return cls.delta()
        return cls(kind=ShiftKind.GAUSSIAN, sigma=sigma)

    @classmethod
    def arcsine(cls, sigma: float) -> "ShiftDistribution":
        """Arcsine law on [-2*sigma, 2*sigma], standard deviation sigma.

        This is the stationary law of a sinusoidally driven shifter sampled
        at a uniform phase; its density diverges at the support endpoints.
        """
        sigma = _require_finite_scale("sigma", sigma)
        if sigma == 0.0:
            return cls.delta()
        return cls(kind=ShiftKind.ARCSINE, sigma=sigma)

    @classmethod
    def uniform(cls, halfwidth: float) -> "ShiftDistribution":
        """Uniform law on [-halfwidth, halfwidth]."""
        halfwidth = _require_finite_scale("halfwidth", halfwidth)
        if halfwidth == 0.0:
            return cls.delta()
        return cls(kind=ShiftKind.UNIFORM, halfwidth=halfwidth)

    @classmethod
    def empirical(cls, samples: Sequence[float]) -> "ShiftDistribution":
        """Law backed by measured shift values.

        The samples are mean-centered at construction (the removed offset is
        recorded) and treated as a symmetric ensemble: the characteristic
        function is the sample mean of cos(k * shift), which is even, and
        draws flip a fair random sign.
        """
        arr = np.asarray(samples, dtype=float).reshape(-1)
        if arr.size < 2:
            raise TooFewSamples(
                f"empirical law needs at least 2 samples, got {arr.size}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must all be finite")
        offset = float(np.mean(arr))
        centered = arr - offset
        centered.flags.writeable = False
        return cls(kind=ShiftKind.EMPIRICAL, samples=centered,
                   center_offset=offset)

    # -- diagnostics -------------------------------------------------------

    @property
    def scale(self) -> float:
        """The family's scale parameter (0 for the deterministic law)."""
        if self.kind is ShiftKind.UNIFORM:
            return self.halfwidth
        if self.kind is ShiftKind.EMPIRICAL:
            return float(np.std(self.samples))
        return self.sigma

    @property
    def diagnostics(self) -> dict:
        info: dict = {"kind": self.kind.value}
        if self.kind is ShiftKind.EMPIRICAL:
            info["n_samples"] = int(self.samples.size)
            info["center_offset"] = self.center_offset
        elif self.kind is not ShiftKind.DELTA:
            info["scale"] = self.scale
        return info

    # -- density -----------------------------------------------------------

    def density(self, delta: float) -> float:
        """Probability density of the shift at a point.

        Raises DensityUndefined for the deterministic and empirical laws
        and EndpointSingular exactly at the arcsine support edges, where
        the density diverges.
        """
        delta = float(delta)
        if self.kind is ShiftKind.DELTA:
            raise DensityUndefined("deterministic shift has no density")
        if self.kind is ShiftKind.EMPIRICAL:
            raise DensityUndefined("empirical sample set has no density")
        if self.kind is ShiftKind.GAUSSIAN:
            z = delta / self.sigma
            return math.exp(-0.5 * z * z) / (self.sigma * math.sqrt(_TWO_PI))
        if self.kind is ShiftKind.ARCSINE:
            edge = 2.0 * self.sigma
            if abs(delta) == edge:
                raise EndpointSingular(
                    f"arcsine density diverges at |delta| = {edge:g}")
            if abs(delta) > edge:
                return 0.0
            return 1.0 / (math.pi * math.sqrt(edge * edge - delta * delta))
        # uniform
        if abs(delta) > self.halfwidth:
            return 0.0
        return 0.5 / self.halfwidth

    # -- sampling ----------------------------------------------------------

    def sample(self, rng: np.random.Generator, size: int | None = None):
        """Draw shifts; returns a float for size=None, else an ndarray.

        Draw order per call is fixed (documented for reproducibility): the
        empirical law consumes indices then signs; the deterministic law
        consumes no randomness at all.
        """
        n = 1 if size is None else int(size)
        if self.kind is ShiftKind.DELTA:
            out = np.zeros(n)
        elif self.kind is ShiftKind.GAUSSIAN:
            out = rng.normal(0.0, self.sigma, n)
        elif self.kind is ShiftKind.ARCSINE:
            out = 2.0 * self.sigma * np.sin(rng.uniform(0.0, _TWO_PI, n))
        elif self.kind is ShiftKind.UNIFORM:
            out = rng.uniform(-self.halfwidth, self.halfwidth, n)
        else:
            idx = rng.integers(0, self.samples.size, n)
            signs = 2.0 * rng.integers(0, 2, n) - 1.0
            out = signs * self.samples[idx]
        if size is None:
            return float(out[0])
        return out

    # -- characteristic function -------------------------------------------

    def characteristic_curve(self, k: np.ndarray) -> np.ndarray:
        """Closed-form char(k) on an array of wavenumbers.

        This is the vectorized kernel behind characteristic(); quadrature
        loops call it directly to avoid per-point wrapper objects.
        """
        k = np.asarray(k, dtype=float)
        if self.kind is ShiftKind.DELTA:
            return np.ones_like(k)
        if self.kind is ShiftKind.GAUSSIAN:
            return np.exp(-0.5 * (k * self.sigma) ** 2)
        if self.kind is ShiftKind.ARCSINE:
            return bessel_j0(2.0 * self.sigma * np.atleast_1d(k)).reshape(k.shape)
        if self.kind is ShiftKind.UNIFORM:
            return np.sinc(k * self.halfwidth / math.pi)
        return self._empirical_mean_cos(k)

    def _empirical_mean_cos(self, k: np.ndarray) -> np.ndarray:
        flat = np.atleast_1d(k).reshape(-1)
        ns = self.samples.size
        block = max(1, _EMPIRICAL_CHUNK // ns)
        out = np.empty(flat.size)
        for start in range(0, flat.size, block):
            sel = flat[start:start + block]
            out[start:start + len(sel)] = np.mean(
                np.cos(sel[:, None] * self.samples[None, :]), axis=1)
        return out.reshape(np.shape(k))

    def characteristic(self, k: float) -> CharacteristicValue:
        """char(k) = E[cos(k * shift)] by the family's closed form.

        Delta: 1.  Gaussian: exp(-(k*sigma)^2 / 2).  Arcsine: J0(2*k*sigma).
        Uniform: sin(k*a)/(k*a).  Empirical: mean of cos(k * samples).
        The function is even in k and equals 1 at k = 0 for every family.
        """
        value = float(self.characteristic_curve(np.float64(k)))
        return CharacteristicValue(value=value, abs_error=0.0)

    def characteristic_numeric(self, k: float,
                               tol: float = 1e-10) -> CharacteristicValue:
        """char(k) by adaptive quadrature over the density.

        Independent of the closed forms (the arcsine route integrates over
        the driving phase, not through the Bessel kernel), so it serves as
        an oracle for them.  Raises DensityUndefined for laws without a
        density route.
        """
        k = float(k)
        if self.kind is ShiftKind.DELTA:
            raise DensityUndefined("deterministic shift has no density")
        if self.kind is ShiftKind.EMPIRICAL:
            raise DensityUndefined("empirical sample set has no density")
        if self.kind is ShiftKind.GAUSSIAN:
            s = self.sigma
            norm = 1.0 / (s * math.sqrt(_TWO_PI))

            def f(x):
                return norm * np.exp(-0.5 * (x / s) ** 2) * np.cos(k * x)

            w = _GAUSS_WINDOW_STD * s
            res = integrate(f, -w, w, tol=tol)
        elif self.kind is ShiftKind.ARCSINE:
            # Parametrize the shift as 2*sigma*sin(t) with t uniform; the
            # endpoint singularity of the density disappears in t.
            amp = 2.0 * self.sigma

            def f(t):
                return np.cos(k * amp * np.sin(t)) / math.pi

            res = integrate(f, -0.5 * math.pi, 0.5 * math.pi, tol=tol)
        else:
            a = self.halfwidth

            def f(x):
                return np.cos(k * x) / (2.0 * a)

            res = integrate(f, -a, a, tol=tol)
        return CharacteristicValue(value=res.value, abs_error=res.abs_error)
