"""Two-channel interference with a stochastically fluctuating phase shifter.

The package computes fringe patterns, local and generalized visibility, and
the decoherence parameter epsilon = 1 - V for arbitrary symmetric shift-noise
laws and beam momentum spectra, with closed forms, adaptive quadrature, and
an event-level Monte Carlo as mutually checking routes.
"""

__version__ = "0.1.0"

from .config import SimulationConfig, ingest_samples, load_config, parse_config
from .errors import (ConfigInvalid, DensityUndefined, EndpointSingular,
                     FringeError, InvalidParticleCount, IoFailure,
                     ParseFailure, QuadratureNoConvergence, TooFewSamples)
from .interferometer import (DecoherenceReport, InterferencePattern,
                             SearchSettings, channel_intensities,
                             default_search_window, epsilon_arcsine_plane,
                             epsilon_gaussian_packet, epsilon_gaussian_plane,
                             generalized_visibility, interference_term,
                             local_visibility, momentum_pattern,
                             pattern_sweep, split_packet_intensity,
                             visibility_bound)
from .montecarlo import McEstimate, McPattern, estimate_pattern, simulate
from .numerics import (MaxResult, QuadratureResult, bessel_j0,
                       bessel_j0_oracle, integrate, maximize_abs)
from .shift_noise import CharacteristicValue, ShiftDistribution, ShiftKind
from .spectra import MomentumSpectrum, SpectrumKind

__all__ = [
    "CharacteristicValue", "ConfigInvalid", "DecoherenceReport",
    "DensityUndefined", "EndpointSingular", "FringeError",
    "InterferencePattern", "InvalidParticleCount", "IoFailure", "MaxResult",
    "McEstimate", "McPattern", "MomentumSpectrum", "ParseFailure",
    "QuadratureNoConvergence", "QuadratureResult", "SearchSettings",
    "ShiftDistribution", "ShiftKind", "SimulationConfig", "SpectrumKind",
    "TooFewSamples", "bessel_j0", "bessel_j0_oracle", "channel_intensities",
    "default_search_window", "epsilon_arcsine_plane",
    "epsilon_gaussian_packet", "epsilon_gaussian_plane", "estimate_pattern",
    "generalized_visibility", "ingest_samples", "integrate",
    "interference_term", "load_config", "local_visibility", "maximize_abs",
    "momentum_pattern", "parse_config", "pattern_sweep", "simulate",
    "split_packet_intensity", "visibility_bound",
]
