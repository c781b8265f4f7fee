"""Exception hierarchy for the fringe/visibility toolkit.

Every error raised by this package derives from FringeError, so callers can
catch one type at the boundary.  Subtypes are grouped by the kind of failure:
model definition, numerics, sampling, and configuration/I-O.
"""


class FringeError(Exception):
    """Base class for all errors raised by this package."""


class DensityUndefined(FringeError):
    """A pointwise density was requested where none exists.

    Raised for distributions without a density (a deterministic shift, an
    empirical sample set) and for spectra without one (a plane wave).
    """


class EndpointSingular(FringeError):
    """The density diverges at the requested point (arcsine support edge)."""


class QuadratureNoConvergence(FringeError):
    """Adaptive quadrature exhausted its evaluation budget above tolerance."""


class InvalidParticleCount(FringeError):
    """Monte Carlo run requested with too few particles to be meaningful."""


class TooFewSamples(FringeError):
    """An empirical shift distribution needs at least two samples."""


class ConfigInvalid(FringeError):
    """A run configuration failed validation; message names the field path."""


class ParseFailure(FringeError):
    """A data file could not be parsed; message names file and line."""


class IoFailure(FringeError):
    """Reading an input or writing an output failed at the OS level."""
