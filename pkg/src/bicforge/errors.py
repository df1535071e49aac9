"""Exception hierarchy for the bicforge package.

Every error raised deliberately by this package derives from
:class:`BicForgeError`, so callers (including the command line tool)
can distinguish diagnosed numerical or contract failures from bugs.
"""


class BicForgeError(Exception):
    """Base class for all package errors."""


class ConfigurationError(BicForgeError):
    """Invalid construction parameters (grid sizes, map scales, cutoffs)."""


class ShapeError(BicForgeError):
    """Sampled arrays do not conform to the grid they claim to live on."""


class ContractError(BicForgeError):
    """A documented precondition was violated by otherwise well-formed input."""


class SolverError(BicForgeError):
    """A linear system or root search failed; carries the offending momentum."""


class ConsistencyError(BicForgeError):
    """An internal cross-check failed, signalling corrupted upstream data."""


class ExtractionError(BicForgeError):
    """The embedded-state remainder is not numerically low rank."""


class NormalizabilityError(BicForgeError):
    """A form factor violates the normalizability condition g(K) = 0."""


class NotABicError(BicForgeError):
    """The coupling is detuned from the critical value; no embedded state."""


class CensusAmbiguousError(BicForgeError):
    """Phase difference too far from an integer multiple of pi to count."""


class CensusIndeterminateError(BicForgeError):
    """A state sits at zero energy, where the phase-difference count is undefined."""
