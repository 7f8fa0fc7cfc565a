"""Exception types shared across the package."""


class NumericsError(RuntimeError):
    """A numerical sanity check failed (non-Hermitian input, negativity, ...)."""


class TruncationError(NumericsError):
    """The Fock-space cutoff is too small for the requested state."""


class DegeneratePriorError(NumericsError):
    """The prior probability collapsed to 0 or 1, no discrimination possible."""


class ConfigError(ValueError):
    """Invalid or unknown configuration input."""
