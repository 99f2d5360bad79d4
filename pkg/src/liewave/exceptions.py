"""Exception types shared across the package."""


class LiewaveError(Exception):
    """Base class for errors raised by liewave."""


class ConfigurationError(LiewaveError, ValueError):
    """Run configuration could not be parsed or failed validation."""


class NumericalAbort(LiewaveError, RuntimeError):
    """A computation produced non-finite values or exceeded the amplitude ceiling.

    Raised by the semilinear solver when iterates blow up, which usually means the
    time horizon is too large for the data size.
    """
