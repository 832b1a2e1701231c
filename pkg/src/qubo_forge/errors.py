"""Exception hierarchy shared by every module."""


class QuboError(Exception):
    """Base class for all errors raised by qubo_forge."""


class DimensionError(QuboError, ValueError):
    """Assignment or state length does not match the model."""


class BoundsError(QuboError, IndexError):
    """Variable index outside ``[0, n)``."""


class ParseError(QuboError, ValueError):
    """Malformed input file."""


class InstanceError(QuboError, ValueError):
    """Problem data that cannot be turned into a model."""


class ConfigError(QuboError, ValueError):
    """Invalid solver or generator parameter."""


class CapacityError(QuboError):
    """Model too large for the requested solver."""


class EmptyError(QuboError, ValueError):
    """Operation needs a non-empty sample set."""
