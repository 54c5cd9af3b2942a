"""Exception types shared across the package."""


class EulerlabError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInputError(EulerlabError, ValueError):
    """Input point set cannot define a polytope (too few distinct points)."""


class DimensionMismatchError(EulerlabError, ValueError):
    """Vectors of inconsistent lengths were mixed in one operation."""


class OracleBoundError(EulerlabError, ValueError):
    """Instance exceeds the brute-force oracle's vertex bound."""


class SamplingBudgetError(EulerlabError, RuntimeError):
    """Rejection sampling exhausted its retry budget."""


class GeneralPositionError(EulerlabError, RuntimeError):
    """A certified general-position assumption failed at runtime.

    This signals a certification bug: with a valid certificate, the
    conditions checked by the raising code are theorems.
    """
