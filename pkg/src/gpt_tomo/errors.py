"""Exception types raised by the package."""


class GptError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(GptError, ValueError):
    """Vectors or maps of incompatible dimension were combined."""


class RankError(GptError, ValueError):
    """A set of vectors expected to be independent or spanning is not."""


class DecompositionError(GptError):
    """Two subspaces that should be complementary are not."""


class ContractError(GptError, ValueError):
    """An input violates a documented precondition."""


class SteeringClosureError(GptError):
    """A conditional state or effect cannot be reconstructed locally."""


class UnsupportedTheoryError(GptError):
    """No decision procedure is registered for the requested theory."""


class MissingCertificateError(UnsupportedTheoryError):
    """A check needs a separable decomposition that the input does not admit."""
