"""Exception hierarchy shared by all modules."""


class OpDistError(Exception):
    """Base class for every error raised by :mod:`opdist`."""


class ShapeError(OpDistError, ValueError):
    """Raised for non-square input or incompatible dimensions."""


class SymmetryError(OpDistError, ValueError):
    """Raised when an operator expected to be Hermitian is not."""


class NumericError(OpDistError, ArithmeticError):
    """Raised when a decomposition fails its residual contract.

    The offending residual is kept in ``residual``.
    """

    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


class CmfError(OpDistError, ValueError):
    """Base class for invalid crude multiplicity function data."""


class IsolationError(CmfError):
    """A discrete point is not isolated in the support."""


class RepresentationError(CmfError):
    """Essential intervals overlap, are unsorted or malformed."""


class DomainError(CmfError):
    """A multiplicity or parameter is outside its allowed range."""


class CapacityError(OpDistError, ValueError):
    """A matrix budget is too small for the requested realization."""


class ContractionError(OpDistError, ValueError):
    """An identification operator has norm larger than one."""


class ProjectionError(OpDistError, ValueError):
    """An operator expected to be an orthogonal projection is not."""


class ConsistencyError(OpDistError, AssertionError):
    """An algebraic identity that must hold exactly was violated.

    This signals a numerics bug rather than bad input.
    """
