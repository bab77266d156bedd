"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class UnsupportedDimensionError(DomainError):
    """The ambient dimension is odd or otherwise not handled."""


class AliasingError(DomainError):
    """A quadrature rule is too coarse for the requested harmonic degree."""


class TruncationError(DomainError):
    """A series truncation degree is below the required minimum."""


class ConvergenceError(RuntimeError):
    """An iterative or adaptive computation missed its tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
