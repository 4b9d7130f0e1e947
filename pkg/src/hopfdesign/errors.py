"""Exception types shared across the package."""


class DesignError(Exception):
    """Base class for all package errors."""


class ParseError(DesignError):
    """A design file could not be parsed."""


class OffSphere(DesignError, ValueError):
    """A point violates the unit-norm tolerance of its sphere."""


class NoConvergence(DesignError):
    """The interval-design solver gave up."""


class QuadratureFailure(DesignError):
    """Adaptive quadrature could not reach the requested accuracy."""
