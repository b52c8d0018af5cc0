"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Raised when model parameters, options or configuration are invalid."""


class DomainError(ValueError):
    """Raised when a quantity is evaluated outside its mathematical domain,
    e.g. a Volterra term at a nonpositive coordinate."""


class IntegrationError(RuntimeError):
    """Raised when a numerical integration cannot proceed (step underflow,
    step budget exhausted, or a non-finite state)."""
