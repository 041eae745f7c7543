class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed the configured size cap."""


class NotStronglyCospectralError(ValueError):
    """An operation that needs a strongly cospectral pair got one that is not."""
