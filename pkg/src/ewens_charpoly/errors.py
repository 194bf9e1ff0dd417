"""Exception types raised by the package."""


class DomainError(ValueError):
    """Argument lies outside the region where a function is defined."""


class PrecondError(ValueError):
    """A formal-series operation was called on an invalid operand."""


class SizeError(ValueError):
    """Problem size exceeds an enumeration guard."""


class ConfigError(ValueError):
    """Sampler configuration cannot be satisfied."""
