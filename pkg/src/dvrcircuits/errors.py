"""Shared exception types."""


class ConfigError(ValueError):
    """Invalid circuit, basis, grid, or run configuration."""


class IncompatibleRepresentationError(ConfigError):
    """Representation cannot describe the given circuit family."""


class NumericalError(RuntimeError):
    """A numerical routine failed or received an invalid matrix."""
