"""Exception types shared across the package.

A common base class lets the CLI map every validation problem to exit
code 1 without enumerating modules.
"""


class PstimeError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(PstimeError, ValueError):
    """A physical parameter or function argument is out of domain."""


class UnitError(PstimeError, ValueError):
    """Requested unit conversion is dimensionally unsupported."""


class ConfigError(PstimeError, ValueError):
    """A run configuration value or config file entry is invalid."""


class FitError(PstimeError, RuntimeError):
    """A model fit could not be carried out (degenerate data, no root)."""


class OracleError(PstimeError, RuntimeError):
    """A numerical verification integral failed to converge."""
