class CavsimError(Exception):
    """Base class for package errors."""


class InvariantViolation(CavsimError, ValueError):
    """A numerical result broke a physical invariant (trace, positivity, ...)."""


class ConfigError(CavsimError, ValueError):
    """Invalid run configuration."""


class TruncationWarning(UserWarning):
    """A Fock-space truncation discards more probability than the threshold."""


class ZeroProbabilityError(CavsimError, ValueError):
    """Post-selection on an outcome that cannot occur; the conditional state is undefined."""
