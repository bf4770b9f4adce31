"""Exception types shared across the package."""


class BecgwError(Exception):
    """Base class for package errors."""


class ConfigError(BecgwError):
    """Malformed configuration input (unknown key, bad unit, bad grid)."""


class NumericError(BecgwError):
    """A numerical routine failed to meet its accuracy contract."""


class RegimeError(BecgwError):
    """Requested parameters fall outside the validity regime of the model."""


class CalibrationError(BecgwError):
    """Rate calibration fit failed its residual bound."""
