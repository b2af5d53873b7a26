"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A configuration value is outside its legal range."""


class CapacityError(ValueError):
    """A requested problem size exceeds a hard cap (enumeration or memory)."""


class GenerationError(RuntimeError):
    """Random instance generation failed to produce a valid object."""


class NumericError(RuntimeError):
    """A numeric quantity became non-finite during optimization."""
