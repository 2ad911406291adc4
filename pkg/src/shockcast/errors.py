"""Shared exception hierarchy.

Two broad families matter to callers (and to the CLI's exit codes):
malformed documents (configs, model files) and unusable data (sensor
streams or datasets that cannot support the requested computation).
"""


class ShockcastError(Exception):
    """Base class for all package-specific errors."""


class SchemaError(ShockcastError):
    """A config or model document is malformed (unknown/missing/bad field)."""


class ConfigError(SchemaError):
    """A configuration value is out of its valid range."""


class DataError(ShockcastError):
    """Input data cannot support the requested computation."""
