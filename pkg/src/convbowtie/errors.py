"""Exceptions shared across the package."""


class ConfigError(Exception):
    """A required resource or setting is missing or unusable."""
