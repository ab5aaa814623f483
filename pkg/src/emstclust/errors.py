"""Exception types raised by the clustering toolkit.

The command line front end maps these onto distinct exit codes, so library
code should raise the most specific type that applies.
"""


class InputError(ValueError):
    """A dataset, file, or algorithm input is invalid."""


class DegenerateInputError(InputError):
    """An input is structurally valid but too small for the operation."""


class ConfigError(ValueError):
    """A run parameter is out of range or inconsistent."""
