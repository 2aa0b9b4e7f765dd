"""Exception types raised across the package."""


class DimensionError(ValueError):
    """Matrix is empty or its shape does not fit the operation."""


class DegenerateInputError(ValueError):
    """Input is numerically zero where a non-zero matrix is required."""


class ConfigurationError(ValueError):
    """Solver or selector parameters are inconsistent with the data."""


class SelectionIndexError(IndexError):
    """Selected indices are out of range or repeated."""


class CombinatorialGuardError(ValueError):
    """Exhaustive search would exceed the configured subset budget."""
