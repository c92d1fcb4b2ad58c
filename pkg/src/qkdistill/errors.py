"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A parameter is outside the domain an operation is defined on."""


class SizeLimitError(ParameterError):
    """A requested computation exceeds the configured workload bound."""
