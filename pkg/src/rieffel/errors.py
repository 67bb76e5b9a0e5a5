"""Shared exception types."""


class GridMismatchError(ValueError):
    """Operands live on incompatible grids or algebra dimensions."""


class CapabilityError(ValueError):
    """A derivative or evaluation capability required by an operation is missing."""


class ResolutionError(ValueError):
    """Requested construction is below the resolving power of the grid."""


class DivergenceError(RuntimeError):
    """A regularized integral failed to Cauchy-converge on the cutoff ladder."""


class MGFFormatError(ValueError):
    """Malformed MGF1 binary grid file."""
