"""Exception types raised across the package."""


class SparseCommError(Exception):
    """Base class for all package-specific errors."""


class DegenerateMatrixError(SparseCommError, ValueError):
    """A sensing matrix violates a structural precondition (e.g. zero column)."""


class SingularSystemError(SparseCommError, ValueError):
    """A linear system required to be invertible is rank deficient."""


class UndefinedMetricError(SparseCommError, ValueError):
    """A metric is undefined for the given inputs (e.g. NMSE with zero truth)."""


class EnumerationBudgetError(SparseCommError, RuntimeError):
    """A combinatorial search would exceed its subset-enumeration budget."""


class NoSparseSolutionError(SparseCommError, RuntimeError):
    """Exhaustive search found no support meeting the residual tolerance."""


class ConfigError(SparseCommError, ValueError):
    """An experiment or CLI configuration is invalid."""
