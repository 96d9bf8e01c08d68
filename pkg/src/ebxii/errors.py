"""Exception types raised across the package."""


class EBXIIError(Exception):
    """Base class for all package errors."""


class DomainError(EBXIIError, ValueError):
    """An argument lies outside the support or the parameter space."""


class ConditionViolatedError(DomainError):
    """The monotonicity condition of a g variant fails at a point."""


class DefectiveDistributionError(EBXIIError):
    """The distribution puts positive mass at the lower end of its support."""


class InvalidProbabilityError(EBXIIError, ValueError):
    """A probability argument lies outside the open unit interval."""


class TieMapError(EBXIIError, ValueError):
    """A parameter tie map is malformed."""


class MissingStandardErrorsError(EBXIIError):
    """Standard errors are unavailable (singular information matrix)."""


class DataError(EBXIIError, ValueError):
    """A data file could not be parsed."""


class SingularInformationWarning(UserWarning):
    """The observed information matrix could not be inverted."""


class NonPositiveDataWarning(UserWarning):
    """A transform produced values that are not strictly positive."""
