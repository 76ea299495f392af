"""PERSCRIBE exceptions

Concrete errors subclass ValueError so callers catching ValueError keep working.
"""


class PerscribeError(Exception):
    """Base class for all library errors"""


class ValidationError(PerscribeError, ValueError):
    """Input data violates a documented precondition"""


class ConfigurationError(PerscribeError, ValueError):
    """A config file or bank is missing, malformed, or of an unsupported schema"""


class TemplateCoverageError(PerscribeError, ValueError):
    """No syntactic template matches a proposition"""


class RealizationError(PerscribeError, ValueError):
    """A DSyntS tree cannot be linearised"""


class DegenerateDataError(PerscribeError, ValueError):
    """Training data holds a single class"""


class UndefinedMetricError(PerscribeError, ValueError):
    """A metric is undefined for the given statistics"""
