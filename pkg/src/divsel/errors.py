"""Exception types shared across the package."""


class DataError(Exception):
    """Base class for problems with input data files or their contents."""


class ParseError(DataError):
    """A file could not be parsed. The message names the file and line."""


class ValidationError(DataError):
    """Parsed data violates a structural requirement (shapes, label arity, names)."""


class BudgetError(Exception):
    """An exhaustive enumeration would exceed the configured subset budget."""


class GuaranteeError(Exception):
    """An algorithm output violated a bound it is required to satisfy."""
