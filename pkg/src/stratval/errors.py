"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: ValidationFailure -> 1,
SchemaError -> 2, BoundError -> 3.
"""


class StratvalError(Exception):
    """Base class for all structured errors raised by this package."""


class SchemaError(StratvalError):
    """Malformed input data: bad JSON shape, unparsable expression, unknown id."""


class ValidationFailure(StratvalError):
    """A mathematical precondition failed (poset axioms, chart bonds, ...)."""


class ChartError(StratvalError):
    """A chart cannot evaluate the requested function (zero image, degenerate
    restriction, inconsistent divisor data)."""


class BoundError(StratvalError):
    """A configured enumeration bound would be exceeded; refused rather than
    attempted."""
