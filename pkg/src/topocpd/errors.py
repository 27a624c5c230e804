"""Exception types shared across the package."""


class TopoCpdError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(TopoCpdError, ValueError):
    """Input data or parameters violate a documented precondition."""


class UnsupportedError(TopoCpdError):
    """The requested operation is not defined for the given input."""


class FittingError(TopoCpdError):
    """A model fit failed (degenerate data, singular system)."""


class InvalidSpecError(TopoCpdError, ValueError):
    """A scenario or sweep specification is malformed."""


class CsvParseError(TopoCpdError, ValueError):
    """A CSV input could not be parsed; message names row and column."""
