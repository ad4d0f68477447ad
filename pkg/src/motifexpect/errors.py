"""Exception classes, one per CLI exit-code class."""


class MotifExpectError(Exception):
    """Base class for all library errors."""


class ParseError(MotifExpectError):
    """Input file is missing, unreadable, or malformed."""


class ValidationError(MotifExpectError):
    """Inputs parsed fine but violate an invariant or precondition."""


class SizeLimitError(MotifExpectError):
    """Requested computation exceeds an enumeration size guard."""
