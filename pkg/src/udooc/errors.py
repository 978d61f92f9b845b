class UdoocError(Exception):
    """Base class for errors raised by this package."""


class InvalidCodeword(UdoocError, ValueError):
    """A bit string is not a codeword for the unique word in use."""


class FramingError(UdoocError, ValueError):
    """A framed stream or container is malformed."""


class DegenerateGrowth(UdoocError, ValueError):
    """An operation needs growth rate > 1 but the unique word is 01 or 10."""
