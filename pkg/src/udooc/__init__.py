"""Uniquely decodable one-to-one codes: counting, coding and bounds."""

__version__ = "0.1.0"

from .uw import UniqueWord  # noqa: E402
from .codec import make_context, encode_index, decode_codeword, encode_stream, decode_stream  # noqa: E402
from .enumeration import count_codewords, growth_rate, h_polynomial  # noqa: E402
from .errors import UdoocError, InvalidCodeword, FramingError, DegenerateGrowth  # noqa: E402

__all__ = [
    "UniqueWord",
    "make_context",
    "encode_index",
    "decode_codeword",
    "encode_stream",
    "decode_stream",
    "count_codewords",
    "growth_rate",
    "h_polynomial",
    "UdoocError",
    "InvalidCodeword",
    "FramingError",
    "DegenerateGrowth",
]
