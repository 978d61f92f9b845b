"""The ``.udo`` container.

Layout, all integers big-endian::

    "UDO1"                     4 octets
    uw_length                  1 octet
    uw bits                    ceil(L/8) octets, MSB-first, zero padded
    message_count              8 octets
    payload_bit_count          8 octets
    payload                    ceil(bits/8) octets, MSB-first, zero padded

An optional dictionary section may follow (written by ``compress``)::

    "DICT"                     4 octets
    t                          1 octet
    symbol_count               8 octets   (length of the original stream)
    entry_count                4 octets
    entries                    entry_count x (1-octet length, bytes)

Entries are the ranked blocks; entry ``i`` is the block with index ``i + 1``.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .codec import FramedStream
from .errors import FramingError
from .uw import UniqueWord

__all__ = ["Dictionary", "pack", "unpack", "pack_bits", "unpack_bits", "MAGIC", "DICT_MAGIC"]

MAGIC = b"UDO1"
DICT_MAGIC = b"DICT"


@dataclass(frozen=True)
class Dictionary:
    t: int
    symbol_count: int
    entries: tuple[bytes, ...]


def pack_bits(bits: np.ndarray) -> bytes:
    return np.packbits(np.asarray(bits, dtype=np.uint8)).tobytes()


def unpack_bits(data: bytes, count: int) -> np.ndarray:
    arr = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    if arr.size < count:
        raise FramingError(f"payload holds {arr.size} bits, header says {count}")
    return arr[:count].copy()


def pack(stream: FramedStream, dictionary: Dictionary | None = None) -> bytes:
    L = stream.uw.L
    if L > 255:
        raise ValueError("unique word too long for the container header")
    out = bytearray(MAGIC)
    out.append(L)
    out += pack_bits(np.asarray(stream.uw.bits, dtype=np.uint8))
    out += struct.pack(">QQ", stream.message_count, stream.payload_bit_count)
    out += pack_bits(stream.payload)
    if dictionary is not None:
        out += DICT_MAGIC
        out += struct.pack(">BQI", dictionary.t, dictionary.symbol_count, len(dictionary.entries))
        for e in dictionary.entries:
            if len(e) > 255:
                raise ValueError("dictionary entry longer than 255 octets")
            out.append(len(e))
            out += e
    return bytes(out)


def _take(data: bytes, pos: int, n: int) -> tuple[bytes, int]:
    if pos + n > len(data):
        raise FramingError("container is truncated")
    return data[pos:pos + n], pos + n


def unpack(data: bytes) -> tuple[FramedStream, Dictionary | None]:
    magic, pos = _take(data, 0, 4)
    if magic != MAGIC:
        raise FramingError("not a .udo container (bad magic)")
    raw, pos = _take(data, pos, 1)
    L = raw[0]
    if L < 2:
        raise FramingError(f"invalid unique word length {L}")
    raw, pos = _take(data, pos, (L + 7) // 8)
    uw = UniqueWord(tuple(unpack_bits(raw, L).tolist()))
    raw, pos = _take(data, pos, 16)
    count, nbits = struct.unpack(">QQ", raw)
    raw, pos = _take(data, pos, (nbits + 7) // 8)
    payload = unpack_bits(raw, nbits)
    stream = FramedStream(uw, count, payload)
    if pos == len(data):
        return stream, None
    magic, pos = _take(data, pos, 4)
    if magic != DICT_MAGIC:
        raise FramingError("unexpected trailing data after payload")
    raw, pos = _take(data, pos, 13)
    t, symbol_count, n_entries = struct.unpack(">BQI", raw)
    entries = []
    for _ in range(n_entries):
        raw, pos = _take(data, pos, 1)
        e, pos = _take(data, pos, raw[0])
        entries.append(e)
    if pos != len(data):
        raise FramingError("unexpected trailing data after dictionary")
    return stream, Dictionary(t, symbol_count, tuple(entries))
