import struct

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from udooc.codec import FramedStream, decode_stream, encode_stream, make_context
from udooc.container import Dictionary, pack, pack_bits, unpack, unpack_bits
from udooc.errors import FramingError


def test_layout_example1():
    ctx = make_context("00")
    data = pack(encode_stream(ctx, [2, 3, 4, 8]))
    assert data[:4] == b"UDO1"
    assert data[4] == 2
    assert data[5] == 0b00000000
    assert struct.unpack(">QQ", data[6:22]) == (4, 20)
    assert data[22:] == bytes([0b00100110, 0b01010011, 0b11000000])


def test_all_zero_padding_is_unambiguous():
    ctx = make_context("0000")
    for idx in ([], [1], [1, 1, 1]):
        s = encode_stream(ctx, idx)
        back, d = unpack(pack(s))
        assert d is None
        assert back.payload_bit_count == s.payload_bit_count
        assert decode_stream(ctx, back) == idx


def test_dictionary_section():
    ctx = make_context("0001")
    s = encode_stream(ctx, [1, 2, 2, 3])
    d = Dictionary(2, 7, (b"ab", b"c ", b"zz"))
    back, d2 = unpack(pack(s, d))
    assert d2 == d
    assert decode_stream(ctx, back) == [1, 2, 2, 3]


@pytest.mark.parametrize("mutate", [
    lambda b: b"XXXX" + b[4:],
    lambda b: b[:-1],
    lambda b: b + b"junk",
    lambda b: b[:4] + bytes([1]) + b[5:],
])
def test_corrupt_containers(mutate):
    s = encode_stream(make_context("010"), [5, 6])
    with pytest.raises(FramingError):
        unpack(mutate(pack(s)))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=100))
def test_bit_packing(bits):
    arr = np.array(bits, dtype=np.uint8)
    assert unpack_bits(pack_bits(arr), len(bits)).tolist() == bits


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["00", "010", "0001", "11110"]), st.lists(st.integers(1, 10**6), max_size=30))
def test_container_round_trip(uw, idx):
    ctx = make_context(uw)
    back, _ = unpack(pack(encode_stream(ctx, idx)))
    assert str(back.uw) == uw and back.message_count == len(idx)
    assert decode_stream(ctx, back) == idx
