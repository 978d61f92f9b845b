import random
import threading

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from udooc.codec import (
    FastPath,
    FramedStream,
    decode_codeword,
    decode_stream,
    encode_index,
    encode_stream,
    encode_trace,
    is_codeword,
    make_context,
    prefix_count,
    split_payload,
)
from udooc.enumeration import brute_force_codewords
from udooc.errors import FramingError, InvalidCodeword
from udooc.uw import UniqueWord, all_words


def bits(s):
    return tuple(int(c) for c in s)


def test_example3_prefix_counts():
    ctx = make_context("010")
    assert [prefix_count(ctx, bits(d), 4) for d in ("0", "00", "010", "0110")] == [4, 2, 0, 1]
    assert prefix_count(ctx, (), 4) == 7
    assert prefix_count(make_context("00"), (1,), 3) == 2
    with pytest.raises(ValueError):
        prefix_count(ctx, (0, 0, 0), 2)


def _memo_count(ctx, d, n):
    state = ctx.adj.x
    for b in d:
        state = ctx.adj.step(state, b)
        if state < 0:
            return 0
    return ctx.count_after(state, n - len(d))


def test_prefix_count_matches_brute_force_and_memo():
    for L in range(2, 5):
        for k in all_words(L):
            ctx = make_context(k)
            for n in range(1, 8):
                words = brute_force_codewords(k, n)
                for ln in range(0, min(n, 4) + 1):
                    for v in range(1 << ln):
                        d = tuple((v >> (ln - 1 - i)) & 1 for i in range(ln))
                        brute = sum(1 for c in words if c[:ln] == d)
                        assert prefix_count(ctx, d, n) == brute
                        assert _memo_count(ctx, d, n) == brute


def test_example3_encode():
    ctx = make_context("010")
    tr = encode_trace(ctx, 11)
    assert tr.codeword == bits("0110") and tr.rhos == (3, 3, 1, 1)
    got = ["".join(map(str, encode_index(ctx, m))) for m in range(9, 16)]
    assert got == ["0000", "0011", "0110", "0111", "1100", "1110", "1111"]
    assert decode_codeword(ctx, bits("0110")) == 11


def test_null_codeword():
    for s in ("00", "01", "010", "0001"):
        ctx = make_context(s)
        assert encode_index(ctx, 1) == ()
        assert decode_codeword(ctx, ()) == 1


def test_rank_in_fig1_order():
    assert decode_codeword(make_context("00"), bits("101")) == 4


def test_bijective_against_brute_force():
    for L in range(2, 6):
        for k in all_words(L):
            ctx = make_context(k)
            m = 1
            for n in range(0, 11):
                words = brute_force_codewords(k, n)
                got = [encode_index(ctx, m + j) for j in range(len(words))]
                assert got == words, (k, n)  # also checks lexicographic order
                assert [decode_codeword(ctx, c) for c in words] == list(range(m, m + len(words)))
                m += len(words)


def test_rejects_bad_input():
    ctx = make_context("010")
    with pytest.raises(ValueError):
        encode_index(ctx, 0)
    with pytest.raises(InvalidCodeword):
        decode_codeword(ctx, bits("0100"))
    with pytest.raises(InvalidCodeword):
        decode_codeword(make_context("00"), bits("0"))  # 00 0 00 has 00 inside
    with pytest.raises(InvalidCodeword):
        decode_codeword(ctx, (0, 2))
    with pytest.raises(ValueError):
        make_context("0")
    with pytest.raises(ValueError):
        encode_index(ctx, 5, "fast")
    assert not is_codeword(ctx, bits("010"))


def test_fast_path_classification():
    assert make_context("0000").fast_path is FastPath.ALL_SAME
    assert make_context("111").fast_path is FastPath.ALL_SAME
    assert make_context("1110").fast_path is FastPath.NEAR_ALL_SAME
    assert make_context("0001").fast_path is FastPath.NEAR_ALL_SAME
    assert make_context("0111").fast_path is FastPath.GENERAL
    assert make_context("010").fast_path is FastPath.GENERAL


@pytest.mark.parametrize("s", ["11", "1111", "11110", "0000", "00001", "10", "01", "1110"])
def test_fast_paths_exhaustive_small(s):
    ctx = make_context(s)
    for m in range(1, 3000):
        c = encode_index(ctx, m, "fast")
        assert c == encode_index(ctx, m, "general")
        assert decode_codeword(ctx, c, "fast") == m


def test_fast_decode_validates():
    with pytest.raises(InvalidCodeword):
        decode_codeword(make_context("1110"), bits("1110"), "fast")


def separator_ok(k, c):
    if not c:
        return True  # the null codeword is always allowed
    s = k + c + k
    return s.find(k, 1) == len(s) - len(k)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["00", "0001", "010", "000001", "0110", "10"]), st.integers(1, 10**12))
def test_round_trip_property(s, m):
    ctx = make_context(s)
    c = encode_index(ctx, m)
    assert separator_ok(s, "".join(map(str, c)))
    assert decode_codeword(ctx, c) == m


def test_example1_stream():
    ctx = make_context("00")
    st_ = encode_stream(ctx, [2, 3, 4, 8])
    assert st_.bitstring() == "00100110010100111100"
    assert st_.message_count == 4 and st_.payload_bit_count == 20
    assert decode_stream(ctx, st_) == [2, 3, 4, 8]


def test_empty_and_null_streams():
    ctx = make_context("0001")
    empty = encode_stream(ctx, [])
    assert empty.bitstring() == "0001" and decode_stream(ctx, empty) == []
    one = encode_stream(ctx, [1])
    assert one.bitstring() == "00010001" and decode_stream(ctx, one) == [1]
    nulls = encode_stream(make_context("00"), [1, 1, 1])
    assert nulls.bitstring() == "00000000"
    assert decode_stream(make_context("00"), nulls) == [1, 1, 1]


def test_framing_errors():
    ctx = make_context("00")
    good = encode_stream(ctx, [2, 3])
    with pytest.raises(FramingError):
        decode_stream(ctx, FramedStream(ctx.uw, 3, good.payload))
    with pytest.raises(FramingError):
        decode_stream(ctx, FramedStream(ctx.uw, 2, good.payload[1:]))
    with pytest.raises(FramingError):
        decode_stream(ctx, FramedStream(ctx.uw, 2, good.payload[:-1]))
    with pytest.raises(FramingError):
        decode_stream(make_context("0001"), good)
    with pytest.raises(FramingError):
        split_payload(ctx.uw, np.array([0], dtype=np.uint8))


@pytest.mark.parametrize("s", ["00", "0001", "010", "000001"])
def test_stream_round_trip_1000(s):
    rng = random.Random(s)
    ctx = make_context(s)
    idx = [rng.randint(1, 10**6) for _ in range(1000)]
    stream = encode_stream(ctx, idx)
    assert decode_stream(ctx, stream) == idx
    assert decode_stream(make_context(s), stream, jobs=4) == idx


def test_concurrent_contexts_agree():
    ctx = make_context("0110", horizon=4)
    ref = make_context("0110")
    rng = random.Random(3)
    ms = [rng.randint(1, 10**15) for _ in range(400)]
    out = {}

    def work(chunk):
        for m in chunk:
            out[m] = encode_index(ctx, m)

    threads = [threading.Thread(target=work, args=(ms[i::8],)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(out[m] == encode_index(ref, m) for m in ms)
