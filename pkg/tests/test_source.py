import math

import numpy as np
import pytest

from udooc.codec import make_context
from udooc.source import (
    SourceModel,
    average_length,
    blocks,
    codeword_lengths,
    empirical_model,
    entropy,
    load_probabilities,
    normalize_text,
    per_letter_length,
    product_model,
    save_model_csv,
    uniform_model,
)


def test_normalize():
    assert normalize_text(b"Ab, c") == "ab  c"
    assert normalize_text(b"WONDERLAND") == "wonderland"
    assert normalize_text(b"") == ""
    assert normalize_text(b"a\r\nb") == "ab"
    assert normalize_text(b"a\r\nb", keep_line_breaks=True) == "a  b"
    assert normalize_text("x\xe9y") == "x y"
    assert set(normalize_text(bytes(range(256)))) <= set("abcdefghijklmnopqrstuvwxyz ")


def test_blocks():
    assert blocks("aab", 2) == ["aa", "b "]
    assert blocks("abcd", 2, sliding=True) == ["ab", "bc", "cd"]
    with pytest.raises(ValueError):
        blocks("ab", 0)


def test_empirical():
    m = empirical_model("aab", 1)
    assert m.symbols == ("a", "b")
    assert np.allclose(m.probs, [2 / 3, 1 / 3])
    m2 = empirical_model("aab ", 2)
    assert set(m2.symbols) == {"aa", "b "} and np.allclose(m2.probs, [0.5, 0.5])
    assert empirical_model("ba", 1).symbols == ("a", "b")  # tie broken lexicographically
    with pytest.raises(ValueError):
        empirical_model("", 1)


def test_model_validation():
    with pytest.raises(ValueError):
        SourceModel(("a", "b"), np.array([0.3, 0.7]))
    with pytest.raises(ValueError):
        SourceModel(("a", "b"), np.array([0.5, 0.6]))
    with pytest.raises(ValueError):
        SourceModel(("a",), np.array([-1.0]))


def test_product():
    m = product_model(uniform_model(26), 2)
    assert m.M == 676 and np.allclose(m.probs, 1 / 676)
    m = product_model(SourceModel(("0", "1"), np.array([0.5, 0.5])), 3)
    assert m.M == 8 and np.allclose(m.probs, 1 / 8)
    base = SourceModel(("a", "b", "c"), np.array([0.5, 0.3, 0.2]))
    m = product_model(base, 3)
    assert m.probs[0] == pytest.approx(0.5**3) and m.symbols[0] == "aaa"
    assert entropy(m) == pytest.approx(3 * entropy(base))
    with pytest.raises(ValueError):
        product_model(uniform_model(27), 5)


def test_entropy():
    assert entropy(uniform_model(26)) == pytest.approx(math.log2(26))
    assert entropy(SourceModel(("x",), np.array([1.0]))) == 0.0


def test_lengths_monotone():
    n = codeword_lengths(make_context("010"), 100)
    assert n[0] == 0 and (np.diff(n) >= 0).all()
    assert n[:15].tolist() == [0, 1, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 4]


def test_average_length_trivial():
    assert average_length(make_context("0001"), SourceModel(("x",), np.array([1.0]))) == 4.0


def test_alice_t1(alice):
    m = empirical_model(alice, 1)
    assert m.M == 27
    assert entropy(m) == pytest.approx(3.914, abs=0.02)
    assert average_length(make_context("00"), m) == pytest.approx(4.887, abs=0.05)
    assert average_length(make_context("01"), m) == pytest.approx(4.068, abs=0.05)


def test_alice_t3(alice):
    m = empirical_model(alice, 3, sliding=True)
    assert entropy(m) / 3 == pytest.approx(3.215, abs=0.02)
    for uw, ref in (("0001", 3.531), ("0000", 4.089), ("000001", 4.115), ("000000", 4.709)):
        assert per_letter_length(make_context(uw), m, 3) == pytest.approx(ref, abs=0.05)


def test_alice_grouping_helps(alice):
    for uw in ("00", "0001"):
        ctx = make_context(uw)
        vals = [per_letter_length(ctx, empirical_model(alice, t, sliding=True), t) for t in (1, 2, 3)]
        assert vals[0] > vals[1] > vals[2]


def test_probability_file_round_trip(tmp_path):
    m = SourceModel(("e", " ", "t"), np.array([0.5, 0.3, 0.2]))
    p = tmp_path / "probs.csv"
    save_model_csv(m, p)
    q = tmp_path / "simple.csv"
    q.write_text("symbol,probability\ne,5\nspace,3\nt,2\n")
    loaded = load_probabilities(q)
    assert loaded.symbols == ("e", " ", "t") and np.allclose(loaded.probs, m.probs)
