"""Hot inner loops over packed bit words.

Every kernel has two implementations: a numba ``@njit`` version and a
pure-numpy version.  The numba path is used when numba imports cleanly and
``UDOOC_DISABLE_NUMBA`` is unset (or ``0``); set it to ``1`` to force the
numpy path.  Both paths are importable directly as ``nb_<name>`` /
``np_<name>`` so tests and benchmarks can compare them.

Words are packed MSB-first: bit ``L-1`` of the integer is ``k_1``.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_DISABLED = os.environ.get("UDOOC_DISABLE_NUMBA", "0") not in ("", "0", "false", "False")
HAVE_NUMBA = numba is not None
BACKEND = "numba" if (HAVE_NUMBA and not _DISABLED) else "numpy"

# packed words must fit in int64 with room for shifts
MAX_PACKED_BITS = 62


def _njit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


# --------------------------------------------------------------------------
# overlap vectors of every length-L word


def np_overlap_codes(L: int) -> np.ndarray:
    words = np.arange(1 << L, dtype=np.int64)
    codes = np.zeros(1 << L, dtype=np.int64)
    for i in range(1, L):
        low = words & ((1 << (L - i)) - 1)
        high = words >> i
        codes |= (low == high).astype(np.int64) << i
    return codes


@_njit
def _nb_overlap_codes(L):
    n = 1 << L
    codes = np.zeros(n, dtype=np.int64)
    for w in range(n):
        c = 0
        for i in range(1, L):
            if (w & ((1 << (L - i)) - 1)) == (w >> i):
                c |= 1 << i
        codes[w] = c
    return codes


def nb_overlap_codes(L: int) -> np.ndarray:
    return _nb_overlap_codes(L)


# --------------------------------------------------------------------------
# brute-force membership masks (verification oracles)


def _occurs(word: np.ndarray, width: int, pat: int, L: int, positions) -> np.ndarray:
    """True where ``pat`` sits at any of ``positions`` (0 = leftmost) in ``word``."""
    hit = np.zeros(word.shape, dtype=bool)
    mask = (1 << L) - 1
    for p in positions:
        shift = width - L - p
        hit |= ((word >> shift) & mask) == pat
    return hit


def np_codeword_mask(k: int, L: int, n: int) -> np.ndarray:
    """``mask[b]`` is True iff ``k`` is not an internal subword of ``k b k``."""
    b = np.arange(1 << n, dtype=np.int64)
    width = n + 2 * L
    word = (np.int64(k) << (n + L)) | (b << L) | np.int64(k)
    return ~_occurs(word, width, k, L, range(1, width - L))


def np_avoid_mask(k: int, L: int, n: int) -> np.ndarray:
    """``mask[b]`` is True iff ``k`` is not a subword of ``b`` anywhere."""
    b = np.arange(1 << n, dtype=np.int64)
    if n < L:
        return np.ones(1 << n, dtype=bool)
    return ~_occurs(b, n, k, L, range(0, n - L + 1))


@_njit
def _nb_codeword_mask(k, L, n):
    out = np.empty(1 << n, dtype=np.bool_)
    width = n + 2 * L
    mask = (1 << L) - 1
    for b in range(1 << n):
        word = (k << (n + L)) | (b << L) | k
        ok = True
        for p in range(1, width - L):
            if ((word >> (width - L - p)) & mask) == k:
                ok = False
                break
        out[b] = ok
    return out


@_njit
def _nb_avoid_mask(k, L, n):
    out = np.empty(1 << n, dtype=np.bool_)
    mask = (1 << L) - 1
    for b in range(1 << n):
        ok = True
        for p in range(0, n - L + 1):
            if ((b >> (n - L - p)) & mask) == k:
                ok = False
                break
        out[b] = ok
    return out


def nb_codeword_mask(k: int, L: int, n: int) -> np.ndarray:
    return _nb_codeword_mask(np.int64(k), L, n)


def nb_avoid_mask(k: int, L: int, n: int) -> np.ndarray:
    return _nb_avoid_mask(np.int64(k), L, n)


# --------------------------------------------------------------------------
# separator scan over an unpacked bit array


def np_separator_positions(bits: np.ndarray, uw: np.ndarray) -> np.ndarray:
    L = len(uw)
    if len(bits) < L:
        return np.zeros(0, dtype=np.int64)
    windows = np.lib.stride_tricks.sliding_window_view(bits, L)
    hits = np.flatnonzero((windows == uw).all(axis=1))
    keep = []
    nxt = 0
    for h in hits:
        if h >= nxt:
            keep.append(h)
            nxt = h + L
    return np.asarray(keep, dtype=np.int64)


@_njit
def _nb_separator_positions(bits, uw):
    L = uw.shape[0]
    n = bits.shape[0]
    out = np.empty(max(n // L + 1, 1), dtype=np.int64)
    m = 0
    p = 0
    while p + L <= n:
        hit = True
        for j in range(L):
            if bits[p + j] != uw[j]:
                hit = False
                break
        if hit:
            out[m] = p
            m += 1
            p += L
        else:
            p += 1
    return out[:m]


def nb_separator_positions(bits: np.ndarray, uw: np.ndarray) -> np.ndarray:
    return _nb_separator_positions(np.ascontiguousarray(bits, dtype=np.uint8),
                                   np.ascontiguousarray(uw, dtype=np.uint8))


# --------------------------------------------------------------------------
# LZ78 over a binary alphabet: returns (output bits, phrase count)


def np_lz78_bits(bits: np.ndarray) -> tuple[int, int]:
    child = {}
    size = 1  # root only
    node = 0
    total = 0
    phrases = 0
    for b in bits.tolist():
        key = (node, b)
        nxt = child.get(key)
        if nxt is not None:
            node = nxt
            continue
        total += (size - 1).bit_length() + 1
        phrases += 1
        child[key] = size
        size += 1
        node = 0
    if node != 0:
        total += (size - 1).bit_length() + 1
        phrases += 1
    return total, phrases


@_njit
def _nb_lz78_bits(bits):
    n = bits.shape[0]
    child = np.zeros((n + 2, 2), dtype=np.int64)
    size = 1
    node = 0
    total = 0
    phrases = 0
    for i in range(n):
        b = bits[i]
        nxt = child[node, b]
        if nxt != 0:
            node = nxt
            continue
        # ceil(log2(size)) index bits plus one symbol bit
        w = 0
        while (1 << w) < size:
            w += 1
        total += w + 1
        phrases += 1
        child[node, b] = size
        size += 1
        node = 0
    if node != 0:
        w = 0
        while (1 << w) < size:
            w += 1
        total += w + 1
        phrases += 1
    return total, phrases


def nb_lz78_bits(bits: np.ndarray) -> tuple[int, int]:
    total, phrases = _nb_lz78_bits(np.ascontiguousarray(bits, dtype=np.uint8))
    return int(total), int(phrases)


# --------------------------------------------------------------------------
# dispatch

if BACKEND == "numba":
    overlap_codes = nb_overlap_codes
    codeword_mask = nb_codeword_mask
    avoid_mask = nb_avoid_mask
    separator_positions = nb_separator_positions
    lz78_bits = nb_lz78_bits
else:
    overlap_codes = np_overlap_codes
    codeword_mask = np_codeword_mask
    avoid_mask = np_avoid_mask
    separator_positions = np_separator_positions
    lz78_bits = np_lz78_bits
