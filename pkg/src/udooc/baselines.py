"""Reference coders: Huffman code lengths and a bit-level LZ78."""

from __future__ import annotations

import heapq

import numpy as np

from . import _kernels
from .source import SourceModel

__all__ = [
    "huffman_code_lengths",
    "huffman_average_length",
    "ascii_bits",
    "lz78_compressed_bits",
    "lz78_phrases",
]


def huffman_code_lengths(model: SourceModel) -> np.ndarray:
    """Optimal binary code lengths, aligned with ``model.symbols``.

    Ties merge the lowest node ids first, so results are deterministic.
    """
    M = model.M
    if M < 2:
        raise ValueError("Huffman coding needs at least two symbols")
    heap = [(float(p), i) for i, p in enumerate(model.probs)]
    heapq.heapify(heap)
    parent = list(range(M))
    nxt = M
    while len(heap) > 1:
        pa, a = heapq.heappop(heap)
        pb, b = heapq.heappop(heap)
        parent.append(nxt)
        parent[a] = nxt
        parent[b] = nxt
        heapq.heappush(heap, (pa + pb, nxt))
        nxt += 1
    depth = [0] * nxt
    for node in range(nxt - 2, -1, -1):  # parents have larger ids than children
        depth[node] = depth[parent[node]] + 1
    return np.array(depth[:M], dtype=np.int64)


def huffman_average_length(model: SourceModel) -> float:
    return float(np.dot(model.probs, huffman_code_lengths(model)))


def ascii_bits(stream: str) -> np.ndarray:
    data = np.frombuffer(stream.encode("ascii"), dtype=np.uint8)
    return np.unpackbits(data)


def _lz78_symbols(stream: str) -> tuple[int, int]:
    trie: dict[tuple[int, str], int] = {}
    node = 0
    total = phrases = 0
    for ch in stream:
        nxt = trie.get((node, ch))
        if nxt is not None:
            node = nxt
            continue
        total += (len(trie)).bit_length() + 8
        phrases += 1
        trie[(node, ch)] = len(trie) + 1
        node = 0
    if node:
        total += (len(trie)).bit_length() + 8
        phrases += 1
    return total, phrases


def lz78_phrases(stream: str, unit: str = "bit") -> int:
    if unit == "bit":
        return _kernels.lz78_bits(ascii_bits(stream))[1] if stream else 0
    if unit == "symbol":
        return _lz78_symbols(stream)[1]
    raise ValueError(f"unknown LZ78 unit {unit!r}")


def lz78_compressed_bits(stream: str, unit: str = "bit") -> int:
    """LZ78 output size in bits.

    ``unit="bit"`` (default) parses the ASCII bit string of ``stream``: each
    phrase costs ``ceil(log2(dict size))`` index bits plus one literal bit.
    ``unit="symbol"`` parses letters and spends 8 bits on each literal.  A
    trailing partial phrase is charged like a full one in both modes.
    """
    if not stream:
        return 0
    if unit == "bit":
        return _kernels.lz78_bits(ascii_bits(stream))[0]
    if unit == "symbol":
        return _lz78_symbols(stream)[0]
    raise ValueError(f"unknown LZ78 unit {unit!r}")
