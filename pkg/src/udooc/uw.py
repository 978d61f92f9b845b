"""Unique words, their overlap structure and equivalence classes.

A unique word (UW) ``k = k_1 ... k_L`` is stored MSB-first.  Positions in
docstrings are 1-based to line up with the usual ``k_i^j`` substring
notation; the ``bits`` tuple itself is ordinary 0-based Python.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernels

__all__ = [
    "UniqueWord",
    "overlap_function",
    "overlap_vector",
    "reverse",
    "complement",
    "canonical_class_representative",
    "count_overlap_vectors",
    "all_words",
    "MAX_OVERLAP_ENUM_LENGTH",
]

MAX_OVERLAP_ENUM_LENGTH = 24


@dataclass(frozen=True)
class UniqueWord:
    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits:
            raise ValueError("unique word must have length >= 1")
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"unique word bits must be 0/1, got {self.bits!r}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def parse(cls, text: str) -> "UniqueWord":
        """Build from a ``"0001"``-style string; anything but 0/1 is rejected."""
        text = text.strip()
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"invalid unique word {text!r}: expected a non-empty 0/1 string")
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def from_int(cls, value: int, L: int) -> "UniqueWord":
        return cls(tuple((value >> (L - 1 - i)) & 1 for i in range(L)))

    @property
    def L(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def __repr__(self) -> str:
        return f"UniqueWord('{self}')"

    def as_int(self) -> int:
        v = 0
        for b in self.bits:
            v = (v << 1) | b
        return v

    def sub(self, i: int, j: int) -> tuple[int, ...]:
        """The substring ``k_i ... k_j`` (1-based, inclusive); empty if ``j < i``."""
        return self.bits[i - 1:j]

    def is_all_same(self) -> bool:
        return len(set(self.bits)) == 1

    def is_run_then_flip(self) -> bool:
        """True for ``1...10`` and ``0...01`` (a run of ``L-1`` equal bits then the opposite bit)."""
        head = self.bits[:-1]
        return len(set(head)) == 1 and self.bits[-1] != head[0]


def all_words(L: int) -> Iterable[UniqueWord]:
    for v in range(1 << L):
        yield UniqueWord.from_int(v, L)


def overlap_function(k: UniqueWord, i: int) -> int:
    """1 iff ``0 <= i <= L-1`` and the suffix ``k_{i+1}^L`` equals the prefix ``k_1^{L-i}``."""
    L = k.L
    if not 0 <= i <= L - 1:
        return 0
    return int(k.bits[i:] == k.bits[:L - i])


def overlap_vector(k: UniqueWord) -> tuple[int, ...]:
    return tuple(overlap_function(k, j) for j in range(k.L))


def reverse(k: UniqueWord) -> UniqueWord:
    return UniqueWord(k.bits[::-1])


def complement(k: UniqueWord) -> UniqueWord:
    return UniqueWord(tuple(1 - b for b in k.bits))


def canonical_class_representative(k: UniqueWord) -> UniqueWord:
    """Lexicographically smallest member of ``{k, rev k, comp k, rev comp k}``."""
    orbit = (k, reverse(k), complement(k), reverse(complement(k)))
    return min(orbit, key=lambda w: w.bits)


def count_overlap_vectors(L: int) -> int:
    """Number of distinct overlap vectors over all ``2^L`` words of length ``L``.

    Exhaustive; limited to ``L <= 24``.
    """
    if not 1 <= L <= MAX_OVERLAP_ENUM_LENGTH:
        raise ValueError(f"L must be in 1..{MAX_OVERLAP_ENUM_LENGTH} for exhaustive counting, got {L}")
    return int(np.unique(_kernels.overlap_codes(L)).size)
