"""Source statistics: text normalization, block models and code lengths."""

from __future__ import annotations

import csv
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Hashable, Sequence

import numpy as np

from .codec import EncoderContext

__all__ = [
    "SourceModel",
    "ALPHABET",
    "normalize_text",
    "blocks",
    "empirical_model",
    "product_model",
    "uniform_model",
    "entropy",
    "codeword_lengths",
    "average_length",
    "per_letter_length",
    "load_probabilities",
    "save_model_csv",
    "PRODUCT_LIMIT",
]

ALPHABET = "abcdefghijklmnopqrstuvwxyz "
PRODUCT_LIMIT = 10**7
PROB_TOL = 1e-9


@dataclass(frozen=True)
class SourceModel:
    """Symbols ranked by nonincreasing probability."""

    symbols: tuple[Hashable, ...]
    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or p.size != len(self.symbols):
            raise ValueError("symbols and probabilities differ in length")
        if p.size == 0:
            raise ValueError("empty source model")
        if (p < 0).any():
            raise ValueError("negative probability")
        if abs(p.sum() - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {p.sum()!r}, expected 1")
        if (np.diff(p) > 0).any():
            raise ValueError("probabilities must be sorted in nonincreasing order")
        object.__setattr__(self, "probs", p)

    @property
    def M(self) -> int:
        return len(self.symbols)

    @classmethod
    def from_counts(cls, counts: dict) -> "SourceModel":
        """Normalize counts; ties are broken by symbol order for determinism."""
        if not counts:
            raise ValueError("no symbols to build a model from")
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        total = sum(v for _, v in ranked)
        return cls(tuple(s for s, _ in ranked), np.array([v / total for _, v in ranked]))

    @classmethod
    def from_probabilities(cls, pairs: Sequence[tuple[Hashable, float]], renormalize: bool = False) -> "SourceModel":
        ranked = sorted(pairs, key=lambda kv: -kv[1])
        p = np.array([v for _, v in ranked], dtype=float)
        if renormalize:
            p = p / p.sum()
        return cls(tuple(s for s, _ in ranked), p)


def normalize_text(raw: bytes | str, keep_line_breaks: bool = False) -> str:
    """Fold to the 27-letter alphabet ``a..z`` plus space.

    Letters are case-folded and every other octet becomes a space, except
    CR and LF which are dropped unless ``keep_line_breaks`` is set.
    """
    if isinstance(raw, str):
        raw = raw.encode("latin-1", errors="replace")
    table = bytearray(b" " * 256)
    for ch in range(ord("a"), ord("z") + 1):
        table[ch] = ch
        table[ch - 32] = ch
    delete = b"" if keep_line_breaks else b"\r\n"
    return raw.translate(bytes(table), delete).decode("ascii")


def blocks(stream: str, t: int, sliding: bool = False) -> list[str]:
    """Cut ``stream`` into length-``t`` blocks.

    Non-overlapping by default, with the tail padded by spaces.  With
    ``sliding`` every window of ``t`` consecutive letters is a block.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if sliding:
        return [stream[i:i + t] for i in range(len(stream) - t + 1)]
    pad = (-len(stream)) % t
    s = stream + " " * pad
    return [s[i:i + t] for i in range(0, len(s), t)]


def empirical_model(stream: str, t: int = 1, sliding: bool = False) -> SourceModel:
    if not stream:
        raise ValueError("cannot build a model from an empty stream")
    if sliding and len(stream) < t:
        raise ValueError("stream shorter than the block length")
    return SourceModel.from_counts(Counter(blocks(stream, t, sliding)))


def uniform_model(M: int, symbols: Sequence[Hashable] | None = None) -> SourceModel:
    symbols = tuple(symbols) if symbols is not None else tuple(range(M))
    return SourceModel(symbols, np.full(M, 1.0 / M))


def product_model(base: SourceModel, t: int) -> SourceModel:
    """i.i.d. ``t``-fold product of ``base``, ranked by probability."""
    if t < 1:
        raise ValueError("t must be >= 1")
    size = base.M ** t
    if size > PRODUCT_LIMIT:
        raise ValueError(f"product alphabet of {size} blocks exceeds the limit of {PRODUCT_LIMIT}")
    p = np.ones(1)
    for _ in range(t):
        p = np.multiply.outer(p, base.probs).ravel()
    order = np.argsort(-p, kind="stable")
    combos = list(itertools.product(base.symbols, repeat=t))
    if all(isinstance(s, str) for s in base.symbols):
        combos = ["".join(c) for c in combos]
    syms = tuple(combos[i] for i in order)
    probs = p[order]
    probs = probs / probs.sum()
    # renormalizing can break exact monotonicity by an ulp
    probs = np.minimum.accumulate(probs)
    return SourceModel(syms, probs)


def entropy(model: SourceModel) -> float:
    p = model.probs[model.probs > 0]
    return float(-(p * np.log2(p)).sum())


def codeword_lengths(ctx: EncoderContext, M: int) -> np.ndarray:
    """``n_i = min{n : F[n] >= i}`` for ``i = 1..M``, read off the count table."""
    ctx.ensure_index(M)
    F = ctx.F
    out = np.empty(M, dtype=np.int64)
    lo = 0
    for n, f in enumerate(F):
        hi = min(f, M)
        if hi > lo:
            out[lo:hi] = n
            lo = hi
        if lo >= M:
            break
    return out


def average_length(ctx: EncoderContext, model: SourceModel) -> float:
    """Bits per grouped symbol: UW length plus expected codeword length."""
    n = codeword_lengths(ctx, model.M)
    return ctx.uw.L + float(np.dot(model.probs, n))


def per_letter_length(ctx: EncoderContext, model: SourceModel, t: int) -> float:
    return average_length(ctx, model) / t


def load_probabilities(path: str | Path) -> SourceModel:
    """Read ``symbol,probability`` rows; a header row and ``#`` comments are skipped."""
    pairs = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].startswith("#"):
                continue
            if len(row) < 2:
                raise ValueError(f"expected 'symbol,probability', got {row!r}")
            try:
                p = float(row[1])
            except ValueError:
                if not pairs:
                    continue  # header
                raise
            sym = row[0]
            if sym in ("space", "<space>", "_"):
                sym = " "
            pairs.append((sym, p))
    if not pairs:
        raise ValueError(f"no probabilities in {path}")
    total = sum(p for _, p in pairs)
    return SourceModel.from_probabilities(pairs, renormalize=abs(total - 1.0) > PROB_TOL)


def save_model_csv(model: SourceModel, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["rank", "symbol", "probability"])
        for i, (s, p) in enumerate(zip(model.symbols, model.probs), start=1):
            w.writerow([i, s, repr(float(p))])


def log2_safe(x: float) -> float:
    return math.log2(x) if x > 0 else 0.0
