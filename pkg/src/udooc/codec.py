"""Enumerative encoding and decoding of message indices, plus UW framing.

Codewords are ordered length-first, then lexicographically within a length.
Index ``m = 1`` is the null codeword.  A codeword is a tuple of 0/1 ints.

The general path follows the transfer-matrix construction: walking the
digraph from vertex ``k_2^L`` along the codeword bits, a prefix ``d`` of a
length-``n`` codeword reaches some state ``s`` and the number of completions
is ``V[n - len(d)][s]``, where ``V[r] = A^r w`` and ``w`` marks the counting
states (those from which ``k_1 .. k_{L-1}`` can still be spelled).  ``V`` rows
are memoized per context.  :func:`prefix_count` recomputes the same quantity
by running the state machine forward, which keeps an independent path for
tests.
"""

from __future__ import annotations

import bisect
import enum
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .digraph import AdjacencySet, adjacency_set
from .enumeration import count_codewords, cumulative
from .errors import FramingError, InvalidCodeword
from .uw import UniqueWord

__all__ = [
    "FastPath",
    "EncoderContext",
    "EncodeTrace",
    "FramedStream",
    "make_context",
    "prefix_count",
    "encode_index",
    "encode_trace",
    "decode_codeword",
    "is_codeword",
    "encode_stream",
    "decode_stream",
    "split_payload",
]

Bits = tuple[int, ...]


class FastPath(enum.Enum):
    ALL_SAME = "all-same"          # 0^L, 1^L: Algorithms 1/2
    NEAR_ALL_SAME = "near-all-same"  # 1..10, 0..01: Algorithms 3/4
    GENERAL = "general"            # Algorithms 5/6


def _classify(k: UniqueWord) -> FastPath:
    if k.is_all_same():
        return FastPath.ALL_SAME
    if k.L >= 2 and k.is_run_then_flip():
        return FastPath.NEAR_ALL_SAME
    return FastPath.GENERAL


def _fast_counts_all_ones(L: int, n_max: int) -> list[int]:
    c = [1 if n <= 2 else 1 << (n - 2) for n in range(min(L, n_max) + 1)]
    for n in range(len(c), n_max + 1):
        c.append(sum(c[n - L:n]))
    return c


def _fast_counts_run_then_zero(L: int, n_max: int) -> list[int]:
    c = []
    for n in range(min(L, n_max) + 1):
        c.append(1 if n == 0 else ((1 << n) if n < L else (1 << L) - 1))
    for n in range(len(c), n_max + 1):
        c.append(2 * c[n - 1] - c[n - L])
    return c


class EncoderContext:
    """Per-UW state shared by encoder and decoder.

    Count tables and memoized tails grow on demand under a lock; readers
    only touch entries that already exist, so concurrent use is safe.
    """

    def __init__(self, uw: UniqueWord, horizon: int = 32):
        if uw.L < 2:
            raise ValueError("the codec needs a unique word of length >= 2")
        self.uw = uw
        self.adj: AdjacencySet = adjacency_set(uw)
        self.fast_path = _classify(uw)
        self._lock = threading.RLock()
        self.c: list[int] = []
        self.F: list[int] = []
        self._V: list[list[int]] = []
        self._fast_c: list[int] = []
        self._fast_F: list[int] = []
        self.counting = self._counting_states()
        self._ensure_counts(max(horizon, uw.L))

    # -- tables ---------------------------------------------------------

    def _counting_states(self) -> tuple[int, ...]:
        head = self.uw.bits[:-1]
        w = []
        for s in range(self.adj.vertex_count):
            cur = s
            for b in head:
                cur = self.adj.step(cur, b)
                if cur < 0:
                    break
            w.append(1 if cur >= 0 else 0)
        return tuple(w)

    def _ensure_counts(self, n: int) -> None:
        if n < len(self.c):
            return
        with self._lock:
            if n < len(self.c):
                return
            target = max(n, 2 * len(self.c))
            c = count_codewords(self.uw, target, self.adj)
            self.F = cumulative(c)
            self.c = c

    def ensure_index(self, m: int) -> None:
        """Grow the tables until ``F[-1] >= m``."""
        while self.F[-1] < m:
            self._ensure_counts(len(self.c))

    def length_of_index(self, m: int) -> int:
        """Smallest ``n`` with ``F[n] >= m``."""
        if m < 1:
            raise ValueError(f"message index must be >= 1, got {m}")
        self.ensure_index(m)
        return bisect.bisect_left(self.F, m)

    def F_at(self, n: int) -> int:
        if n < 0:
            return 0
        self._ensure_counts(n)
        return self.F[n]

    def tail(self, r: int) -> list[int]:
        """Row ``V[r] = A^r w``: completions of length ``r`` from each state."""
        V = self._V
        if r < len(V):
            return V[r]
        with self._lock:
            succ = self.adj.graph.succ
            if not V:
                V.append(list(self.counting))
            while len(V) <= r:
                prev = V[-1]
                V.append([sum(prev[j] for j in succ[i]) for i in range(len(prev))])
        return V[r]

    def count_after(self, state: int, r: int) -> int:
        return 0 if state < 0 else self.tail(r)[state]

    def fast_counts(self, n: int) -> list[int]:
        """Counts from the shape-specific recursion (fast paths only)."""
        if n >= len(self._fast_c):
            with self._lock:
                target = max(n, 2 * len(self._fast_c), self.uw.L)
                if self.fast_path is FastPath.ALL_SAME:
                    c = _fast_counts_all_ones(self.uw.L, target)
                elif self.fast_path is FastPath.NEAR_ALL_SAME:
                    c = _fast_counts_run_then_zero(self.uw.L, target)
                else:
                    raise ValueError(f"{self.uw} has no fast path")
                self._fast_F = cumulative(c)
                self._fast_c = c
        return self._fast_c

    def fast_length_of_index(self, m: int) -> int:
        if m < 1:
            raise ValueError(f"message index must be >= 1, got {m}")
        while not self._fast_F or self._fast_F[-1] < m:
            self.fast_counts(max(len(self._fast_c), 1))
        return bisect.bisect_left(self._fast_F, m)


def make_context(uw: UniqueWord | str, horizon: int = 32) -> EncoderContext:
    if isinstance(uw, str):
        uw = UniqueWord.parse(uw)
    return EncoderContext(uw, horizon)


# --------------------------------------------------------------------------
# prefix counts via the forward state machine


def prefix_count(ctx: EncoderContext, d: Sequence[int], n: int) -> int:
    """Number of length-``n`` codewords starting with ``d``.

    One state value per digraph vertex.  Start with a single 1 at ``k_2^L``,
    apply the restricted transition for each bit of ``d``, then ``n - len(d)``
    unrestricted transitions, and sum the counting states.
    """
    d = tuple(d)
    if len(d) > n:
        raise ValueError(f"prefix length {len(d)} exceeds codeword length {n}")
    if n == 0:
        return 1
    adj = ctx.adj
    size = adj.vertex_count
    vals = [0] * size
    vals[adj.x] = 1
    for b in d:
        nxt = [0] * size
        succ_b = adj.succ1 if b else adj.succ0
        for i, v in enumerate(vals):
            if v and succ_b[i] >= 0:
                nxt[succ_b[i]] += v
        vals = nxt
    succ = adj.graph.succ
    for _ in range(n - len(d)):
        nxt = [0] * size
        for i, v in enumerate(vals):
            if v:
                for j in succ[i]:
                    nxt[j] += v
        vals = nxt
    return sum(v for v, w in zip(vals, ctx.counting) if w)


# --------------------------------------------------------------------------
# single codewords


@dataclass(frozen=True)
class EncodeTrace:
    codeword: Bits
    rhos: tuple[int, ...]  # progressive metric before each bit decision


def _encode_general(ctx: EncoderContext, m: int) -> EncodeTrace:
    n = ctx.length_of_index(m)
    if n == 0:
        return EncodeTrace((), ())
    rho = m - ctx.F_at(n - 1)
    adj = ctx.adj
    state = adj.x
    bits, rhos = [], []
    for i in range(1, n + 1):
        rhos.append(rho)
        s0 = adj.succ0[state]
        cnt0 = ctx.count_after(s0, n - i)
        if rho <= cnt0:
            bits.append(0)
            state = s0
        else:
            rho -= cnt0
            bits.append(1)
            state = adj.succ1[state]
    return EncodeTrace(tuple(bits), tuple(rhos))


def _walk_valid(ctx: EncoderContext, c: Bits) -> None:
    state = ctx.adj.x
    for b in c:
        state = ctx.adj.step(state, b)
        if state < 0:
            raise InvalidCodeword(f"{_fmt(c)} contains {ctx.uw} internally")
    if c and not ctx.counting[state]:
        raise InvalidCodeword(f"{_fmt(c)} creates an extra {ctx.uw} next to the trailing separator")


def _decode_general(ctx: EncoderContext, c: Bits) -> int:
    n = len(c)
    m = ctx.F_at(n - 1) + 1
    adj = ctx.adj
    state = adj.x
    for i, b in enumerate(c, start=1):
        if b not in (0, 1):
            raise InvalidCodeword(f"non-binary symbol {b!r} in codeword")
        if b:
            m += ctx.count_after(adj.succ0[state], n - i)
        state = adj.step(state, b)
        if state < 0:
            raise InvalidCodeword(f"{_fmt(c)} contains {ctx.uw} internally")
    if n and not ctx.counting[state]:
        raise InvalidCodeword(f"{_fmt(c)} creates an extra {ctx.uw} next to the trailing separator")
    return m


# Fast paths are written for 1^L and 1..10.  Their complements reuse them:
# complementing every codeword reverses lexicographic order within a length,
# so rank rho among c_n words maps to rank c_n + 1 - rho.


def _fast_offset(ctx: EncoderContext) -> int:
    # |C(d0, n)| = c[n - len(d) - offset]
    return 0 if ctx.fast_path is FastPath.ALL_SAME else 1


def _fast_count0(ctx: EncoderContext, c: list[int], j: int, run: int) -> int:
    # For 1..10 a 0 after L-1 ones would spell the UW itself, so that
    # branch is empty whatever the shifted count says.
    if j < 0:
        return 0
    if ctx.fast_path is FastPath.NEAR_ALL_SAME and run >= ctx.uw.L - 1:
        return 0
    return c[j]


def _fast_flipped(ctx: EncoderContext) -> bool:
    return ctx.uw.bits[0] == 0


def _encode_fast(ctx: EncoderContext, m: int) -> EncodeTrace:
    n = ctx.fast_length_of_index(m)
    if n == 0:
        return EncodeTrace((), ())
    c = ctx.fast_counts(n)
    F = ctx._fast_F
    rho = m - F[n - 1]
    flip = _fast_flipped(ctx)
    if flip:
        rho = c[n] + 1 - rho
    off = _fast_offset(ctx)
    bits, rhos = [], []
    run = 0
    for i in range(1, n + 1):
        rhos.append(rho)
        cnt0 = _fast_count0(ctx, c, n - i + 1 - off, run)
        if rho <= cnt0:
            bits.append(0)
            run = 0
        else:
            rho -= cnt0
            bits.append(1)
            run += 1
    if flip:
        bits = [1 - b for b in bits]
    return EncodeTrace(tuple(bits), tuple(rhos))


def _decode_fast(ctx: EncoderContext, cw: Bits) -> int:
    _walk_valid(ctx, cw)
    n = len(cw)
    if n == 0:
        return 1
    c = ctx.fast_counts(n)
    F = ctx._fast_F
    flip = _fast_flipped(ctx)
    bits = [1 - b for b in cw] if flip else list(cw)
    off = _fast_offset(ctx)
    rank = 1
    run = 0
    for i, b in enumerate(bits, start=1):
        if b:
            rank += _fast_count0(ctx, c, n - i + 1 - off, run)
            run += 1
        else:
            run = 0
    if flip:
        rank = c[n] + 1 - rank
    return F[n - 1] + rank


def _pick(ctx: EncoderContext, algorithm: str) -> str:
    if algorithm not in ("auto", "general", "fast"):
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if algorithm == "fast" and ctx.fast_path is FastPath.GENERAL:
        raise ValueError(f"{ctx.uw} has no fast path")
    if algorithm == "auto":
        return "general" if ctx.fast_path is FastPath.GENERAL else "fast"
    return algorithm


def encode_trace(ctx: EncoderContext, m: int, algorithm: str = "auto") -> EncodeTrace:
    if m < 1:
        raise ValueError(f"message index must be >= 1, got {m}")
    if _pick(ctx, algorithm) == "fast":
        return _encode_fast(ctx, m)
    return _encode_general(ctx, m)


def encode_index(ctx: EncoderContext, m: int, algorithm: str = "auto") -> Bits:
    """The ``m``-th codeword (1-based) in length-then-lexicographic order."""
    return encode_trace(ctx, m, algorithm).codeword


def decode_codeword(ctx: EncoderContext, c: Iterable[int], algorithm: str = "auto") -> int:
    c = tuple(int(b) for b in c)
    if any(b not in (0, 1) for b in c):
        raise InvalidCodeword("codeword bits must be 0/1")
    if _pick(ctx, algorithm) == "fast":
        return _decode_fast(ctx, c)
    return _decode_general(ctx, c)


def is_codeword(ctx: EncoderContext, c: Iterable[int]) -> bool:
    try:
        _walk_valid(ctx, tuple(c))
    except InvalidCodeword:
        return False
    return True


def _fmt(c: Bits) -> str:
    return "".join(map(str, c)) or "<null>"


# --------------------------------------------------------------------------
# framed streams


@dataclass
class FramedStream:
    """``UW c_1 UW c_2 ... UW c_N UW`` plus the header fields."""

    uw: UniqueWord
    message_count: int
    payload: np.ndarray = field(repr=False)  # uint8 array of 0/1

    @property
    def payload_bit_count(self) -> int:
        return int(self.payload.size)

    def bitstring(self) -> str:
        return "".join("1" if b else "0" for b in self.payload.tolist())


def encode_stream(ctx: EncoderContext, indices: Iterable[int]) -> FramedStream:
    uw = list(ctx.uw.bits)
    out = list(uw)
    cache: dict[int, Bits] = {}
    count = 0
    for m in indices:
        m = int(m)
        cw = cache.get(m)
        if cw is None:
            cw = cache[m] = encode_index(ctx, m)
        out.extend(cw)
        out.extend(uw)
        count += 1
    return FramedStream(ctx.uw, count, np.asarray(out, dtype=np.uint8))


def split_payload(uw: UniqueWord, payload: np.ndarray) -> list[Bits]:
    """Cut a payload at its separators (greedy, non-overlapping scan)."""
    L = uw.L
    bits = np.ascontiguousarray(payload, dtype=np.uint8)
    pos = _kernels.separator_positions(bits, np.asarray(uw.bits, dtype=np.uint8))
    if bits.size < L or pos.size == 0 or pos[0] != 0:
        raise FramingError("payload does not start with the unique word")
    if pos[-1] != bits.size - L:
        raise FramingError("payload does not end with the unique word")
    segs = []
    for a, b in zip(pos[:-1].tolist(), pos[1:].tolist()):
        segs.append(tuple(bits[a + L:b].tolist()))
    return segs


def decode_stream(ctx: EncoderContext, stream: FramedStream, jobs: int = 1) -> list[int]:
    if stream.uw != ctx.uw:
        raise FramingError(f"stream uses {stream.uw}, decoder was built for {ctx.uw}")
    segs = split_payload(ctx.uw, stream.payload)
    if len(segs) != stream.message_count:
        raise FramingError(f"found {len(segs)} codewords, header says {stream.message_count}")
    uniq = list(dict.fromkeys(segs))
    if jobs > 1 and len(uniq) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            ranks = list(pool.map(lambda s: decode_codeword(ctx, s), uniq))
    else:
        ranks = [decode_codeword(ctx, s) for s in uniq]
    table = dict(zip(uniq, ranks))
    return [table[s] for s in segs]
