"""The UW-forbidding digraph and its adjacency structure.

Vertices are the ``2^(L-1)`` binary words of length ``L-1``, encoded as
integers with the leftmost bit most significant.  There is an edge
``i -> j`` when ``j`` is ``i`` shifted left by one bit with a new last bit,
unless the length-``L`` word ``i_1 j`` spelled by the edge equals the UW.

Everything is stored as successor/predecessor lists: each vertex has at most
two successors, so dense matrices are only built on request for small ``L``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .uw import UniqueWord

__all__ = [
    "Digraph",
    "AdjacencySet",
    "build",
    "adjacency_set",
    "walk_count",
    "is_strongly_connected",
    "to_dot",
    "MAX_MATRIX_LENGTH",
    "MAX_DENSE_LENGTH",
]

MAX_MATRIX_LENGTH = 24
MAX_DENSE_LENGTH = 12


@dataclass(frozen=True)
class Digraph:
    L: int
    uw: UniqueWord
    succ: tuple[tuple[int, ...], ...]

    @property
    def vertex_count(self) -> int:
        return 1 << (self.L - 1)

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, js in enumerate(self.succ) for j in js)

    def vertex_label(self, v: int) -> str:
        return format(v, f"0{self.L - 1}b")


def build(k: UniqueWord) -> Digraph:
    L = k.L
    if L < 2:
        raise ValueError("the digraph needs a unique word of length >= 2")
    if L > MAX_MATRIX_LENGTH:
        raise ValueError(f"unique word length {L} exceeds the cap of {MAX_MATRIX_LENGTH}")
    kint = k.as_int()
    mask = (1 << (L - 1)) - 1
    succ = []
    for i in range(1 << (L - 1)):
        out = []
        for b in (0, 1):
            if ((i << 1) | b) != kint:
                out.append(((i << 1) | b) & mask)
        succ.append(tuple(out))
    return Digraph(L=L, uw=k, succ=tuple(succ))


@dataclass(frozen=True)
class AdjacencySet:
    """Sparse form of ``A``, ``A0``, ``A1`` plus the start/end vertices.

    ``succ0[i]`` / ``succ1[i]`` hold the successor of ``i`` whose last bit is
    0 / 1, or -1 if that edge is the forbidden one.  ``x`` is the vertex
    ``k_2^L`` and ``y`` the vertex ``k_1^{L-1}``.
    """

    graph: Digraph
    succ0: tuple[int, ...]
    succ1: tuple[int, ...]
    x: int
    y: int

    @property
    def L(self) -> int:
        return self.graph.L

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    @cached_property
    def pred(self) -> tuple[tuple[int, ...], ...]:
        pred = [[] for _ in range(self.vertex_count)]
        for i, js in enumerate(self.graph.succ):
            for j in js:
                pred[j].append(i)
        return tuple(tuple(p) for p in pred)

    def step(self, state: int, bit: int) -> int:
        """Follow the edge appending ``bit``; -1 when that edge is forbidden."""
        return self.succ1[state] if bit else self.succ0[state]

    def _dense(self, which) -> np.ndarray:
        if self.L > MAX_DENSE_LENGTH:
            raise ValueError(f"dense matrices are limited to L <= {MAX_DENSE_LENGTH}")
        n = self.vertex_count
        m = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for s in which(i):
                m[i, s] = 1
        return m

    @cached_property
    def A(self) -> np.ndarray:
        return self._dense(lambda i: self.graph.succ[i])

    @cached_property
    def A0(self) -> np.ndarray:
        return self._dense(lambda i: [self.succ0[i]] if self.succ0[i] >= 0 else [])

    @cached_property
    def A1(self) -> np.ndarray:
        return self._dense(lambda i: [self.succ1[i]] if self.succ1[i] >= 0 else [])

    @cached_property
    def x_vector(self) -> np.ndarray:
        v = np.zeros(self.vertex_count, dtype=np.int64)
        v[self.x] = 1
        return v

    @cached_property
    def y_vector(self) -> np.ndarray:
        v = np.zeros(self.vertex_count, dtype=np.int64)
        v[self.y] = 1
        return v


def adjacency_set(k: UniqueWord) -> AdjacencySet:
    g = build(k)
    L = k.L
    mask = (1 << (L - 1)) - 1
    kint = k.as_int()
    succ0, succ1 = [], []
    for i in range(g.vertex_count):
        for b, dst in ((0, succ0), (1, succ1)):
            word = (i << 1) | b
            dst.append(-1 if word == kint else word & mask)
    x = kint & mask
    y = kint >> 1
    return AdjacencySet(graph=g, succ0=tuple(succ0), succ1=tuple(succ1), x=x, y=y)


def walk_count(adj: AdjacencySet, steps: int, start: int | None = None, end: int | None = None) -> int:
    """Exact number of walks of length ``steps`` from ``start`` (default x) to ``end`` (default y)."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    start = adj.x if start is None else start
    end = adj.y if end is None else end
    vec = {start: 1}
    succ = adj.graph.succ
    for _ in range(steps):
        nxt: dict[int, int] = {}
        for i, v in vec.items():
            for j in succ[i]:
                nxt[j] = nxt.get(j, 0) + v
        vec = nxt
    return vec.get(end, 0)


def _reach(adjacency, root: int) -> set[int]:
    seen = {root}
    todo = deque([root])
    while todo:
        v = todo.popleft()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def is_strongly_connected(g: Digraph) -> bool:
    n = g.vertex_count
    if len(_reach(g.succ, 0)) != n:
        return False
    pred = [[] for _ in range(n)]
    for i, js in enumerate(g.succ):
        for j in js:
            pred[j].append(i)
    return len(_reach(pred, 0)) == n


def to_dot(g: Digraph) -> str:
    lines = [f'digraph "G_{g.uw}" {{']
    for v in range(g.vertex_count):
        lines.append(f'  "{g.vertex_label(v)}";')
    for i, js in enumerate(g.succ):
        for j in js:
            lines.append(f'  "{g.vertex_label(i)}" -> "{g.vertex_label(j)}" [label="{j & 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
