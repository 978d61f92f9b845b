"""Exact codeword counts, the characteristic polynomial h_k and growth rates.

All counts are Python ints.  ``c[n]`` is the number of length-``n``
codewords, ``s[n]`` the number of length-``n`` strings avoiding the UW
anywhere, ``F[n]`` the cumulative codeword count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .digraph import AdjacencySet, adjacency_set
from .uw import UniqueWord, all_words, overlap_function

__all__ = [
    "HPolynomial",
    "CountTable",
    "GrowthRate",
    "h_polynomial",
    "det_polynomial",
    "verify_h_equals_det",
    "raw_walk_counts",
    "count_codewords",
    "count_s",
    "cumulative",
    "count_table",
    "growth_rate",
    "growth_rate_bounds",
    "asymptotic_class",
    "asymptotic_classes",
    "brute_force_codeword_counts",
    "brute_force_avoid_counts",
    "brute_force_codewords",
    "MAX_DET_LENGTH",
    "ROOT_TOL",
    "CLASS_TOL",
]

MAX_DET_LENGTH = 8
ROOT_TOL = 1e-12
CLASS_TOL = 1e-9


@dataclass(frozen=True)
class HPolynomial:
    coeffs: tuple[int, ...]  # coeffs[d] multiplies z**d

    @property
    def degree(self) -> int:
        d = len(self.coeffs) - 1
        while d > 0 and self.coeffs[d] == 0:
            d -= 1
        return d

    def __call__(self, z: float) -> float:
        acc = 0.0
        for a in reversed(self.coeffs):
            acc = acc * z + a
        return acc

    def __str__(self) -> str:
        terms = []
        for d, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mono = "" if d == 0 else ("z" if d == 1 else f"z^{d}")
            mag = abs(a)
            body = f"{mag}{mono}" if (mag != 1 or d == 0) else mono
            terms.append(("-" if a < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def h_polynomial(k: UniqueWord) -> HPolynomial:
    """``h_k(z) = (1 - 2z)(1 + sum_{i=1}^{L-1} r_k(i) z^i) + z^L``."""
    L = k.L
    if L < 2:
        raise ValueError("h_k is defined for L >= 2")
    base = [1] + [overlap_function(k, i) for i in range(1, L)] + [0]
    h = [0] * (L + 1)
    for d in range(L):
        h[d] += base[d]
        h[d + 1] -= 2 * base[d]
    h[L] += 1
    return HPolynomial(tuple(h))


# --------------------------------------------------------------------------
# determinant of I - A z over Z[z]
#
# Polynomials are tuples of ints, lowest degree first, with no trailing zeros.

def _ptrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return _ptrim(out)


def _pneg(a):
    return tuple(-v for v in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(out)


def _pdivexact(a, b):
    """Exact quotient ``a / b`` in Z[z]; raises if the division leaves a remainder."""
    a = list(a)
    db = len(b) - 1
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) - 1 < db:
        if any(a):
            raise ArithmeticError("inexact polynomial division")
        return ()
    q = [0] * (len(a) - db)
    lead = b[-1]
    for i in range(len(a) - 1, db - 1, -1):
        if a[i] == 0:
            continue
        coef, rem = divmod(a[i], lead)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        q[i - db] = coef
        for j, v in enumerate(b):
            a[i - db + j] -= coef * v
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return _ptrim(q)


def _sparse_det(rows: list[dict[int, tuple]], n: int) -> tuple:
    """Determinant of a sparse ``n x n`` matrix over Z[z].

    Unit pivots (constant +-1 entries) are eliminated first by exact Schur
    complements, chosen by a Markowitz fill-in score; whatever is left is
    finished with dense Bareiss elimination.
    """
    rows = {r: dict(row) for r, row in enumerate(rows)}
    cols: dict[int, set[int]] = {c: set() for c in range(n)}
    for r, row in rows.items():
        for c in row:
            cols[c].add(r)
    det_sign = 1
    det_scale = (1,)
    while rows:
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                if v == (1,) or v == (-1,):
                    score = (len(row) - 1) * (len(cols[c]) - 1)
                    if best is None or score < best[0]:
                        best = (score, r, c)
                        if score == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, r, c = best
        # sign from the position of (r, c) among the remaining rows/cols
        pos_r = sum(1 for x in rows if x < r)
        pos_c = sum(1 for x in cols if x < c)
        pivot = rows[r][c]
        if (pos_r + pos_c) % 2:
            det_sign = -det_sign
        if pivot == (-1,):
            det_sign = -det_sign
        prow = rows.pop(r)
        for cc in prow:
            cols[cc].discard(r)
        for r2 in list(cols[c]):
            row2 = rows[r2]
            factor = row2[c] if pivot == (1,) else _pneg(row2[c])
            for cc, v in prow.items():
                upd = _padd(row2.get(cc, ()), _pneg(_pmul(factor, v)))
                if upd:
                    if cc not in row2:
                        cols[cc].add(r2)
                    row2[cc] = upd
                elif cc in row2:
                    del row2[cc]
                    cols[cc].discard(r2)
        del cols[c]
    if not rows:
        return _pmul((det_sign,), det_scale)
    rlist = sorted(rows)
    clist = sorted(cols)
    m = len(rlist)
    dense = [[rows[r].get(c, ()) for c in clist] for r in rlist]
    prev = (1,)
    sign = det_sign
    for kk in range(m - 1):
        if not dense[kk][kk]:
            swap = next((i for i in range(kk + 1, m) if dense[i][kk]), None)
            if swap is None:
                return ()
            dense[kk], dense[swap] = dense[swap], dense[kk]
            sign = -sign
        for i in range(kk + 1, m):
            for j in range(kk + 1, m):
                num = _padd(_pmul(dense[i][j], dense[kk][kk]), _pneg(_pmul(dense[i][kk], dense[kk][j])))
                dense[i][j] = _pdivexact(num, prev) if num else ()
            dense[i][kk] = ()
        prev = dense[kk][kk]
    return _pmul((sign,), dense[m - 1][m - 1])


def det_polynomial(adj: AdjacencySet) -> HPolynomial:
    """``det(I - A z)`` as an integer polynomial, computed symbolically."""
    n = adj.vertex_count
    rows = []
    for i in range(n):
        row: dict[int, tuple] = {i: (1,)}
        for j in adj.graph.succ[i]:
            row[j] = _padd(row.get(j, ()), (0, -1))
        rows.append({c: v for c, v in row.items() if v})
    return HPolynomial(_sparse_det(rows, n) or (0,))


def verify_h_equals_det(k: UniqueWord) -> bool:
    if k.L > MAX_DET_LENGTH:
        raise ValueError(f"symbolic determinant is limited to L <= {MAX_DET_LENGTH}")
    h = h_polynomial(k)
    d = det_polynomial(adjacency_set(k))
    return _ptrim(h.coeffs) == _ptrim(d.coeffs)


# --------------------------------------------------------------------------
# counts


def raw_walk_counts(adj: AdjacencySet, n_max: int) -> list[int]:
    """``x^T A^(n+L-1) y`` for ``n = 0..n_max`` by forward propagation."""
    L = adj.L
    succ = adj.graph.succ
    vec = {adj.x: 1}
    out = []
    for step in range(n_max + L):
        if step >= L - 1:
            out.append(vec.get(adj.y, 0))
        nxt: dict[int, int] = {}
        for i, v in vec.items():
            for j in succ[i]:
                nxt[j] = nxt.get(j, 0) + v
        vec = nxt
    return out[: n_max + 1]


def _lccde(seq: list[int], r: list[int], L: int, n_max: int) -> list[int]:
    seq = list(seq)
    for n in range(len(seq), n_max + 1):
        v = 2 * seq[n - 1] - seq[n - L]
        for i in range(1, L):
            if r[i]:
                v += 2 * seq[n - i - 1] - seq[n - i]
        seq.append(v)
    return seq


def count_codewords(k: UniqueWord, n_max: int, adj: AdjacencySet | None = None) -> list[int]:
    """``c[0..n_max]``.

    The first ``L`` terms are walk counts on the digraph; the rest follow the
    order-``L`` recursion whose characteristic polynomial is ``h_k``.  The
    recursion runs on the raw walk counts: ``x^T A^(L-1) y`` is 0 for some
    UWs (e.g. ``00``) while the table reports ``c[0] = 1`` for the null
    codeword.
    """
    if k.L < 2:
        raise ValueError("codeword counting needs L >= 2")
    if n_max < 0:
        return []
    L = k.L
    adj = adj or adjacency_set(k)
    raw = raw_walk_counts(adj, min(n_max, L - 1))
    r = [overlap_function(k, i) for i in range(L)]
    raw = _lccde(raw, r, L, n_max)
    raw[0] = 1
    return raw


def count_s(k: UniqueWord, n_max: int) -> list[int]:
    """``s[0..n_max]``: strings of each length with no occurrence of ``k``."""
    if k.L < 2:
        raise ValueError("s_k needs L >= 2")
    L = k.L
    r = [overlap_function(k, i) for i in range(L)]
    head = [1 << n for n in range(min(L, n_max + 1))]
    return _lccde(head, r, L, n_max)


def cumulative(c: list[int]) -> list[int]:
    out = []
    acc = 0
    for v in c:
        acc += v
        out.append(acc)
    return out


@dataclass
class CountTable:
    """``c``, ``s`` and ``F`` for one UW up to a horizon ``n_max``."""

    uw: UniqueWord
    c: list[int] = field(default_factory=list)
    s: list[int] = field(default_factory=list)
    F: list[int] = field(default_factory=list)

    @property
    def n_max(self) -> int:
        return len(self.c) - 1

    def F_at(self, n: int) -> int:
        """``F[n]`` with ``F[n] = 0`` for ``n < 0``."""
        return 0 if n < 0 else self.F[n]


def count_table(k: UniqueWord, n_max: int) -> CountTable:
    c = count_codewords(k, n_max)
    return CountTable(uw=k, c=c, s=count_s(k, n_max), F=cumulative(c))


# --------------------------------------------------------------------------
# growth rates


@dataclass(frozen=True)
class GrowthRate:
    value: float
    is_degenerate: bool = False

    def __float__(self) -> float:
        return self.value


def _smallest_positive_root(h: HPolynomial, grid: int = 4096) -> float:
    lo = 0.0
    flo = h(lo)
    for step in range(1, grid + 1):
        hi = step / grid
        fhi = h(hi)
        if fhi == 0.0:
            return hi
        if (flo > 0) != (fhi > 0):
            break
        lo, flo = hi, fhi
    else:
        raise ArithmeticError("h_k has no root in (0, 1]")
    while hi - lo > ROOT_TOL:
        mid = 0.5 * (lo + hi)
        fm = h(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def growth_rate(k: UniqueWord) -> GrowthRate:
    """Asymptotic ratio ``c[n+1]/c[n]``: reciprocal of the smallest positive root of ``h_k``."""
    if k.L < 2:
        raise ValueError("growth rate needs L >= 2")
    if k.L == 2 and k.bits[0] != k.bits[1]:
        return GrowthRate(1.0, is_degenerate=True)
    return GrowthRate(1.0 / _smallest_positive_root(h_polynomial(k)))


def growth_rate_bounds(L: int) -> tuple[float, float]:
    if L < 2:
        raise ValueError("L must be >= 2")
    return 2.0 - 2.0 ** (2 - L), 2.0 - 2.0 ** (-L)


def asymptotic_class(k: UniqueWord) -> float:
    return growth_rate(k).value


def asymptotic_classes(L: int) -> list[tuple[float, list[UniqueWord]]]:
    """Bucket every length-``L`` UW by growth rate (tolerance ``CLASS_TOL``), ascending."""
    buckets: list[tuple[float, list[UniqueWord]]] = []
    for k in sorted(all_words(L), key=asymptotic_class):
        g = asymptotic_class(k)
        if buckets and abs(buckets[-1][0] - g) <= CLASS_TOL:
            buckets[-1][1].append(k)
        else:
            buckets.append((g, [k]))
    return buckets


# --------------------------------------------------------------------------
# brute-force oracles: direct substring tests, no digraph involved


def _check_small(k: UniqueWord, n: int) -> None:
    if n + 2 * k.L > _kernels.MAX_PACKED_BITS or n > 26:
        raise ValueError("brute force is limited to small n and L")


def brute_force_codewords(k: UniqueWord, n: int) -> list[tuple[int, ...]]:
    """All length-``n`` codewords in lexicographic order (null codeword for ``n = 0``)."""
    if n == 0:
        return [()]
    _check_small(k, n)
    idx = np.flatnonzero(_kernels.codeword_mask(k.as_int(), k.L, n))
    return [tuple((int(v) >> (n - 1 - i)) & 1 for i in range(n)) for v in idx]


def brute_force_codeword_counts(k: UniqueWord, n_max: int) -> list[int]:
    out = [1]
    for n in range(1, n_max + 1):
        _check_small(k, n)
        out.append(int(_kernels.codeword_mask(k.as_int(), k.L, n).sum()))
    return out


def brute_force_avoid_counts(k: UniqueWord, n_max: int) -> list[int]:
    out = []
    for n in range(n_max + 1):
        _check_small(k, n)
        out.append(int(_kernels.avoid_mask(k.as_int(), k.L, n).sum()))
    return out


def log2_ratio(c_k: list[int], c_ref: list[int]) -> list[float]:
    """``log2(c_k[n] / c_ref[n])`` for plotting normalized counts."""
    return [math.log2(a / b) if a and b else float("nan") for a, b in zip(c_k, c_ref)]
