"""Upper bounds on the average UDOOC length.

Per-symbol functions take a (possibly grouped) model and return bits per
grouped symbol; :func:`bounds_report` divides by ``t`` to get per-letter
values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .codec import EncoderContext
from .enumeration import growth_rate, growth_rate_bounds
from .errors import DegenerateGrowth
from .source import SourceModel, average_length, entropy

__all__ = [
    "BoundsReport",
    "N_k",
    "K_k",
    "T_k",
    "bound1",
    "bound2",
    "bound3",
    "bound4",
    "bound4_grouped",
    "asymptotic_bound",
    "bounds_report",
]


def _xlog2x(p: float) -> float:
    return p * math.log2(p) if p > 0 else 0.0


def _growth(ctx: EncoderContext) -> float:
    g = growth_rate(ctx.uw)
    if g.is_degenerate or g.value <= 1.0:
        raise DegenerateGrowth(f"{ctx.uw} has growth rate 1; the bound needs g > 1")
    return g.value


def N_k(ctx: EncoderContext, M: int) -> int:
    """Smallest ``n`` with ``F[n] >= M``."""
    return ctx.length_of_index(M)


def _min_log_ratio(ctx: EncoderContext, ns, g: float) -> float:
    """``min over n of log(g^(1-n) F[n-1])`` (natural log)."""
    lg = math.log(g)
    best = math.inf
    for n in ns:
        f = ctx.F_at(n - 1)
        if f <= 0:
            return -math.inf
        best = min(best, (1 - n) * lg + math.log(f))
    return best


def K_k(ctx: EncoderContext, M: int) -> float:
    """``min{g^(1-n_i) F[n_i - 1] : i = 2..M}`` with ``n_i = min{n : F[n] >= i}``.

    ``n_i`` is nondecreasing and steps by at most one (``c[n] >= 1``), so the
    candidates are exactly ``n_2 .. n_M``.
    """
    if M < 2:
        raise ValueError("K_k needs M >= 2")
    g = _growth(ctx)
    lo, hi = ctx.length_of_index(2), ctx.length_of_index(M)
    return math.exp(_min_log_ratio(ctx, range(lo, hi + 1), g))


def T_k(ctx: EncoderContext, model: SourceModel) -> float:
    """As ``K_k`` but with ``n_i = min{n : F[n] >= 1/p_i}``."""
    if model.M < 2:
        raise ValueError("T_k needs M >= 2")
    g = _growth(ctx)
    q = model.probs[1:]
    q = q[q > 0]
    inv = 1.0 / q
    ctx.ensure_index(math.ceil(float(inv.max())))
    Ff = np.array([float(f) for f in ctx.F])
    ns = np.unique(np.searchsorted(Ff, inv * (1 - 1e-12), side="left"))
    return math.exp(_min_log_ratio(ctx, ns.tolist(), g))


def bound1(ctx: EncoderContext, p1: float, M: int) -> float:
    if not 0 < p1 <= 1 or M < 1:
        raise ValueError("need 0 < p1 <= 1 and M >= 1")
    return ctx.uw.L + (1 - p1) * N_k(ctx, M)


def bound2(ctx: EncoderContext, model: SourceModel) -> float:
    g = _growth(ctx)
    p1 = float(model.probs[0])
    if model.M < 2:
        return float(ctx.uw.L)
    H = entropy(model)
    K = K_k(ctx, model.M)
    return ctx.uw.L + (H + _xlog2x(p1)) / math.log2(g) + (1 - p1) * (1 - math.log(K) / math.log(g))


def bound3(L: int, model: SourceModel) -> float:
    if L <= 2:
        raise ValueError("the universal bound needs L > 2")
    p = model.probs
    p1 = float(p[0])
    p2 = float(p[1]) if model.M > 1 else 0.0
    H = entropy(model)
    return L + (H + _xlog2x(p1) + _xlog2x(p2)) / math.log2(2 - 2.0 ** (2 - L)) + (2 - 2 * p1 - p2)


def bound4(ctx: EncoderContext, model: SourceModel) -> float:
    """Second bound with ``K_k`` replaced by ``T_k`` (thresholds ``1/p_i``)."""
    g = _growth(ctx)
    p1 = float(model.probs[0])
    if model.M < 2:
        return float(ctx.uw.L)
    H = entropy(model)
    T = T_k(ctx, model)
    return ctx.uw.L + (H + _xlog2x(p1)) / math.log2(g) + (1 - p1) * (1 - math.log(T) / math.log(g))


def bound4_grouped(ctx: EncoderContext, model: SourceModel, t: int) -> float:
    """Per-letter bound for a ``t``-grouped model (``model`` holds the ``q_i``)."""
    return bound4(ctx, model) / t


def asymptotic_bound(model: SourceModel, ctx: EncoderContext) -> tuple[float, float]:
    H = entropy(model)
    g = _growth(ctx)
    L = ctx.uw.L
    second = H / math.log2(growth_rate_bounds(L)[0]) if L > 2 else math.inf
    return H / math.log2(g), second


@dataclass(frozen=True)
class BoundsReport:
    uw: str
    L: int
    t: int
    M: int
    p1: float
    p2: float
    H: float
    g: float
    N_k: int
    K_k: float | None
    T_k: float | None
    exact: float
    bound1: float
    bound2: float | None
    bound3: float | None
    bound4: float | None
    asymptotic: tuple[float, float] | None

    def rows(self) -> list[tuple[str, object]]:
        return [(name, getattr(self, name)) for name in self.__dataclass_fields__]


def bounds_report(ctx: EncoderContext, model: SourceModel, t: int = 1) -> BoundsReport:
    """Exact length and every applicable bound, all per letter."""
    L = ctx.uw.L
    p = model.probs
    p1 = float(p[0])
    p2 = float(p[1]) if model.M > 1 else 0.0
    g = growth_rate(ctx.uw)
    degenerate = g.is_degenerate or model.M < 2
    return BoundsReport(
        uw=str(ctx.uw), L=L, t=t, M=model.M, p1=p1, p2=p2,
        H=entropy(model) / t,
        g=g.value,
        N_k=N_k(ctx, model.M),
        K_k=None if degenerate else K_k(ctx, model.M),
        T_k=None if degenerate else T_k(ctx, model),
        exact=average_length(ctx, model) / t,
        bound1=bound1(ctx, p1, model.M) / t,
        bound2=None if degenerate else bound2(ctx, model) / t,
        bound3=bound3(L, model) / t if L > 2 else None,
        bound4=None if degenerate else bound4_grouped(ctx, model, t),
        asymptotic=None if g.is_degenerate else tuple(v / t for v in asymptotic_bound(model, ctx)),
    )
