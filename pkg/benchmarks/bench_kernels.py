"""Time the numba kernels against their numpy fallbacks.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from udooc import _kernels as K


def cases(rng: np.random.Generator):
    bits = rng.integers(0, 2, 400_000, dtype=np.uint8)
    uw = np.array([0, 0, 0, 1], dtype=np.uint8)
    text_bits = rng.integers(0, 2, 200_000, dtype=np.uint8)
    return {
        "overlap_codes(L=18)": (K.nb_overlap_codes, K.np_overlap_codes, (18,)),
        "codeword_mask(0001, n=16)": (K.nb_codeword_mask, K.np_codeword_mask, (0b0001, 4, 16)),
        "avoid_mask(00000, n=18)": (K.nb_avoid_mask, K.np_avoid_mask, (0, 5, 18)),
        "separator_positions(400k bits)": (K.nb_separator_positions, K.np_separator_positions, (bits, uw)),
        "lz78_bits(200k bits)": (K.nb_lz78_bits, K.np_lz78_bits, (text_bits,)),
    }


def same(a, b) -> bool:
    if isinstance(a, tuple):
        return a == b
    return np.array_equal(np.asarray(a), np.asarray(b))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not K.HAVE_NUMBA:
        print("numba is not importable; nothing to compare")
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':34s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}  agree")
    for name, (nb, npf, a) in cases(rng).items():
        nb(*a)  # compile outside the timing
        t_nb = min(timeit.repeat(lambda: nb(*a), number=1, repeat=args.repeat))
        t_np = min(timeit.repeat(lambda: npf(*a), number=1, repeat=args.repeat))
        ok = same(nb(*a), npf(*a))
        print(f"{name:34s} {t_nb:10.4f} {t_np:10.4f} {t_np / t_nb:8.1f}x  {ok}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
