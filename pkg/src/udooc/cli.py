"""``udooc`` command-line interface."""

from __future__ import annotations

import argparse
import csv
import io
import logging
import math
import sys
from pathlib import Path

from . import __version__
from .baselines import huffman_average_length, lz78_compressed_bits
from .bounds import bounds_report
from .codec import decode_codeword, decode_stream, encode_stream, encode_trace, make_context
from .container import Dictionary, pack, unpack
from .digraph import build, is_strongly_connected, to_dot
from .enumeration import (
    asymptotic_classes,
    count_table,
    growth_rate,
    growth_rate_bounds,
    h_polynomial,
)
from .errors import FramingError, InvalidCodeword
from .source import (
    blocks,
    empirical_model,
    entropy,
    load_probabilities,
    normalize_text,
    per_letter_length,
    product_model,
    save_model_csv,
)
from .uw import UniqueWord, canonical_class_representative, count_overlap_vectors

log = logging.getLogger("udooc")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_CODEC = 4


class UsageError(Exception):
    pass


def _uw(text: str) -> UniqueWord:
    try:
        return UniqueWord.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _codec_uw(k: UniqueWord) -> UniqueWord:
    if k.L < 2:
        raise UsageError("the codec needs a unique word of length >= 2")
    if k.L == 2 and k.bits[0] != k.bits[1]:
        log.warning("unique word %s gives a codebook that only grows linearly", k)
    return k


def _emit(rows: list[list], header: list[str], as_csv: bool, out) -> None:
    if as_csv:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    cells = [header] + [[_fmt(v) for v in r] for r in rows]
    widths = [max(len(str(c[i])) for c in cells) for i in range(len(header))]
    for r in cells:
        out.write("  ".join(str(v).rjust(w) for v, w in zip(r, widths)).rstrip() + "\n")


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.3f}" if math.isfinite(v) else str(v)
    if v is None:
        return "-"
    return str(v)


def _bits(c) -> str:
    return "".join(map(str, c))


def _read_corpus(path: str) -> str:
    return normalize_text(Path(path).read_bytes())


# --------------------------------------------------------------------------
# subcommands


def cmd_graph(args, out) -> int:
    g = build(args.uw)
    if args.dot:
        out.write(to_dot(g))
        return EXIT_OK
    out.write(f"uw {args.uw}  vertices {g.vertex_count}  edges {len(g.edges)}  "
              f"strongly connected {is_strongly_connected(g)}\n")
    for i, js in enumerate(g.succ):
        out.write(f"{g.vertex_label(i)} -> {' '.join(g.vertex_label(j) for j in js)}\n")
    return EXIT_OK


def cmd_enum(args, out) -> int:
    tab = count_table(args.uw, args.n_max)
    rows = [[n, tab.c[n], tab.s[n], tab.F[n]] for n in range(args.n_max + 1)]
    if not args.csv:
        out.write(f"h(z) = {h_polynomial(args.uw)}\n")
    _emit(rows, ["n", "c", "s", "F"], args.csv, out)
    return EXIT_OK


def cmd_growth(args, out) -> int:
    if args.uw is not None:
        g = growth_rate(args.uw)
        lo, hi = growth_rate_bounds(args.uw.L)
        _emit([[str(args.uw), g.value, lo, hi, g.is_degenerate]],
              ["uw", "g", "lower", "upper", "degenerate"], args.csv, out)
        return EXIT_OK
    if args.len < 2:
        raise UsageError("--len must be >= 2")
    rows = []
    for L in range(2, args.len + 1):
        lo, hi = growth_rate_bounds(L)
        ga = growth_rate(UniqueWord((0,) * L)).value
        gb = growth_rate(UniqueWord((0,) * (L - 1) + (1,))).value
        rows.append([L, hi, ga, gb, lo])
    _emit(rows, ["L", "2-2^-L", "g_all_zero", "g_zeros_then_one", "2-2^-(L-2)"], args.csv, out)
    return EXIT_OK


def cmd_classes(args, out) -> int:
    L = args.len
    if L < 2:
        raise UsageError("--len must be >= 2")
    rows = []
    for g, members in asymptotic_classes(L):
        reps = sorted({str(canonical_class_representative(k)) for k in members})
        rows.append([g, len(members), " ".join(reps)])
    if not args.csv:
        out.write(f"L={L}: {len(rows)} growth classes, N_L = {count_overlap_vectors(L)}\n")
    _emit(rows, ["g", "members", "representatives"], args.csv, out)
    return EXIT_OK


def _model(args, t: int):
    if args.probs:
        base = load_probabilities(args.probs)
        return base if t == 1 else product_model(base, t)
    if not args.corpus:
        raise UsageError("need --corpus or --probs")
    return empirical_model(_read_corpus(args.corpus), t, sliding=not args.blocks)


def cmd_bounds(args, out) -> int:
    k = _codec_uw(args.uw)
    model = _model(args, args.t)
    r = bounds_report(make_context(k), model, args.t)
    rows = []
    for name, v in r.rows():
        if isinstance(v, tuple):
            v = " ".join(_fmt(x) for x in v)
        rows.append([name, v])
    _emit(rows, ["field", "value"], args.csv, out)
    return EXIT_OK


def cmd_encode(args, out) -> int:
    ctx = make_context(_codec_uw(args.uw))
    tr = encode_trace(ctx, args.index, args.algorithm)
    out.write((_bits(tr.codeword) or "<null>") + "\n")
    if args.trace:
        out.write("rho " + " ".join(map(str, tr.rhos)) + "\n")
    return EXIT_OK


def cmd_decode(args, out) -> int:
    ctx = make_context(_codec_uw(args.uw))
    text = "" if args.codeword in ("-", "<null>", "null") else args.codeword
    if any(ch not in "01" for ch in text):
        raise UsageError(f"codeword must be a 0/1 string, got {args.codeword!r}")
    out.write(f"{decode_codeword(ctx, (int(ch) for ch in text), args.algorithm)}\n")
    return EXIT_OK


def _read_indices(args) -> list[int]:
    if args.indices is not None:
        text = args.indices.replace(",", " ")
    elif args.input:
        text = Path(args.input).read_text()
    else:
        text = sys.stdin.read()
    try:
        vals = [int(v) for v in text.split()]
    except ValueError as exc:
        raise UsageError(f"bad index list: {exc}") from None
    if any(v < 1 for v in vals):
        raise UsageError("message indices must be >= 1")
    return vals


def cmd_pack(args, out) -> int:
    ctx = make_context(_codec_uw(args.uw))
    stream = encode_stream(ctx, _read_indices(args))
    Path(args.output).write_bytes(pack(stream))
    out.write(f"{stream.message_count} messages, {stream.payload_bit_count} payload bits\n")
    return EXIT_OK


def cmd_unpack(args, out) -> int:
    stream, _ = unpack(Path(args.input).read_bytes())
    ctx = make_context(stream.uw)
    out.write("\n".join(map(str, decode_stream(ctx, stream, jobs=args.jobs))))
    if stream.message_count:
        out.write("\n")
    return EXIT_OK


def compress_text(stream: str, k: UniqueWord, t: int) -> tuple[bytes, float]:
    """Container bytes and payload bits per letter for a normalized stream."""
    model = empirical_model(stream, t) if stream else None
    rank = {s: i for i, s in enumerate(model.symbols, start=1)} if model else {}
    ctx = make_context(k)
    framed = encode_stream(ctx, (rank[b] for b in blocks(stream, t)) if stream else [])
    entries = tuple(s.encode("ascii") for s in model.symbols) if model else ()
    data = pack(framed, Dictionary(t, len(stream), entries))
    rate = framed.payload_bit_count / len(stream) if stream else 0.0
    return data, rate


def decompress_bytes(data: bytes, jobs: int = 1) -> str:
    framed, dictionary = unpack(data)
    if dictionary is None:
        raise FramingError("container has no dictionary section")
    ctx = make_context(framed.uw)
    parts = []
    for m in decode_stream(ctx, framed, jobs=jobs):
        if m > len(dictionary.entries):
            raise FramingError(f"index {m} is outside the {len(dictionary.entries)}-entry dictionary")
        parts.append(dictionary.entries[m - 1].decode("ascii"))
    return "".join(parts)[:dictionary.symbol_count]


def cmd_compress(args, out) -> int:
    if args.t > 3:
        log.warning("t=%d: the block alphabet may grow large", args.t)
    k = _codec_uw(args.uw)
    stream = _read_corpus(args.input)
    data, rate = compress_text(stream, k, args.t)
    Path(args.output).write_bytes(data)
    out.write(f"{len(stream)} letters, {rate:.3f} payload bits/letter, {len(data)} bytes written\n")
    return EXIT_OK


def cmd_decompress(args, out) -> int:
    text = decompress_bytes(Path(args.input).read_bytes(), jobs=args.jobs)
    if args.output:
        Path(args.output).write_text(text, encoding="ascii")
    else:
        out.write(text)
    return EXIT_OK


COMPARE_UWS = [("0" * L, "0" * (L - 1) + "1", L) for L in (2, 4, 6)]


def compare_rows(model_for_t) -> list[list]:
    """Per-letter UDOOC lengths for the comparison grid."""
    rows = []
    for a, b, L in COMPARE_UWS:
        ca, cb = make_context(UniqueWord.parse(a)), make_context(UniqueWord.parse(b))
        row = [L]
        for ctx in (ca, cb):
            for t in (1, 2, 3):
                row.append(per_letter_length(ctx, model_for_t(t), t))
        rows.append(row)
    return rows


def cmd_compare(args, out) -> int:
    models = {t: _model(args, t) for t in (1, 2, 3)}
    head = []
    for t in (1, 2, 3):
        head.append([f"entropy t={t}", entropy(models[t]) / t])
    for t in (1, 2, 3):
        head.append([f"huffman t={t}", huffman_average_length(models[t]) / t])
    if args.corpus:
        s = _read_corpus(args.corpus)
        head.append(["lz78", lz78_compressed_bits(s) / len(s) if s else 0.0])
    head.append(["lz77", "unavailable"])
    _emit(head, ["scheme", "bits/letter"], args.csv, out)
    out.write("\n")
    cols = ["L"] + [f"{w} t={t}" for w in ("zeros", "zeros-one") for t in (1, 2, 3)]
    _emit(compare_rows(models.__getitem__), cols, args.csv, out)
    return EXIT_OK


def table_rows(corpus: str | None = None, probs: str | None = None) -> dict[str, tuple[list[str], list[list]]]:
    out: dict[str, tuple[list[str], list[list]]] = {}
    rows = []
    for L in range(2, 9):
        lo, hi = growth_rate_bounds(L)
        rows.append([L, round(hi, 3), round(growth_rate(UniqueWord((0,) * L)).value, 3),
                     round(growth_rate(UniqueWord((0,) * (L - 1) + (1,))).value, 3), round(lo, 3)])
    out["table1"] = (["L", "2-2^-L", "g_all_zero", "g_zeros_then_one", "2-2^-(L-2)"], rows)
    out["table2"] = (["L", "N_L"], [[L, count_overlap_vectors(L)] for L in range(1, 14)])
    models = {}
    if corpus:
        s = normalize_text(Path(corpus).read_bytes())
        models["alice"] = {t: empirical_model(s, t, sliding=True) for t in (1, 2, 3)}
        rows = []
        for kind in ("all_zero", "zeros_then_one"):
            for L in range(3, 7):
                k = UniqueWord((0,) * L if kind == "all_zero" else (0,) * (L - 1) + (1,))
                ctx = make_context(k)
                for t in (1, 2, 3):
                    r = bounds_report(ctx, models["alice"][t], t)
                    rows.append([kind, L, t, round(r.exact, 3), round(r.bound1, 3),
                                 round(r.bound2, 3), round(r.bound3, 3)])
        out["table4"] = (["uw", "L", "t", "exact", "bound1", "bound2", "bound3"], rows)
    if probs:
        base = load_probabilities(probs)
        models["probs"] = {t: (base if t == 1 else product_model(base, t)) for t in (1, 2, 3)}
    rows = []
    for name, ms in models.items():
        ent = [entropy(ms[t]) / t for t in (1, 2, 3)]
        huf = [huffman_average_length(ms[t]) / t for t in (1, 2, 3)]
        for r in compare_rows(ms.__getitem__):
            rows.append([name] + [round(v, 3) for v in ent + huf] + [r[0]] + [round(v, 3) for v in r[1:]])
    if rows:
        head = ["source"] + [f"H t={t}" for t in (1, 2, 3)] + [f"huffman t={t}" for t in (1, 2, 3)] + ["L"]
        head += [f"{w} t={t}" for w in ("zeros", "zeros-one") for t in (1, 2, 3)]
        out["table5"] = (head, rows)
    return out


def cmd_tables(args, out) -> int:
    tabs = table_rows(args.corpus, args.probs)
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        for name, (head, rows) in tabs.items():
            with open(d / f"{name}.csv", "w", newline="") as fh:
                _emit(rows, head, True, fh)
            out.write(f"wrote {d / (name + '.csv')}\n")
        return EXIT_OK
    for name, (head, rows) in tabs.items():
        out.write(f"# {name}\n")
        _emit(rows, head, args.csv, out)
        out.write("\n")
    return EXIT_OK


def cmd_stats(args, out) -> int:
    model = empirical_model(_read_corpus(args.corpus), args.t, sliding=not args.blocks)
    save_model_csv(model, args.output)
    out.write(f"{model.M} blocks, entropy {entropy(model) / args.t:.4f} bits/letter\n")
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="udooc", description="Uniquely decodable one-to-one codes.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def uw_arg(sp, positional=False, required=True):
        if positional:
            sp.add_argument("uw", type=_uw, help="unique word as a 0/1 string")
        else:
            sp.add_argument("--uw", type=_uw, required=required, help="unique word as a 0/1 string")

    def source_args(sp):
        sp.add_argument("--corpus", help="plain-text corpus")
        sp.add_argument("--probs", help="CSV of symbol,probability rows")
        sp.add_argument("--blocks", action="store_true",
                        help="count non-overlapping blocks instead of sliding windows")

    sp = sub.add_parser("graph", help="print the UW-forbidding digraph")
    uw_arg(sp, positional=True)
    sp.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("enum", help="codeword counts c, s, F")
    uw_arg(sp, positional=True)
    sp.add_argument("--n-max", type=int, default=20)
    sp.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_enum)

    sp = sub.add_parser("growth", help="growth rates of the extreme UWs for L = 2..len")
    sp.add_argument("--len", type=int, default=8)
    uw_arg(sp, required=False)
    sp.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_growth)

    sp = sub.add_parser("classes", help="asymptotic equivalence classes for one length")
    sp.add_argument("--len", type=int, required=True)
    sp.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_classes)

    sp = sub.add_parser("bounds", help="exact length and upper bounds")
    uw_arg(sp)
    source_args(sp)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_bounds)

    for name, func in (("encode", cmd_encode), ("decode", cmd_decode)):
        sp = sub.add_parser(name, help=f"{name} a single message index")
        uw_arg(sp)
        if name == "encode":
            sp.add_argument("--index", type=int, required=True)
            sp.add_argument("--trace", action="store_true", help="print progressive metrics")
        else:
            sp.add_argument("codeword", help="0/1 string; '-' for the null codeword")
        sp.add_argument("--algorithm", choices=["auto", "general", "fast"], default="auto")
        sp.set_defaults(func=func)

    sp = sub.add_parser("pack", help="frame message indices into a .udo container")
    uw_arg(sp)
    sp.add_argument("--indices", help="comma/space separated indices (default: stdin)")
    sp.add_argument("--input", help="file of whitespace separated indices")
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_pack)

    sp = sub.add_parser("unpack", help="decode a .udo container to message indices")
    sp.add_argument("input")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_unpack)

    sp = sub.add_parser("compress", help="compress a text file")
    sp.add_argument("input")
    uw_arg(sp)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_compress)

    sp = sub.add_parser("decompress", help="restore the normalized text")
    sp.add_argument("input")
    sp.add_argument("-o", "--output")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_decompress)

    sp = sub.add_parser("compare", help="entropy, Huffman, LZ78 and UDOOC lengths")
    source_args(sp)
    sp.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("tables", help="regenerate the reference tables")
    sp.add_argument("--corpus")
    sp.add_argument("--probs")
    sp.add_argument("--out-dir")
    sp.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("stats", help="dump the ranked block distribution")
    sp.add_argument("--corpus", required=True)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--blocks", action="store_true")
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_stats)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="udooc: %(levelname)s: %(message)s")
    out = out or sys.stdout
    if getattr(args, "t", 1) < 1:
        parser.error("--t must be >= 1")
    try:
        return args.func(args, out)
    except (InvalidCodeword, FramingError) as exc:
        print(f"udooc: {exc}", file=sys.stderr)
        return EXIT_CODEC
    except OSError as exc:
        print(f"udooc: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, ValueError) as exc:
        print(f"udooc: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
