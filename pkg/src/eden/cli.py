"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data error.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings

from .coloring import node_colors, to_dot
from .encoders import (
    BaselineMode,
    DegenerateRangeWarning,
    EncoderConfig,
    LaplacianSelection,
    canonicalize_signs,
    eden_encode,
    encode_baseline,
    laplacian_pe,
)
from .graph import GraphParseError
from .io import features_csv, features_json, load_graphs
from .isotest import Thresholds, calibrate_thresholds, compare_pair, dataset_scan
from .spectral import Centering, SpectralError

EXIT_USAGE = 1
EXIT_DATA = 2
ENCODERS = ("eden", "s1", "s2", "s3", "lap-min", "lap-max")


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {value}")
    return value


def _encoder_cfg(args, m=None) -> EncoderConfig:
    return EncoderConfig(m=m or args.dims, centering=Centering(args.centering))


def _load(path):
    try:
        return load_graphs(path)
    except FileNotFoundError as exc:
        raise UsageError(str(exc)) from None
    except GraphParseError as exc:
        raise DataError(str(exc)) from None


def _emit(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _encode_one(g, args, cfg):
    if args.encoder == "eden":
        return eden_encode(g, cfg)
    if args.encoder in ("s1", "s2", "s3"):
        return encode_baseline(g, BaselineMode(args.encoder), cfg)
    which = LaplacianSelection.SMALLEST_NONTRIVIAL if args.encoder == "lap-min" else LaplacianSelection.LARGEST
    return laplacian_pe(g, cfg.m, which, cfg.gap_tol, cfg.tie_tol)


def cmd_encode(args):
    graphs = _load(args.input)
    cfg = _encoder_cfg(args)
    encs = []
    for i, g in enumerate(graphs):
        if cfg.m > g.n:
            raise DataError(f"graph {i} has n={g.n} < dims={cfg.m}")
        encs.append(canonicalize_signs(_encode_one(g, args, cfg)))
    records = [
        {
            "graph": i,
            "n": e.n,
            "dims": e.m,
            "encoder": args.encoder,
            "singular_values": e.singular_values.tolist(),
            "degenerate": e.degenerate,
            "repeated": e.repeated,
            "ambiguous_columns": list(e.ambiguous),
        }
        for i, e in enumerate(encs)
    ]
    if args.format == "csv":
        text = features_csv([e.values for e in encs])
    elif args.format == "json":
        text = features_json([dict(r, features=e.values.tolist()) for r, e in zip(records, encs)])
    else:
        raise UsageError("encode writes csv or json; use the color command for dot")
    _emit(text, args.out)
    if args.out:
        with open(args.out + ".sv.json", "w") as fh:
            json.dump(records, fh, indent=1)
            fh.write("\n")
    for r in records:
        if r["repeated"]:
            print(f"warning: graph {r['graph']}: repeated spectrum, features are not permutation-stable",
                  file=sys.stderr)


def cmd_color(args):
    if args.dims != 3:
        raise UsageError(f"color needs --dims 3, got {args.dims}")
    if args.format not in (None, "dot"):
        raise UsageError("color only writes dot")
    graphs = _load(args.input)
    cfg = _encoder_cfg(args, 3)
    parts = []
    for i, g in enumerate(graphs):
        if g.n < 3:
            raise DataError(f"graph {i} has n={g.n} < 3 nodes")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DegenerateRangeWarning)
            colors, enc = node_colors(g, cfg, per_row=args.per_row)
        if enc.repeated:
            print(f"warning: graph {i}: repeated singular values {enc.singular_values.round(6).tolist()}; "
                  "colours are not stable under relabelling", file=sys.stderr)
        parts.append(to_dot(g, colors, name=f"G{i}"))
    _emit("".join(parts), args.out)


def _thresholds(args, corpus, cfg):
    if args.tau_sv is not None and args.tau_row is not None:
        return Thresholds(args.tau_sv, args.tau_row)
    t = calibrate_thresholds(corpus, args.trials, args.seed, cfg)
    return Thresholds(args.tau_sv or t.tau_sv, args.tau_row or t.tau_row, t.safety)


def cmd_pair(args):
    ga, gb = _load(args.first)[0], _load(args.second)[0]
    cfg = _encoder_cfg(args)
    if ga.n == gb.n and ga.n < cfg.m:
        raise DataError(f"graphs have n={ga.n} < dims={cfg.m}")
    usable = [g for g in (ga, gb) if g.n >= cfg.m]
    t = _thresholds(args, usable, cfg) if usable else Thresholds()
    v = compare_pair(ga, gb, t, cfg)
    out = v.to_dict()
    out["thresholds"] = t.to_dict()
    _emit(json.dumps(out, indent=2) + "\n", args.out)


def cmd_scan(args):
    corpus = _load(args.corpus)
    cfg = _encoder_cfg(args)
    if any(g.n < cfg.m for g in corpus):
        raise DataError(f"corpus contains graphs with fewer than {cfg.m} nodes")
    t = _thresholds(args, corpus, cfg)
    report = dataset_scan(corpus, t, cfg, workers=args.workers)
    _emit(report.to_json() + "\n", args.out)


def cmd_calibrate(args):
    corpus = _load(args.corpus)
    cfg = _encoder_cfg(args)
    if any(g.n < cfg.m for g in corpus):
        raise DataError(f"corpus contains graphs with fewer than {cfg.m} nodes")
    t = calibrate_thresholds(corpus, args.trials, args.seed, cfg)
    _emit(json.dumps(t.to_dict(), indent=2) + "\n", args.out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eden", description="Equivariant distance encodings and isomorphism screening.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt_choices=("csv", "json", "dot"), fmt_default=None):
        sp.add_argument("--dims", type=_positive_int, default=3, help="output dimension m (default 3)")
        sp.add_argument("--centering", choices=("mean", "none"), default="mean")
        sp.add_argument("--format", choices=fmt_choices, default=fmt_default)
        sp.add_argument("--out", metavar="PATH", help="write here instead of stdout")

    def thresholds(sp):
        sp.add_argument("--tau-sv", type=_positive_float, help="singular-value threshold (default: calibrated)")
        sp.add_argument("--tau-row", type=_positive_float, help="row-multiset threshold (default: calibrated)")
        sp.add_argument("--trials", type=_positive_int, default=5, help="relabelled copies per graph when calibrating")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("encode", help="write per-node features")
    sp.add_argument("input", help="graph6 file, edge-list file, or fixture name")
    sp.add_argument("--encoder", choices=ENCODERS, default="eden")
    common(sp, fmt_default="csv")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("color", help="write a DOT graph with RGB node colours from 3-D EDEN")
    sp.add_argument("input")
    sp.add_argument("--per-row", action="store_true", help="normalise each node's colour separately")
    common(sp, fmt_default="dot")
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("pair", help="compare two graphs")
    sp.add_argument("first")
    sp.add_argument("second")
    common(sp)
    thresholds(sp)
    sp.set_defaults(func=cmd_pair)

    sp = sub.add_parser("scan", help="count unseparated pairs in a graph6 corpus")
    sp.add_argument("corpus")
    sp.add_argument("--workers", type=_positive_int, default=1)
    common(sp)
    thresholds(sp)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("calibrate", help="calibrate judgment thresholds on a corpus")
    sp.add_argument("corpus")
    common(sp)
    thresholds(sp)
    sp.set_defaults(func=cmd_calibrate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"eden: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, GraphParseError, SpectralError, ValueError) as exc:
        print(f"eden: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return 0


if __name__ == "__main__":
    sys.exit(main())
