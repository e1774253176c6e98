"""Command line entry point: describe, match, query, index, bench."""

from __future__ import annotations

import argparse
import csv
import io
import logging
import math
import sys
from pathlib import Path

from . import __version__
from .contour import DEFAULT_RESAMPLE, DEFAULT_THRESHOLD, load_binary_image, resample, trace_outer_contour
from .corner import CornerParams
from .descriptor import atomic_write, read_descriptor, to_xml
from .errors import ShapeXmlError
from .features import QuantizerConfig, describe_shape
from .matching import MODES, CostModel, _concat, best_rotation, edit_distance, shape_distance
from .retrieval import BenchmarkConfig, build_store, query, run_benchmark

log = logging.getLogger("shapexml")


class UsageError(Exception):
    pass


def _csv_text(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _write_text(path, text: str) -> None:
    atomic_write(Path(path), text.encode("utf-8"))


def _fmt(x: float) -> str:
    return f"{x:g}"


def _cost_model(args) -> CostModel:
    return CostModel(gap_w=args.gap, intra_step=args.intra_step, cross_class=args.cross_class)


def _k_list(text: str) -> list[int]:
    try:
        ks = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None
    if not ks or min(ks) < 1:
        raise argparse.ArgumentTypeError("k values must be positive")
    return ks


# ---------------------------------------------------------------- commands


def cmd_describe(args) -> int:
    path = Path(args.image)
    try:
        params = CornerParams(args.dmin, args.dmax, math.radians(args.alpha_max_deg))
        q = QuantizerConfig.from_file(args.quantizer) if args.quantizer else QuantizerConfig()
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from None
    img = load_binary_image(path.read_bytes(), threshold=args.threshold)
    contour = resample(trace_outer_contour(img), args.resample)
    name = args.name if args.name is not None else path.stem
    d = describe_shape(contour, params, q, name=name, closed_fallback=args.split_closed)
    out = Path(args.output) if args.output else path.with_suffix(".xml")
    atomic_write(out, to_xml(d))
    print(f"NP {d.np}")
    print(f"NC {d.nc}")
    for k, code in enumerate(d.curves, start=1):
        print(f"{k} {code.kind} {code}")
    return 0


def cmd_match(args) -> int:
    a, b = read_descriptor(args.a), read_descriptor(args.b)
    cm = _cost_model(args)
    res = shape_distance(a, b, cm, args.mode, args.tol)
    if args.dump_matrix:
        r = best_rotation(a, b, cm)[0] if args.mode == "concatenated" else 0
        sa, sb = _concat(a.curves), _concat(b.curves[r:] + b.curves[:r])
        _, D = edit_distance(sa, sb, cm)
        rows = [["", "-", *sb]]
        for i, label in enumerate(["-", *sa]):
            rows.append([label, *(_fmt(v) for v in D[i])])
        _write_text(args.dump_matrix, _csv_text(rows))
    print(_fmt(res.shape_distance))
    return 0


def cmd_query(args) -> int:
    store = build_store(args.db, separator=args.separator)
    q = read_descriptor(args.q)
    res = query(store, q, args.top, args.tol, args.mode, _cost_model(args))
    rows = [["rank", "name", "distance"]]
    rows += [[i, name, _fmt(dist)] for i, (name, dist) in enumerate(res.hits, start=1)]
    text = _csv_text(rows)
    if res.fallback:
        log.warning("no entry passed the global filter; ranked the whole store")
    if args.output:
        _write_text(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_index(args) -> int:
    store = build_store(args.db, separator=args.separator)
    for w in store.warnings:
        log.warning(w)
    rows = [["name", "class", "np", "nc", "codes"]]
    for e in store.entries:
        d = e.descriptor
        codes = " ".join(f"{c.kind}:{c}" for c in d.curves)
        rows.append([e.name, e.label, "" if d.np is None else d.np, d.nc, codes])
    text = _csv_text(rows)
    if args.output:
        _write_text(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    store = build_store(args.db, separator=args.separator)
    cfg = BenchmarkConfig(k=args.k[0], iterations=args.iters, seed=args.seed, tol=args.tol, mode=args.mode)
    report = run_benchmark(store, cfg, args.k, _cost_model(args))
    summary = _csv_text([["k", "percent_matching"], *[[k, f"{p:.4f}"] for k, p in report.summary_rows()]])
    if args.report:
        rows = [["k", "iteration", "accuracy"]]
        rows += [[k, it, f"{acc:.4f}"] for k, it, acc in report.iteration_rows()]
        _write_text(args.report, _csv_text(rows))
    if args.summary:
        _write_text(args.summary, summary)
    else:
        sys.stdout.write(summary)
    return 0


# ---------------------------------------------------------------- parser


def _add_matching(p) -> None:
    p.add_argument("--mode", choices=MODES, default="per-curve-best")
    p.add_argument("--tol", type=int, default=1, help="global filter tolerance")
    p.add_argument("--gap", type=float, default=2.0, help="insertion/deletion cost")
    p.add_argument("--intra-step", type=float, default=0.5, help="cost per bin step within a feature class")
    p.add_argument("--cross-class", type=float, default=2.0, help="cost between feature classes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shapexml", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", help="image -> descriptor XML")
    p.add_argument("image")
    p.add_argument("-o", "--output", help="XML path (default: image path with .xml)")
    p.add_argument("--name", help="shape name (default: image file stem)")
    p.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD, choices=range(256), metavar="0..255")
    p.add_argument("--resample", type=int, default=DEFAULT_RESAMPLE)
    p.add_argument("--dmin", type=float, default=CornerParams.d_min)
    p.add_argument("--dmax", type=float, default=CornerParams.d_max)
    p.add_argument("--alpha-max-deg", type=float, default=150.0)
    p.add_argument("--quantizer", help="key=value quantizer config file")
    p.add_argument("--split-closed", action="store_true",
                   help="cut shapes with fewer than two corners into two halves instead of failing")
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("match", help="distance between two descriptor files")
    p.add_argument("a")
    p.add_argument("b")
    _add_matching(p)
    p.add_argument("--dump-matrix", metavar="CSV", help="write the DP score matrix")
    p.set_defaults(func=cmd_match)

    for name, func, helptext in (
        ("query", cmd_query, "rank a descriptor database against a query"),
        ("index", cmd_index, "list the descriptors of a database"),
        ("bench", cmd_bench, "K-reference percentage-of-matching benchmark"),
    ):
        p = sub.add_parser(name, help=helptext)
        if name == "query":
            p.add_argument("q")
            p.add_argument("--db", required=True)
            p.add_argument("--top", type=int, default=10)
        elif name == "index":
            p.add_argument("db")
        else:
            p.add_argument("--db", required=True)
            p.add_argument("--k", type=_k_list, default=[3, 7, 15, 20, 50])
            p.add_argument("--iters", type=int, default=10)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--report", help="per-iteration CSV")
            p.add_argument("--summary", help="k vs percentage CSV (default: stdout)")
        p.add_argument("--separator", default="-", help="class label separator in file names")
        if name != "index":
            _add_matching(p)
        if name != "bench":
            p.add_argument("-o", "--output", help="CSV path (default: stdout)")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"shapexml: error: {exc}", file=sys.stderr)
        return 2
    except ShapeXmlError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
