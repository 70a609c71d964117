"""``topo`` command line.

Exit codes: 0 success, 1 input error, 2 internal error.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
from collections import defaultdict
from pathlib import Path

import numpy as np

from . import dk
from . import local_metrics as lm
from .graph import GraphError, TopologyGraph, format_edge_list, read_graph, write_graph
from .ingest import FilterPolicy, merge_graphs, overlap_stats, parse_edge_list, parse_whois_rpsl
from .report import DEFAULT_FIT_RANGES, SummaryOptions, compare, emit_plots, summary
from .series import PlotSeries, fmt

log = logging.getLogger("astopo")


class InputError(Exception):
    pass


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError("expected LO:HI")
    return int(lo), int(hi)


def _fit_range(text: str) -> tuple[str, tuple[float, float]]:
    metric, sep, rng = text.partition("=")
    lo, sep2, hi = rng.partition(":")
    if not sep or not sep2 or metric not in DEFAULT_FIT_RANGES:
        raise argparse.ArgumentTypeError(
            f"expected METRIC=LO:HI with METRIC in {', '.join(DEFAULT_FIT_RANGES)}")
    return metric, (float(lo), float(hi))


def _add_policy(p: argparse.ArgumentParser):
    p.add_argument("--drop-private", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--private-range", type=_range, default=(64512, 65535), metavar="LO:HI")
    p.add_argument("--drop-ambiguous", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--drop-indirect", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--direct-token", action="append", metavar="STR",
                   help="third-column value marking a direct link (repeatable; default d, direct)")


def _policy(args) -> FilterPolicy:
    return FilterPolicy(
        drop_private=args.drop_private,
        private_range=tuple(args.private_range),
        drop_ambiguous_tokens=args.drop_ambiguous,
        drop_indirect=args.drop_indirect,
        direct_tokens=tuple(t.lower() for t in args.direct_token) if args.direct_token else ("d", "direct"),
    )


def _add_summary_opts(p: argparse.ArgumentParser):
    p.add_argument("--fit-range", type=_fit_range, action="append", default=[], metavar="METRIC=LO:HI")
    p.add_argument("--r2-threshold", type=float, default=0.8)
    p.add_argument("--dense-threshold", type=int, default=2000)
    p.add_argument("--format", choices=["tsv"], default="tsv")


def _summary_opts(args) -> SummaryOptions:
    opts = SummaryOptions(r2_threshold=args.r2_threshold, dense_threshold=args.dense_threshold)
    opts.fit_ranges.update(dict(args.fit_range))
    return opts


def _load(path) -> TopologyGraph:
    try:
        return read_graph(path)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except (ValueError, GraphError) as exc:
        raise InputError(f"{path}: {exc}")


def _write(text: str, path: str | None):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_ingest(args):
    policy = _policy(args)
    try:
        raw = Path(args.input).read_bytes()
    except OSError as exc:
        raise InputError(str(exc))
    res = (parse_whois_rpsl if args.kind == "rpsl" else parse_edge_list)(raw, policy)
    _write(format_edge_list(res.graph, [f"source\t{args.input}", f"kind\t{args.kind}"]), args.output)
    if args.rejections:
        _write(res.rejection_tsv(), args.rejections)
    else:
        sys.stderr.write(res.rejection_tsv())


def cmd_merge(args):
    g = merge_graphs(_load(p) for p in args.inputs)
    _write(format_edge_list(g, [f"merged\t{len(args.inputs)} graphs"]), args.output)


def cmd_overlap(args):
    ov = overlap_stats(_load(args.a), _load(args.b))
    _write("".join(f"{k}\t{fmt(v)}\n" for k, v in ov.rows()), args.output)


def cmd_metrics(args):
    g = _load(args.graph)
    label = args.label or Path(args.graph).stem
    for p in emit_plots(g, args.out_dir, label, _summary_opts(args)):
        print(p)


def cmd_summary(args):
    s = summary(_load(args.graph), _summary_opts(args))
    _write(s.to_tsv(), args.output)


def cmd_generate(args):
    seed = _load(args.seed_graph)
    spec = dk.DkModelSpec(args.model, seed, args.rng_seed, args.swap_factor)
    g = dk.generate(spec)
    write_graph(g, args.output, [f"model\t{args.model}", f"rng\t{dk.RNG_ALGORITHM}",
                                 f"rng_seed\t{args.rng_seed}", f"swap_factor\t{args.swap_factor}"])


def cmd_model_compare(args):
    g = _load(args.graph)
    label = args.label or Path(args.graph).stem
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    models = [m.strip().lower() for m in args.models.split(",") if m.strip()]
    notes = {"rng": dk.RNG_ALGORITHM, "rng_seed": str(args.rng_seed), "samples": str(args.samples),
             "method": "monte-carlo"}
    pred = dk.analytical_predictions(g)
    rows = [f"# graph\t{label}", f"# rng\t{dk.RNG_ALGORITHM}",
            "# metric\tmodel\tobserved\tensemble_mean\tensemble_std\tmissing",
            f"knn_analytic\t0k\t-\t{fmt(pred.knn_0k)}\t-\t-",
            f"knn_analytic\t1k\t-\t{fmt(pred.knn_1k)}\t-\t-",
            f"c_analytic\t0k\t-\t{fmt(pred.c_0k)}\t-\t-",
            f"c_analytic\t1k\t-\t{fmt(pred.c_1k)}\t-\t-"]
    for level in models:
        spec = dk.DkModelSpec(level, g, args.rng_seed, args.swap_factor, args.samples)
        samples = list(dk.ensemble(spec))
        for metric, fn in dk.METRICS.items():
            try:
                observed = fmt(fn(g))
            except lm.UndefinedMetric:
                observed = "-"
            vals, missing = [], 0
            for h in samples:
                try:
                    vals.append(fn(h))
                except (lm.UndefinedMetric, GraphError):
                    missing += 1
            mean = fmt(np.mean(vals)) if vals else "-"
            std = fmt(np.std(vals)) if vals else "-"
            rows.append(f"{metric}\t{level}\t{observed}\t{mean}\t{std}\t{missing}")
        # JDD ratio: observed P(k1,k2) against the ensemble-mean model P(k1,k2)
        acc = defaultdict(float)
        for h in samples:
            if h.m:
                for cell, p in lm.joint_degree_distribution(h).ordered_items():
                    acc[cell] += p / len(samples)
        ratio = [(a, b, math.log10(p / acc[(a, b)]))
                 for (a, b), p in lm.joint_degree_distribution(g).ordered_items() if acc.get((a, b), 0) > 0]
        (out / f"{label}.jdd_ratio.{level}.tsv").write_text(
            PlotSeries("jdd_ratio", label, ratio, notes=dict(notes, model=level)).to_tsv())
        per_k = defaultdict(list)
        for h in samples:
            for k, c in lm.clustering(h).by_degree.items():
                per_k[k].append(c)
        (out / f"{label}.clustering.{level}.tsv").write_text(
            PlotSeries("c2k", label, [(k, float(np.mean(v))) for k, v in sorted(per_k.items())],
                       notes=dict(notes, model=level)).to_tsv())
    (out / f"{label}.jdd_ratio.analytic_1k.tsv").write_text(
        PlotSeries("jdd_ratio", label, [(a, b, v) for (a, b), v in dk.jdd_ratio_matrix(g).items()],
                   notes={"method": "analytic"}).to_tsv())
    obs = lm.clustering(g)
    (out / f"{label}.clustering.observed.tsv").write_text(
        PlotSeries("clustering", label, list(obs.by_degree.items()),
                   notes={"C_bar": fmt(obs.mean), "C_1K": fmt(pred.c_1k), "C_0K": fmt(pred.c_0k)}).to_tsv())
    (out / f"{label}.model_compare.tsv").write_text("\n".join(rows) + "\n")
    print(out / f"{label}.model_compare.tsv")


def cmd_compare(args):
    a, b = _load(args.a), _load(args.b)
    labels = tuple(args.labels.split(",")) if args.labels else (Path(args.a).stem, Path(args.b).stem)
    if len(labels) != 2:
        raise InputError("--labels needs two comma-separated names")
    rep = compare(a, b, labels, induced=args.induced, options=_summary_opts(args))
    text = rep.to_tsv()
    if rep.induced:
        for lab, s in zip(labels, rep.induced):
            text += f"# induced summary\t{lab}\n" + s.to_tsv()
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        _write(text, str(out / f"{labels[0]}_vs_{labels[1]}.compare.tsv"))
    else:
        _write(text, None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="topo", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse an edge list or RPSL dump into a canonical edge list")
    p.add_argument("input")
    p.add_argument("--kind", choices=["edges", "rpsl"], default="edges")
    p.add_argument("-o", "--output")
    p.add_argument("--rejections", help="write the rejection report TSV here (default stderr)")
    _add_policy(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("merge", help="union of several canonical edge lists")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("overlap", help="node/edge overlap counts of two graphs")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("metrics", help="emit per-metric plot-data TSVs")
    p.add_argument("graph")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--label")
    _add_summary_opts(p)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("summary", help="summary statistics table")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    _add_summary_opts(p)
    p.set_defaults(func=cmd_summary)

    p = sub.add_parser("generate", help="generate a 0K/1K/2K-random graph")
    p.add_argument("--model", choices=["0k", "1k", "2k"], required=True)
    p.add_argument("--seed-graph", required=True)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--swap-factor", type=float, default=10.0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("model-compare", help="compare a graph against dK-random ensembles")
    p.add_argument("graph")
    p.add_argument("--models", default="0k,1k,2k")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--swap-factor", type=float, default=10.0)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--label")
    p.set_defaults(func=cmd_model_compare)

    p = sub.add_parser("compare", help="overlap plus A-only degree profile; optional induced-subgraph summaries")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--labels", help="NAME_A,NAME_B")
    p.add_argument("--induced", action="store_true")
    p.add_argument("--out-dir")
    _add_summary_opts(p)
    p.set_defaults(func=cmd_compare)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (InputError, GraphError, ValueError) as exc:
        log.error("%s", exc)
        return 1
    except Exception:
        log.exception("internal error")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
