"""Batch front-end: ingest CSV data, run any algorithm, sweep the
experiment matrix, verify the approximation bounds, and emit plot-ready
CSV/JSON.

Exit codes: 0 success, 2 infeasible fairness spec, 3 parse error,
4 oracle size limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import baselines, fair_clustering, ingest, oracle
from .errors import FairCCError, ParseError
from .model import (
    Clustering,
    ColorAssignment,
    FairnessSpec,
    SignedCompleteGraph,
    check_fairness,
    color_distribution,
    disagreements,
)
from .pivot import PivotRun

ALGORITHMS = ("cc", "wmatch", "ufaircc", "ccmerge", "faircc")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def parse_spec(ratio, bounds):
    """--ratio '1:p[:p3...]' or --bounds '1:p[:p3...]..1:q[:q3...]'."""
    if ratio and bounds:
        raise ParseError("--ratio and --bounds are mutually exclusive")
    if ratio:
        parts = ingest._parse_ratio(ratio)
        return FairnessSpec.exact({i: p for i, p in enumerate(parts) if i > 0})
    if bounds:
        if ".." not in bounds:
            raise ParseError(f"bad bounds {bounds!r}, expected lo..hi")
        lo_text, hi_text = bounds.split("..", 1)
        lo = ingest._parse_ratio(lo_text)
        hi = ingest._parse_ratio(hi_text)
        if len(lo) != len(hi):
            raise ParseError("bounds sides must name the same colors")
        return FairnessSpec(0, {i: (lo[i], hi[i]) for i in range(1, len(lo))})
    return None


def run_algorithm(algo, g, colors, spec, pivot, try_all_bases=False):
    if algo == "cc":
        return baselines.run_cc(g, pivot)
    if spec is None:
        raise ParseError(f"algorithm {algo!r} needs --ratio or --bounds")
    if algo == "wmatch":
        return baselines.run_wmatch(g, colors, spec, pivot)
    if algo == "ufaircc":
        return baselines.run_ufaircc(g, colors, spec, pivot)
    if algo == "ccmerge":
        return baselines.run_ccmerge(g, colors, spec, pivot)
    if algo == "faircc":
        if not spec.is_exact:
            return fair_clustering.fair_cc_bounded(g, colors, spec, pivot)
        return fair_clustering.fair_cc_multi(
            g, colors, spec, pivot, try_all_bases=try_all_bases
        )
    raise ParseError(f"unknown algorithm {algo!r}")


def _load_instance(graph_path, colors_path):
    with open(graph_path) as fh:
        g = SignedCompleteGraph.from_json(fh.read())
    colors = None
    if colors_path:
        with open(colors_path) as fh:
            colors = ColorAssignment.from_csv(fh.read())
        if colors.n != g.n:
            raise ParseError("colors file does not match graph size")
    return g, colors


def _result_row(dataset, algo, seed, g, colors, spec, clustering, millis):
    fair = None
    if spec is not None and colors is not None:
        fair = check_fairness(colors, clustering, spec).overall_pass
    top5 = []
    if colors is not None:
        top5 = [
            {str(c): cnt for c, cnt in sorted(hist.items())}
            for hist in color_distribution(colors, clustering)[:5]
        ]
    return {
        "dataset": dataset,
        "algo": algo,
        "seed": seed,
        "n": g.n,
        "colors": colors.num_colors if colors else 0,
        "spec": spec.describe() if spec else "",
        "disagreements": disagreements(g, clustering),
        "fair": fair,
        "clusters": clustering.num_clusters,
        "millis": millis,
        "top5": top5,
    }


def cmd_ingest(args):
    with open(args.schema) as fh:
        schema = ingest.Schema.from_json(fh.read())
    ds, dropped = ingest.load_csv(args.csv, schema)
    if dropped:
        print(f"dropped {dropped} rows missing the protected attribute")
    if args.sample is not None:
        ds = ingest.sample(ds, args.sample, args.seed, balance=args.balance)
    g, colors = ingest.build_graph(ds, ingest.SimilarityConfig(tau=args.tau))
    with open(args.out_graph, "w") as fh:
        fh.write(g.to_json() + "\n")
    with open(args.out_colors, "w") as fh:
        fh.write(colors.to_csv())
    print(f"wrote {g.n} vertices, {len(g.negative_edges())} negative edges")
    return 0


def cmd_cluster(args):
    g, colors = _load_instance(args.graph, args.colors)
    spec = parse_spec(args.ratio, args.bounds)
    if args.algo != "cc" and colors is None:
        raise ParseError(f"algorithm {args.algo!r} needs --colors")
    pivot = PivotRun(args.seed, args.restarts)
    start = time.perf_counter()
    clustering = run_algorithm(
        args.algo, g, colors, spec, pivot, try_all_bases=args.try_all_bases
    )
    millis = int((time.perf_counter() - start) * 1000) if args.timing else 0
    row = _result_row(
        args.dataset, args.algo, args.seed, g, colors, spec, clustering, millis
    )
    if args.algo != "cc" and spec is not None and row["fair"] is False:
        raise FairCCError("fairness-guaranteed algorithm produced an unfair clustering")
    with open(args.out_clustering, "w") as fh:
        fh.write(clustering.to_json() + "\n")
    with open(args.out_result, "w") as fh:
        fh.write(json.dumps(row) + "\n")
    print(f"{args.algo}: {row['disagreements']} disagreements, {row['clusters']} clusters")
    return 0


CSV_COLUMNS = (
    "dataset",
    "algo",
    "seed",
    "n",
    "colors",
    "spec",
    "disagreements",
    "fair",
    "clusters",
    "millis",
)


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def cmd_experiment(args):
    g, colors = _load_instance(args.graph, args.colors)
    spec = parse_spec(args.ratio, args.bounds)
    algos = args.algos.split(",")
    for algo in algos:
        if algo not in ALGORITHMS:
            raise ParseError(f"unknown algorithm {algo!r}")
    if any(a != "cc" for a in algos) and spec is None:
        raise ParseError("fair algorithms need --ratio or --bounds")
    seeds = [args.seed + k for k in range(args.runs)]
    cells = [(algo, seed) for algo in algos for seed in seeds]

    def run_cell(cell):
        algo, seed = cell
        start = time.perf_counter()
        clustering = run_algorithm(algo, g, colors, spec, PivotRun(seed, args.restarts))
        millis = int((time.perf_counter() - start) * 1000) if args.timing else 0
        return _result_row(args.dataset, algo, seed, g, colors, spec, clustering, millis)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(run_cell, cells))
    else:
        rows = [run_cell(cell) for cell in cells]
    for row in rows:
        if row["algo"] != "cc" and spec is not None and row["fair"] is False:
            raise FairCCError(
                f"{row['algo']} seed {row['seed']}: fairness invariant violated"
            )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_csv_cell(row[c]) for c in CSV_COLUMNS])
    for algo in algos:
        group = [row for row in rows if row["algo"] == algo]
        writer.writerow(
            [
                args.dataset,
                algo,
                "mean",
                g.n,
                colors.num_colors if colors else 0,
                spec.describe() if spec else "",
                f"{np.mean([r['disagreements'] for r in group]):.2f}",
                _csv_cell(all(r["fair"] for r in group) if spec else None),
                f"{np.mean([r['clusters'] for r in group]):.2f}",
                f"{np.mean([r['millis'] for r in group]):.2f}",
            ]
        )
    with open(args.out, "w") as fh:
        fh.write(buf.getvalue())
    print(f"wrote {len(rows)} result rows to {args.out}")
    return 0


def _print_check(label, lhs, rel, rhs):
    ok = lhs <= rhs if rel == "<=" else lhs == rhs
    print(f"{'PASS' if ok else 'FAIL'}  {label}: {lhs} {rel} {rhs}")
    return ok


def _verify_instance(g, colors, spec, pivot, limit):
    ok = True
    report = fair_clustering.matching_weight_bound_check(g, colors, spec, limit=limit)
    for color in sorted(report.weights):
        q = spec.bounds[color][1]
        ok &= _print_check(
            f"w(M_{color}) <= 2*{q}*OPT_fair",
            report.weights[color],
            "<=",
            report.budgets[color],
        )
    clustering = run_algorithm("faircc", g, colors, spec, pivot)
    cost = disagreements(g, clustering)
    budget = fair_clustering.approximation_budget(spec, colors.num_colors)
    ok &= _print_check(
        f"cost(faircc) <= {budget}*OPT_fair", cost, "<=", budget * report.opt_fair_value
    )
    return ok


def cmd_verify(args):
    limit = oracle.OracleLimit.default()
    pivot = PivotRun(args.seed, args.restarts)
    if args.mirror:
        with open(args.mirror) as fh:
            g = SignedCompleteGraph.from_json(fh.read())
        _, opt_g = oracle.opt_cc(g, limit=limit)
        h, colors = oracle.mirror_graph(g)
        spec = FairnessSpec.exact({1: 1})
        _, opt_h = oracle.opt_fair(h, colors, spec, limit=limit)
        ok = _print_check("opt_fair(mirror) == 4*opt_cc", opt_h, "==", 4 * opt_g)
        return 0 if ok else 1
    if args.random:
        rng = random.Random(args.seed)
        ok = True
        for _ in range(args.random):
            half = rng.randrange(1, args.max_n // 2 + 1)
            n = 2 * half
            signs = np.ones((n, n), dtype=np.int8)
            for u in range(n):
                for v in range(u + 1, n):
                    signs[u, v] = signs[v, u] = 1 if rng.random() < 0.5 else -1
            np.fill_diagonal(signs, 0)
            g = SignedCompleteGraph(n, signs)
            order = list(range(n))
            rng.shuffle(order)
            color_of = [0] * n
            for v in order[half:]:
                color_of[v] = 1
            colors = ColorAssignment(tuple(color_of))
            spec = FairnessSpec.exact({1: 1})
            ok &= _verify_instance(g, colors, spec, pivot, limit)
        return 0 if ok else 1
    g, colors = _load_instance(args.graph, args.colors)
    spec = parse_spec(args.ratio, args.bounds)
    if spec is None or colors is None:
        raise ParseError("verify needs --colors and --ratio/--bounds")
    return 0 if _verify_instance(g, colors, spec, pivot, limit) else 1


def cmd_gen(args):
    with open(args.mirror) as fh:
        g = SignedCompleteGraph.from_json(fh.read())
    h, colors = oracle.mirror_graph(g)
    with open(args.out_graph, "w") as fh:
        fh.write(h.to_json() + "\n")
    with open(args.out_colors, "w") as fh:
        fh.write(colors.to_csv())
    print(f"wrote mirror instance with {h.n} vertices")
    return 0


def build_parser():
    parser = _Parser(prog="faircc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="CSV -> signed graph + colors")
    p.add_argument("--csv", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--tau", type=float, default=0.5)
    p.add_argument("--sample", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--balance", default=None, help="exact color ratio, e.g. 1:2")
    p.add_argument("--out-graph", required=True)
    p.add_argument("--out-colors", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("cluster", help="run one algorithm on one instance")
    p.add_argument("--graph", required=True)
    p.add_argument("--colors", default=None)
    p.add_argument("--algo", required=True, choices=ALGORITHMS)
    p.add_argument("--ratio", default=None)
    p.add_argument("--bounds", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=25)
    p.add_argument("--try-all-bases", action="store_true")
    p.add_argument("--timing", action="store_true", help="record real wall time")
    p.add_argument("--dataset", default="instance")
    p.add_argument("--out-clustering", required=True)
    p.add_argument("--out-result", required=True)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("experiment", help="algorithm x seed matrix -> CSV")
    p.add_argument("--graph", required=True)
    p.add_argument("--colors", default=None)
    p.add_argument("--algos", required=True, help="comma-separated list")
    p.add_argument("--ratio", default=None)
    p.add_argument("--bounds", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--runs", type=int, default=5)
    p.add_argument("--restarts", type=int, default=25)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true")
    p.add_argument("--dataset", default="instance")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("verify", help="check the approximation bounds")
    p.add_argument("--graph", default=None)
    p.add_argument("--colors", default=None)
    p.add_argument("--ratio", default=None)
    p.add_argument("--bounds", default=None)
    p.add_argument("--mirror", default=None, help="base graph for the mirror identity")
    p.add_argument("--random", type=int, default=None, help="random instance sweep")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=25)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="emit derived instances")
    p.add_argument("--mirror", required=True, help="graph to duplicate")
    p.add_argument("--out-graph", required=True)
    p.add_argument("--out-colors", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except FairCCError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
