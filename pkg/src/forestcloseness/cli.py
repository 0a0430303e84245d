"""Command-line entry point: ``forestcloseness <subcommand> ...``.

Exit status is 0 on success, 2 on usage or parameter errors and 1 on any
other failure; error messages go to standard error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .approx import (
    ESTIMATORS,
    ApproxConfig,
    approx_diag_forest_matrix,
    exact_diag_result,
    rank_vertices,
    resolve_seed,
)
from .bench import bench, summarize, write_table
from .errors import ForestClosenessError, GraphFormatError, ParameterError
from .generators import MODELS, generate
from .graph import LoadOptions, read_edge_list, write_edge_list
from .group import greedy_group
from .jlt import JltConfig, jlt_diag
from .metrics import avg_abs_error, kendall_tau, max_abs_error
from .resultfile import from_diag_result, read_result, write_group_result, write_result

THREADS_ENV = "FORESTCLOSENESS_THREADS"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _floats(text):
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text):
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _graph_args(p):
    p.add_argument("graph", help="edge list, one 'u v [w]' per line")
    p.add_argument("--one-indexed", action="store_true", help="vertex ids start at 1")
    p.add_argument("--compact", action="store_true", help="relabel the ids that occur to 0..n-1")
    p.add_argument("--alpha", type=float, default=1.0)


def _method_args(p):
    p.add_argument("--method", choices=("exact", "ust", "jlt"), default="ust")
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--kappa", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker threads (default: ${THREADS_ENV} or 1)")
    p.add_argument("--estimator", choices=ESTIMATORS, default="frequency")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="forestcloseness", description="Forest closeness centrality tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("diag", help="forest-matrix diagonal, farness and closeness")
    _graph_args(p)
    _method_args(p)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("rank", help="vertices by decreasing forest closeness")
    _graph_args(p)
    _method_args(p)
    p.add_argument("--top", type=int, default=None)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("group", help="greedy group forest closeness")
    _graph_args(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("compare", help="compare two result files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--metric", choices=("kt", "maxabs", "avgabs"), default="kt")

    p = sub.add_parser("gen", help="write a synthetic graph")
    p.add_argument("model", choices=sorted(MODELS))
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("bench", help="time/accuracy table of the approximations")
    _graph_args(p)
    p.add_argument("--methods", default="ust,jlt")
    p.add_argument("--eps-grid", type=_floats, default=[0.05, 0.1, 0.2, 0.3, 0.4, 0.5])
    p.add_argument("--seeds", type=_ints, default=[0])
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("-o", "--output", required=True)
    return parser


def _threads(args) -> int:
    if args.threads is not None:
        t = args.threads
    else:
        raw = os.environ.get(THREADS_ENV, "1")
        try:
            t = int(raw)
        except ValueError:
            raise ParameterError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if t < 1:
        raise ParameterError("thread count must be at least 1")
    return t


def _load(args):
    opts = LoadOptions(one_indexed=args.one_indexed, compact=args.compact)
    return read_edge_list(args.graph, opts)


def _seed(args):
    if args.seed is None:
        seed = resolve_seed(None)
        print(f"forestcloseness: no --seed given; using seed {seed}", file=sys.stderr)
        return seed
    return args.seed


def _compute(args, g):
    if args.method == "exact":
        return exact_diag_result(g, args.alpha)
    seed = _seed(args)
    threads = _threads(args)
    if args.method == "ust":
        cfg = ApproxConfig(alpha=args.alpha, eps=args.eps, delta=args.delta, kappa=args.kappa,
                           seed=seed, workers=threads, estimator=args.estimator)
        return approx_diag_forest_matrix(g, cfg)
    return jlt_diag(g, args.alpha, JltConfig(eps=args.eps, seed=seed, workers=threads))


def _meta(args):
    return {"graph": os.path.abspath(args.graph), "alpha": args.alpha,
            "one_indexed": args.one_indexed, "compact": args.compact}


def cmd_diag(args):
    g = _load(args)
    res = _compute(args, g)
    write_result(from_diag_result(res, labels=g.labels, extra=_meta(args)), args.output)
    print(f"{res.method}: n={res.n} samples={res.samples} time={res.wall_time:.3f}s "
          f"trace={res.trace_estimate:.6f}")
    for v in range(min(res.n, 10)):
        label = v if g.labels is None else int(g.labels[v])
        print(f"{label}\t{res.diag[v]:.6f}")
    if res.n > 10:
        print(f"... ({res.n - 10} more)")
    return 0


def cmd_rank(args):
    g = _load(args)
    res = _compute(args, g)
    ranking = rank_vertices(res, args.top)
    if args.output:
        order = [v for v, _ in ranking]
        write_result(from_diag_result(res, labels=g.labels, order=order, extra=_meta(args)),
                     args.output)
    for pos, (v, c) in enumerate(ranking[:args.top or 20], start=1):
        label = v if g.labels is None else int(g.labels[v])
        print(f"{pos}\t{label}\t{c:.6g}")
    return 0


def cmd_group(args):
    g = _load(args)
    res = greedy_group(g, args.alpha, args.k)
    ext = res.selected if g.labels is None else [int(g.labels[v]) for v in res.selected]
    if args.output:
        write_group_result(res, args.output, labels=g.labels, extra=_meta(args))
    print("selected: " + " ".join(map(str, ext)))
    print(f"group farness {res.final_farness:.6g}, closeness {res.final_closeness:.6g}")
    return 0


def cmd_compare(args):
    a = read_result(args.a)
    b = read_result(args.b)
    if args.metric == "kt":
        value = kendall_tau(a.by_vertex("closeness"), b.by_vertex("closeness"))
    else:
        da, db = a.by_vertex("diag"), b.by_vertex("diag")
        if set(da) != set(db):
            raise ParameterError("result files cover different vertex sets")
        keys = sorted(da)
        fn = max_abs_error if args.metric == "maxabs" else avg_abs_error
        value = fn([da[k] for k in keys], [db[k] for k in keys])
    print(repr(value))
    return 0


def cmd_gen(args):
    params = {"n": args.n, "p": args.p, "rows": args.rows, "cols": args.cols}
    g = generate(args.model, params, seed=args.seed)
    with open(args.output, "w", encoding="utf-8") as fh:
        write_edge_list(g, fh)
    print(f"{args.model}: n={g.n} m={g.m}")
    return 0


def cmd_bench(args):
    g = _load(args)
    methods = [m for m in args.methods.split(",") if m]
    rows = bench(g, methods=methods, eps_grid=args.eps_grid, seeds=args.seeds,
                 alpha=args.alpha, workers=_threads(args))
    with open(args.output, "w", encoding="utf-8") as fh:
        write_table(rows, fh)
    print("method\teps\ttime_s\tmax_abs_err\tkt")
    for method, eps, t, err, kt in summarize(rows):
        print(f"{method}\t{eps}\t{t:.4f}\t{err:.4g}\t{kt:.4f}")
    return 0


COMMANDS = {"diag": cmd_diag, "rank": cmd_rank, "group": cmd_group,
            "compare": cmd_compare, "gen": cmd_gen, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (ParameterError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ForestClosenessError, OSError, RuntimeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
