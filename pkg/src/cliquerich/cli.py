"""``cliquerich`` command-line entry point.

Exit status: 0 on success, 1 on usage errors, 2 on data errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .census import exact_census, pseudo_census, resolve_workers
from .clubs import (
    edge_club,
    rich_club,
    select_threshold_for_size,
    super_rich_club,
)
from .errors import CliqueRichError
from .experiment import run_experiment, write_experiment
from .fixtures import fixture_names, get_fixture
from .graph import density, read_graph, to_dense_matrix, to_edge_list
from .netgen import DEFAULT_BETA, GenSpec, generate
from .pipeline import DEFAULT_SCHEDULE, PercentileSchedule, run_pipeline
from .rankcmp import compare_rankings
from .reports import csv_text, emit_trace_csv, json_text

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _graph_args(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--fixture", help="built-in graph name (see 'fixtures')")
    src.add_argument("--input", help="graph file path")
    p.add_argument("--format", choices=["edgelist", "matrix"], default="edgelist")


def _out_args(p, formats=("json", "csv")):
    p.add_argument("--output-format", choices=formats, default=formats[0])
    p.add_argument("--out", help="write the report here instead of stdout")


def _workers_arg(p):
    p.add_argument(
        "--workers", type=int, default=None,
        help="census threads (default: $CLIQUERICH_WORKERS or 1)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cliquerich", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("density", help="edge density of a graph")
    _graph_args(p)
    _out_args(p)

    p = sub.add_parser("census", help="vertex/edge participation in K_k or pseudo-K_k")
    _graph_args(p)
    p.add_argument("-k", type=int, default=3)
    p.add_argument("--mode", choices=["exact", "pseudo"], default="exact")
    p.add_argument("-w", "--threshold", type=float, help="median weight threshold (pseudo)")
    _workers_arg(p)
    _out_args(p)

    p = sub.add_parser("rich-club", help="degree-based rich club")
    _graph_args(p)
    _club_threshold_args(p)
    _out_args(p)

    p = sub.add_parser("super-rich-club", help="participation-based rich club")
    _graph_args(p)
    p.add_argument("-k", type=int, default=3)
    _club_threshold_args(p)
    p.add_argument("--mode", choices=["exact", "pseudo"], default="exact")
    p.add_argument("-w", "--threshold", type=float, help="median weight threshold (pseudo)")
    p.add_argument("-t", "--weight-threshold", type=float, default=0.0,
                   help="edge weight cut for the weighted coefficient")
    _workers_arg(p)
    _out_args(p)

    p = sub.add_parser("edge-club", help="rich edge club")
    _graph_args(p)
    p.add_argument("-k", type=int, default=3)
    p.add_argument("-j", type=int, required=True, help="edge participation threshold")
    _workers_arg(p)
    _out_args(p)

    p = sub.add_parser("supernodes", help="iterative pseudo-K_k thresholding")
    _graph_args(p)
    p.add_argument("-k", type=int, default=5)
    p.add_argument("--schedule", help="file with percentiles (JSON list or numbers)")
    p.add_argument("--hard-percentile-cut", action="store_true",
                   help="also drop edges below the percentile of new weights")
    p.add_argument("--trace-csv", help="also write the per-iteration vertex table here")
    _workers_arg(p)
    _out_args(p)

    p = sub.add_parser("gen", help="generate a seeded random graph")
    p.add_argument("--family", choices=["er", "ws"], required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--density", type=float, required=True)
    p.add_argument("--beta", type=float, default=DEFAULT_BETA, help="WS rewiring probability")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--as", dest="as_format", choices=["edgelist", "matrix"], default="edgelist")
    p.add_argument("--out")

    p = sub.add_parser("compare", help="rich club vs Super rich club on one graph")
    _graph_args(p)
    p.add_argument("-k", type=int, default=3)
    size = p.add_mutually_exclusive_group()
    size.add_argument("--club-size", type=int)
    size.add_argument("--club-fraction", type=float, default=0.25)
    _workers_arg(p)
    _out_args(p, formats=("json",))

    p = sub.add_parser("experiment", help="run a JSON experiment recipe")
    p.add_argument("recipe")
    p.add_argument("--out-dir", default=".")
    _workers_arg(p)

    p = sub.add_parser("fixtures", help="list or dump built-in graphs")
    p.add_argument("name", nargs="?")
    p.add_argument("--as", dest="as_format", choices=["edgelist", "matrix"], default="edgelist")
    p.add_argument("--out")
    return parser


def _club_threshold_args(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("-j", type=int, help="membership threshold (strictly greater)")
    g.add_argument("--target-size", type=int, help="pick the threshold giving this club size")


def _load_graph(args):
    if args.fixture:
        return get_fixture(args.fixture)
    return read_graph(args.input, args.format)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _census(g, args, workers):
    if args.mode == "pseudo":
        if args.threshold is None:
            raise UsageError("pseudo mode needs -w/--threshold")
        return pseudo_census(g, args.k, args.threshold, workers=workers)
    return exact_census(g, args.k, workers=workers)


def _club_csv(report) -> str:
    rows = [["record", "u", "v", "label", "value"]]
    coef = report.coefficient
    rows.append(["coefficient", "", "", "", "undefined" if coef is None else coef])
    for v, label in zip(report.members, report.member_labels()):
        rows.append(["member", v, "", label, ""])
    for (u, v), w in report.club_edges.items():
        rows.append(["edge", u, v, "", w])
    return csv_text(rows)


def _report(obj_dict, csv_fn, args):
    if args.output_format == "csv":
        _emit(csv_fn(), args.out)
    else:
        _emit(json_text(obj_dict), args.out)


def _run(args) -> None:
    cmd = args.command
    workers = resolve_workers(getattr(args, "workers", None))

    if cmd == "fixtures":
        if not args.name:
            _emit("\n".join(fixture_names()) + "\n", args.out)
            return
        g = get_fixture(args.name)
        text = to_edge_list(g, header=args.name) if args.as_format == "edgelist" else to_dense_matrix(g)
        _emit(text, args.out)
        return

    if cmd == "gen":
        spec = GenSpec(args.family, args.n, args.density, args.seed, args.beta)
        g = generate(spec)
        if args.as_format == "edgelist":
            text = to_edge_list(g, header=json.dumps(spec.to_dict()))
        else:
            text = to_dense_matrix(g)
        _emit(text, args.out)
        return

    if cmd == "experiment":
        with open(args.recipe, encoding="utf-8") as fh:
            try:
                recipe = json.load(fh)
            except json.JSONDecodeError as exc:
                raise CliqueRichError(f"recipe is not valid JSON: {exc}") from None
        result = run_experiment(recipe, workers=workers)
        for path in write_experiment(result, args.out_dir):
            print(path)
        return

    g = _load_graph(args)

    if cmd == "density":
        d = {"n": g.n, "edges": g.num_edges, "density": density(g)}
        _report(d, lambda: csv_text([list(d), list(d.values())]), args)
    elif cmd == "census":
        t = _census(g, args, workers)
        _report(t.to_dict(), lambda: csv_text(t.to_csv_rows()), args)
    elif cmd == "rich-club":
        j = args.j if args.j is not None else select_threshold_for_size(g.degrees(), args.target_size)
        r = rich_club(g, j)
        _report(r.to_dict(), lambda: _club_csv(r), args)
    elif cmd == "super-rich-club":
        t = _census(g, args, workers)
        j = args.j
        if j is None:
            j = select_threshold_for_size(t.vertex_counts, args.target_size)
        r = super_rich_club(g, args.k, j, t, t=args.weight_threshold)
        _report(r.to_dict(), lambda: _club_csv(r), args)
    elif cmd == "edge-club":
        t = exact_census(g, args.k, workers=workers)
        r = edge_club(g, args.k, args.j, t)
        _report(r.to_dict(), lambda: _club_csv(r), args)
    elif cmd == "supernodes":
        schedule = DEFAULT_SCHEDULE
        if args.schedule:
            with open(args.schedule, encoding="utf-8") as fh:
                schedule = PercentileSchedule.from_text(fh.read())
        trace = run_pipeline(g, args.k, schedule, hard_cut=args.hard_percentile_cut, workers=workers)
        if args.trace_csv:
            _emit(emit_trace_csv(trace), args.trace_csv)
        _report(trace.to_dict(), lambda: emit_trace_csv(trace), args)
    elif cmd == "compare":
        t = exact_census(g, args.k, workers=workers)
        size = args.club_size if args.club_size is not None else round(args.club_fraction * g.n)
        c = compare_rankings(g.degrees(), t.vertex_counts, size)
        _emit(json_text(c.to_dict()), args.out)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "k", 2) < 2:
            raise UsageError("k must be >= 2")
        if getattr(args, "workers", None) is not None and args.workers < 1:
            raise UsageError("--workers must be >= 1")
        _run(args)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CliqueRichError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
