"""Command-line interface.

Exit codes: 0 on success, 1 for usage or parameter errors, 2 for data errors.
"""
from __future__ import annotations

import argparse
import json
import sys


from . import io, pipeline, synthetic
from .errors import ClusteringError, ParameterError
from .validation import evaluate

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _add_clustering_args(p):
    p.add_argument("input", help="CSV with a header row; an integer 'label' column is read as truth")
    p.add_argument("--min-pts", type=int, default=4)
    p.add_argument("--method", choices=pipeline.PIPELINE_METHODS, default="eom")
    p.add_argument("--epsilon", type=float, default=0.0,
                   help="threshold for epsilon/eom_epsilon, cut distance for dbscan_star "
                        "(meters for haversine)")
    p.add_argument("--metric", choices=("euclidean", "haversine"), default="euclidean")
    p.add_argument("--scale", action="store_true", help="min-max scale every feature to [0, 1]")
    p.add_argument("--degrees", action="store_true", help="haversine input is in degrees")


def build_parser():
    parser = _Parser(prog="hdbsel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cluster", help="cluster a CSV of points")
    _add_clustering_args(p)
    p.add_argument("--output", help="labels CSV (index,label); stdout when omitted")
    p.add_argument("--tree", help="also write the condensed tree as JSON")
    p.add_argument("--report", help="write the evaluation report as JSON (needs a 'label' column)")
    p.add_argument("--plot-data", help="write points plus predicted labels as CSV")
    p.add_argument("--figure", help="render the labeled points to an image file")

    p = sub.add_parser("generate", help="write a synthetic dataset")
    p.add_argument("--kind", choices=synthetic.KINDS, default="variable_density")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--output", required=True, help="CSV with x,y,label columns")
    p.add_argument("--figure", help="render the ground truth to an image file")

    p = sub.add_parser("evaluate", help="score predicted labels against truth")
    p.add_argument("--labels", required=True, help="CSV with a 'label' column of predictions")
    p.add_argument("--truth", required=True, help="CSV with a 'label' column of ground truth")
    p.add_argument("--output", help="report JSON; stdout when omitted")

    p = sub.add_parser("export-tree", help="write the condensed cluster tree as JSON")
    _add_clustering_args(p)
    p.add_argument("--output", required=True, help="tree JSON")
    p.add_argument("--figure", help="render the tree, with the selected clusters highlighted")
    return parser


def _load(args):
    _, raw, truth = io.read_table(args.input)
    ps = io.prepare_points(raw, args.metric, args.scale, args.degrees)
    config = pipeline.RunConfig(args.min_pts, args.method, args.epsilon)
    return raw, ps, truth, config


def _cmd_cluster(args):
    raw, ps, truth, config = _load(args)
    result = pipeline.run_pipeline(ps, config, truth)
    if args.output:
        io.export_labels(result.labels, args.output)
    else:
        sys.stdout.write("index,label\n")
        sys.stdout.writelines(f"{i},{lab}\n" for i, lab in enumerate(result.labels.tolist()))
    if args.tree:
        if result.tree is None:
            raise ParameterError("dbscan_star does not build a condensed tree")
        io.export_tree(result.tree, args.tree)
    if args.report:
        if result.report is None:
            raise ParameterError("--report needs a 'label' column in the input")
        io.export_report(result.report, args.report)
    if args.plot_data:
        io.write_points_csv(args.plot_data, raw, result.labels)
    if args.figure:
        from . import plotting

        plotting.plot_labels(raw, result.labels, args.figure, degrees=args.degrees)


def _cmd_generate(args):
    data = synthetic.generate_synthetic(args.kind, args.seed, args.n)
    io.write_points_csv(args.output, data.points.points, data.truth)
    if args.figure:
        from . import plotting

        plotting.plot_labels(data.points.points, data.truth, args.figure, title=f"{args.kind}, seed {args.seed}")


def _cmd_evaluate(args):
    _, _, predicted = io.read_table(args.labels)
    _, _, truth = io.read_table(args.truth)
    for name, labels in (("--labels", predicted), ("--truth", truth)):
        if labels is None:
            raise io.DataFileError(f"{name} file has no 'label' column")
    if len(predicted) != len(truth):
        raise io.DataFileError(f"{len(predicted)} predicted labels but {len(truth)} truth labels")
    text = json.dumps(evaluate(predicted, truth).to_dict(), indent=2) + "\n"
    if args.output:
        io._write_text(args.output, text)
    else:
        sys.stdout.write(text)


def _cmd_export_tree(args):
    _, ps, _, config = _load(args)
    method = "eom" if config.method == "dbscan_star" else config.method
    result = pipeline.run_pipeline(ps, pipeline.RunConfig(config.min_pts, method, config.epsilon))
    io.export_tree(result.tree, args.output)
    if args.figure:
        from . import plotting

        eps = config.epsilon if method in ("epsilon", "eom_epsilon") else None
        plotting.plot_condensed_tree(result.tree, result.stats, args.figure, result.selection, eps)


COMMANDS = {
    "cluster": _cmd_cluster,
    "generate": _cmd_generate,
    "evaluate": _cmd_evaluate,
    "export-tree": _cmd_export_tree,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        COMMANDS[args.command](args)
    except UsageError as err:
        print(f"hdbsel: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ParameterError as err:
        print(f"hdbsel: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ClusteringError as err:
        print(f"hdbsel: data error: {err}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
