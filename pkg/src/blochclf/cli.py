"""Command-line entry point: ``blochclf {generate,train,classify,benchmark,plot}``.

A ``--config FILE`` of ``key = value`` lines supplies defaults for any flag
(keys use the long flag name, dashes or underscores); flags given on the
command line win.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import benchmark as bm
from .classify import model_from_dict, model_to_dict, predict, train_nmc, train_qc
from .datasets import describe, format_csv
from .errors import BlochClfError
from .metrics import evaluate, reports_to_csv
from .plot import GRID_RESOLUTION, render_svg

_BOOL_KEYS = {"full_precision", "header"}


def read_config(path: str) -> dict[str, str]:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise BlochClfError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def _dataset_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("dataset_pos", nargs="?", metavar="DATASET",
                   help="gaussian | three-gaussian | moon | csv:PATH")
    p.add_argument("--dataset", default="gaussian", help="same as the positional DATASET")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=None, help="patterns per class for synthetic data")
    p.add_argument("--noise", type=float, default=None, help="moon noise standard deviation (default 0.1)")
    p.add_argument("--config", help="key = value file supplying flag defaults")


def build_parser(defaults: dict | None = None) -> argparse.ArgumentParser:
    """Full parser; ``defaults`` (from a config file) override built-in flag defaults."""
    parser = argparse.ArgumentParser(prog="blochclf", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key = value file supplying flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a dataset as CSV")
    _dataset_args(g)
    g.add_argument("--out", help="output CSV (default: stdout)")
    g.add_argument("--header", action="store_true", help="write an x1,...,label header line")

    t = sub.add_parser("train", help="fit a classifier and save it as JSON")
    _dataset_args(t)
    t.add_argument("--classifier", choices=("nmc", "qc"), default="qc")
    t.add_argument("--out", required=False, help="model file (default: stdout)")

    c = sub.add_parser("classify", help="label a dataset with a saved model")
    _dataset_args(c)
    c.add_argument("--model", required=False, help="model JSON written by `train`")
    c.add_argument("--out", help="predictions CSV (default: stdout)")
    c.add_argument("--format", choices=("table", "csv"), default="table",
                   help="metrics summary format, printed to stderr")

    b = sub.add_parser("benchmark", help="compare NMC, QC and their oracle")
    _dataset_args(b)
    b.add_argument("--reps", type=int, default=1)
    b.add_argument("--holdout", type=float, default=None, help="test fraction; omit for resubstitution")
    b.add_argument("--classifiers", default="nmc,qc,oracle")
    b.add_argument("--format", choices=("table", "csv"), default="table")
    b.add_argument("--out")
    b.add_argument("--full-precision", action="store_true", help="print full float precision")

    p = sub.add_parser("plot", help="decision regions as SVG")
    _dataset_args(p)
    p.add_argument("--classifier", choices=("nmc", "qc"), default="qc")
    p.add_argument("--resolution", type=int, default=GRID_RESOLUTION)
    p.add_argument("--out", help="SVG file (default: stdout)")

    if defaults:
        for subparser in (g, t, c, b, p):
            dests = {a.dest for a in subparser._actions}
            subparser.set_defaults(**{k: v for k, v in defaults.items() if k in dests})
    return parser


def _config_defaults(argv: list[str]) -> dict:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return {}
    values: dict = read_config(known.config)
    for key in _BOOL_KEYS & values.keys():
        values[key] = values[key].lower() in ("1", "true", "yes", "on")
    return values


def _selector(args) -> bm.DatasetSelector:
    return bm.DatasetSelector.parse(args.dataset_pos or args.dataset, args.n, args.noise)


def _train(args):
    data = _selector(args).load(args.seed)
    return data, (train_nmc(data) if args.classifier == "nmc" else train_qc(data))


def cmd_generate(args) -> int:
    data = _selector(args).load(args.seed)
    bm.write_text(format_csv(data, header=args.header), args.out)
    print(describe(data), file=sys.stderr)
    return 0


def cmd_train(args) -> int:
    data, model = _train(args)
    bm.write_text(json.dumps(model_to_dict(model), indent=2) + "\n", args.out)
    print(f"trained {args.classifier} on {describe(data)}", file=sys.stderr)
    return 0


def cmd_classify(args) -> int:
    if not args.model:
        raise BlochClfError("classify needs --model")
    model = model_from_dict(json.loads(Path(args.model).read_text(encoding="utf-8")))
    data = _selector(args).load(args.seed)
    preds = predict(model, data.patterns)
    lines = ["index,prediction,truth"]
    lines += [f"{i},{p},{t}" for i, (p, t) in enumerate(zip(preds.tolist(), data.labels.tolist()))]
    bm.write_text("\n".join(lines) + "\n", args.out)
    rep = evaluate(preds, data.labels, max(model.class_count, data.class_count))
    summary = reports_to_csv([(args.model, rep)]) if args.format == "csv" else rep.to_text()
    print(summary, end="", file=sys.stderr)
    return 0


def cmd_benchmark(args) -> int:
    config = bm.BenchmarkConfig(
        dataset=_selector(args),
        seed=args.seed,
        repetitions=args.reps,
        holdout=args.holdout,
        classifiers=tuple(c.strip() for c in args.classifiers.split(",") if c.strip()),
    )
    result = bm.run_benchmark(config)
    decimals = None if args.full_precision else 3
    text = bm.format_csv(result, decimals) if args.format == "csv" else bm.format_table(result, decimals)
    bm.write_text(text, args.out)
    return 0


def cmd_plot(args) -> int:
    if args.resolution < 2:
        raise BlochClfError("--resolution must be at least 2")
    data, model = _train(args)
    title = f"{args.classifier.upper()} on {args.dataset_pos or args.dataset}"
    svg = render_svg(data, lambda X: predict(model, X), title, args.resolution)
    bm.write_text(svg, args.out)
    return 0


COMMANDS = {
    "generate": cmd_generate,
    "train": cmd_train,
    "classify": cmd_classify,
    "benchmark": cmd_benchmark,
    "plot": cmd_plot,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser(_config_defaults(argv)).parse_args(argv)
        return COMMANDS[args.command](args)
    except (BlochClfError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"blochclf: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
