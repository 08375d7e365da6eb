"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data or format error, 3 internal
invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import logging
import sys
import traceback
from pathlib import Path

from .errors import EventSRLError, InvalidArgument

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("eventsrl")


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _config_fields():
    from .pipeline import PipelineConfig

    return dataclasses.fields(PipelineConfig)


def _path_keys():
    return {f.name for f in _config_fields() if f.type == "str | None"}


def shared_parser():
    p = Parser(add_help=False)
    g = p.add_argument_group("configuration (flags override --config)")
    g.add_argument("--config", help="flat key = value file")
    g.add_argument("--out", help="output path")
    for f in _config_fields():
        flag = "--" + f.name.replace("_", "-")
        if f.name == "policy":
            g.add_argument(flag, choices=["list", "indexed"], default=None)
        else:
            g.add_argument(flag, default=None, metavar=f.name.upper())
    g.add_argument("-v", "--verbose", action="store_true")
    return p


def build_config(args):
    from .pipeline import PipelineConfig, read_config_file

    values = {}
    if args.config:
        base = Path(args.config).resolve().parent
        for key, value in read_config_file(args.config).items():
            if key in _path_keys() and value and not Path(value).expanduser().is_absolute():
                value = str(base / value)
            values[key] = value
    for f in _config_fields():
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = flag
    try:
        return PipelineConfig.from_mapping(values, base_dir=Path.cwd())
    except InvalidArgument as exc:
        raise UsageError(str(exc)) from None


def _write_text(path, text):
    from .errors import IoError

    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _tsv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _require_out(args, what):
    if not args.out:
        raise UsageError(f"--out is required ({what})")
    return args.out


# commands ----------------------------------------------------------------------

def cmd_categorize(args):
    from .log import attribute_profiles
    from .pipeline import Resources
    from .textprep import categorize_attributes
    from .xes import read_xes

    config = build_config(args)
    log_ = read_xes(args.log)
    profiles = attribute_profiles(log_)
    lexicon = Resources.load(config).lexicon
    part = categorize_attributes(log_, profiles, lexicon, seed=config.seed_sample)
    rows = [(p.name, part.category(p.name), p.inferred_type.value, part.excluded.get(p.name, ""),
             p.distinct_count, p.occurrence_count, str(p.overflow).lower()) for p in profiles]
    _write_text(args.out, _tsv(rows, ["attribute", "category", "type", "reason", "distinct",
                                      "occurrences", "overflow"]))
    return EXIT_OK


def cmd_train_tagger(args):
    from .corpus import load_corpus
    from .pipeline import Resources, build_tagger

    config = build_config(args)
    out = _require_out(args, "model file")
    res = Resources.load(config)
    corpus = res.corpus if not config.corpus else load_corpus(config.corpus, source="corpus")
    model = build_tagger(corpus, res, config)
    model.save(out)
    if args.dump:
        _write_text(args.dump, model.dump_text())
    log.info("trained on %d samples, %d features", model.metadata.get("samples", 0), len(model.features))
    return EXIT_OK


def _load_tagger(config):
    from .pipeline import Resources, build_tagger
    from .tagger import TaggerModel

    res = Resources.load(config)
    if config.tagger_model:
        return TaggerModel.load(config.tagger_model), res
    return build_tagger(res.corpus, res, config), res


def cmd_tag(args):
    from .tagger import tag_tokens
    from .textprep import tokenize

    config = build_config(args)
    model, res = _load_tagger(config)
    values = args.values or [line.rstrip("\n") for line in sys.stdin if line.strip()]
    rows = []
    for value in values:
        toks = tokenize(value)
        chunks = tag_tokens(model, toks, res.lexicon)[1] if toks else []
        rows.append((value, " ".join(toks), " | ".join(f"{c.text}\\{c.role.value}" for c in chunks)))
    _write_text(args.out, _tsv(rows, ["value", "tokens", "chunks"]))
    return EXIT_OK


def cmd_train_classifier(args):
    from .classifier import load_labeled_names
    from .embeddings import load_embeddings
    from .pipeline import build_classifier
    from .resources import bundled_embeddings, bundled_names

    config = build_config(args)
    out = _require_out(args, "classifier file")
    store = load_embeddings(config.embeddings) if config.embeddings else bundled_embeddings()
    labeled = load_labeled_names(config.names) if config.names else bundled_names()
    model = build_classifier(labeled, store, config)
    model.save(out)
    return EXIT_OK


def cmd_annotate(args):
    from .pipeline import Models, annotate, write_report
    from .xes import read_xes, write_xes

    config = build_config(args)
    out = Path(_require_out(args, "augmented XES file"))
    source = read_xes(args.log)
    result = annotate(source, Models.prepare(config), config)
    write_xes(result.log, out)
    report = Path(args.report) if args.report else out.with_name(out.name + ".report.jsonl")
    write_report(result.reports, report)
    if args.figures:
        from .plotting import plot_role_counts

        plot_role_counts(result.assignments, out.with_name(out.name + ".roles.png"))
    return EXIT_OK


def cmd_evaluate(args):
    from .evaluation import format_table, loocv, read_gold, write_reports
    from .xes import read_xes

    config = build_config(args)
    out = Path(_require_out(args, "report directory"))
    gold = read_gold(args.gold)
    event_logs = {}
    if args.logs:
        for lid in gold.logs:
            path = Path(args.logs) / f"{lid}.xes"
            if path.exists():
                event_logs[lid] = read_xes(path)
    result = loocv(list(gold.logs.values()), config, event_logs)
    write_reports(result, out)
    if args.figures:
        from .plotting import plot_role_scores

        plot_role_scores(result.aggregate, out / "scores.png", "Leave-one-out, pooled")
    sys.stdout.write(format_table(result.aggregate, "aggregate"))
    return EXIT_OK


def cmd_analyze(args):
    from .analysis import export_dot, object_dfg, refine_event_classes
    from .xes import read_xes

    build_config(args)
    log_ = read_xes(args.log)
    if args.mode == "refine":
        classes = refine_event_classes(log_)
        _write_text(args.out, classes.to_tsv())
        log.info("event classes: %d before, %d after", classes.before, classes.after)
        return EXIT_OK
    if not args.object:
        raise UsageError("--object is required for dfg mode")
    try:
        fraction = float(args.fraction)
    except ValueError:
        raise UsageError(f"bad --fraction {args.fraction!r}") from None
    graph = object_dfg(log_, args.object, fraction)
    out = Path(_require_out(args, "DOT file"))
    export_dot(graph, out)
    rows = [(a, b, n) for (a, b), n in graph.edges.items()]
    _write_text(out.with_suffix(".edges.tsv"), _tsv(rows, ["source", "target", "frequency"]))
    if args.figures:
        from .plotting import plot_dfg

        plot_dfg(graph, out.with_suffix(".png"))
    return EXIT_OK


def build_parser():
    shared = shared_parser()
    parser = Parser(prog="eventsrl", description="Semantic role labeling for event logs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    p = sub.add_parser("categorize", parents=[shared], help="split attributes into textual / misc / excluded")
    p.add_argument("log")
    p.set_defaults(func=cmd_categorize)

    p = sub.add_parser("train-tagger", parents=[shared], help="train the instance-level tagger")
    p.add_argument("--dump", help="also write a readable dump of the model")
    p.set_defaults(func=cmd_train_tagger)

    p = sub.add_parser("tag", parents=[shared], help="tag values given as arguments or on stdin")
    p.add_argument("values", nargs="*")
    p.set_defaults(func=cmd_tag)

    p = sub.add_parser("train-classifier", parents=[shared], help="train the attribute-name classifier")
    p.set_defaults(func=cmd_train_classifier)

    p = sub.add_parser("annotate", parents=[shared], help="write an augmented log and a decision report")
    p.add_argument("log")
    p.add_argument("--report", help="sidecar report path (default: <out>.report.jsonl)")
    p.add_argument("--figures", action="store_true", help="also render a role-count figure")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("evaluate", parents=[shared], help="leave-one-out evaluation against a gold file")
    p.add_argument("gold")
    p.add_argument("--logs", help="directory holding <log id>.xes files")
    p.add_argument("--figures", action="store_true")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("analyze", parents=[shared], help="event-class refinement or object DFG")
    p.add_argument("log")
    p.add_argument("--mode", choices=["refine", "dfg"], default="refine")
    p.add_argument("--object")
    p.add_argument("--fraction", default="1.0")
    p.add_argument("--figures", action="store_true")
    p.set_defaults(func=cmd_analyze)
    return parser


def _origin(exc):
    tb = exc.__traceback__
    name = "eventsrl"
    while tb is not None:
        mod = tb.tb_frame.f_globals.get("__name__", "")
        if mod.startswith("eventsrl.") and mod not in ("eventsrl.cli", "eventsrl.errors"):
            name = mod
        tb = tb.tb_next
    return name


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EventSRLError as exc:
        print(f"{_origin(exc)}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        traceback.print_exc()
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
