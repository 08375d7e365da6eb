"""Gold standards, chunk-exact and attribute-level metrics, leave-one-out runs."""
from __future__ import annotations

import csv
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .classifier import classify_name, load_labeled_names, select_contexts
from .corpus import TrainingSample, corpus_fingerprint, format_corpus, parse_corpus
from .embeddings import load_embeddings
from .errors import FormatError, InvalidArgument, IoError
from .pipeline import Models, Resources, annotate, build_classifier, build_tagger
from .resources import bundled_embeddings, bundled_names
from .roles import ROLES, TYPE_OF, SemanticRole
from .tagger import tag_tokens


def _ratio(num, den):
    return num / den if den else 0.0


def f1_score(p, r):
    return 2 * p * r / (p + r) if p + r > 0 else 0.0


@dataclass
class MetricsReport:
    tp: Counter = field(default_factory=Counter)
    fp: Counter = field(default_factory=Counter)
    fn: Counter = field(default_factory=Counter)

    def roles(self):
        seen = set(self.tp) | set(self.fp) | set(self.fn)
        return [r for r in ROLES if r in seen]

    def precision(self, role=None):
        if role is None:
            return _ratio(sum(self.tp.values()), sum(self.tp.values()) + sum(self.fp.values()))
        return _ratio(self.tp[role], self.tp[role] + self.fp[role])

    def recall(self, role=None):
        if role is None:
            return _ratio(sum(self.tp.values()), sum(self.tp.values()) + sum(self.fn.values()))
        return _ratio(self.tp[role], self.tp[role] + self.fn[role])

    def f1(self, role=None):
        return f1_score(self.precision(role), self.recall(role))

    def support(self, role=None):
        """Gold entity count."""
        if role is None:
            return sum(self.tp.values()) + sum(self.fn.values())
        return self.tp[role] + self.fn[role]

    def merged(self, other: MetricsReport) -> MetricsReport:
        return MetricsReport(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn)

    def as_dict(self):
        rows = {r.value: {"tp": self.tp[r], "fp": self.fp[r], "fn": self.fn[r],
                          "precision": self.precision(r), "recall": self.recall(r), "f1": self.f1(r),
                          "support": self.support(r)} for r in self.roles()}
        return {"roles": rows, "overall": {
            "tp": sum(self.tp.values()), "fp": sum(self.fp.values()), "fn": sum(self.fn.values()),
            "precision": self.precision(), "recall": self.recall(), "f1": self.f1(),
            "support": self.support()}}


def _add(counter, role, n=1):
    # Counter arithmetic drops zeros, so only record real counts
    if n:
        counter[role] += n


def chunk_metrics(predicted, gold) -> MetricsReport:
    """Chunk-exact scores: a predicted chunk counts only if span and role both match."""
    if set(predicted) != set(gold):
        raise InvalidArgument("predicted and gold cover different values")
    report = MetricsReport()
    for key in gold:
        g = {(c.start, c.end, c.role) for c in gold[key] if c.role is not SemanticRole.Other}
        p = {(c.start, c.end, c.role) for c in predicted[key] if c.role is not SemanticRole.Other}
        for *_, role in p & g:
            _add(report.tp, role)
        for *_, role in p - g:
            _add(report.fp, role)
        for *_, role in g - p:
            _add(report.fn, role)
    return report


def attribute_metrics(predicted, gold) -> MetricsReport:
    """Attribute-role pairs; Other (or a missing entry) means no prediction."""
    report = MetricsReport()
    for name in sorted(set(predicted) | set(gold)):
        p = predicted.get(name)
        g = gold.get(name)
        p = None if p is SemanticRole.Other else p
        g = None if g is SemanticRole.Other else g
        if p is not None and p == g:
            _add(report.tp, p)
            continue
        if p is not None:
            _add(report.fp, p)
        if g is not None:
            _add(report.fn, g)
    return report


def combined_report(instance: MetricsReport, attribute: MetricsReport) -> MetricsReport:
    return instance.merged(attribute)


# gold standard files ---------------------------------------------------------

@dataclass
class GoldLog:
    log_id: str
    samples: list[TrainingSample] = field(default_factory=list)
    attributes: dict[str, SemanticRole] = field(default_factory=dict)

    def instance_gold(self):
        """Unique tokenized value -> gold chunks."""
        out = {}
        for s in self.samples:
            out.setdefault(s.text, s.chunks())
        return out


@dataclass
class GoldStandard:
    logs: dict[str, GoldLog] = field(default_factory=dict)

    @property
    def instance(self):
        return {(lid, v): c for lid, g in self.logs.items() for v, c in g.instance_gold().items()}

    @property
    def attribute(self):
        return {(lid, a): r for lid, g in self.logs.items() for a, r in g.attributes.items()}


def parse_gold(text, path=None) -> GoldStandard:
    """Sections ``#log <id>``, then ``#instance`` (corpus format) and ``#attributes`` (``attr<TAB>Role``)."""
    gold = GoldStandard()
    current, section, block, block_start = None, None, [], 1

    def flush_instance():
        if current is not None and block:
            # pad so corpus errors report file line numbers
            lines = [""] * (block_start - 1) + block
            current.samples.extend(parse_corpus(lines, path, source=current.log_id))

    for lineno, line in enumerate(text.splitlines(), 1):
        if line.startswith("#"):
            if section == "instance":
                flush_instance()
            block = []
            head, _, rest = line[1:].partition(" ")
            if head == "log":
                if not rest.strip():
                    raise FormatError("log section needs an id", path, lineno)
                lid = rest.strip()
                if lid in gold.logs:
                    raise FormatError(f"duplicate log id {lid!r}", path, lineno)
                current = gold.logs[lid] = GoldLog(lid)
                section = None
            elif head in ("instance", "attributes"):
                if current is None:
                    raise FormatError(f"#{head} before any #log", path, lineno)
                section = head
                block_start = lineno + 1
            else:
                raise FormatError(f"unknown section {line!r}", path, lineno)
            continue
        if section == "instance":
            block.append(line)
        elif section == "attributes":
            if not line.strip():
                continue
            name, sep, role = line.partition("\t")
            if not sep:
                raise FormatError("expected attr<TAB>Role", path, lineno)
            try:
                role = SemanticRole.parse(role)
            except ValueError as exc:
                raise FormatError(str(exc), path, lineno) from None
            if name in current.attributes:
                raise FormatError(f"duplicate attribute {name!r}", path, lineno)
            current.attributes[name] = role
        elif line.strip():
            raise FormatError("content outside a section", path, lineno)
    if section == "instance":
        flush_instance()
    return gold


def read_gold(path) -> GoldStandard:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read gold standard {path}: {exc.strerror or exc}") from exc
    return parse_gold(text, str(path))


def format_gold(gold: GoldStandard):
    parts = []
    for lid, g in gold.logs.items():
        parts.append(f"#log {lid}\n#instance\n{format_corpus(g.samples)}")
        parts.append("#attributes\n" + "".join(f"{a}\t{r.value}\n" for a, r in g.attributes.items()))
    return "".join(parts)


def write_gold(gold: GoldStandard, path):
    try:
        Path(path).write_text(format_gold(gold), encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write gold standard {path}: {exc.strerror or exc}") from exc


# leave-one-out ---------------------------------------------------------------

@dataclass
class FoldResult:
    log_id: str
    instance: MetricsReport
    attribute: MetricsReport
    training_fingerprint: str
    training_sources: frozenset

    @property
    def combined(self):
        return combined_report(self.instance, self.attribute)


@dataclass
class LoocvResult:
    folds: list[FoldResult]

    @property
    def aggregate(self):
        out = MetricsReport()
        for f in self.folds:
            out = out.merged(f.combined)
        return out

    @property
    def instance(self):
        out = MetricsReport()
        for f in self.folds:
            out = out.merged(f.instance)
        return out

    @property
    def attribute(self):
        out = MetricsReport()
        for f in self.folds:
            out = out.merged(f.attribute)
        return out


def name_training_pairs(gold_logs):
    """Attribute gold as classifier training data; instance roles train their type-level role."""
    return [(name, TYPE_OF.get(role, role)) for g in gold_logs for name, role in g.attributes.items()]


def loocv(gold_logs, config, event_logs=None, base_names=None) -> LoocvResult:
    """Train on every log but one, evaluate on the held-out one, for each log in turn.

    ``event_logs`` optionally maps log ids to EventLogs; when present the held-out
    attributes are predicted by the full pipeline, otherwise by the name
    classifier alone. ``base_names`` are labelled names added to every fold's
    classifier training data; ``None`` means the configured (or bundled) list.
    """
    gold_logs = list(gold_logs)
    if len(gold_logs) < 2:
        raise InvalidArgument("leave-one-out needs at least two logs")
    ids = [g.log_id for g in gold_logs]
    if len(set(ids)) != len(ids):
        raise InvalidArgument("log ids must be unique")
    event_logs = event_logs or {}
    if base_names is None:
        base_names = load_labeled_names(config.names) if config.names else bundled_names()
    res = Resources.load(config)
    store = load_embeddings(config.embeddings) if config.embeddings else bundled_embeddings()
    folds = []
    for held in gold_logs:
        train_logs = [g for g in gold_logs if g.log_id != held.log_id]
        corpus = [s for g in train_logs for s in g.samples]
        if not corpus:
            raise InvalidArgument(f"no training samples outside {held.log_id!r}")
        sources = frozenset(s.source for s in corpus)
        if held.log_id in sources:
            raise AssertionError("held-out samples leaked into training")
        tagger = build_tagger(corpus, res, config)
        labeled = list(base_names) + name_training_pairs(train_logs)
        classifier = build_classifier(labeled, store, config)

        gold_chunks = held.instance_gold()
        predicted = {value: tag_tokens(tagger, value.split(), res.lexicon)[1] for value in gold_chunks}
        instance = chunk_metrics(predicted, gold_chunks)

        if held.log_id in event_logs:
            try:
                contexts = select_contexts(corpus, config.max_contexts)
            except InvalidArgument:
                contexts = None
            models = Models(tagger, classifier, store, contexts, res)
            ann = annotate(event_logs[held.log_id], models, config)
            roles = {r.attribute: SemanticRole(r.role) for r in ann.reports if r.role is not None}
        else:
            roles = {a: classify_name(classifier, store, a).role for a in held.attributes}
        attribute = attribute_metrics({a: r for a, r in roles.items() if a in held.attributes}, held.attributes)
        folds.append(FoldResult(held.log_id, instance, attribute, corpus_fingerprint(corpus), sources))
    return LoocvResult(folds)


# report output ----------------------------------------------------------------

def format_table(report: MetricsReport, title=""):
    """Plain-text table: role, count, precision, recall, F1."""
    lines = []
    if title:
        lines.append(title)
    lines.append(f"{'role':<16} {'count':>6} {'prec':>6} {'rec':>6} {'f1':>6}")
    for r in report.roles():
        lines.append(f"{r.value:<16} {report.support(r):>6} {report.precision(r):>6.2f} "
                     f"{report.recall(r):>6.2f} {report.f1(r):>6.2f}")
    lines.append(f"{'overall':<16} {report.support():>6} {report.precision():>6.2f} "
                 f"{report.recall():>6.2f} {report.f1():>6.2f}")
    return "\n".join(lines) + "\n"


def report_rows(result: LoocvResult):
    """Flat rows (scope, level, role, counts, scores) for delimited output."""
    rows = []
    scopes = [(f.log_id, {"instance": f.instance, "attribute": f.attribute, "combined": f.combined})
              for f in result.folds]
    scopes.append(("ALL", {"instance": result.instance, "attribute": result.attribute,
                           "combined": result.aggregate}))
    for scope, levels in scopes:
        for level, rep in levels.items():
            for role in rep.roles() + [None]:
                rows.append({
                    "log": scope, "level": level, "role": role.value if role else "overall",
                    "tp": sum(rep.tp.values()) if role is None else rep.tp[role],
                    "fp": sum(rep.fp.values()) if role is None else rep.fp[role],
                    "fn": sum(rep.fn.values()) if role is None else rep.fn[role],
                    "precision": rep.precision(role), "recall": rep.recall(role), "f1": rep.f1(role),
                })
    return rows


def write_reports(result: LoocvResult, out_dir):
    """Writes ``metrics.tsv``, ``metrics.json`` and ``metrics.txt`` into ``out_dir``."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        rows = report_rows(result)
        with open(out / "metrics.tsv", "w", encoding="utf-8", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]), delimiter="\t", lineterminator="\n")
            w.writeheader()
            for row in rows:
                w.writerow({k: f"{v:.6f}" if isinstance(v, float) else v for k, v in row.items()})
        data = {"folds": {f.log_id: {"instance": f.instance.as_dict(), "attribute": f.attribute.as_dict(),
                                     "combined": f.combined.as_dict(),
                                     "training_fingerprint": f.training_fingerprint}
                          for f in result.folds},
                "aggregate": result.aggregate.as_dict()}
        (out / "metrics.json").write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        text = "".join(format_table(f.combined, f"log {f.log_id}") + "\n" for f in result.folds)
        text += format_table(result.aggregate, "aggregate")
        (out / "metrics.txt").write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write reports to {out}: {exc.strerror or exc}") from exc
    return rows
