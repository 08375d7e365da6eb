"""End-to-end annotation: categorize, tag, classify, augment."""
from __future__ import annotations

import dataclasses
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from . import resources
from .augment import AttributeLevel, MultiValuePolicy, RoleAssignment, augment_log, collect_assignments, \
    consolidate_boolean_status
from .classifier import DEFAULT_TAU, NameClassifier, classify_attribute, load_labeled_names, sample_domain, \
    select_contexts, refine_instance_level, train_name_classifier
from .corpus import augment_corpus, load_corpus, load_lifecycle, load_phrases
from .embeddings import load_embeddings
from .errors import FormatError, InvalidArgument, IoError
from .log import AttrType, EventLog, attribute_profiles
from .roles import SemanticRole
from .tagger import TaggerModel, detect_noun_only, phrase_words, tag_tokens, train_tagger
from .textprep import categorize_attributes, default_lexicon, load_lexicon, tokenize_value

log = logging.getLogger(__name__)

STATUS_ROLES = (SemanticRole.ObjectStatus, SemanticRole.ActionStatus)


@dataclass
class PipelineConfig:
    tau: float = DEFAULT_TAU
    policy: str = "list"
    seed_tagger: int = 0
    seed_sample: int = 0
    epochs: int = 10
    learning_rate: float = 0.1
    classifier_epochs: int = 500
    l2: float = 1e-3
    max_contexts: int = 10
    domain_sample: int = 20
    augment_actor: int = 100
    augment_status: int = 100
    corpus: str | None = None
    embeddings: str | None = None
    names: str | None = None
    actors: str | None = None
    lifecycle: str | None = None
    gazetteer: str | None = None
    lexicon: str | None = None
    tagger_model: str | None = None
    classifier_model: str | None = None

    def __post_init__(self):
        self.validate()

    def validate(self):
        if not 0.0 <= self.tau <= 1.0:
            raise InvalidArgument(f"tau must lie in [0, 1], got {self.tau}")
        try:
            MultiValuePolicy(self.policy)
        except ValueError:
            raise InvalidArgument(f"policy must be 'list' or 'indexed', got {self.policy!r}") from None
        for key in ("epochs", "classifier_epochs", "domain_sample", "augment_actor", "augment_status"):
            if getattr(self, key) < 0:
                raise InvalidArgument(f"{key} must be non-negative")
        if self.max_contexts < 1:
            raise InvalidArgument("max_contexts must be at least 1")

    @classmethod
    def from_mapping(cls, values, base_dir=None):
        """Build from string values (config file or flags); relative paths resolve against ``base_dir``."""
        kinds = {f.name: f.type for f in dataclasses.fields(cls)}
        kwargs = {}
        for key, raw in values.items():
            key = key.replace("-", "_")
            if key not in kinds:
                raise InvalidArgument(f"unknown configuration key {key!r}")
            kind = kinds[key]
            if raw is None:
                continue
            try:
                if kind == "float":
                    kwargs[key] = float(raw)
                elif kind == "int":
                    kwargs[key] = int(raw)
                elif kind == "str | None":
                    path = Path(raw).expanduser()
                    if base_dir is not None and not path.is_absolute():
                        path = Path(base_dir) / path
                    kwargs[key] = str(path.resolve())
                else:
                    kwargs[key] = str(raw)
            except ValueError:
                raise InvalidArgument(f"bad value for {key}: {raw!r}") from None
        return cls(**kwargs)

    def as_dict(self):
        return dataclasses.asdict(self)


def read_config_file(path):
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise IoError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    out = {}
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise FormatError("expected key = value", path, lineno)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


@dataclass
class Resources:
    lexicon: dict
    actors: list
    lifecycle: list
    gazetteer: frozenset
    corpus: list

    @classmethod
    def load(cls, config: PipelineConfig):
        lexicon = load_lexicon(config.lexicon) if config.lexicon else default_lexicon()
        actors = load_phrases(config.actors) if config.actors else list(resources.actor_lexicon())
        lifecycle = load_lifecycle(config.lifecycle) if config.lifecycle else list(resources.lifecycle_lexicon())
        gaz = (frozenset(p.lower() for p in load_phrases(config.gazetteer)) if config.gazetteer
               else resources.gazetteer())
        corpus = load_corpus(config.corpus, source="corpus") if config.corpus else resources.bundled_corpus()
        return cls(lexicon, actors, lifecycle, gaz, corpus)


def tagger_training_set(corpus, res: Resources, config: PipelineConfig):
    return augment_corpus(corpus, res.actors, res.lifecycle, config.augment_actor,
                          config.augment_status, config.seed_tagger)


def build_tagger(corpus, res: Resources, config: PipelineConfig) -> TaggerModel:
    samples = tagger_training_set(corpus, res, config)
    return train_tagger(samples, config.epochs, config.seed_tagger,
                        actor_words=phrase_words(res.actors),
                        lifecycle_words=phrase_words(p for p, _ in res.lifecycle),
                        lexicon=res.lexicon)


def build_classifier(labeled, store, config: PipelineConfig) -> NameClassifier:
    return train_name_classifier(labeled, store, learning_rate=config.learning_rate,
                                 epochs=config.classifier_epochs, seed=config.seed_sample, l2=config.l2)


@dataclass
class Models:
    tagger: TaggerModel
    classifier: NameClassifier
    store: object
    contexts: list | None
    resources: Resources

    @classmethod
    def prepare(cls, config: PipelineConfig):
        """Load saved models where configured, otherwise train them from the configured inputs."""
        res = Resources.load(config)
        store = load_embeddings(config.embeddings) if config.embeddings else resources.bundled_embeddings()
        if config.tagger_model:
            tagger = TaggerModel.load(config.tagger_model)
        else:
            tagger = build_tagger(res.corpus, res, config)
        if config.classifier_model:
            classifier = NameClassifier.load(config.classifier_model)
        else:
            labeled = load_labeled_names(config.names) if config.names else resources.bundled_names()
            classifier = build_classifier(labeled, store, config)
        try:
            contexts = select_contexts(res.corpus, config.max_contexts)
        except InvalidArgument:
            log.warning("corpus has no value with three roles; insertion voting disabled")
            contexts = None
        return cls(tagger, classifier, store, contexts, res)


@dataclass
class AttributeReport:
    attribute: str
    category: str
    type: str
    role: str | None = None
    confidence: float | None = None
    path: str | None = None
    reason: str | None = None
    votes: dict = field(default_factory=dict)
    chunk_roles: dict = field(default_factory=dict)
    values: int | None = None

    def as_dict(self):
        d = {k: v for k, v in dataclasses.asdict(self).items() if v not in (None, {})}
        if self.confidence is not None:
            d["confidence"] = round(self.confidence, 6)
        return d


@dataclass
class Annotation:
    log: EventLog
    assignments: list
    reports: list
    taggings: dict


def tag_attribute(models: Models, cache, lexicon, log: EventLog, name):
    """``{value: chunks}`` for every distinct value of a textual attribute."""
    out = {}
    memo = {}
    for value in log.domain(name):
        toks = cache.get(value)
        if toks is None:
            toks = tokenize_value(value)
        if toks not in memo:
            memo[toks] = tag_tokens(models.tagger, list(toks), lexicon)[1] if toks else []
        out[value] = memo[toks]
    return out


def annotate(log: EventLog, models: Models, config: PipelineConfig) -> Annotation:
    lexicon = models.resources.lexicon
    profiles = attribute_profiles(log)
    partition = categorize_attributes(log, profiles, lexicon, seed=config.seed_sample)
    reports = {}

    taggings, noun_only = {}, []
    for name in sorted(partition.textual):
        tagged = tag_attribute(models, partition.tokenizations.get(name, {}), lexicon, log, name)
        if detect_noun_only(tagged, lexicon):
            noun_only.append(name)
            continue
        taggings[name] = tagged
        counts = {}
        for chunks in tagged.values():
            for c in chunks:
                if c.role is not SemanticRole.Other:
                    counts[c.role.value] = counts.get(c.role.value, 0) + 1
        reports[name] = AttributeReport(name, "textual", partition.types[name].value,
                                        path="instance-level tagging", chunk_roles=counts, values=len(tagged))

    attribute_roles = {}
    for kind, names in (("noun_only", noun_only), ("miscellaneous", sorted(partition.miscellaneous))):
        for name in names:
            sample = sample_domain(log.domain(name), config.domain_sample, config.seed_sample)
            decision = classify_attribute(name, kind, sample, models.classifier, models.store,
                                          tagger=models.tagger, contexts=models.contexts,
                                          tau=config.tau, lexicon=lexicon)
            role = refine_instance_level(decision.role, sample, models.resources.gazetteer, lexicon)
            path = decision.path if role is decision.role else decision.path + " + instance refinement"
            attribute_roles[name] = role
            reports[name] = AttributeReport(name, kind, partition.types[name].value, role.value,
                                            decision.confidence, path, votes=decision.votes,
                                            values=len(log.domain(name)))
    for name, reason in partition.excluded.items():
        reports[name] = AttributeReport(name, "excluded", partition.types[name].value, reason=reason)

    # Boolean status attributes sharing a role collapse into one attribute naming the true flag
    groups = {}
    for name, role in attribute_roles.items():
        if role in STATUS_ROLES and partition.types[name] is AttrType.BooleanType:
            groups.setdefault(role, []).append(name)
    consolidated = []
    for role, names in sorted(groups.items(), key=lambda kv: kv[0].value):
        for name in names:
            del attribute_roles[name]
            reports[name].path += " + boolean consolidation"
        source = AttributeLevel("+".join(sorted(names)))
        for (ti, ei), value in consolidate_boolean_status(log, names).items():
            if value is not None:
                consolidated.append(RoleAssignment(ti, ei, role, value, source))

    assignments = collect_assignments(log, taggings, taggings, attribute_roles) + consolidated
    assignments.sort(key=lambda a: (a.trace, a.event))
    augmented = augment_log(log, assignments, MultiValuePolicy(config.policy))
    ordered = [reports[n] for n in sorted(reports)]
    return Annotation(augmented, assignments, ordered, taggings)


def write_report(reports, path):
    """One JSON object per attribute, sorted keys, stable order."""
    text = "".join(json.dumps(r.as_dict(), sort_keys=True, ensure_ascii=False) + "\n" for r in reports)
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write report {path}: {exc.strerror or exc}") from exc
