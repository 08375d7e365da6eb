"""Attribute-level role classification.

Miscellaneous attributes are classified by name with a multinomial logistic
regression over averaged word vectors. Noun-only textual attributes fall
back to insertion voting when the name classifier is not confident: each
value is planted into expressive labelled contexts and re-tagged, and the
role the tagger gives it most often wins.
"""
from __future__ import annotations

import json
import logging
import random
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .embeddings import EmbeddingStore, embed_name
from .errors import FormatError, InvalidArgument, IoError
from .log import format_value
from .roles import INSTANCE_OF, NOUN_ROLES, TYPE_OF, SemanticRole
from .tagger import tag_tokens
from .textprep import default_lexicon, tokenize

log = logging.getLogger(__name__)

DEFAULT_TAU = 0.8
DEFAULT_LR = 0.1
DEFAULT_EPOCHS = 500
DEFAULT_L2 = 1e-3
DOMAIN_SAMPLE = 20

NAME_CLASSES = tuple(r for r in SemanticRole if r.is_type_level) + (SemanticRole.Other,)


def load_labeled_names(path):
    """``name<TAB>Role`` lines; roles limited to type-level roles and Other."""
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise IoError(f"cannot read labelled names {path}: {exc.strerror or exc}") from exc
    out = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip() or line.startswith("#"):
            continue
        name, _, role = line.partition("\t")
        try:
            role = SemanticRole.parse(role)
        except ValueError as exc:
            raise FormatError(str(exc), path, lineno) from None
        if role not in NAME_CLASSES:
            raise FormatError(f"{role} cannot label an attribute name", path, lineno)
        out.append((name.strip(), role))
    return out


# logistic regression --------------------------------------------------------

def softmax(z):
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def with_bias(X):
    return np.hstack([X, np.ones((X.shape[0], 1))])


def loss_and_grad(W, X, Y, l2=DEFAULT_L2):
    """Mean cross-entropy plus an L2 penalty on the non-bias weights.

    ``W`` is classes x (dim+1), ``X`` is n x (dim+1) with the bias column
    last, ``Y`` is one-hot n x classes.
    """
    n = X.shape[0]
    P = softmax(X @ W.T)
    loss = -np.sum(Y * np.log(np.clip(P, 1e-300, None))) / n
    Wr = W.copy()
    Wr[:, -1] = 0.0
    loss += 0.5 * l2 * np.sum(Wr * Wr)
    grad = (P - Y).T @ X / n + l2 * Wr
    return loss, grad


@dataclass
class ClassificationResult:
    role: SemanticRole
    confidence: float
    probabilities: dict = field(default_factory=dict)


class NameClassifier:
    def __init__(self, classes, weights, metadata=None):
        self.classes = tuple(classes)
        self.weights = np.asarray(weights, dtype=np.float64)
        self.metadata = dict(metadata or {})

    def probabilities(self, vector):
        return softmax(self.weights @ np.append(vector, 1.0))

    def to_json(self):
        return json.dumps({
            "classes": [c.value for c in self.classes],
            "weights": self.weights.tolist(),
            "metadata": self.metadata,
        }, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls([SemanticRole(c) for c in data["classes"]], np.array(data["weights"]), data["metadata"])

    def save(self, path):
        try:
            Path(path).write_text(self.to_json(), encoding="utf-8")
        except OSError as exc:
            raise IoError(f"cannot write classifier {path}: {exc.strerror or exc}") from exc

    @classmethod
    def load(cls, path):
        try:
            return cls.from_json(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise IoError(f"cannot read classifier {path}: {exc.strerror or exc}") from exc
        except (ValueError, KeyError) as exc:
            raise FormatError(f"bad classifier file: {exc}", str(path)) from None


def name_matrix(labeled, store, classes):
    rows, targets = [], []
    for name, role in labeled:
        vec, covered = embed_name(store, name)
        if not covered:
            log.warning("training name %r has no known tokens; skipped", name)
            continue
        rows.append(vec)
        targets.append(classes.index(role))
    if not rows:
        raise InvalidArgument("no training name has an embedding")
    X = with_bias(np.array(rows))
    Y = np.zeros((len(targets), len(classes)))
    Y[np.arange(len(targets)), targets] = 1.0
    return X, Y


def train_name_classifier(labeled, store: EmbeddingStore, learning_rate=DEFAULT_LR,
                          epochs=DEFAULT_EPOCHS, seed=0, l2=DEFAULT_L2, batch_size=None):
    """Gradient descent from zero weights; full batch unless ``batch_size`` is set."""
    roles = {role for _, role in labeled}
    if len(roles) < 2:
        raise InvalidArgument("name classifier needs at least two distinct roles")
    bad = roles - set(NAME_CLASSES)
    if bad:
        raise InvalidArgument(f"roles not allowed for attribute names: {sorted(r.value for r in bad)}")
    classes = [r for r in NAME_CLASSES if r in roles]
    X, Y = name_matrix(labeled, store, classes)
    W = np.zeros((len(classes), X.shape[1]))
    rng = np.random.default_rng(seed)
    for _ in range(epochs):
        if batch_size is None:
            _, grad = loss_and_grad(W, X, Y, l2)
            W -= learning_rate * grad
        else:
            order = rng.permutation(X.shape[0])
            for i in range(0, len(order), batch_size):
                idx = order[i:i + batch_size]
                _, grad = loss_and_grad(W, X[idx], Y[idx], l2)
                W -= learning_rate * grad
    loss, _ = loss_and_grad(W, X, Y, l2)
    meta = {"learning_rate": learning_rate, "epochs": epochs, "l2": l2, "seed": seed,
            "examples": int(X.shape[0]), "final_loss": float(loss)}
    return NameClassifier(classes, W, meta)


def classify_name(model: NameClassifier, store: EmbeddingStore, name: str) -> ClassificationResult:
    vec, covered = embed_name(store, name)
    if not covered:
        return ClassificationResult(SemanticRole.Other, 0.0)
    probs = model.probabilities(vec)
    best = int(np.argmax(probs))
    return ClassificationResult(model.classes[best], float(probs[best]),
                                {c: float(p) for c, p in zip(model.classes, probs)})


# insertion voting ------------------------------------------------------------

NOUN_PHRASE_ROLES = frozenset({
    SemanticRole.ObjectName, SemanticRole.ActorName, SemanticRole.ActorInstance,
    SemanticRole.PassiveName, SemanticRole.PassiveInstance,
})


@dataclass(frozen=True)
class ContextTemplate:
    tokens: tuple[str, ...]
    # (start, end) spans: start == end inserts at a boundary, start < end replaces a chunk
    insertion_points: tuple[tuple[int, int], ...]
    source: str


def select_contexts(corpus, max_contexts=10) -> list[ContextTemplate]:
    """Corpus values covering at least three roles, most roles first."""
    by_text = {}
    for sample in corpus:
        roles = sample.roles()
        if len(roles) >= 3 and sample.text not in by_text:
            by_text[sample.text] = (sample, len(roles))
    if not by_text:
        raise InvalidArgument("no corpus value covers three or more roles")
    ranked = sorted(by_text.values(), key=lambda item: (-item[1], item[0].text))[:max_contexts]
    out = []
    for sample, _ in ranked:
        chunks = sample.chunks()
        points = {(c.start, c.start) for c in chunks[1:]}
        points |= {(c.start, c.end) for c in chunks if c.role in NOUN_PHRASE_ROLES}
        out.append(ContextTemplate(sample.tokens, tuple(sorted(points)), sample.text))
    return out


_PRECEDENCE = {r: i for i, r in enumerate(NOUN_ROLES)}


def insertion_votes(model, contexts, values, lexicon=None) -> Counter:
    votes = Counter()
    for value in values:
        vt = tokenize(value if isinstance(value, str) else format_value(value))
        if not vt:
            continue
        for ctx in contexts:
            for start, end in ctx.insertion_points:
                tokens = list(ctx.tokens[:start]) + vt + list(ctx.tokens[end:])
                _, chunks = tag_tokens(model, tokens, lexicon)
                stop = start + len(vt)
                covering = [c for c in chunks if c.start < stop and c.end > start]
                if len(covering) != 1:
                    continue
                role = TYPE_OF.get(covering[0].role, covering[0].role)
                if role in _PRECEDENCE:
                    votes[role] += 1
    return votes


def winning_role(votes):
    """Most votes; ties go to ObjectName, then ActorName, PassiveName, Other."""
    if not votes:
        return SemanticRole.Other
    return min(votes, key=lambda r: (-votes[r], _PRECEDENCE[r]))


def insertion_vote(model, contexts, values, lexicon=None) -> SemanticRole:
    return winning_role(insertion_votes(model, contexts, values, lexicon))


# attribute decisions -----------------------------------------------------------

@dataclass
class AttributeDecision:
    role: SemanticRole
    confidence: float
    path: str
    votes: dict = field(default_factory=dict)


def sample_domain(values, k=DOMAIN_SAMPLE, seed=0):
    distinct = sorted({format_value(v) if not isinstance(v, str) else v for v in values})
    if len(distinct) <= k:
        return distinct
    return sorted(random.Random(seed).sample(distinct, k))


def classify_attribute(name, kind, domain_sample, name_model, store, tagger=None, contexts=None,
                       tau=DEFAULT_TAU, lexicon=None) -> AttributeDecision:
    if not 0.0 <= tau <= 1.0:
        raise InvalidArgument(f"tau must lie in [0, 1], got {tau}")
    result = classify_name(name_model, store, name)
    if kind == "miscellaneous":
        return AttributeDecision(result.role, result.confidence, "name")
    if kind != "noun_only":
        raise InvalidArgument(f"unknown attribute kind {kind!r}")
    if result.confidence >= tau:
        return AttributeDecision(result.role, result.confidence, "name (confident)")
    if not contexts or tagger is None or not domain_sample:
        log.warning("no insertion contexts for %r; keeping name classification (confidence %.3f)",
                    name, result.confidence)
        return AttributeDecision(result.role, result.confidence, "name (no contexts)")
    votes = insertion_votes(tagger, contexts, domain_sample, lexicon)
    role = winning_role(votes)
    total = sum(votes.values())
    share = votes[role] / total if total else 0.0
    return AttributeDecision(role, share, "insertion vote", {r.value: n for r, n in votes.items()})


# a digit touching a letter ("awb45", "3rd") or following an underscore ("user_019")
_ID_PATTERN = re.compile(r"[^\W\d_]\d|\d[^\W\d_]|_\d")
_WORDS = re.compile(r"[^\W\d_]+")


def is_named_entity(value, gazetteer, lexicon=None):
    if lexicon is None:
        lexicon = default_lexicon()
    words = _WORDS.findall(value)
    if not words:
        return False
    if all(w.lower() in gazetteer for w in words):
        return True
    return len(words) == 1 and words[0][:1].isupper() and words[0].lower() not in lexicon


def refine_instance_level(role, domain_sample, gazetteer=None, lexicon=None) -> SemanticRole:
    """Promote ActorName/PassiveName to the instance role when the values look like identifiers or names."""
    if role not in INSTANCE_OF or not domain_sample:
        return role
    if gazetteer is None:
        from .resources import gazetteer as bundled

        gazetteer = bundled()
    values = [v if isinstance(v, str) else format_value(v) for v in domain_sample]
    if any(_ID_PATTERN.search(v) for v in values):
        return INSTANCE_OF[role]
    if all(is_named_entity(v, gazetteer, lexicon) for v in values):
        return INSTANCE_OF[role]
    return role
