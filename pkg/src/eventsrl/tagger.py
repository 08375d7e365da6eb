"""Instance-level role tagging with a structured averaged perceptron.

Emission scores come from a sparse feature template; transition scores are
learned per label pair. Decoding is constrained so that I-X only follows
B-X or I-X, and among equally scoring sequences the one that is smallest
in label order (O first) wins.
"""
from __future__ import annotations

import io
import json
import random
import struct
from pathlib import Path

import numpy as np

from .corpus import LABEL_INDEX, LABELS, TaggedChunk, bio_to_chunks, corpus_fingerprint, transition_ok
from .errors import FormatError, InvalidArgument, IoError
from .roles import SemanticRole
from .textprep import pos_tag, tokenize

N_LABELS = len(LABELS)
START = N_LABELS  # row index of the start state in the transition matrix


def _allowed():
    mask = np.zeros((N_LABELS + 1, N_LABELS), dtype=bool)
    for j, label in enumerate(LABELS):
        mask[START, j] = transition_ok(None, label)
        for i, prev in enumerate(LABELS):
            mask[i, j] = transition_ok(prev, label)
    return mask


ALLOWED = _allowed()


def phrase_words(phrases):
    return frozenset(w for p in phrases for w in tokenize(p))


def extract_features(tokens, index, actor_words=frozenset(), lifecycle_words=frozenset()):
    """Feature strings for ``tokens[index]``; every position yields the same number."""
    n = len(tokens)
    tok = tokens[index]
    w = tok.text
    if index > 0:
        prev, prev_pos = tokens[index - 1].text.lower(), tokens[index - 1].pos
    else:
        prev, prev_pos = "<S>", "<S>"
    if index < n - 1:
        nxt, next_pos = tokens[index + 1].text.lower(), tokens[index + 1].pos
    else:
        nxt, next_pos = "</S>", "</S>"
    if index == 0:
        bucket = "first"
    elif index == n - 1:
        bucket = "last"
    else:
        bucket = "middle"
    return [
        "bias",
        f"w={w}",
        f"prev={prev}",
        f"next={nxt}",
        f"pos={tok.pos}",
        f"prevpos={prev_pos}",
        f"nextpos={next_pos}",
        f"pre2={w[:2]}",
        f"pre3={w[:3]}",
        f"suf2={w[-2:]}",
        f"suf3={w[-3:]}",
        f"bucket={bucket}",
        f"bigram={prev}|{w}",
        f"actor={int(w in actor_words)}",
        f"lifecycle={int(w in lifecycle_words)}",
    ]


def _best_path(emissions, transitions):
    """Highest scoring valid label path, lexicographically first among ties.

    Runs the recursion backwards so the path can then be read off forwards,
    always taking the first label that still reaches the optimum.
    """
    n = emissions.shape[0]
    trans = np.where(ALLOWED, transitions, -np.inf)
    beta = np.empty_like(emissions)
    best_next = np.empty_like(emissions)
    beta[n - 1] = emissions[n - 1]
    for t in range(n - 2, -1, -1):
        best_next[t] = (trans[:N_LABELS] + beta[t + 1][None, :]).max(axis=1)
        beta[t] = emissions[t] + best_next[t]
    path = [int(np.argmax(trans[START] + beta[0]))]
    for t in range(1, n):
        path.append(int(np.argmax(trans[path[-1]] + beta[t])))
    return path


class TaggerModel:
    def __init__(self, features, weights, transitions, actor_words=frozenset(),
                 lifecycle_words=frozenset(), metadata=None):
        self.features = list(features)
        self.index = {f: i for i, f in enumerate(self.features)}
        self.weights = np.asarray(weights, dtype=np.float64).reshape(len(self.features), N_LABELS)
        self.transitions = np.asarray(transitions, dtype=np.float64).reshape(N_LABELS + 1, N_LABELS)
        self.actor_words = frozenset(actor_words)
        self.lifecycle_words = frozenset(lifecycle_words)
        self.metadata = dict(metadata or {})
        self.labels = LABELS

    @classmethod
    def empty(cls, actor_words=frozenset(), lifecycle_words=frozenset()):
        return cls([], np.zeros((0, N_LABELS)), np.zeros((N_LABELS + 1, N_LABELS)),
                   actor_words, lifecycle_words)

    def features_for(self, tokens, index):
        return extract_features(tokens, index, self.actor_words, self.lifecycle_words)

    def emissions(self, tokens):
        scores = np.zeros((len(tokens), N_LABELS))
        for t in range(len(tokens)):
            rows = [self.index[f] for f in self.features_for(tokens, t) if f in self.index]
            if rows:
                scores[t] = self.weights[rows].sum(axis=0)
        return scores

    def decode(self, tokens):
        if not tokens:
            return []
        path = _best_path(self.emissions(tokens), self.transitions)
        return [LABELS[i] for i in path]

    def weight(self, feature, label):
        i = self.index.get(feature)
        return 0.0 if i is None else float(self.weights[i, LABEL_INDEX[label]])

    # serialization -------------------------------------------------------

    MAGIC = b"ESRLTAG\x00"
    VERSION = 1

    def to_bytes(self):
        meta = dict(self.metadata)
        meta["labels"] = list(LABELS)
        meta["actor_words"] = sorted(self.actor_words)
        meta["lifecycle_words"] = sorted(self.lifecycle_words)
        sections = [
            json.dumps(meta, sort_keys=True).encode("utf-8"),
            "\n".join(self.features).encode("utf-8"),
            self.weights.astype("<f8").tobytes(),
            self.transitions.astype("<f8").tobytes(),
        ]
        buf = io.BytesIO()
        buf.write(self.MAGIC)
        buf.write(struct.pack("<I", self.VERSION))
        for section in sections:
            buf.write(struct.pack("<Q", len(section)))
            buf.write(section)
        return buf.getvalue()

    @classmethod
    def from_bytes(cls, data, path=None):
        if data[:8] != cls.MAGIC:
            raise FormatError("not a tagger model file (bad magic)", path)
        (version,) = struct.unpack_from("<I", data, 8)
        if version != cls.VERSION:
            raise FormatError(f"unsupported model version {version}", path)
        pos = 12
        sections = []
        for _ in range(4):
            if pos + 8 > len(data):
                raise FormatError("truncated model file", path)
            (size,) = struct.unpack_from("<Q", data, pos)
            pos += 8
            if pos + size > len(data):
                raise FormatError("truncated model file", path)
            sections.append(data[pos:pos + size])
            pos += size
        meta = json.loads(sections[0].decode("utf-8"))
        if tuple(meta.pop("labels")) != LABELS:
            raise FormatError("model label set does not match", path)
        features = sections[1].decode("utf-8").split("\n") if sections[1] else []
        weights = np.frombuffer(sections[2], dtype="<f8").reshape(len(features), N_LABELS)
        transitions = np.frombuffer(sections[3], dtype="<f8")
        return cls(features, weights.copy(), transitions.copy(), meta.pop("actor_words"),
                   meta.pop("lifecycle_words"), meta)

    def save(self, path):
        try:
            Path(path).write_bytes(self.to_bytes())
        except OSError as exc:
            raise IoError(f"cannot write model {path}: {exc.strerror or exc}") from exc

    @classmethod
    def load(cls, path):
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise IoError(f"cannot read model {path}: {exc.strerror or exc}") from exc
        return cls.from_bytes(data, str(path))

    def dump_text(self):
        """Human-readable listing of every non-zero weight."""
        lines = [f"# {json.dumps(self.metadata, sort_keys=True)}"]
        for i, feat in enumerate(self.features):
            for j in np.flatnonzero(self.weights[i]):
                lines.append(f"{feat}\t{LABELS[j]}\t{self.weights[i, j]!r}")
        for i in range(N_LABELS + 1):
            prev = "<START>" if i == START else LABELS[i]
            for j in np.flatnonzero(self.transitions[i]):
                lines.append(f"{prev}->{LABELS[j]}\t{self.transitions[i, j]!r}")
        return "\n".join(lines) + "\n"


def viterbi_decode(model, tokens):
    return model.decode(tokens)


def train_tagger(samples, epochs, seed, actor_words=frozenset(), lifecycle_words=frozenset(),
                 lexicon=None) -> TaggerModel:
    if not samples:
        raise InvalidArgument("cannot train on an empty corpus")
    if epochs < 0:
        raise InvalidArgument("epochs must be non-negative")
    actor_words = frozenset(actor_words)
    lifecycle_words = frozenset(lifecycle_words)

    prepared = []
    feature_set = set()
    for s in samples:
        tokens = pos_tag(s.tokens, lexicon)
        feats = [extract_features(tokens, t, actor_words, lifecycle_words) for t in range(len(tokens))]
        feature_set.update(f for fs in feats for f in fs)
        prepared.append((feats, [LABEL_INDEX[label] for label in s.labels]))
    features = sorted(feature_set)
    index = {f: i for i, f in enumerate(features)}
    data = [(np.array([[index[f] for f in fs] for fs in feats], dtype=np.int64), gold)
            for feats, gold in prepared if gold]

    W = np.zeros((len(features), N_LABELS))
    T = np.zeros((N_LABELS + 1, N_LABELS))
    # running sums for averaging: avg = w - acc / c
    W_acc = np.zeros_like(W)
    T_acc = np.zeros_like(T)
    c = 1
    rng = random.Random(seed)
    order = list(range(len(data)))
    for _ in range(epochs):
        rng.shuffle(order)
        for k in order:
            ids, gold = data[k]
            pred = _best_path(W[ids].sum(axis=1), T)
            if pred != gold:
                prev_g = prev_p = START
                for t, (g, p) in enumerate(zip(gold, pred)):
                    if g != p:
                        W[ids[t], g] += 1.0
                        W[ids[t], p] -= 1.0
                        W_acc[ids[t], g] += c
                        W_acc[ids[t], p] -= c
                    if (prev_g, g) != (prev_p, p):
                        T[prev_g, g] += 1.0
                        T[prev_p, p] -= 1.0
                        T_acc[prev_g, g] += c
                        T_acc[prev_p, p] -= c
                    prev_g, prev_p = g, p
            c += 1
    meta = {"epochs": epochs, "seed": seed, "corpus": corpus_fingerprint(samples), "samples": len(samples)}
    return TaggerModel(features, W - W_acc / c, T - T_acc / c, actor_words, lifecycle_words, meta)


def tag_tokens(model, token_texts, lexicon=None):
    """Tag already tokenized text; returns (POS tokens, chunks)."""
    tokens = pos_tag(token_texts, lexicon)
    labels = model.decode(tokens)
    return tokens, bio_to_chunks([t.text for t in tokens], labels)


def tag_value(model, value, lexicon=None) -> list[TaggedChunk]:
    toks = tokenize(value)
    if not toks:
        return []
    return tag_tokens(model, toks, lexicon)[1]


def detect_noun_only(taggings, lexicon=None) -> bool:
    """True when every tagged value is made only of nouns and object-name chunks."""
    saw_object = False
    for chunks in taggings.values():
        if not chunks:
            continue
        for chunk in chunks:
            if chunk.role is SemanticRole.ObjectName:
                saw_object = True
            elif chunk.role is not SemanticRole.Other:
                return False
        words = [w for c in chunks for w in c.text.split()]
        if any(t.pos not in ("NOUN", "PROPN") for t in pos_tag(words, lexicon)):
            return False
    return saw_object

