"""Independent reference implementations used by the tests.

None of these reuse the code paths they check: the decoder oracle scores
every valid label sequence, the metrics oracle matches chunks pair by pair,
and the gradient oracle uses central finite differences.
"""
import itertools
from collections import Counter

import numpy as np

from eventsrl.corpus import LABELS
from eventsrl.tagger import TaggerModel
from eventsrl.textprep import Token

N = len(LABELS)


def bio_ok(prev, label):
    if not label.startswith("I-"):
        return True
    return prev is not None and prev[2:] == label[2:] and prev[0] in "BI"


def valid_sequences(n):
    """All BIO-valid index sequences of length ``n`` in lexicographic order."""
    seqs = [()]
    for _ in range(n):
        seqs = [s + (j,) for s in seqs for j in range(N)
                if bio_ok(LABELS[s[-1]] if s else None, LABELS[j])]
    return np.array(seqs, dtype=np.int64).reshape(len(seqs), n)


_SEQ_CACHE = {}


def brute_force_decode(emissions, transitions):
    """Argmax over every valid sequence; the lexicographically first wins ties.

    ``transitions`` has a start row at index N.
    """
    n = emissions.shape[0]
    if n not in _SEQ_CACHE:
        _SEQ_CACHE[n] = valid_sequences(n)
    seqs = _SEQ_CACHE[n]
    score = transitions[N, seqs[:, 0]] + emissions[0, seqs[:, 0]]
    for t in range(1, n):
        score = score + transitions[seqs[:, t - 1], seqs[:, t]] + emissions[t, seqs[:, t]]
    return [LABELS[j] for j in seqs[int(np.argmax(score))]]


def oracle_emissions(model, tokens):
    out = np.zeros((len(tokens), N))
    for t in range(len(tokens)):
        for f in model.features_for(tokens, t):
            for j, label in enumerate(LABELS):
                out[t, j] += model.weight(f, label)
    return out


WORDS = ["create", "order", "by", "clerk", "sent", "invoice", "to", "bank", "open"]
TAGS = ["VERB", "NOUN", "ADP", "NOUN", "VERB", "NOUN", "ADP", "NOUN", "ADJ"]


def random_tokens(rng, n):
    idx = rng.integers(0, len(WORDS), n)
    return [Token(WORDS[i], TAGS[i]) for i in idx]


def random_model(rng, tokens, integer=False):
    """Random weights for every feature the given tokens fire, plus random transitions."""
    base = TaggerModel.empty()
    feats = sorted({f for t in range(len(tokens)) for f in base.features_for(tokens, t)})
    if integer:
        # small integers make ties common, which exercises the tie-break order
        W = rng.integers(-2, 3, (len(feats), N)).astype(float)
        T = rng.integers(-2, 3, (N + 1, N)).astype(float)
    else:
        W = rng.normal(size=(len(feats), N))
        T = rng.normal(size=(N + 1, N))
    return TaggerModel(feats, W, T)


def chunk_counts(predicted, gold):
    """(tp, fp, fn) Counters by role via explicit pair matching."""
    tp, fp, fn = Counter(), Counter(), Counter()
    for key in gold:
        p = [c for c in predicted[key] if c.role.value != "Other"]
        g = [c for c in gold[key] if c.role.value != "Other"]
        used = [False] * len(g)
        for pc in p:
            hit = False
            for i, gc in enumerate(g):
                if not used[i] and (pc.start, pc.end, pc.role) == (gc.start, gc.end, gc.role):
                    used[i] = hit = True
                    break
            if hit:
                tp[pc.role] += 1
            else:
                fp[pc.role] += 1
        for i, gc in enumerate(g):
            if not used[i]:
                fn[gc.role] += 1
    return tp, fp, fn


def attribute_counts(predicted, gold):
    tp, fp, fn = Counter(), Counter(), Counter()
    for name in set(predicted) | set(gold):
        pairs_p = {(name, predicted[name])} if name in predicted and predicted[name].value != "Other" else set()
        pairs_g = {(name, gold[name])} if name in gold and gold[name].value != "Other" else set()
        for _, r in pairs_p & pairs_g:
            tp[r] += 1
        for _, r in pairs_p - pairs_g:
            fp[r] += 1
        for _, r in pairs_g - pairs_p:
            fn[r] += 1
    return tp, fp, fn


def prf(tp, fp, fn):
    p = tp / (tp + fp) if tp + fp else 0.0
    r = tp / (tp + fn) if tp + fn else 0.0
    f = 2 * p * r / (p + r) if p + r else 0.0
    return p, r, f


def finite_difference(fn, W, step=1e-5):
    grad = np.zeros_like(W)
    for idx in itertools.product(*(range(s) for s in W.shape)):
        up, down = W.copy(), W.copy()
        up[idx] += step
        down[idx] -= step
        grad[idx] = (fn(up) - fn(down)) / (2 * step)
    return grad
