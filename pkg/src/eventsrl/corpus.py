"""BIO-labelled training samples: validation, CoNLL-style I/O, augmentation."""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from pathlib import Path

from .errors import FormatError, InvalidArgument, IoError
from .roles import ROLES, SemanticRole
from .textprep import tokenize

OUTSIDE = "O"

#: O first, then B-/I- pairs in role declaration order; this is the tie-break order.
LABELS = (OUTSIDE,) + tuple(f"{p}-{r.value}" for r in ROLES for p in ("B", "I"))
LABEL_INDEX = {label: i for i, label in enumerate(LABELS)}


def split_label(label):
    """``"B-ObjectName"`` -> ``("B", SemanticRole.ObjectName)``; ``"O"`` -> ``("O", None)``."""
    if label == OUTSIDE:
        return OUTSIDE, None
    prefix, _, role = label.partition("-")
    if prefix not in ("B", "I") or label not in LABEL_INDEX:
        raise ValueError(f"malformed label {label!r}")
    return prefix, SemanticRole(role)


def transition_ok(prev, label):
    """Whether ``label`` may follow ``prev`` (``None`` = start of sequence)."""
    if not label.startswith("I-"):
        return True
    return prev is not None and prev != OUTSIDE and prev[2:] == label[2:]


def bio_errors(labels):
    """Positions whose label breaks the BIO constraints."""
    bad = []
    prev = None
    for i, label in enumerate(labels):
        if not transition_ok(prev, label):
            bad.append(i)
        prev = label
    return bad


def is_valid_bio(labels):
    return all(label in LABEL_INDEX for label in labels) and not bio_errors(labels)


@dataclass(frozen=True)
class TaggedChunk:
    start: int
    end: int
    text: str
    role: SemanticRole

    @property
    def token_span(self):
        return (self.start, self.end)


def bio_to_chunks(tokens, labels) -> list[TaggedChunk]:
    """Convert labels to chunks. Runs of O become Other chunks, so the chunks
    cover every token exactly once."""
    chunks = []
    start = 0
    role = None
    for i, label in enumerate(labels):
        prefix, r = split_label(label)
        r = r or SemanticRole.Other
        if i == 0:
            role = r
            continue
        continues = (prefix == "I" and r == role) or (prefix == OUTSIDE and role is SemanticRole.Other)
        if not continues:
            chunks.append(TaggedChunk(start, i, " ".join(tokens[start:i]), role))
            start, role = i, r
    if labels:
        chunks.append(TaggedChunk(start, len(labels), " ".join(tokens[start:]), role))
    return chunks


def chunks_to_bio(n, chunks):
    labels = [OUTSIDE] * n
    for chunk in chunks:
        if chunk.role is SemanticRole.Other:
            continue
        labels[chunk.start] = f"B-{chunk.role.value}"
        for i in range(chunk.start + 1, chunk.end):
            labels[i] = f"I-{chunk.role.value}"
    return labels


@dataclass(frozen=True)
class TrainingSample:
    tokens: tuple[str, ...]
    labels: tuple[str, ...]
    source: str = ""

    def __post_init__(self):
        if len(self.tokens) != len(self.labels):
            raise InvalidArgument("tokens and labels differ in length")

    @classmethod
    def from_pairs(cls, pairs, source=""):
        return cls(tuple(t for t, _ in pairs), tuple(label for _, label in pairs), source)

    @property
    def text(self):
        return " ".join(self.tokens)

    def chunks(self):
        return bio_to_chunks(self.tokens, self.labels)

    def roles(self):
        return {c.role for c in self.chunks() if c.role is not SemanticRole.Other}

    def fingerprint(self):
        raw = "\n".join(f"{t}\t{label}" for t, label in zip(self.tokens, self.labels))
        return hashlib.sha256(raw.encode("utf-8")).hexdigest()[:16]


def corpus_fingerprint(samples):
    h = hashlib.sha256()
    for s in samples:
        h.update(s.fingerprint().encode("ascii"))
    return h.hexdigest()[:16]


def parse_corpus(lines, path=None, source=""):
    samples = []
    pairs = []
    first_line = None

    def flush():
        if not pairs:
            return
        labels = [label for _, label in pairs]
        bad = bio_errors(labels)
        if bad:
            lineno = first_line + bad[0]
            raise FormatError(f"label {labels[bad[0]]} cannot follow "
                              f"{labels[bad[0] - 1] if bad[0] else 'start of sample'}", path, lineno)
        samples.append(TrainingSample.from_pairs(pairs, source))
        pairs.clear()

    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            flush()
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip():
            raise FormatError(f"expected token<TAB>LABEL, got {line!r}", path, lineno)
        token, label = parts[0].strip(), parts[1].strip()
        if label not in LABEL_INDEX:
            raise FormatError(f"malformed label {label!r}", path, lineno)
        if not pairs:
            first_line = lineno
        pairs.append((token, label))
    flush()
    return samples


def load_corpus(path, source="") -> list[TrainingSample]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read corpus {path}: {exc.strerror or exc}") from exc
    return parse_corpus(text.splitlines(), str(path), source)


def format_corpus(samples):
    blocks = ["".join(f"{t}\t{label}\n" for t, label in zip(s.tokens, s.labels)) for s in samples]
    return "\n".join(blocks)


def write_corpus(samples, path):
    try:
        Path(path).write_text(format_corpus(samples), encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write corpus {path}: {exc.strerror or exc}") from exc


def load_phrases(path):
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return [line.strip() for line in lines if line.strip() and not line.startswith("#")]


STATUS_ROLES = (SemanticRole.ActionStatus, SemanticRole.ObjectStatus)


def load_lifecycle(path):
    """Lifecycle lexicon: ``phrase<TAB>ActionStatus|ObjectStatus`` (role defaults to ActionStatus)."""
    entries = []
    for lineno, line in enumerate(load_phrases(path), 1):
        phrase, _, role = line.partition("\t")
        role = SemanticRole.parse(role) if role.strip() else SemanticRole.ActionStatus
        if role not in STATUS_ROLES:
            raise FormatError(f"lifecycle role must be ActionStatus or ObjectStatus, got {role}", path, lineno)
        entries.append((phrase.strip(), role))
    return entries


def _labelled(phrase, role):
    toks = tokenize(phrase)
    return toks, [f"{'B' if i == 0 else 'I'}-{role.value}" for i in range(len(toks))]


def augment_corpus(samples, actor_lexicon, lifecycle_lexicon, n_actor, n_status, seed):
    """Return ``samples`` plus synthetic variants with an actor or status appended.

    Actor variants append ``by <actor>``; status variants append a lifecycle
    phrase labelled with the role its lexicon entry declares. Lifecycle
    entries may be plain strings (treated as ActionStatus) or (phrase, role).
    """
    if n_actor < 0 or n_status < 0:
        raise InvalidArgument("augmentation counts must be non-negative")
    if n_actor and not actor_lexicon:
        raise InvalidArgument("actor lexicon is empty")
    if n_status and not lifecycle_lexicon:
        raise InvalidArgument("lifecycle lexicon is empty")
    if (n_actor or n_status) and not samples:
        raise InvalidArgument("no samples to augment")
    lifecycle = [(e, SemanticRole.ActionStatus) if isinstance(e, str) else e for e in lifecycle_lexicon]
    rng = random.Random(seed)
    out = list(samples)
    for _ in range(n_actor):
        base = rng.choice(samples)
        toks, labels = _labelled(rng.choice(actor_lexicon), SemanticRole.ActorName)
        out.append(TrainingSample(base.tokens + ("by", *toks), base.labels + (OUTSIDE, *labels), "augmentation"))
    for _ in range(n_status):
        base = rng.choice(samples)
        phrase, role = rng.choice(lifecycle)
        toks, labels = _labelled(phrase, role)
        out.append(TrainingSample(base.tokens + tuple(toks), base.labels + tuple(labels), "augmentation"))
    return out
