"""Tokenization, part-of-speech tagging and the textual/miscellaneous split."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import cache
from importlib import resources
from pathlib import Path

from .errors import FormatError, IoError
from .log import AttributeProfile, AttrType, EventLog, format_value

UPOS = (
    "NOUN", "VERB", "ADJ", "ADV", "PROPN", "ADP", "DET",
    "CCONJ", "PRON", "NUM", "AUX", "PART", "X",
)
CONTENT_TAGS = frozenset({"NOUN", "VERB", "ADV", "ADJ"})

POS_SAMPLE = 1000

_CAMEL = re.compile(r"(?<=[a-z])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")
_LETTERS = re.compile(r"[^\W\d_]+")


@dataclass(frozen=True)
class Token:
    text: str
    pos: str


def tokenize(value: str) -> list[str]:
    """Split a value into lowercase alphabetic tokens.

    Any non-letter character separates tokens, and lower-to-upper case
    changes split camel-case words. Digits are dropped entirely, so
    ``"AWB45"`` becomes ``"awb"`` and ``"123"`` yields nothing.
    """
    tokens = []
    for piece in _CAMEL.split(value):
        tokens.extend(m.lower() for m in _LETTERS.findall(piece))
    return tokens


def tokenize_value(value) -> tuple[str, ...]:
    if not isinstance(value, str):
        value = format_value(value)
    return tuple(tokenize(value))


def load_lexicon(path) -> dict[str, str]:
    lexicon = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read lexicon {path}: {exc.strerror or exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or parts[1] not in UPOS:
            raise FormatError(f"expected word<TAB>UPOS, got {line!r}", path, lineno)
        lexicon[parts[0].strip().lower()] = parts[1]
    return lexicon


@cache
def default_lexicon() -> dict[str, str]:
    with resources.as_file(resources.files("eventsrl") / "data" / "pos_lexicon.tsv") as p:
        return load_lexicon(p)


# (suffix, tag), checked in order; the stem must keep at least 3 letters
_SUFFIX_RULES = (
    ("ing", "VERB"), ("ed", "VERB"), ("ize", "VERB"), ("ise", "VERB"),
    ("tion", "NOUN"), ("sion", "NOUN"), ("ment", "NOUN"), ("ness", "NOUN"), ("ity", "NOUN"),
    ("ly", "ADV"),
    ("ous", "ADJ"), ("ive", "ADJ"), ("able", "ADJ"), ("ible", "ADJ"), ("al", "ADJ"),
)


def guess_tag(word: str, lexicon: dict[str, str]) -> str:
    """Tag for a word that is not in the lexicon."""
    if len(word) < 2:
        return "X"
    if word.endswith("s") and word[:-1] in lexicon and lexicon[word[:-1]] == "NOUN":
        return "NOUN"
    for suffix, tag in _SUFFIX_RULES:
        if word.endswith(suffix) and len(word) - len(suffix) >= 3:
            return tag
    # short unknown words are mostly acronyms (awb, srm)
    if len(word) <= 4:
        return "PROPN"
    return "NOUN"


def pos_tag(tokens, lexicon: dict[str, str] | None = None) -> list[Token]:
    if lexicon is None:
        lexicon = default_lexicon()
    out = []
    for word in tokens:
        tag = lexicon.get(word)
        if tag is None:
            tag = guess_tag(word, lexicon)
        out.append(Token(word, tag))
    return out


@dataclass
class AttributePartition:
    textual: set[str] = field(default_factory=set)
    miscellaneous: set[str] = field(default_factory=set)
    excluded: dict[str, str] = field(default_factory=dict)
    # attribute name -> {value: tokens}, for every profiled string value
    tokenizations: dict[str, dict[object, tuple[str, ...]]] = field(default_factory=dict)
    types: dict[str, AttrType] = field(default_factory=dict)

    def category(self, name):
        if name in self.textual:
            return "textual"
        if name in self.miscellaneous:
            return "miscellaneous"
        if name in self.excluded:
            return "excluded"
        raise KeyError(name)

    @property
    def names(self):
        return self.textual | self.miscellaneous | set(self.excluded)


def _ordered(values):
    return sorted(values, key=lambda v: (type(v).__name__, format_value(v)))


def _is_textual(tokenized, lexicon, sample_size, seed):
    distinct = {toks for toks in tokenized if toks}
    if len(distinct) < 2:
        return False
    candidates = sorted(distinct)
    if len(candidates) > sample_size:
        candidates = random.Random(seed).sample(candidates, sample_size)
    for toks in candidates:
        if any(t.pos in CONTENT_TAGS for t in pos_tag(toks, lexicon)):
            return True
    return False


def categorize_attributes(
    log: EventLog,
    profiles: list[AttributeProfile],
    lexicon: dict[str, str] | None = None,
    sample_size: int = POS_SAMPLE,
    seed: int = 0,
) -> AttributePartition:
    if lexicon is None:
        lexicon = default_lexicon()
    part = AttributePartition()
    for prof in profiles:
        name = prof.name
        part.types[name] = prof.inferred_type
        kind = prof.inferred_type
        if kind is AttrType.TimestampType:
            part.excluded[name] = "timestamp"
        elif kind is AttrType.RealType or (kind is AttrType.IntegerType and prof.has_negative):
            part.excluded[name] = "non-semantic numeric"
        elif kind is AttrType.StringType:
            cache = {v: tokenize_value(v) for v in _ordered(prof.distinct_values)}
            part.tokenizations[name] = cache
            if _is_textual(cache.values(), lexicon, sample_size, seed):
                part.textual.add(name)
            else:
                part.miscellaneous.add(name)
        else:
            part.miscellaneous.add(name)
    return part
