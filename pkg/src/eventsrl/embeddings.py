"""Word vectors in the plain-text GloVe layout (``word v1 ... vd`` per line)."""
from __future__ import annotations

from functools import cache

import numpy as np

from .errors import FormatError, IoError
from .textprep import tokenize


class EmbeddingStore:
    def __init__(self, vectors: dict[str, np.ndarray], dimension: int):
        self.dimension = dimension
        self.vectors = vectors
        for word, vec in vectors.items():
            if vec.shape != (dimension,):
                raise ValueError(f"vector for {word!r} has shape {vec.shape}, expected ({dimension},)")

    def __contains__(self, word):
        return word in self.vectors

    def __len__(self):
        return len(self.vectors)

    def __getitem__(self, word):
        return self.vectors[word]

    def split_compound(self, word, max_parts=3):
        """Split an unknown word into known pieces (``doctype`` -> doc, type), fewest pieces first."""
        return _split(word, self, max_parts)

    def name_tokens(self, name):
        """In-vocabulary tokens of an attribute name, splitting unknown compounds."""
        out = []
        for tok in tokenize(name):
            if tok in self.vectors:
                out.append(tok)
            else:
                out.extend(self.split_compound(tok) or [])
        return out


def _split(word, store, max_parts):
    @cache
    def best(i, parts_left):
        if i == len(word):
            return ()
        if parts_left == 0:
            return None
        found = None
        # longest head first so ties prefer longer leading pieces
        for j in range(len(word), i + 1, -1):
            head = word[i:j]
            if head not in store.vectors:
                continue
            rest = best(j, parts_left - 1)
            if rest is None:
                continue
            cand = (head,) + rest
            if found is None or len(cand) < len(found):
                found = cand
        return found

    if len(word) < 4:
        return None
    parts = best(0, max_parts)
    if parts is None or len(parts) < 2:
        return None
    return list(parts)


def load_embeddings(path) -> EmbeddingStore:
    vectors = {}
    dim = None
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read embeddings {path}: {exc.strerror or exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.rstrip().split(" ")
            if len(parts) < 2:
                if line.strip():
                    raise FormatError("expected a word followed by floats", path, lineno)
                continue
            # word2vec-style "count dim" header
            if lineno == 1 and len(parts) == 2 and parts[0].isdigit() and parts[1].isdigit():
                continue
            word, raw = parts[0], parts[1:]
            if dim is None:
                dim = len(raw)
            elif len(raw) != dim:
                raise FormatError(f"expected {dim} values, got {len(raw)}", path, lineno)
            if word in vectors:
                continue
            try:
                vectors[word] = np.array([float(x) for x in raw])
            except ValueError:
                raise FormatError("unparsable float", path, lineno) from None
    return EmbeddingStore(vectors, dim or 0)


def embed_name(store: EmbeddingStore, name: str):
    """Mean vector of the name's known tokens and whether any token was known."""
    toks = store.name_tokens(name)
    if not toks:
        return np.zeros(store.dimension), False
    return np.mean([store.vectors[t] for t in toks], axis=0), True
