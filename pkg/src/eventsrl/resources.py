"""Access to the data files shipped with the package."""
from functools import cache
from importlib import resources
from pathlib import Path


def data_path(name) -> Path:
    return Path(str(resources.files("eventsrl") / "data" / name))


@cache
def actor_lexicon():
    from .corpus import load_phrases

    return tuple(load_phrases(data_path("actors.txt")))


@cache
def lifecycle_lexicon():
    from .corpus import load_lifecycle

    return tuple(load_lifecycle(data_path("lifecycle.tsv")))


@cache
def gazetteer():
    from .corpus import load_phrases

    return frozenset(p.lower() for p in load_phrases(data_path("gazetteer.txt")))


def bundled_corpus():
    from .corpus import load_corpus

    return load_corpus(data_path("corpus.conll"), source="bundled")


@cache
def bundled_embeddings():
    from .embeddings import load_embeddings

    return load_embeddings(data_path("embeddings.txt"))


def bundled_names():
    from .classifier import load_labeled_names

    return load_labeled_names(data_path("attribute_names.tsv"))
