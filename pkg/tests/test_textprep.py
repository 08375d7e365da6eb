import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eventsrl.log import Event, EventLog, Trace, attribute_profiles
from eventsrl.synth import synthetic_log
from eventsrl.textprep import UPOS, categorize_attributes, guess_tag, load_lexicon, pos_tag, tokenize
from eventsrl.xes import read_xes


@pytest.mark.parametrize("value, expected", [
    ("Create_PurchaseOrder", ["create", "purchase", "order"]),
    ("USER_123", ["user"]),
    ("08_AWB45_005", ["awb"]),
    ("", []),
    ("declaration final_approved by supervisor", ["declaration", "final", "approved", "by", "supervisor"]),
    ("t13 adjust document x request unlicensed", ["t", "adjust", "document", "x", "request", "unlicensed"]),
    ("org:resource", ["org", "resource"]),
    ("W_Complete-application/offer.v2", ["w", "complete", "application", "offer", "v"]),
    ("HTTPRequest", ["http", "request"]),
])
def test_tokenize_examples(value, expected):
    assert tokenize(value) == expected


def test_pos_tag_examples():
    assert [(t.text, t.pos) for t in pos_tag(["create", "purchase", "order"])] == [
        ("create", "VERB"), ("purchase", "NOUN"), ("order", "NOUN")]
    assert pos_tag(["user"])[0].pos == "NOUN"
    assert pos_tag(["awb"])[0].pos == "PROPN"
    assert pos_tag(["x"])[0].pos == "X"


def test_suffix_rules_for_unknown_words():
    lex = {}
    assert guess_tag("reinvoiced", lex) == "VERB"
    assert guess_tag("rebooking", lex) == "VERB"
    assert guess_tag("escalation", lex) == "NOUN"
    assert guess_tag("swiftly", lex) == "ADV"
    assert guess_tag("procedural", lex) == "ADJ"
    assert guess_tag("flibbertigibbet", lex) == "NOUN"


def test_custom_lexicon_file(tmp_path):
    p = tmp_path / "lex.tsv"
    p.write_text("awb\tNOUN\n", encoding="utf-8")
    assert pos_tag(["awb"], load_lexicon(p))[0].pos == "NOUN"


_values = st.text(st.sampled_from("abcXYZ019 _-:./Ab"), max_size=30)


@settings(max_examples=300)
@given(_values)
def test_tokens_are_clean(value):
    for tok in tokenize(value):
        assert tok and tok == tok.lower()
        assert not re.search(r"[\s_\-:./]", tok)
        assert not re.fullmatch(r"[0-9]+", tok)


@settings(max_examples=300)
@given(_values)
def test_tokenize_idempotent_on_joined_output(value):
    toks = tokenize(value)
    assert tokenize(" ".join(toks)) == toks


@settings(max_examples=100)
@given(st.lists(st.text(st.sampled_from("abcdefgxyz"), min_size=1, max_size=8), max_size=8))
def test_pos_tag_length_and_tagset(tokens):
    tagged = pos_tag(tokens)
    assert len(tagged) == len(tokens)
    assert all(t.pos in UPOS for t in tagged)


def _one_attr_log(values):
    return EventLog(traces=[Trace([Event({"a": v}) for v in values])])


def _categorize(log):
    return categorize_attributes(log, attribute_profiles(log))


def test_textual_labels():
    assert _categorize(_one_attr_log(["Create_PurchaseOrder", "Approve_Invoice"])).textual == {"a"}


def test_same_token_values_are_miscellaneous():
    assert _categorize(_one_attr_log(["USER_123", "USER_45"])).miscellaneous == {"a"}


def test_values_without_content_words_are_miscellaneous():
    assert _categorize(_one_attr_log(["of the", "and to"])).miscellaneous == {"a"}


def test_boolean_and_numeric_categories():
    log = EventLog(traces=[Trace([Event({"isClosed": True, "delta": -1, "prio": 3, "x": 1.5}),
                                  Event({"isClosed": False, "delta": 4, "prio": 1, "x": 2.0})])])
    part = _categorize(log)
    assert part.miscellaneous == {"isClosed", "prio"}
    assert part.excluded == {"delta": "non-semantic numeric", "x": "non-semantic numeric"}


def test_fixture_categorization(fixture_xes):
    part = _categorize(read_xes(fixture_xes))
    assert part.textual == {"concept:name", "doctype"}
    assert part.miscellaneous == {"org:resource", "isClosed", "note", "uid"}
    assert part.excluded == {"time:timestamp": "timestamp", "amount": "non-semantic numeric",
                             "priority": "non-semantic numeric"}
    assert part.tokenizations["concept:name"]["Create_PurchaseOrder"] == ("create", "purchase", "order")


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_partition_is_disjoint_cover(seed):
    log = synthetic_log(8, 3, seed=seed)
    part = _categorize(log)
    names = set(log.event_attribute_names())
    groups = [part.textual, part.miscellaneous, set(part.excluded)]
    assert set().union(*groups) == names
    assert sum(len(g) for g in groups) == len(names)
