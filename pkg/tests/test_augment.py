import copy

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eventsrl.augment import (AttributeLevel, InstanceLevel, MultiValuePolicy, RoleAssignment, augment_log,
                              collect_assignments, consolidate_boolean_status, join_list, semantic_values,
                              split_list)
from eventsrl.corpus import TaggedChunk
from eventsrl.errors import CollisionError, InvalidArgument
from eventsrl.log import Event, EventLog, Trace
from eventsrl.roles import SemanticRole
from eventsrl.xes import read_xes, write_xes

R = SemanticRole


def _log(*labels, **extra):
    return EventLog(traces=[Trace([Event({"concept:name": v, **extra}) for v in labels])])


DRAFT = {"draft and send request for advice": [
    TaggedChunk(0, 1, "draft", R.ActionName), TaggedChunk(1, 2, "and", R.Other),
    TaggedChunk(2, 3, "send", R.ActionName), TaggedChunk(3, 6, "request for advice", R.ObjectName)]}


def _draft_assignments(log):
    return collect_assignments(log, ["concept:name"], {"concept:name": DRAFT}, {})


def test_list_policy_example():
    log = _log("draft and send request for advice")
    (event,) = augment_log(log, _draft_assignments(log), "list").traces[0].events
    assert event["semantic:action:name"] == "draft,send"
    assert event["semantic:object:name"] == "request for advice"
    assert "semantic:actor:name" not in event.attributes


def test_indexed_policy_example():
    log = _log("draft and send request for advice")
    (event,) = augment_log(log, _draft_assignments(log), MultiValuePolicy.IndexedAttributes).traces[0].events
    assert event["semantic:action:name:0"] == "draft"
    assert event["semantic:action:name:1"] == "send"
    assert event["semantic:object:name:0"] == "request for advice"


def test_assignment_provenance():
    log = _log("draft and send request for advice")
    first = _draft_assignments(log)[0]
    assert first == RoleAssignment(0, 0, R.ActionName, "draft", AttributeLevel("ignored"))
    assert first.provenance == InstanceLevel("concept:name", (0, 1))


def test_other_is_never_assigned():
    with pytest.raises(InvalidArgument):
        RoleAssignment(0, 0, R.Other, "x", AttributeLevel("a"))


def test_attribute_level_values_are_rendered():
    log = EventLog(traces=[Trace([Event({"org:resource": "user_1", "n": 4}), Event({"n": 5})])])
    got = collect_assignments(log, [], {}, {"org:resource": R.ActorInstance, "n": R.Other})
    assert [(a.event, a.role, a.value) for a in got] == [(0, R.ActorInstance, "user_1")]


def test_augmentation_leaves_input_untouched(fixture_xes):
    log = read_xes(fixture_xes)
    before = copy.deepcopy(log)
    assignments = [RoleAssignment(0, 0, R.ObjectName, "order", AttributeLevel("x"))]
    out = augment_log(log, assignments)
    assert log == before
    for t_in, t_out in zip(log.traces, out.traces):
        for e_in, e_out in zip(t_in.events, t_out.events):
            assert {k: v for k, v in e_out.attributes.items() if not k.startswith("semantic:")} == e_in.attributes


def test_reaugmenting_collides():
    log = _log("create order")
    once = augment_log(log, [RoleAssignment(0, 0, R.ActionName, "create", AttributeLevel("concept:name"))])
    with pytest.raises(CollisionError):
        augment_log(once, [])


def test_augmented_log_survives_xes(tmp_path):
    log = _log("draft and send request for advice")
    out = augment_log(log, _draft_assignments(log))
    write_xes(out, tmp_path / "a.xes")
    again = read_xes(tmp_path / "a.xes")
    assert semantic_values(again.traces[0].events[0]) == {R.ActionName: ["draft", "send"],
                                                         R.ObjectName: ["request for advice"]}


_items = st.lists(st.text(st.sampled_from("ab,\\ x"), min_size=0, max_size=6), min_size=1, max_size=5)


@settings(max_examples=300)
@given(_items)
def test_list_escape_round_trip(items):
    assert split_list(join_list(items)) == items


_assignment_sets = st.lists(
    st.tuples(st.integers(0, 2), st.sampled_from([r for r in R if r is not R.Other]),
              st.text(st.sampled_from("ab,\\ "), min_size=1, max_size=5)),
    max_size=12)


@settings(max_examples=150)
@given(_assignment_sets)
def test_policies_carry_the_same_values(raw):
    log = _log("a", "b", "c")
    assignments = [RoleAssignment(0, e, role, v, AttributeLevel("x")) for e, role, v in raw]
    listed = augment_log(log, assignments, "list")
    indexed = augment_log(log, assignments, "indexed")
    for e_list, e_idx in zip(listed.traces[0].events, indexed.traces[0].events):
        assert semantic_values(e_list) == semantic_values(e_idx)
    expected = {}
    for e, role, v in raw:
        expected.setdefault(e, {}).setdefault(role, []).append(v)
    for e, event in enumerate(indexed.traces[0].events):
        assert semantic_values(event) == expected.get(e, {})


def test_consolidation_examples():
    log = EventLog(traces=[Trace([
        Event({"isClosed": True, "isCancelled": False}),
        Event({"isClosed": False, "isCancelled": False}),
        Event({"isClosed": True, "isCancelled": True}),
        Event({"isCancelled": True}),
    ])])
    got = consolidate_boolean_status(log, ["isClosed", "isCancelled"])
    assert got == {(0, 0): "isClosed", (0, 1): None, (0, 2): "isCancelled+isClosed", (0, 3): "isCancelled"}


def test_consolidation_rejects_non_boolean():
    log = EventLog(traces=[Trace([Event({"isClosed": "yes"})])])
    with pytest.raises(InvalidArgument):
        consolidate_boolean_status(log, ["isClosed"])


@settings(max_examples=100)
@given(st.lists(st.fixed_dictionaries({"p": st.booleans(), "q": st.booleans(), "r": st.booleans()}),
                min_size=1, max_size=6))
def test_consolidated_value_names_exactly_the_true_flags(rows):
    log = EventLog(traces=[Trace([Event(dict(r)) for r in rows])])
    got = consolidate_boolean_status(log, ["r", "p", "q"])
    for i, row in enumerate(rows):
        value = got[(0, i)]
        true = {k for k, v in row.items() if v}
        assert (value is None) == (not true)
        if value:
            assert set(value.split("+")) == true and value.split("+") == sorted(true)
