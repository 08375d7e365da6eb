import json

import pytest

from eventsrl.augment import semantic_values
from eventsrl.errors import CollisionError, FormatError, InvalidArgument
from eventsrl.log import Event, EventLog, Trace
from eventsrl.pipeline import PipelineConfig, annotate, read_config_file, write_report
from eventsrl.roles import SemanticRole
from eventsrl.synth import synthetic_log
from eventsrl.xes import read_xes, write_xes

R = SemanticRole


def _reports(ann):
    return {r.attribute: r for r in ann.reports}


def test_label_example(models, config):
    log = EventLog(traces=[Trace([Event({"concept:name": "create purchase order"}),
                                  Event({"concept:name": "purchase order approved"})])])
    ann = annotate(log, models, config)
    first, second = ann.log.traces[0].events
    assert first["semantic:action:name"] == "create"
    assert first["semantic:object:name"] == "purchase order"
    assert second["semantic:action:name"] == "approved"


def test_fixture_decisions(models, config, fixture_xes):
    ann = annotate(read_xes(fixture_xes), models, config)
    reports = _reports(ann)
    assert reports["concept:name"].category == "textual"
    assert reports["org:resource"].role == "ActorInstance"
    assert reports["time:timestamp"].category == "excluded"
    assert set(reports) == set(read_xes(fixture_xes).event_attribute_names())


def test_boolean_flags_consolidate(models, config):
    events = [Event({"concept:name": "check invoice", "isClosed": c, "isCancelled": k})
              for c, k in [(True, False), (False, False), (False, True), (True, True)]] * 3
    ann = annotate(EventLog(traces=[Trace(events)]), models, config)
    reports = _reports(ann)
    assert reports["isClosed"].role == reports["isCancelled"].role == "ObjectStatus"
    assert reports["isClosed"].path.endswith("boolean consolidation")
    vals = [semantic_values(e).get(R.ObjectStatus) for e in ann.log.traces[0].events[:4]]
    assert vals == [["isClosed"], None, ["isCancelled"], ["isCancelled+isClosed"]]


def test_single_valued_label_is_classified_by_name(models, config):
    log = EventLog(traces=[Trace([Event({"concept:name": "create order"})])])
    assert _reports(annotate(log, models, config))["concept:name"].category == "miscellaneous"


def test_empty_log(models, config):
    ann = annotate(EventLog(), models, config)
    assert ann.reports == [] and ann.assignments == [] and ann.log.traces == []


def test_input_is_unchanged(models, config, fixture_xes):
    log = read_xes(fixture_xes)
    before = [dict(e.attributes) for e in log.events()]
    annotate(log, models, config)
    assert [dict(e.attributes) for e in log.events()] == before


def test_annotating_twice_collides(models, config):
    log = EventLog(traces=[Trace([Event({"concept:name": "create order"}),
                                  Event({"concept:name": "send invoice"})])])
    once = annotate(log, models, config).log
    with pytest.raises(CollisionError):
        annotate(once, models, config)


def test_annotation_is_deterministic(models, config, tmp_path):
    log = synthetic_log(60, 6, seed=4)
    a, b = annotate(log, models, config), annotate(log, models, config)
    write_xes(a.log, tmp_path / "a.xes")
    write_xes(b.log, tmp_path / "b.xes")
    assert (tmp_path / "a.xes").read_bytes() == (tmp_path / "b.xes").read_bytes()
    write_report(a.reports, tmp_path / "a.jsonl")
    write_report(b.reports, tmp_path / "b.jsonl")
    assert (tmp_path / "a.jsonl").read_bytes() == (tmp_path / "b.jsonl").read_bytes()


def test_report_lines_are_json(models, config, tmp_path, fixture_xes):
    ann = annotate(read_xes(fixture_xes), models, config)
    write_report(ann.reports, tmp_path / "r.jsonl")
    rows = [json.loads(line) for line in (tmp_path / "r.jsonl").read_text().splitlines()]
    assert [r["attribute"] for r in rows] == sorted(r["attribute"] for r in rows)
    assert all("category" in r and "type" in r for r in rows)


def test_indexed_policy(models):
    config = PipelineConfig(policy="indexed")
    log = EventLog(traces=[Trace([Event({"concept:name": "create purchase order"}),
                                  Event({"concept:name": "send invoice"})])])
    event = annotate(log, models, config).log.traces[0].events[0]
    assert event["semantic:action:name:0"] == "create"


def test_config_validation():
    with pytest.raises(InvalidArgument):
        PipelineConfig(tau=2.0)
    with pytest.raises(InvalidArgument):
        PipelineConfig(policy="stacked")
    with pytest.raises(InvalidArgument):
        PipelineConfig.from_mapping({"colour": "blue"})
    with pytest.raises(InvalidArgument):
        PipelineConfig.from_mapping({"epochs": "many"})
    cfg = PipelineConfig.from_mapping({"epochs": "3", "tau": "0.5"})
    assert (cfg.epochs, cfg.tau) == (3, 0.5)


def test_config_file(tmp_path):
    p = tmp_path / "c.conf"
    p.write_text("# comment\nepochs = 4\n\ntau=0.7\n", encoding="utf-8")
    assert read_config_file(p) == {"epochs": "4", "tau": "0.7"}
    p.write_text("epochs 4\n", encoding="utf-8")
    with pytest.raises(FormatError) as err:
        read_config_file(p)
    assert err.value.line == 1
