"""Acceptance suite: one PASS/FAIL line per criterion, each with its runtime budget.

Run ``pytest tests/test_acceptance.py`` (lines are repeated in the terminal
summary) or ``python tests/test_acceptance.py``.
"""
import time
from argparse import Namespace

import numpy as np
import pytest

from eventsrl.analysis import END, START, object_dfg, refine_event_classes
from eventsrl.augment import augment_log, collect_assignments
from eventsrl.classifier import classify_name, loss_and_grad, refine_instance_level, train_name_classifier, with_bias
from eventsrl.cli import cmd_annotate
from eventsrl.corpus import TaggedChunk
from eventsrl.evaluation import attribute_metrics, chunk_metrics
from eventsrl.log import EventLog, Trace, Event
from eventsrl.pipeline import PipelineConfig, Resources, build_tagger
from eventsrl.resources import bundled_embeddings, bundled_names
from eventsrl.roles import SemanticRole
from eventsrl.synth import hand_labelled, planted_dfg_log, planted_edges, split_corpus, synthetic_log
from eventsrl.tagger import tag_tokens, tag_value, train_tagger, viterbi_decode
from eventsrl.textprep import tokenize
from eventsrl.xes import read_xes, write_xes

from oracles import (attribute_counts, brute_force_decode, chunk_counts, finite_difference, oracle_emissions, prf,
                     random_model, random_tokens)
from test_core_model import structure
from test_evaluation import _random_pair

R = SemanticRole
RESULTS = []


def criterion(name, budget, check):
    """Run ``check`` (returns (ok, detail)), record and print one line, then assert."""
    start = time.perf_counter()
    ok, detail = check()
    elapsed = time.perf_counter() - start
    passed = bool(ok) and elapsed < budget
    line = f"{'PASS' if passed else 'FAIL'}  {name:<28} {detail}; {elapsed:.2f}s (budget {budget:g}s)"
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert elapsed < budget, line


def test_worked_examples():
    def check():
        toks = [tokenize(v) for v in ("Create_PurchaseOrder", "USER_123", "08_AWB45_005")]
        ok = toks == [["create", "purchase", "order"], ["user"], ["awb"]]
        model = train_tagger(hand_labelled(), epochs=10, seed=0)
        tagged = [(c.text, c.role) for c in tag_value(model, "create purchase order")]
        ok &= tagged == [("create", R.ActionName), ("purchase order", R.ObjectName)]
        log = EventLog(traces=[Trace([Event({"concept:name": "draft and send request for advice"})])])
        chunks = {"draft and send request for advice": [
            TaggedChunk(0, 1, "draft", R.ActionName), TaggedChunk(1, 2, "and", R.Other),
            TaggedChunk(2, 3, "send", R.ActionName), TaggedChunk(3, 6, "request for advice", R.ObjectName)]}
        assignments = collect_assignments(log, ["concept:name"], {"concept:name": chunks}, {})
        listed = augment_log(log, assignments, "list").traces[0].events[0].attributes
        indexed = augment_log(log, assignments, "indexed").traces[0].events[0].attributes
        ok &= listed["semantic:action:name"] == "draft,send"
        ok &= (indexed["semantic:action:name:0"], indexed["semantic:action:name:1"]) == ("draft", "send")
        return ok, "tokenize, tagger and both multi-value renderings exact"

    criterion("worked examples", 1, check)


def test_decoder_oracle():
    def check():
        rng = np.random.default_rng(100)
        agree = 0
        n_models = 120
        for i in range(n_models):
            tokens = random_tokens(rng, 1 + i % 5)
            model = random_model(rng, tokens, integer=i % 2 == 1)
            agree += viterbi_decode(model, tokens) == brute_force_decode(oracle_emissions(model, tokens),
                                                                          model.transitions)
        return agree == n_models, f"{agree}/{n_models} models agree with exhaustive search"

    criterion("decoder oracle", 10, check)


def test_gradient_check():
    def check():
        rng = np.random.default_rng(17)
        worst = 0.0
        for _ in range(12):
            X = with_bias(rng.normal(size=(10, 6)))
            Y = np.eye(5)[rng.integers(0, 5, 10)]
            W = rng.normal(size=(5, 7))
            _, grad = loss_and_grad(W, X, Y, 1e-3)
            numeric = finite_difference(lambda w, X=X, Y=Y: loss_and_grad(w, X, Y, 1e-3)[0], W, step=1e-5)
            rel = np.linalg.norm(grad - numeric) / max(np.linalg.norm(grad) + np.linalg.norm(numeric), 1e-12)
            worst = max(worst, rel)
        return worst <= 1e-5, f"12 points, worst relative error {worst:.2e}"

    criterion("gradient check", 5, check)


def test_metrics_oracle():
    def check():
        rng = np.random.default_rng(200)
        ok = True
        roles = list(R)
        for _ in range(220):
            pred, gold = _random_pair(rng)
            rep = chunk_metrics(pred, gold)
            tp, fp, fn = chunk_counts(pred, gold)
            ok &= (rep.tp, rep.fp, rep.fn) == (tp, fp, fn)
            expected = prf(sum(tp.values()), sum(fp.values()), sum(fn.values()))
            ok &= max(abs(a - b) for a, b in zip((rep.precision(), rep.recall(), rep.f1()), expected)) <= 1e-12
            names = ["a", "b", "c", "d"]
            p = {n: roles[int(rng.integers(len(roles)))] for n in names if rng.random() < 0.8}
            g = {n: roles[int(rng.integers(len(roles)))] for n in names if rng.random() < 0.8}
            arep = attribute_metrics(p, g)
            ok &= (arep.tp, arep.fp, arep.fn) == attribute_counts(p, g)
            expected = prf(sum(arep.tp.values()), sum(arep.fp.values()), sum(arep.fn.values()))
            ok &= abs(arep.f1() - expected[2]) <= 1e-12
        return ok, "220 chunk and 220 attribute pairs match the pairwise oracle"

    criterion("metrics oracle", 10, check)


def test_xes_round_trip(fixture_xes, tmp_path):
    def check():
        ok = True
        for name, log in (("fixture", read_xes(fixture_xes)), ("generated", synthetic_log(1000, 3, seed=4))):
            a, b = tmp_path / f"{name}_a.xes", tmp_path / f"{name}_b.xes"
            write_xes(log, a)
            again = read_xes(a)
            write_xes(again, b)
            ok &= structure(again) == structure(log) and a.read_bytes() == b.read_bytes()
        return ok, "3-trace fixture and 1,000-trace log are write/read/write fixpoints"

    criterion("XES round trip", 10, check)


def test_desk_scale_learning():
    def check():
        train, test = split_corpus()
        config = PipelineConfig(epochs=20)
        res = Resources.load(config)
        model = build_tagger(train, res, config)
        predicted = {s.text: tag_tokens(model, list(s.tokens), res.lexicon)[1] for s in test}
        f1 = chunk_metrics(predicted, {s.text: s.chunks() for s in test}).f1()
        roles = set().union(*(s.roles() for s in train + test))
        ok = f1 >= 0.80 and len(train) + len(test) >= 200 and len(roles) == 8
        ok &= not {s.tokens for s in train} & {s.tokens for s in test}
        return ok, f"held-out micro-F1 {f1:.3f} (>= 0.80) on {len(test)} values, 20 epochs"

    criterion("desk-scale learning", 60, check)


def test_attribute_step_behavior():
    def check():
        store = bundled_embeddings()
        model = train_name_classifier(bundled_names(), store)
        got = (classify_name(model, store, "Assignment_Group").role,
               refine_instance_level(R.ActorName, ["user_019", "batch_06"]),
               refine_instance_level(R.ActorName, ["staff member", "system"]))
        return got == (R.ActorName, R.ActorInstance, R.ActorName), "roles " + ", ".join(r.value for r in got)

    criterion("attribute-step behavior", 5, check)


def test_analysis_invariants():
    counts = {("submit", "approve", "pay"): 6, ("submit", "reject"): 4, ("submit", "submit", "approve"): 2}

    def check():
        log = planted_dfg_log(counts, seed=5)
        classes = refine_event_classes(log)
        graph = object_dfg(log, "declaration", 1.0)
        ok = classes.after <= classes.before
        ok &= graph.edges == planted_edges(counts, include_artificial=True)
        ok &= all(graph.incoming(n) == c == graph.outgoing(n) for n, c in graph.nodes.items())
        ok &= graph.outgoing(START) == graph.incoming(END) == graph.traces
        return ok, f"classes {classes.before}->{classes.after}, {len(graph.edges)} edges exact, flow conserved"

    criterion("analysis invariants", 5, check)


def test_end_to_end_determinism(tmp_path):
    log_path = tmp_path / "big.xes"
    write_xes(synthetic_log(1000, 10, seed=11), log_path)
    events = read_xes(log_path).event_count()

    def run(tag):
        out = tmp_path / f"{tag}.xes"
        fields = {f: None for f in PipelineConfig().as_dict()}
        args = Namespace(config=None, out=str(out), report=None, figures=False, log=str(log_path), **fields)
        assert cmd_annotate(args) == 0
        return out.read_bytes(), (tmp_path / f"{tag}.xes.report.jsonl").read_bytes()

    def check():
        first, second = run("a"), run("b")
        return first == second and events == 10_000, f"{events} events, XES and report byte-identical"

    criterion("end-to-end determinism", 30, check)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
