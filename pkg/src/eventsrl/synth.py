"""Synthetic corpora and event logs with known ground truth.

Used by the test-suite, the acceptance checks and ``scripts/build_corpus.py``.
"""
from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone

from .corpus import OUTSIDE, TrainingSample
from .log import Event, EventLog, Trace
from .roles import SemanticRole as R

OBJECTS = [
    "invoice", "purchase order", "declaration", "permit", "payment", "request",
    "application", "claim", "contract", "document", "order", "shipment", "ticket",
    "report", "travel permit", "customer complaint", "offer", "quote", "loan application",
    "design decision", "letter", "appeal", "reminder", "goods receipt", "sales order",
    "credit note", "request for payment", "expense report", "delivery", "budget",
]

# base, past, third person
ACTIONS = [
    ("create", "created", "creates"), ("send", "sent", "sends"), ("check", "checked", "checks"),
    ("approve", "approved", "approves"), ("reject", "rejected", "rejects"),
    ("submit", "submitted", "submits"), ("review", "reviewed", "reviews"),
    ("register", "registered", "registers"), ("update", "updated", "updates"),
    ("cancel", "cancelled", "cancels"), ("record", "recorded", "records"),
    ("receive", "received", "receives"), ("pay", "paid", "pays"),
    ("validate", "validated", "validates"), ("archive", "archived", "archives"),
    ("forward", "forwarded", "forwards"), ("prepare", "prepared", "prepares"),
    ("draft", "drafted", "drafts"), ("sign", "signed", "signs"),
    ("inspect", "inspected", "inspects"), ("assess", "assessed", "assesses"),
    ("change", "changed", "changes"), ("print", "printed", "prints"),
]

ACTION_STATUS = ["started", "completed", "paused", "resumed", "aborted", "suspended",
                 "in progress", "scheduled", "final", "partially"]
OBJECT_STATUS = ["pending", "overdue", "unpaid", "incomplete", "invalid", "expired",
                 "blocked", "unlicensed", "outstanding", "open"]
ACTORS = ["supervisor", "budget owner", "administration", "employee", "manager", "clerk",
          "system", "director", "pre approver", "secretary", "case handler", "accountant",
          "team leader", "requester", "staff member"]
PASSIVES = ["prefecture", "stakeholders", "bank", "insurer", "supplier", "warehouse",
            "finance department", "back office", "municipality", "tax office",
            "legal department", "execution system", "court", "customer service"]
PERSONS = ["pete", "sara", "mike", "anne", "john", "lisa", "tom", "ellen", "sue", "mary",
           "wil", "fred", "julia", "mark"]

_SLOTS = {
    "obj": (OBJECTS, R.ObjectName),
    "act": ([a[0] for a in ACTIONS], R.ActionName),
    "past": ([a[1] for a in ACTIONS], R.ActionName),
    "act3": ([a[2] for a in ACTIONS], R.ActionName),
    "astat": (ACTION_STATUS, R.ActionStatus),
    "ostat": (OBJECT_STATUS, R.ObjectStatus),
    "actor": (ACTORS, R.ActorName),
    "person": (PERSONS, R.ActorInstance),
    "passive": (PASSIVES, R.PassiveName),
    "recipient": (PERSONS, R.PassiveInstance),
}

# {slot} fills a role, bare words are Other
TEMPLATES = {
    "act-obj": "{act} {obj}",
    "obj-past": "{obj} {past}",
    "obj-past-by-actor": "{obj} {past} by {actor}",
    "actor-act3-obj": "{actor} {act3} {obj}",
    "act-obj-to-passive": "{act} {obj} to {passive}",
    "act-obj-astat": "{act} {obj} {astat}",
    "obj-ostat": "{obj} {ostat}",
    "obj-past-by-person": "{obj} {past} by {person}",
    "act-obj-to-recipient": "{act} {obj} to {recipient}",
    "person-act3-obj": "{person} {act3} {obj}",
    "obj-past-astat": "{obj} {past} {astat}",
    "obj-astat-past-by-actor": "{obj} {astat} {past} by {actor}",
    "act-ostat-obj": "{act} {ostat} {obj}",
    "act-and-act-obj": "{act} and {act} {obj}",
    "act-obj-for-passive": "{act} {obj} for {passive}",
    "obj-ostat-past-by-actor": "{obj} {ostat} {past} by {actor}",
    "ostat-obj-past": "{ostat} {obj} {past}",
    "obj-ostat-past": "{obj} {ostat} {past}",
    "act-obj-for-recipient": "{act} {obj} for {recipient}",
    "obj": "{obj}",
}

HELD_OUT_TEMPLATES = (
    "obj-astat-past-by-actor",
    "act-ostat-obj",
    "act-and-act-obj",
    "act-obj-for-passive",
    "obj-ostat-past-by-actor",
)


def fill_template(template, rng, source="synthetic"):
    tokens, labels = [], []
    for part in TEMPLATES[template].split():
        if part.startswith("{"):
            words, role = _SLOTS[part[1:-1]]
            phrase = rng.choice(words).split()
            tokens.extend(phrase)
            labels.extend(f"{'B' if i == 0 else 'I'}-{role.value}" for i in range(len(phrase)))
        else:
            tokens.append(part)
            labels.append(OUTSIDE)
    return TrainingSample(tuple(tokens), tuple(labels), source)


def template_corpus(templates, per_template, seed, source="synthetic"):
    """Distinct samples, ``per_template`` from each template (fewer if the template runs dry)."""
    rng = random.Random(seed)
    out = []
    for name in templates:
        seen = set()
        for _ in range(per_template * 20):
            if len(seen) == per_template:
                break
            s = fill_template(name, rng, source=f"{source}:{name}")
            if s.tokens not in seen:
                seen.add(s.tokens)
                out.append(s)
    return out


def split_corpus(per_template=30, seed=0):
    """(train, test) corpora built from disjoint template sets."""
    train_names = [t for t in TEMPLATES if t not in HELD_OUT_TEMPLATES]
    train = template_corpus(train_names, per_template, seed)
    test = template_corpus(HELD_OUT_TEMPLATES, per_template, seed + 1)
    return train, test


# hand-labelled example values
HAND_LABELLED = [
    "create/B-ActionName purchase/B-ObjectName order/I-ObjectName",
    "purchase/B-ObjectName order/I-ObjectName created/B-ActionName",
    "check/B-ActionName invoice/B-ObjectName",
    "draft/B-ActionName and/O send/B-ActionName request/B-ObjectName for/I-ObjectName advice/I-ObjectName",
    "send/B-ActionName design/B-ObjectName decision/I-ObjectName to/O stakeholders/B-PassiveName",
    "send/B-ActionName letter/B-ObjectName in/B-ActionStatus progress/I-ActionStatus",
    "insert/B-ActionName date/B-ObjectName appeal/I-ObjectName to/O prefecture/B-PassiveName",
    "vendor/B-ActorName creates/B-ActionName invoice/B-ObjectName",
    "srm/O in/O transfer/B-ActionName to/O execution/B-PassiveName syst/I-PassiveName",
    "declaration/B-ObjectName final/B-ActionStatus approved/B-ActionName by/O supervisor/B-ActorName",
    "t/O adjust/B-ActionName document/B-ObjectName x/O request/B-ObjectName unlicensed/B-ObjectStatus",
    "declaration/B-ObjectName approved/B-ActionName by/O budget/B-ActorName owner/I-ActorName",
    "declaration/B-ObjectName submitted/B-ActionName by/O employee/B-ActorName",
    "declaration/B-ObjectName rejected/B-ActionName by/O administration/B-ActorName",
    "document/B-ObjectName received/B-ActionName",
]


def hand_labelled():
    out = []
    for line in HAND_LABELLED:
        pairs = [tuple(item.rsplit("/", 1)) for item in line.split()]
        out.append(TrainingSample.from_pairs(pairs, "hand"))
    return out


# synthetic event logs -------------------------------------------------------

_T0 = datetime(2024, 1, 1, tzinfo=timezone.utc)


def synthetic_log(n_traces=100, events_per_trace=10, seed=0):
    """A log with a textual label attribute plus typical side attributes."""
    rng = random.Random(seed)
    labels = [" ".join(fill_template(t, rng).tokens) for t in
              ["act-obj", "obj-past-by-actor", "act-obj-to-passive", "obj-past", "obj-past-astat"]
              for _ in range(6)]
    log = EventLog(attributes={"concept:name": "synthetic"})
    for i in range(n_traces):
        trace = Trace(attributes={"concept:name": f"case_{i}"})
        t = _T0 + timedelta(hours=i)
        for j in range(events_per_trace):
            t += timedelta(minutes=rng.randint(1, 600))
            closed = rng.random() < 0.3
            trace.events.append(Event({
                "concept:name": rng.choice(labels),
                "time:timestamp": t,
                "org:resource": f"user_{rng.randint(1, 40):03d}",
                "Assignment_Group": rng.choice(["staff member", "system", "back office", "helpdesk"]),
                "doctype": rng.choice(["invoice", "contract", "claim", "receipt"]),
                "isClosed": closed,
                "isCancelled": (not closed) and rng.random() < 0.1,
                "amount": round(rng.uniform(1, 5000), 2),
                "priority": rng.randint(0, 5),
                "delta": rng.randint(-5, 5),
            }))
        log.traces.append(trace)
    return log


def planted_dfg_log(counts, obj="declaration", other_obj="permit", seed=0):
    """Augmented log whose ``obj`` projection has exactly the planted edge counts.

    ``counts`` maps trace variants (tuples of actions) to how many traces follow
    them. Events on ``other_obj`` are interleaved and must be skipped.
    """
    rng = random.Random(seed)
    log = EventLog()
    case = 0
    for variant, n in sorted(counts.items()):
        for _ in range(n):
            trace = Trace(attributes={"concept:name": f"case_{case}"})
            case += 1
            for action in variant:
                if rng.random() < 0.5:
                    trace.events.append(Event({
                        "concept:name": f"{other_obj} noise",
                        "semantic:action:name": "check",
                        "semantic:object:name": other_obj,
                    }))
                trace.events.append(Event({
                    "concept:name": f"{obj} {action}",
                    "semantic:action:name": action,
                    "semantic:object:name": obj,
                }))
            log.traces.append(trace)
    return log


def planted_edges(counts, include_artificial=False):
    from collections import Counter

    edges = Counter()
    for variant, n in counts.items():
        seq = list(variant)
        if include_artificial:
            seq = ["▶"] + seq + ["■"]
        for a, b in zip(seq, seq[1:]):
            edges[(a, b)] += n
    return dict(edges)
