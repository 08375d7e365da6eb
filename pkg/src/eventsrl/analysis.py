"""Analyses over an augmented log: event-class refinement and object-centric DFGs."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .augment import PREFIX, semantic_values
from .errors import EmptySelection, InvalidArgument, IoError, MissingAugmentation
from .log import EventLog
from .roles import SemanticRole

START = "▶"
END = "■"
LABEL_KEY = "concept:name"


def _has_augmentation(log: EventLog):
    return any(name.startswith(PREFIX) for e in log.events() for name in e.attributes)


@dataclass
class EventClassMap:
    # original label -> (actions, objects), or the label itself when the event had neither
    mapping: dict[str, object] = field(default_factory=dict)

    @property
    def before(self):
        return len(self.mapping)

    @property
    def after(self):
        return len(set(self.mapping.values()))

    def rows(self):
        """(label, actions, objects) sorted by label; unrefined labels have empty role columns."""
        out = []
        for label in sorted(self.mapping):
            key = self.mapping[label]
            if isinstance(key, tuple):
                out.append((label, ",".join(key[0]), ",".join(key[1])))
            else:
                out.append((label, "", ""))
        return out

    def to_tsv(self):
        lines = ["label\tactions\tobjects"] + ["\t".join(r) for r in self.rows()]
        return "\n".join(lines) + "\n"


def refine_event_classes(log: EventLog, label_key=LABEL_KEY) -> EventClassMap:
    """Group labels by their (actions, objects); the first event carrying a label decides its class."""
    if not _has_augmentation(log):
        raise MissingAugmentation("log carries no semantic attributes; run annotate first")
    out = EventClassMap()
    for event in log.events():
        label = str(event.attributes.get(label_key, ""))
        if label in out.mapping:
            continue
        vals = semantic_values(event)
        actions = tuple(sorted(vals.get(SemanticRole.ActionName, [])))
        objects = tuple(sorted(vals.get(SemanticRole.ObjectName, [])))
        out.mapping[label] = (actions, objects) if actions or objects else label
    return out


@dataclass
class DirectlyFollowsGraph:
    object: str
    nodes: dict[str, int] = field(default_factory=dict)
    edges: dict[tuple[str, str], int] = field(default_factory=dict)
    traces: int = 0
    observed_edges: int = 0

    def outgoing(self, node):
        return sum(n for (a, _), n in self.edges.items() if a == node)

    def incoming(self, node):
        return sum(n for (_, b), n in self.edges.items() if b == node)


def action_class(event, label_key=LABEL_KEY):
    actions = semantic_values(event).get(SemanticRole.ActionName, [])
    if actions:
        return "+".join(sorted(actions))
    return str(event.attributes.get(label_key, ""))


def keep_top_fraction(edges, fraction):
    """Edges whose frequency reaches the ceil(fraction * n)-th largest; ties at the cutoff stay."""
    if not edges:
        return {}
    k = max(1, math.ceil(fraction * len(edges)))
    cutoff = sorted(edges.values(), reverse=True)[k - 1]
    return {e: n for e, n in edges.items() if n >= cutoff}


def object_dfg(log: EventLog, obj: str, path_keep_fraction=1.0, label_key=LABEL_KEY) -> DirectlyFollowsGraph:
    """Directly-follows graph over the events that touch ``obj``, one node per action class.

    Events on other objects are skipped, not treated as gaps. Start and end
    edges are always kept; the fraction filter applies to the other edges.
    """
    if not obj:
        raise InvalidArgument("object must be non-empty")
    if not 0.0 < path_keep_fraction <= 1.0:
        raise InvalidArgument(f"path fraction must lie in (0, 1], got {path_keep_fraction}")
    nodes, inner, outer = Counter(), Counter(), Counter()
    traces = 0
    for trace in log.traces:
        seq = [action_class(e, label_key) for e in trace.events
               if obj in semantic_values(e).get(SemanticRole.ObjectName, [])]
        if not seq:
            continue
        traces += 1
        nodes.update(seq)
        outer[(START, seq[0])] += 1
        outer[(seq[-1], END)] += 1
        for a, b in zip(seq, seq[1:]):
            inner[(a, b)] += 1
    if not traces:
        raise EmptySelection(f"no event has object {obj!r}")
    kept = keep_top_fraction(dict(inner), path_keep_fraction)
    edges = dict(sorted({**kept, **outer}.items()))
    return DirectlyFollowsGraph(obj, dict(sorted(nodes.items())), edges, traces, len(inner))


def _dot_string(text):
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def to_dot(graph: DirectlyFollowsGraph):
    ids = {START: "start", END: "end"}
    for i, name in enumerate(sorted(graph.nodes)):
        ids[name] = f"n{i}"
    lines = [f"digraph {_dot_string(graph.object)} {{", "  rankdir=LR;", "  node [shape=box];",
             f'  start [label={_dot_string(START)}, shape=circle];',
             f'  end [label={_dot_string(END)}, shape=doublecircle];']
    for name in sorted(graph.nodes):
        lines.append(f"  {ids[name]} [label={_dot_string(f'{name} ({graph.nodes[name]})')}];")
    for (a, b), n in sorted(graph.edges.items(), key=lambda kv: (ids[kv[0][0]], ids[kv[0][1]])):
        lines.append(f'  {ids[a]} -> {ids[b]} [label="{n}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(graph: DirectlyFollowsGraph, path):
    try:
        Path(path).write_text(to_dot(graph), encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror or exc}") from exc
