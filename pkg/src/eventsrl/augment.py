"""Write extracted roles back into a log as extra ``semantic:`` attributes."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from .errors import CollisionError, InvalidArgument
from .log import Event, EventLog, Trace, format_value
from .roles import SemanticRole

PREFIX = "semantic:"

ATTRIBUTE_NAMES = {
    SemanticRole.ObjectName: "semantic:object:name",
    SemanticRole.ObjectStatus: "semantic:object:status",
    SemanticRole.ActionName: "semantic:action:name",
    SemanticRole.ActionStatus: "semantic:action:status",
    SemanticRole.ActorName: "semantic:actor:name",
    SemanticRole.ActorInstance: "semantic:actor:instance",
    SemanticRole.PassiveName: "semantic:passive:name",
    SemanticRole.PassiveInstance: "semantic:passive:instance",
}
ROLE_OF_ATTRIBUTE = {v: k for k, v in ATTRIBUTE_NAMES.items()}


class MultiValuePolicy(enum.Enum):
    SingleListAttribute = "list"
    IndexedAttributes = "indexed"


@dataclass(frozen=True)
class InstanceLevel:
    attribute: str
    span: tuple[int, int]


@dataclass(frozen=True)
class AttributeLevel:
    attribute: str


@dataclass(frozen=True)
class RoleAssignment:
    trace: int
    event: int
    role: SemanticRole
    value: str
    provenance: InstanceLevel | AttributeLevel = field(compare=False)

    def __post_init__(self):
        if self.role is SemanticRole.Other:
            raise InvalidArgument("Other is never assigned")


def render(value):
    return value if isinstance(value, str) else format_value(value)


def collect_assignments(log: EventLog, textual, taggings, attribute_roles):
    """Role assignments per event.

    ``textual`` lists the instance-level attributes, ``taggings`` maps each of
    them to ``{value: chunks}``, and ``attribute_roles`` maps classified
    attributes to their role. Assignments follow the event's attribute order
    and, within a value, chunk order.
    """
    textual = set(textual)
    out = []
    for ti, trace in enumerate(log.traces):
        for ei, event in enumerate(trace.events):
            for name, value in event.attributes.items():
                if name in textual:
                    for chunk in taggings[name].get(value, ()):
                        if chunk.role is not SemanticRole.Other:
                            out.append(RoleAssignment(ti, ei, chunk.role, chunk.text,
                                                      InstanceLevel(name, chunk.token_span)))
                elif name in attribute_roles:
                    role = attribute_roles[name]
                    if role is not SemanticRole.Other:
                        out.append(RoleAssignment(ti, ei, role, render(value), AttributeLevel(name)))
    return out


def consolidate_boolean_status(log: EventLog, status_attributes):
    """Per-event consolidated status value, ``None`` when no attribute is true.

    Returns ``{(trace, event): value}`` where value names the true attribute;
    several true attributes are joined with ``+`` in sorted order.
    """
    names = sorted(status_attributes)
    for event in log.events():
        for name in names:
            if name in event.attributes and not isinstance(event.attributes[name], bool):
                raise InvalidArgument(f"status attribute {name!r} is not Boolean")
    out = {}
    for ti, trace in enumerate(log.traces):
        for ei, event in enumerate(trace.events):
            true = [n for n in names if event.attributes.get(n) is True]
            out[(ti, ei)] = "+".join(true) if true else None
    return out


def escape_item(value):
    return value.replace("\\", "\\\\").replace(",", "\\,")


def join_list(values):
    return ",".join(escape_item(v) for v in values)


def split_list(text):
    items, cur, i = [], [], 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            cur.append(text[i + 1])
            i += 2
            continue
        if ch == ",":
            items.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
        i += 1
    items.append("".join(cur))
    return items


def check_prefix(log: EventLog):
    for event in log.events():
        for name in event.attributes:
            if name.startswith(PREFIX):
                raise CollisionError(f"attribute {name!r} already uses the reserved prefix {PREFIX!r}")


def augment_log(log: EventLog, assignments, policy=MultiValuePolicy.SingleListAttribute) -> EventLog:
    """A new log whose events carry the assignments as extra attributes."""
    policy = MultiValuePolicy(policy)
    check_prefix(log)
    grouped: dict[tuple[int, int], dict[SemanticRole, list[str]]] = {}
    for a in assignments:
        grouped.setdefault((a.trace, a.event), {}).setdefault(a.role, []).append(a.value)
    traces = []
    for ti, trace in enumerate(log.traces):
        events = []
        for ei, event in enumerate(trace.events):
            attrs = dict(event.attributes)
            for role, values in grouped.get((ti, ei), {}).items():
                base = ATTRIBUTE_NAMES[role]
                if policy is MultiValuePolicy.SingleListAttribute:
                    attrs[base] = join_list(values)
                else:
                    for i, v in enumerate(values):
                        attrs[f"{base}:{i}"] = v
            events.append(Event(attrs))
        traces.append(Trace(events, dict(trace.attributes)))
    return EventLog(traces, dict(log.attributes), list(log.header), log.xes_attrs)


_INDEXED = re.compile(r"^(semantic:[a-z]+:[a-z]+):(\d+)$")


def semantic_values(event: Event):
    """``{role: [values]}`` read back from an augmented event under either policy."""
    found: dict[SemanticRole, list[tuple[int, str]]] = {}
    for name, value in event.attributes.items():
        if not name.startswith(PREFIX):
            continue
        m = _INDEXED.match(name)
        if m and m.group(1) in ROLE_OF_ATTRIBUTE:
            found.setdefault(ROLE_OF_ATTRIBUTE[m.group(1)], []).append((int(m.group(2)), render(value)))
        elif name in ROLE_OF_ATTRIBUTE:
            for i, item in enumerate(split_list(render(value))):
                found.setdefault(ROLE_OF_ATTRIBUTE[name], []).append((i, item))
    return {role: [v for _, v in sorted(items)] for role, items in found.items()}
