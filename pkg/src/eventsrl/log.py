"""Event log data model and attribute profiling.

Attribute values are plain Python objects: ``str``, ``int``, ``float``,
``bool`` and timezone-aware ``datetime``.
"""
from __future__ import annotations

import enum
import hashlib
import heapq
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

DISTINCT_CAP = 10_000


class AttrType(enum.Enum):
    StringType = "string"
    IntegerType = "int"
    RealType = "float"
    BooleanType = "boolean"
    TimestampType = "date"


def value_type(value: Any) -> AttrType:
    # bool first: it is a subclass of int
    if isinstance(value, bool):
        return AttrType.BooleanType
    if isinstance(value, int):
        return AttrType.IntegerType
    if isinstance(value, float):
        return AttrType.RealType
    if isinstance(value, datetime):
        return AttrType.TimestampType
    if isinstance(value, str):
        return AttrType.StringType
    raise TypeError(f"unsupported attribute value {value!r}")


def format_value(value: Any) -> str:
    """Render a value the way XES serializes it."""
    kind = value_type(value)
    if kind is AttrType.BooleanType:
        return "true" if value else "false"
    if kind is AttrType.TimestampType:
        return format_timestamp(value)
    if kind is AttrType.RealType:
        return repr(value)
    return str(value)


def format_timestamp(ts: datetime) -> str:
    unit = "milliseconds" if ts.microsecond % 1000 == 0 else "microseconds"
    return ts.isoformat(timespec=unit)


@dataclass
class Event:
    attributes: dict[str, Any] = field(default_factory=dict)

    def get(self, name, default=None):
        return self.attributes.get(name, default)

    def __getitem__(self, name):
        return self.attributes[name]


@dataclass
class Trace:
    events: list[Event] = field(default_factory=list)
    attributes: dict[str, Any] = field(default_factory=dict)

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.events)


@dataclass
class RawElement:
    """An XES header element kept verbatim (extension, global, classifier, ...)."""

    tag: str
    attrs: tuple[tuple[str, str], ...] = ()
    children: tuple[RawElement, ...] = ()


@dataclass
class EventLog:
    traces: list[Trace] = field(default_factory=list)
    attributes: dict[str, Any] = field(default_factory=dict)
    header: list[RawElement] = field(default_factory=list)
    xes_attrs: tuple[tuple[str, str], ...] = ()

    def __len__(self):
        return len(self.traces)

    def __iter__(self):
        return iter(self.traces)

    def events(self):
        for trace in self.traces:
            yield from trace.events

    def event_count(self):
        return sum(len(t) for t in self.traces)

    def event_attribute_names(self):
        """Names in first-seen order."""
        seen = {}
        for event in self.events():
            for name in event.attributes:
                seen.setdefault(name, None)
        return list(seen)

    def domain(self, name):
        """Distinct values of an event attribute, in first-seen order."""
        seen = {}
        for event in self.events():
            if name in event.attributes:
                value = event.attributes[name]
                seen.setdefault((value_type(value), value), value)
        return list(seen.values())


@dataclass
class AttributeProfile:
    name: str
    inferred_type: AttrType
    distinct_values: set
    occurrence_count: int
    overflow: bool = False
    has_negative: bool = False

    @property
    def distinct_count(self):
        return len(self.distinct_values)


def _stable_key(value):
    kind = value_type(value)
    digest = hashlib.blake2b(f"{kind.value}:{format_value(value)}".encode(), digest_size=8)
    return int.from_bytes(digest.digest(), "big")


class _BottomK:
    """Keeps the k distinct values with the smallest stable hash.

    The kept set is independent of insertion order, so capped profiles stay
    identical when traces are permuted.
    """

    def __init__(self, k):
        self.k = k
        self.heap = []  # max-heap via negated keys
        self.members = {}
        self.overflow = False

    def add(self, value):
        ident = (value_type(value), value)
        if ident in self.members:
            return
        key = _stable_key(value)
        if len(self.heap) < self.k:
            heapq.heappush(self.heap, (-key, len(self.members), ident))
            self.members[ident] = value
            return
        self.overflow = True
        if key < -self.heap[0][0]:
            _, _, dropped = heapq.heapreplace(self.heap, (-key, len(self.members), ident))
            del self.members[dropped]
            self.members[ident] = value

    def values(self):
        return set(self.members.values())


def _merge_types(a: AttrType | None, b: AttrType) -> AttrType:
    if a is None or a is b:
        return b
    numeric = {AttrType.IntegerType, AttrType.RealType}
    if a in numeric and b in numeric:
        return AttrType.RealType
    return AttrType.StringType


def attribute_profiles(log: EventLog, cap: int = DISTINCT_CAP) -> list[AttributeProfile]:
    """One profile per distinct event-attribute name, sorted by name."""
    types: dict[str, AttrType | None] = {}
    samples: dict[str, _BottomK] = {}
    counts: dict[str, int] = {}
    negative: dict[str, bool] = {}
    for event in log.events():
        for name, value in event.attributes.items():
            kind = value_type(value)
            types[name] = _merge_types(types.get(name), kind)
            if name not in samples:
                samples[name] = _BottomK(cap)
                counts[name] = 0
                negative[name] = False
            samples[name].add(value)
            counts[name] += 1
            if kind in (AttrType.IntegerType, AttrType.RealType) and value < 0:
                negative[name] = True
    return [
        AttributeProfile(
            name=name,
            inferred_type=types[name],
            distinct_values=samples[name].values(),
            occurrence_count=counts[name],
            overflow=samples[name].overflow,
            has_negative=negative[name],
        )
        for name in sorted(types)
    ]
