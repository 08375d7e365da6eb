"""XES reading and writing.

Supported attribute kinds: string, int, float, boolean, date (and ``id``,
which is read as a string). Header elements such as extensions, globals and
classifiers are kept verbatim and written back unchanged.
"""
from __future__ import annotations

import logging
import re
from datetime import datetime, timezone
from xml.parsers import expat
from xml.sax.saxutils import escape

from .errors import FormatError, IoError
from .log import (
    INT64_MAX,
    INT64_MIN,
    AttrType,
    Event,
    EventLog,
    RawElement,
    Trace,
    format_value,
    value_type,
)

log = logging.getLogger(__name__)

VALUE_KINDS = {"string", "int", "float", "boolean", "date", "id"}
UNSUPPORTED_KINDS = {"list", "container"}

_FRACTION = re.compile(r"(\.\d+)")


def parse_timestamp(text: str) -> datetime:
    s = text.strip()
    if s.endswith(("Z", "z")):
        s = s[:-1] + "+00:00"
    # fromisoformat on 3.10 only takes 3 or 6 fractional digits
    m = _FRACTION.search(s)
    if m:
        frac = m.group(1)[1:]
        frac = (frac + "000000")[:6]
        s = s[: m.start()] + "." + frac + s[m.end():]
    ts = datetime.fromisoformat(s)
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts


def _convert(kind, raw, line, path):
    try:
        if kind in ("string", "id"):
            return raw
        if kind == "int":
            value = int(raw.strip())
            if not INT64_MIN <= value <= INT64_MAX:
                raise ValueError("integer outside 64-bit range")
            return value
        if kind == "float":
            return float(raw)
        if kind == "boolean":
            low = raw.strip().lower()
            if low not in ("true", "false"):
                raise ValueError(f"not a boolean: {raw!r}")
            return low == "true"
        if kind == "date":
            return parse_timestamp(raw)
    except ValueError as exc:
        raise FormatError(f"bad {kind} value {raw!r}: {exc}", path, line) from None
    raise AssertionError(kind)


class _Reader:
    def __init__(self, path):
        self.path = path
        self.log = None
        # stack entries: ("log"|"trace"|"event"|"raw"|"attr"|"skip", payload)
        self.stack = []
        self.parser = expat.ParserCreate()
        self.parser.buffer_text = True
        self.parser.StartElementHandler = self.start
        self.parser.EndElementHandler = self.end

    @property
    def line(self):
        return self.parser.CurrentLineNumber

    def fail(self, message):
        raise FormatError(message, self.path, self.line)

    def start(self, tag, attrs):
        tag = tag.split(":")[-1]
        if not self.stack:
            if tag != "log":
                self.fail(f"root element must be <log>, got <{tag}>")
            self.log = EventLog(xes_attrs=tuple(attrs.items()))
            self.stack.append(("log", self.log))
            return
        ctx, payload = self.stack[-1]
        if ctx == "raw":
            node = [tag, tuple(attrs.items()), []]
            payload[2].append(node)
            self.stack.append(("raw", node))
            return
        if ctx in ("attr", "skip"):
            # meta-attributes nested inside an attribute are not modelled
            self.stack.append(("skip", None))
            return
        if tag == "trace":
            if ctx != "log":
                self.fail("<trace> outside <log>")
            trace = Trace()
            payload.traces.append(trace)
            self.stack.append(("trace", trace))
            return
        if tag == "event":
            if ctx == "trace":
                event = Event()
                payload.events.append(event)
                self.stack.append(("event", event))
                return
            self.fail(f"<event> inside <{ctx}>, expected <trace>")
        if tag in VALUE_KINDS:
            if "key" not in attrs:
                self.fail(f"<{tag}> without key")
            if tag == "id":
                log.debug("reading id attribute %r as string", attrs["key"])
            value = _convert(tag, attrs.get("value", ""), self.line, self.path)
            target = payload.attributes
            key = attrs["key"]
            if key in target:
                self.fail(f"duplicate attribute {key!r}")
            target[key] = value
            self.stack.append(("attr", None))
            return
        if tag in UNSUPPORTED_KINDS:
            self.fail(f"unsupported XES attribute kind <{tag}>")
        if ctx == "log" and tag in ("extension", "global", "classifier"):
            node = [tag, tuple(attrs.items()), []]
            self.log.header.append(node)
            self.stack.append(("raw", node))
            return
        self.fail(f"unknown XES element <{tag}>")

    def end(self, tag):
        self.stack.pop()

    def run(self, fh):
        try:
            self.parser.ParseFile(fh)
        except expat.ExpatError as exc:
            raise FormatError(
                f"malformed XML: {expat.ErrorString(exc.code)}", self.path, exc.lineno
            ) from None
        if self.log is None:
            raise FormatError("empty document", self.path)
        self.log.header = [_freeze(node) for node in self.log.header]
        return self.log


def _freeze(node):
    tag, attrs, children = node
    return RawElement(tag, attrs, tuple(_freeze(c) for c in children))


def read_xes(path) -> EventLog:
    try:
        fh = open(path, "rb")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from exc
    with fh:
        return _Reader(str(path)).run(fh)


_ATTR_ESCAPES = {'"': "&quot;", "\n": "&#10;", "\r": "&#13;", "\t": "&#9;"}


def _q(text):
    return '"' + escape(text, _ATTR_ESCAPES) + '"'


_KIND_TAG = {
    AttrType.StringType: "string",
    AttrType.IntegerType: "int",
    AttrType.RealType: "float",
    AttrType.BooleanType: "boolean",
    AttrType.TimestampType: "date",
}


def _attribute_lines(attributes, indent):
    for key, value in attributes.items():
        tag = _KIND_TAG[value_type(value)]
        yield f"{indent}<{tag} key={_q(key)} value={_q(format_value(value))}/>\n"


def _raw_lines(node, indent):
    attrs = "".join(f" {k}={_q(v)}" for k, v in node.attrs)
    if not node.children:
        yield f"{indent}<{node.tag}{attrs}/>\n"
        return
    yield f"{indent}<{node.tag}{attrs}>\n"
    for child in node.children:
        yield from _raw_lines(child, indent + "\t")
    yield f"{indent}</{node.tag}>\n"


def iter_xes(log: EventLog):
    yield '<?xml version="1.0" encoding="UTF-8" ?>\n'
    root_attrs = dict(log.xes_attrs) or {"xes.version": "1.0", "xes.features": "nested-attributes"}
    yield "<log" + "".join(f" {k}={_q(v)}" for k, v in root_attrs.items()) + ">\n"
    for node in log.header:
        yield from _raw_lines(node, "\t")
    yield from _attribute_lines(log.attributes, "\t")
    for trace in log.traces:
        yield "\t<trace>\n"
        yield from _attribute_lines(trace.attributes, "\t\t")
        for event in trace.events:
            yield "\t\t<event>\n"
            yield from _attribute_lines(event.attributes, "\t\t\t")
            yield "\t\t</event>\n"
        yield "\t</trace>\n"
    yield "</log>\n"


def write_xes(log: EventLog, path) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.writelines(iter_xes(log))
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror or exc}") from exc
