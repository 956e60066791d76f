"""Session traces: the full record of who did what, in order.

A trace aggregates the object hierarchy and the process chain into one
graph. The user node sits at tick 0; each event adds its process node
at tick ``2*seq + 1`` and its object node at ``2*seq + 2``, so the node
order is total and replay is deterministic.

Traces serialize to a canonical JSON document; equal traces always
produce identical bytes, which is what the corpus store hashes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .canonical import canonical_json
from .errors import DesignAssistError, ParseError, TraceError
from .events import DesignEvent
from .graph import (
    ABSTRACT_USER,
    ConcreteNode,
    Edge,
    USER_NODE_ID,
    _object_nodes,
    build_observation_model,
    context_parent_index,
    object_node_id,
    process_node_id,
)
from .kinds import EdgeKind, ObjectKind, ProcessKind

FORMAT_VERSION = 1


class LinearStep(NamedTuple):
    seq: int
    process: ProcessKind
    object: ObjectKind
    label: str


@dataclass(frozen=True)
class GrossTrace:
    """One session's complete event record."""

    user: str
    session: str
    events: tuple[DesignEvent, ...] = ()

    @property
    def nodes(self) -> tuple[ConcreteNode, ...]:
        """All concrete nodes in timestamp order (user first)."""
        user_node = ConcreteNode(USER_NODE_ID, ABSTRACT_USER, self.user, 0, self.session)
        interleaved: list[ConcreteNode] = [user_node]
        observation = build_observation_model(self.events)
        objects = _object_nodes(self.events)
        for process_node, object_node in zip(observation.nodes, objects):
            interleaved.append(process_node)
            interleaved.append(object_node)
        return tuple(interleaved)

    @property
    def edges(self) -> tuple[Edge, ...]:
        """Manipulation, temporal, and contextualization edges."""
        collected: list[Edge] = []
        for index, event in enumerate(self.events):
            collected.append(
                Edge(process_node_id(event.seq), object_node_id(event.seq), EdgeKind.MANIPULATION)
            )
            if index > 0:
                collected.append(
                    Edge(
                        process_node_id(self.events[index - 1].seq),
                        process_node_id(event.seq),
                        EdgeKind.TEMPORAL_NEXT,
                    )
                )
            parent = context_parent_index(self.events, index)
            if parent is not None:
                collected.append(
                    Edge(
                        object_node_id(event.seq),
                        object_node_id(self.events[parent].seq),
                        EdgeKind.CONTEXTUALIZATION,
                    )
                )
        return tuple(collected)

    def to_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "user": self.user,
            "session": self.session,
            "events": [e.to_dict() for e in self.events],
        }


def new_trace(user: str, session: str) -> GrossTrace:
    """Open an empty trace for a user and session id."""
    if not user.strip():
        raise TraceError("SessionMismatch", "trace user must be nonempty")
    if not session.strip():
        raise TraceError("SessionMismatch", "trace session id must be nonempty")
    return GrossTrace(user=user.strip(), session=session.strip())


def record_event(trace: GrossTrace, event: DesignEvent) -> GrossTrace:
    """Append one event, returning the extended trace.

    The event's seq must be the next free slot, its session must match,
    and its context object must already exist in the trace.
    """
    if event.session != trace.session:
        raise TraceError(
            "SessionMismatch",
            f"event belongs to session {event.session!r}, trace is {trace.session!r}",
            subject=event.label,
        )
    expected_seq = len(trace.events)
    if event.seq != expected_seq:
        raise TraceError(
            "SeqGap",
            f"expected seq {expected_seq}, got {event.seq}",
            subject=event.label,
        )
    candidate_events = trace.events + (event,)
    try:
        context_parent_index(candidate_events, expected_seq)
    except ValueError as exc:
        raise TraceError(
            "OrphanContext",
            f"event {event.seq} ({event.label!r}): {exc}",
            subject=event.label,
        ) from None
    return GrossTrace(user=trace.user, session=trace.session, events=candidate_events)


def linearize(trace: GrossTrace) -> tuple[LinearStep, ...]:
    """The trace's steps in temporal order, one per event."""
    return tuple(
        LinearStep(e.seq, e.process, e.object, e.label) for e in trace.events
    )


def serialize(trace: GrossTrace) -> str:
    """Canonical document text for a trace (trailing newline included)."""
    return canonical_json(trace.to_dict()) + "\n"


def _expect(value: dict, key: str, kind, where: str):
    spot = f"{where}.{key}" if where != "$" else key
    if key not in value:
        raise ParseError(f"missing field {key!r}", location=spot)
    got = value[key]
    if not isinstance(got, kind) or (kind is int and isinstance(got, bool)):
        raise ParseError(
            f"field {key!r} must be {kind.__name__}, got {type(got).__name__}",
            location=spot,
        )
    return got


def trace_from_dict(value: dict) -> GrossTrace:
    if not isinstance(value, dict):
        raise ParseError("trace document must be an object", location="$")
    version = _expect(value, "format_version", int, "$")
    if version != FORMAT_VERSION:
        raise ParseError(
            f"unsupported format_version {version}", location="format_version"
        )
    user = _expect(value, "user", str, "$")
    session = _expect(value, "session", str, "$")
    events = value.get("events")
    if not isinstance(events, list):
        raise ParseError("field 'events' must be an array", location="events")
    try:
        trace = new_trace(user, session)
    except TraceError as exc:
        raise ParseError(str(exc), location="user") from None
    for index, entry in enumerate(events):
        where = f"events[{index}]"
        if not isinstance(entry, dict):
            raise ParseError("event must be an object", location=where)
        seq = _expect(entry, "seq", int, where)
        process_token = _expect(entry, "process", str, where)
        object_token = _expect(entry, "object", str, where)
        label = _expect(entry, "label", str, where)
        context = entry.get("context")
        if context is not None and not isinstance(context, str):
            raise ParseError("field 'context' must be a string or null", location=f"{where}.context")
        try:
            process = ProcessKind(process_token)
        except ValueError:
            raise ParseError(
                f"unknown process token {process_token!r}", location=f"{where}.process"
            ) from None
        try:
            object_kind = ObjectKind(object_token)
        except ValueError:
            raise ParseError(
                f"unknown object token {object_token!r}", location=f"{where}.object"
            ) from None
        try:
            event = DesignEvent(session, seq, process, object_kind, label, context)
            trace = record_event(trace, event)
        except DesignAssistError as exc:
            raise ParseError(str(exc), location=where) from None
    return trace


def deserialize(text: str) -> GrossTrace:
    """Parse a canonical trace document; inverse of :func:`serialize`."""
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON: {exc.msg}", location=f"line {exc.lineno} column {exc.colno}"
        ) from None
    return trace_from_dict(value)
