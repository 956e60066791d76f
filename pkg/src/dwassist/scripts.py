"""Session scripts: replayable action lists.

A script is a trace document without sequence numbers: the engine
assigns them on replay. Scripts drive the CLI replay command, the
evaluation harness, and the equivalence checks between the in-process
engine and the HTTP service.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import DesignAssistError, ParseError
from .events import DesignAction
from .kinds import ObjectKind, ProcessKind
from .matching import Suggestion
from .schema import ValidationReport
from .service import AssistantEngine
from .trace import GrossTrace


@dataclass(frozen=True)
class SessionScript:
    """An ordered list of design actions for one user."""

    user: str
    actions: tuple[DesignAction, ...]
    session: str | None = None

    @property
    def domain(self) -> str | None:
        for action in self.actions:
            if action.object is ObjectKind.DOMAIN:
                return action.label
        return None

    @property
    def model(self) -> str | None:
        for action in self.actions:
            if action.object is ObjectKind.MODEL:
                return action.label
        return None

    def to_dict(self) -> dict:
        payload: dict = {
            "user": self.user,
            "events": [a.to_dict() for a in self.actions],
        }
        if self.session is not None:
            payload["session"] = self.session
        return payload


def script_from_dict(value: dict) -> SessionScript:
    if not isinstance(value, dict):
        raise ParseError("script must be a JSON object", location="$")
    user = value.get("user")
    if not isinstance(user, str) or not user.strip():
        raise ParseError("field 'user' must be a nonempty string", location="user")
    session = value.get("session")
    if session is not None and not isinstance(session, str):
        raise ParseError("field 'session' must be a string", location="session")
    events = value.get("events")
    if not isinstance(events, list):
        raise ParseError("field 'events' must be an array", location="events")
    actions: list[DesignAction] = []
    for index, entry in enumerate(events):
        where = f"events[{index}]"
        if not isinstance(entry, dict):
            raise ParseError("event must be an object", location=where)
        try:
            process = ProcessKind(entry.get("process"))
        except ValueError:
            raise ParseError(
                f"unknown process token {entry.get('process')!r}",
                location=f"{where}.process",
            ) from None
        label = entry.get("label")
        if not isinstance(label, str):
            raise ParseError("field 'label' must be a string", location=f"{where}.label")
        context = entry.get("context")
        if context is not None and not isinstance(context, str):
            raise ParseError(
                "field 'context' must be a string or null", location=f"{where}.context"
            )
        object_token = entry.get("object")
        try:
            if object_token is None:
                action = DesignAction.of(process, label, context)
            else:
                action = DesignAction(process, ObjectKind(object_token), label, context)
        except ValueError:
            raise ParseError(
                f"unknown object token {object_token!r}", location=f"{where}.object"
            ) from None
        except DesignAssistError as exc:
            raise ParseError(str(exc), location=where) from None
        actions.append(action)
    return SessionScript(user=user.strip(), actions=tuple(actions), session=session)


def load_script(path: Path | str) -> SessionScript:
    text = Path(path).read_text(encoding="utf-8")
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON: {exc.msg}",
            location=f"{path}: line {exc.lineno} column {exc.colno}",
        ) from None
    return script_from_dict(value)


def script_from_trace(trace: GrossTrace) -> SessionScript:
    """Rebuild the script that would reproduce a trace."""
    return SessionScript(
        user=trace.user,
        actions=tuple(e.action() for e in trace.events),
        session=trace.session,
    )


@dataclass(frozen=True)
class ReplayStep:
    seq: int
    action: DesignAction
    applied: bool
    validation: ValidationReport
    suggestion: Suggestion

    def to_dict(self) -> dict:
        return {
            "seq": self.seq,
            "action": self.action.to_dict(),
            "applied": self.applied,
            "validation": self.validation.to_dict(),
            "suggestion": self.suggestion.to_dict(),
        }


@dataclass(frozen=True)
class ReplayTranscript:
    session_id: str
    user: str
    steps: tuple[ReplayStep, ...]
    trace_document: str
    corpus_id: str | None = None

    @property
    def all_applied(self) -> bool:
        return all(step.applied for step in self.steps)


def replay_script(
    script: SessionScript, engine: AssistantEngine, *, complete: bool = False
) -> ReplayTranscript:
    """Run a script through an engine, one event at a time.

    Rejected actions are recorded in the transcript and skipped; with
    ``complete=True`` the session is completed and stored afterwards
    (only when every action applied).
    """
    session_id = engine.create_session(script.user, script.session)
    steps: list[ReplayStep] = []
    for index, action in enumerate(script.actions):
        result = engine.post_event(session_id, action)
        steps.append(
            ReplayStep(
                seq=index,
                action=action,
                applied=result.applied,
                validation=result.validation,
                suggestion=result.suggestion,
            )
        )
    corpus_id = None
    if complete and all(s.applied for s in steps):
        corpus_id = engine.complete_session(session_id)
    return ReplayTranscript(
        session_id=session_id,
        user=script.user,
        steps=tuple(steps),
        trace_document=engine.trace_document(session_id),
        corpus_id=corpus_id,
    )
