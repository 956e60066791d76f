"""Session engine: the pipeline behind the HTTP API and the CLI.

A session owns a draft and a trace that move in lockstep. Posting an
event is atomic: the action is validated against the draft first, and
only an accepted action is recorded and matched. Rejected actions leave
the session untouched and surface their violation in-band.

Completing a session requires the draft to pass validation; the trace
is then stored in the corpus exactly once.
"""

from __future__ import annotations

import enum
import itertools
import threading
from dataclasses import dataclass, field

from .corpus import CorpusStore
from .errors import ActionError, SessionError
from .events import DesignAction, DesignEvent, encode_link_label
from .graph import DEFAULT_TASK_MODEL, TaskModel
from .kinds import ObjectKind, ProcessKind
from .matching import (
    DEFAULT_THRESHOLDS,
    MatchThresholds,
    NO_ADVICE,
    Proposal,
    Suggestion,
    suggest_next,
)
from .schema import (
    EMPTY_DRAFT,
    SchemaDraft,
    ValidationReport,
    Violation,
    apply_action,
    validate,
)
from .trace import GrossTrace, LinearStep, linearize, new_trace, record_event, serialize


class SessionStatus(str, enum.Enum):
    ACTIVE = "active"
    COMPLETED = "completed"
    ABANDONED = "abandoned"


@dataclass
class Session:
    session_id: str
    user: str
    status: SessionStatus = SessionStatus.ACTIVE
    draft: SchemaDraft = EMPTY_DRAFT
    trace: GrossTrace | None = None
    last_suggestion: Suggestion = NO_ADVICE
    corpus_id: str | None = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


@dataclass(frozen=True)
class PostEventResult:
    applied: bool
    validation: ValidationReport
    suggestion: Suggestion

    def to_dict(self) -> dict:
        return {
            "applied": self.applied,
            "validation": self.validation.to_dict(),
            "suggestion": self.suggestion.to_dict(),
        }


@dataclass(frozen=True)
class SessionView:
    session_id: str
    user: str
    status: SessionStatus
    draft: SchemaDraft
    steps: tuple[LinearStep, ...]
    last_suggestion: Suggestion
    corpus_id: str | None

    def to_dict(self) -> dict:
        return {
            "session": self.session_id,
            "user": self.user,
            "status": self.status.value,
            "draft": self.draft.to_dict(),
            "steps": [
                {
                    "seq": s.seq,
                    "process": s.process.value,
                    "object": s.object.value,
                    "label": s.label,
                }
                for s in self.steps
            ],
            "suggestion": self.last_suggestion.to_dict(),
            "corpus_id": self.corpus_id,
        }


class AssistantEngine:
    """Coordinates drafts, traces, matching, and the corpus."""

    def __init__(
        self,
        store: CorpusStore | None = None,
        thresholds: MatchThresholds = DEFAULT_THRESHOLDS,
        task_model: TaskModel = DEFAULT_TASK_MODEL,
    ):
        self.store = store if store is not None else CorpusStore()
        self.thresholds = thresholds
        self.task_model = task_model
        self._sessions: dict[str, Session] = {}
        self._registry_lock = threading.Lock()
        self._ids = itertools.count(1)

    def create_session(self, user: str, session_id: str | None = None) -> str:
        """Open a session; ids are assigned sequentially unless given."""
        cleaned = user.strip()
        if not cleaned:
            raise SessionError("UnknownSession", "user must be nonempty")
        with self._registry_lock:
            if session_id is None:
                session_id = f"s-{next(self._ids):06d}"
            session_id = session_id.strip()
            if not session_id:
                raise SessionError("UnknownSession", "session id must be nonempty")
            if session_id in self._sessions:
                raise SessionError(
                    "SessionNotActive",
                    f"session id {session_id!r} already exists",
                    subject=session_id,
                )
            session = Session(session_id=session_id, user=cleaned)
            session.trace = new_trace(cleaned, session_id)
            self._sessions[session_id] = session
        return session_id

    def _session(self, session_id: str) -> Session:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise SessionError(
                "UnknownSession", f"no session {session_id!r}", subject=session_id
            )
        return session

    def _require_active(self, session: Session) -> None:
        if session.status is not SessionStatus.ACTIVE:
            raise SessionError(
                "SessionNotActive",
                f"session {session.session_id!r} is {session.status.value}",
                subject=session.session_id,
            )

    def post_event(self, session_id: str, action: DesignAction) -> PostEventResult:
        """Validate, apply, record, and match one action atomically."""
        session = self._session(session_id)
        with session.lock:
            self._require_active(session)
            assert session.trace is not None
            try:
                draft = apply_action(session.draft, action)
            except ActionError as exc:
                violation = Violation(exc.code, str(exc), exc.subject or action.label)
                return PostEventResult(
                    applied=False,
                    validation=ValidationReport((violation,)),
                    suggestion=NO_ADVICE,
                )
            event = DesignEvent.from_action(
                session.session_id, len(session.trace.events), action
            )
            trace = record_event(session.trace, event)
            suggestion = suggest_next(
                trace, self.store.snapshot(), self.task_model, self.thresholds
            )
            session.draft = draft
            session.trace = trace
            session.last_suggestion = suggestion
            return PostEventResult(
                applied=True, validation=validate(draft), suggestion=suggestion
            )

    def complete_session(self, session_id: str) -> str:
        """Close a session and store its trace; returns the corpus id."""
        session = self._session(session_id)
        with session.lock:
            self._require_active(session)
            assert session.trace is not None
            report = validate(session.draft)
            if not report.ok:
                details = "; ".join(v.message for v in report.violations)
                raise SessionError(
                    "InvalidDraft",
                    f"draft does not satisfy its model rules: {details}",
                    subject=session_id,
                )
            corpus_id = self.store.store_trace(session.trace)
            session.status = SessionStatus.COMPLETED
            session.corpus_id = corpus_id
            return corpus_id

    def abandon_session(self, session_id: str) -> None:
        """Discard a session; its trace never reaches the corpus."""
        session = self._session(session_id)
        with session.lock:
            self._require_active(session)
            session.status = SessionStatus.ABANDONED

    def get_state(self, session_id: str) -> SessionView:
        session = self._session(session_id)
        with session.lock:
            assert session.trace is not None
            return SessionView(
                session_id=session.session_id,
                user=session.user,
                status=session.status,
                draft=session.draft,
                steps=linearize(session.trace),
                last_suggestion=session.last_suggestion,
                corpus_id=session.corpus_id,
            )

    def trace_document(self, session_id: str) -> str:
        """Canonical document for the session's trace as recorded so far."""
        session = self._session(session_id)
        with session.lock:
            assert session.trace is not None
            return serialize(session.trace)

    def corpus_stats(self) -> dict:
        return self.store.stats()


def proposal_to_action(
    draft: SchemaDraft, proposal: Proposal, label: str | None = None
) -> DesignAction | None:
    """Turn a proposal into a concrete action against the current draft.

    ``label`` is the user-chosen name; it defaults to the proposal's
    placeholder. For keys and attributes the most recently created table
    of the right kind is used as context; for links the first linkable
    key pair not yet linked is chosen. Returns None when the draft has
    no spot for the proposed step.
    """
    name = (label or proposal.suggested_label).strip()
    kind = proposal.object
    if kind in (ObjectKind.DOMAIN, ObjectKind.MODEL, ObjectKind.FACT_TABLE, ObjectKind.DIMENSION_TABLE):
        return DesignAction.of(proposal.process, name)
    if kind in (ObjectKind.FACT_KEY, ObjectKind.FACT_ATTRIBUTE):
        if not draft.fact_tables:
            return None
        return DesignAction.of(proposal.process, name, draft.fact_tables[-1].name)
    if kind in (ObjectKind.DIMENSION_KEY, ObjectKind.DIMENSION_ATTRIBUTE):
        if not draft.dimension_tables:
            return None
        return DesignAction.of(proposal.process, name, draft.dimension_tables[-1].name)
    existing = {(l.fact_table, l.fact_key, l.dimension_table) for l in draft.links}
    for fact in draft.fact_tables:
        for key in fact.keys:
            for dimension in draft.dimension_tables:
                if key in dimension.keys and (fact.name, key, dimension.name) not in existing:
                    return DesignAction.of(
                        ProcessKind.ADD_LINK, encode_link_label(fact.name, key, dimension.name)
                    )
    return None
