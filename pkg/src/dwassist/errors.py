"""Exception hierarchy for the assistant.

Every error carries a stable machine-readable ``code`` so the service
layer and the CLI can surface failures without string matching.
"""

from __future__ import annotations


class DesignAssistError(Exception):
    """Base class for all package errors."""

    def __init__(self, code: str, message: str, *, subject: str | None = None):
        super().__init__(message)
        self.code = code
        self.subject = subject

    def __str__(self) -> str:
        base = super().__str__()
        if self.subject:
            return f"{base} (subject: {self.subject})"
        return base


class ActionError(DesignAssistError):
    """A design action was rejected by the schema rules.

    Codes: EmptyName, DuplicateName, MissingContext, WrongKindContext,
    AlreadySelected, UnknownModel, BadLinkLabel, KeyMismatch.
    """


class TraceError(DesignAssistError):
    """An event could not be appended to a trace.

    Codes: SeqGap, IllegalPairing, OrphanContext, SessionMismatch.
    """


class GraphError(DesignAssistError):
    """A model graph could not be built from an event sequence.

    Codes: OrphanObject.
    """


class ParseError(DesignAssistError):
    """A serialized document could not be parsed.

    ``location`` points at the offending field, e.g. ``events[3].process``.
    """

    def __init__(self, message: str, *, location: str = ""):
        super().__init__("ParseError", message, subject=location or None)
        self.location = location

    def __str__(self) -> str:
        if self.location:
            return f"{self.location}: {Exception.__str__(self)}"
        return Exception.__str__(self)


class CorpusError(DesignAssistError):
    """A trace could not be stored or the corpus is unusable.

    Codes: TooShort, MalformedTrace, CorpusTooSmall.
    """


class SessionError(DesignAssistError):
    """A session operation was refused.

    Codes: UnknownSession, SessionNotActive, InvalidDraft.
    """
