"""Design actions and recorded events.

A ``DesignAction`` is what a user asks for: a process kind, the object
kind it manipulates, a label, and an optional context label naming the
parent object (the table a key belongs to, for instance). A
``DesignEvent`` is the same thing once accepted into a session's trace,
stamped with the session id and a sequence number.

Link labels pack the three endpoints of a link into one string using
the canonical form ``<source>.<key>-><dimension>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ActionError, TraceError
from .kinds import ObjectKind, PROCESS_TO_OBJECT, ProcessKind

LINK_ARROW = "->"
LINK_DOT = "."


def encode_link_label(source_table: str, key: str, dimension_table: str) -> str:
    """Build the canonical label for a link between two tables."""
    return f"{source_table}{LINK_DOT}{key}{LINK_ARROW}{dimension_table}"


def parse_link_label(label: str) -> tuple[str, str, str]:
    """Split a link label into (source table, key, dimension table).

    The dimension is taken after the last ``->`` and the key after the
    last ``.`` of the remainder, so table names containing dots still
    parse as long as key names do not.
    """
    head, arrow, dimension = label.rpartition(LINK_ARROW)
    source, dot, key = head.rpartition(LINK_DOT)
    if not arrow or not dot or not source or not key or not dimension:
        raise ActionError(
            "BadLinkLabel",
            f"link label must look like 'Fact{LINK_DOT}Key{LINK_ARROW}Dimension', got {label!r}",
            subject=label,
        )
    return source, key, dimension


def _clean_label(label: str) -> str:
    cleaned = label.strip()
    if not cleaned:
        raise ActionError("EmptyName", "object labels must be nonempty")
    return cleaned


def _clean_context(context: str | None) -> str | None:
    if context is None:
        return None
    cleaned = context.strip()
    return cleaned or None


@dataclass(frozen=True)
class DesignAction:
    """One requested design step.

    ``object`` must be the object kind paired with ``process``; the
    constructor re-derives and checks it so illegal pairings never
    circulate.
    """

    process: ProcessKind
    object: ObjectKind
    label: str
    context: str | None = None

    def __post_init__(self) -> None:
        expected = PROCESS_TO_OBJECT[self.process]
        if self.object is not expected:
            raise TraceError(
                "IllegalPairing",
                f"{self.process.value} manipulates {expected.value}, not {self.object.value}",
                subject=self.label,
            )
        object.__setattr__(self, "label", _clean_label(self.label))
        object.__setattr__(self, "context", _clean_context(self.context))

    @classmethod
    def of(
        cls, process: ProcessKind, label: str, context: str | None = None
    ) -> "DesignAction":
        """Build an action, deriving the object kind from the process."""
        return cls(process, PROCESS_TO_OBJECT[process], label, context)

    def to_dict(self) -> dict:
        return {
            "process": self.process.value,
            "object": self.object.value,
            "label": self.label,
            "context": self.context,
        }


@dataclass(frozen=True)
class DesignEvent:
    """A design action accepted into a session, in sequence order."""

    session: str
    seq: int
    process: ProcessKind
    object: ObjectKind
    label: str
    context: str | None = None

    def __post_init__(self) -> None:
        if self.seq < 0:
            raise TraceError("SeqGap", f"event seq must be >= 0, got {self.seq}")
        expected = PROCESS_TO_OBJECT[self.process]
        if self.object is not expected:
            raise TraceError(
                "IllegalPairing",
                f"{self.process.value} manipulates {expected.value}, not {self.object.value}",
                subject=self.label,
            )
        object.__setattr__(self, "label", _clean_label(self.label))
        object.__setattr__(self, "context", _clean_context(self.context))

    @classmethod
    def from_action(cls, session: str, seq: int, action: DesignAction) -> "DesignEvent":
        return cls(session, seq, action.process, action.object, action.label, action.context)

    def action(self) -> DesignAction:
        return DesignAction(self.process, self.object, self.label, self.context)

    def to_dict(self) -> dict:
        return {
            "seq": self.seq,
            "process": self.process.value,
            "object": self.object.value,
            "label": self.label,
            "context": self.context,
        }
