"""Trace-driven design assistant for data-warehouse schemas.

Records every design step a user takes as a typed trace, mines the
traces of finished sessions into per-granularity episodes, and advises
the next step of a running session by matching its episode against the
corpus of stored ones.
"""

from __future__ import annotations

from .corpus import CorpusRecord, CorpusSnapshot, CorpusStore, corpus_id_for, load_corpus
from .episodes import (
    Episode,
    EpisodeItem,
    EpisodeLabel,
    GranularityLevel,
    PotentialGraph,
    extract_all,
    extract_episode,
    merged_episode,
    potential_graph,
)
from .errors import (
    ActionError,
    CorpusError,
    DesignAssistError,
    GraphError,
    ParseError,
    SessionError,
    TraceError,
)
from .events import DesignAction, DesignEvent, encode_link_label, parse_link_label
from .evaluate import EvalReport, eval_leave_one_out
from .graph import (
    AbstractNode,
    ConcreteNode,
    DEFAULT_TASK_MODEL,
    Edge,
    ObservationModel,
    TaskEntry,
    UseModel,
    build_observation_model,
    build_use_model,
    task_decompositions,
)
from .kinds import EdgeKind, ModelKind, NodeKind, ObjectKind, ProcessKind, object_order
from .matching import (
    DEFAULT_THRESHOLDS,
    Guidance,
    Match,
    MatchThresholds,
    Proposal,
    Suggestion,
    SuggestionKind,
    find_matches,
    guidance_for,
    similarity,
    split_problem_solution,
    suggest_next,
)
from .schema import (
    DimensionTable,
    FactTable,
    Link,
    SchemaDraft,
    ValidationReport,
    Violation,
    apply_action,
    new_draft,
    validate,
)
from .service import AssistantEngine, PostEventResult, SessionStatus, proposal_to_action
from .trace import (
    GrossTrace,
    deserialize,
    linearize,
    new_trace,
    record_event,
    serialize,
)

__version__ = "0.1.0"

__all__ = [
    "AbstractNode",
    "ActionError",
    "AssistantEngine",
    "ConcreteNode",
    "CorpusError",
    "CorpusRecord",
    "CorpusSnapshot",
    "CorpusStore",
    "DEFAULT_TASK_MODEL",
    "DEFAULT_THRESHOLDS",
    "DesignAction",
    "DesignAssistError",
    "DesignEvent",
    "DimensionTable",
    "Edge",
    "EdgeKind",
    "Episode",
    "EpisodeItem",
    "EpisodeLabel",
    "EvalReport",
    "FactTable",
    "GranularityLevel",
    "GraphError",
    "GrossTrace",
    "Guidance",
    "Link",
    "Match",
    "MatchThresholds",
    "ModelKind",
    "NodeKind",
    "ObjectKind",
    "ObservationModel",
    "ParseError",
    "PostEventResult",
    "PotentialGraph",
    "ProcessKind",
    "Proposal",
    "SchemaDraft",
    "SessionError",
    "SessionStatus",
    "Suggestion",
    "SuggestionKind",
    "TaskEntry",
    "TraceError",
    "UseModel",
    "ValidationReport",
    "Violation",
    "apply_action",
    "build_observation_model",
    "build_use_model",
    "corpus_id_for",
    "deserialize",
    "encode_link_label",
    "eval_leave_one_out",
    "extract_all",
    "extract_episode",
    "find_matches",
    "guidance_for",
    "linearize",
    "load_corpus",
    "merged_episode",
    "new_draft",
    "new_trace",
    "object_order",
    "parse_link_label",
    "potential_graph",
    "proposal_to_action",
    "record_event",
    "serialize",
    "similarity",
    "split_problem_solution",
    "suggest_next",
    "task_decompositions",
    "validate",
]
