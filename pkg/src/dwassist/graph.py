"""The trace graph node model and the three views built from events.

Everything a session produces is described with three node kinds (user,
process, object) and five edge kinds. Abstract nodes name a taxonomy
member; concrete nodes instantiate one with a label and a timestamp.

From an event sequence two structural views are derived:

* the use model: the object hierarchy, one contextualization edge from
  each non-domain object up to its parent;
* the observation model: the process chain in temporal order.

The task model is static knowledge about the design processes
themselves: the context a process runs in, what it is composed of, and
which steps must already have happened. It is what turns a bare "add a
link next" hint into something a user can act on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import GraphError
from .events import DesignEvent
from .kinds import EdgeKind, NodeKind, ObjectKind, ProcessKind


@dataclass(frozen=True)
class AbstractNode:
    """A taxonomy member: the user kind, a process kind, or an object kind."""

    kind: NodeKind
    process: ProcessKind | None = None
    object: ObjectKind | None = None

    def __post_init__(self) -> None:
        if self.kind is NodeKind.PROCESS and self.process is None:
            raise ValueError("abstract process nodes need a process kind")
        if self.kind is NodeKind.OBJECT and self.object is None:
            raise ValueError("abstract object nodes need an object kind")
        if self.kind is NodeKind.USER and (self.process or self.object):
            raise ValueError("abstract user nodes carry no process or object kind")


ABSTRACT_USER = AbstractNode(NodeKind.USER)


def abstract_process(process: ProcessKind) -> AbstractNode:
    return AbstractNode(NodeKind.PROCESS, process=process)


def abstract_object(kind: ObjectKind) -> AbstractNode:
    return AbstractNode(NodeKind.OBJECT, object=kind)


@dataclass(frozen=True)
class ConcreteNode:
    """An instantiated node: what happened, labeled, at a monotonic tick."""

    id: str
    abstract: AbstractNode
    label: str
    timestamp: int
    session: str

    def __post_init__(self) -> None:
        if self.abstract.kind is NodeKind.OBJECT and not self.label:
            raise ValueError("object nodes must carry a nonempty label")


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    kind: EdgeKind


@dataclass(frozen=True)
class UseModel:
    """Object hierarchy of a session: who is declared inside what."""

    nodes: tuple[ConcreteNode, ...]
    edges: tuple[Edge, ...]

    def parent_of(self, node_id: str) -> str | None:
        for edge in self.edges:
            if edge.kind is EdgeKind.CONTEXTUALIZATION and edge.source == node_id:
                return edge.target
        return None


@dataclass(frozen=True)
class ObservationModel:
    """Process chain of a session in temporal order."""

    nodes: tuple[ConcreteNode, ...]
    edges: tuple[Edge, ...]


def object_node_id(seq: int) -> str:
    return f"o{seq}"


def process_node_id(seq: int) -> str:
    return f"p{seq}"


USER_NODE_ID = "u"

# Which earlier object kind an object is declared inside. Domains are
# roots; keys and attributes name their table through the event context.
_PARENT_RULES: dict[ObjectKind, tuple[ObjectKind, ...] | None] = {
    ObjectKind.DOMAIN: None,
    ObjectKind.MODEL: (ObjectKind.DOMAIN,),
    ObjectKind.FACT_TABLE: (ObjectKind.MODEL,),
    ObjectKind.DIMENSION_TABLE: (ObjectKind.MODEL,),
    ObjectKind.LINK: (ObjectKind.MODEL,),
    ObjectKind.FACT_KEY: (ObjectKind.FACT_TABLE,),
    ObjectKind.FACT_ATTRIBUTE: (ObjectKind.FACT_TABLE,),
    ObjectKind.DIMENSION_KEY: (ObjectKind.DIMENSION_TABLE,),
    ObjectKind.DIMENSION_ATTRIBUTE: (ObjectKind.DIMENSION_TABLE,),
}

_CONTEXT_REQUIRED = frozenset(
    {
        ObjectKind.FACT_KEY,
        ObjectKind.FACT_ATTRIBUTE,
        ObjectKind.DIMENSION_KEY,
        ObjectKind.DIMENSION_ATTRIBUTE,
    }
)


def context_parent_index(events: Sequence[DesignEvent], index: int) -> int | None:
    """Index of the event whose object is the parent of ``events[index]``.

    Returns None for domain objects. Raises ValueError when the parent
    cannot be resolved; callers wrap that in their own error kind.
    """
    event = events[index]
    parent_kinds = _PARENT_RULES[event.object]
    if parent_kinds is None:
        return None
    context = event.context
    if context is None and event.object in _CONTEXT_REQUIRED:
        raise ValueError(f"{event.process.value} requires a context label")
    for earlier in range(index - 1, -1, -1):
        candidate = events[earlier]
        if candidate.object not in parent_kinds:
            continue
        if context is None or candidate.label == context:
            return earlier
    wanted = " or ".join(k.value for k in parent_kinds)
    if context is None:
        raise ValueError(f"no {wanted} object exists yet")
    raise ValueError(f"no {wanted} object labeled {context!r} exists yet")


def _object_nodes(events: Sequence[DesignEvent]) -> list[ConcreteNode]:
    return [
        ConcreteNode(
            id=object_node_id(e.seq),
            abstract=abstract_object(e.object),
            label=e.label,
            timestamp=2 * e.seq + 2,
            session=e.session,
        )
        for e in events
    ]


def build_use_model(events: Sequence[DesignEvent]) -> UseModel:
    """Build the object hierarchy for an event sequence.

    Raises GraphError (code OrphanObject) when an object's parent was
    never instantiated.
    """
    nodes = _object_nodes(events)
    edges: list[Edge] = []
    for index, event in enumerate(events):
        try:
            parent = context_parent_index(events, index)
        except ValueError as exc:
            raise GraphError(
                "OrphanObject",
                f"event {event.seq} ({event.label!r}): {exc}",
                subject=event.label,
            ) from None
        if parent is not None:
            edges.append(
                Edge(object_node_id(event.seq), object_node_id(events[parent].seq), EdgeKind.CONTEXTUALIZATION)
            )
    return UseModel(tuple(nodes), tuple(edges))


def build_observation_model(events: Sequence[DesignEvent]) -> ObservationModel:
    """Build the temporal process chain for an event sequence."""
    nodes = [
        ConcreteNode(
            id=process_node_id(e.seq),
            abstract=abstract_process(e.process),
            label="",
            timestamp=2 * e.seq + 1,
            session=e.session,
        )
        for e in events
    ]
    edges = [
        Edge(process_node_id(a.seq), process_node_id(b.seq), EdgeKind.TEMPORAL_NEXT)
        for a, b in zip(events, events[1:])
    ]
    return ObservationModel(tuple(nodes), tuple(edges))


@dataclass(frozen=True)
class TaskEntry:
    """What is known about performing one kind of design step."""

    process: ProcessKind
    required_context: ProcessKind | None
    children: tuple[ProcessKind, ...] = ()
    prerequisites: tuple[ProcessKind, ...] = ()
    note: str = ""


TaskModel = Mapping[ProcessKind, TaskEntry]

DEFAULT_TASK_MODEL: TaskModel = {
    ProcessKind.SELECT_DOMAIN: TaskEntry(
        ProcessKind.SELECT_DOMAIN,
        required_context=None,
        note="first step of every session; fixes the subject area",
    ),
    ProcessKind.SELECT_MODEL: TaskEntry(
        ProcessKind.SELECT_MODEL,
        required_context=ProcessKind.SELECT_DOMAIN,
        note="choose the model family the schema will follow",
    ),
    ProcessKind.CREATE_FACT_TABLE: TaskEntry(
        ProcessKind.CREATE_FACT_TABLE,
        required_context=ProcessKind.SELECT_MODEL,
        children=(ProcessKind.ADD_FACT_KEY, ProcessKind.ADD_FACT_ATTRIBUTE),
        note="a fact table is filled in by adding its keys and attributes",
    ),
    ProcessKind.ADD_FACT_KEY: TaskEntry(
        ProcessKind.ADD_FACT_KEY,
        required_context=ProcessKind.CREATE_FACT_TABLE,
        note="keys are added to an existing fact table",
    ),
    ProcessKind.ADD_FACT_ATTRIBUTE: TaskEntry(
        ProcessKind.ADD_FACT_ATTRIBUTE,
        required_context=ProcessKind.CREATE_FACT_TABLE,
        note="attributes are added to an existing fact table",
    ),
    ProcessKind.CREATE_DIMENSION_TABLE: TaskEntry(
        ProcessKind.CREATE_DIMENSION_TABLE,
        required_context=ProcessKind.SELECT_MODEL,
        children=(ProcessKind.ADD_DIMENSION_KEY, ProcessKind.ADD_DIMENSION_ATTRIBUTE),
        note="a dimension table is filled in by adding its key and attributes",
    ),
    ProcessKind.ADD_DIMENSION_KEY: TaskEntry(
        ProcessKind.ADD_DIMENSION_KEY,
        required_context=ProcessKind.CREATE_DIMENSION_TABLE,
        note="the key is added to an existing dimension table",
    ),
    ProcessKind.ADD_DIMENSION_ATTRIBUTE: TaskEntry(
        ProcessKind.ADD_DIMENSION_ATTRIBUTE,
        required_context=ProcessKind.CREATE_DIMENSION_TABLE,
        note="attributes are added to an existing dimension table",
    ),
    ProcessKind.ADD_LINK: TaskEntry(
        ProcessKind.ADD_LINK,
        required_context=ProcessKind.SELECT_MODEL,
        prerequisites=(ProcessKind.CREATE_FACT_TABLE, ProcessKind.CREATE_DIMENSION_TABLE),
        note="a link joins a declared key of one table to the matching key of a dimension",
    ),
}

# Nested alternative: keys first, then attributes under the keys. Kept
# alongside the flat decomposition because both orderings occur in
# practice; the flat one is canonical.
ALTERNATE_DECOMPOSITIONS: Mapping[ProcessKind, tuple[TaskEntry, ...]] = {
    ProcessKind.CREATE_FACT_TABLE: (
        TaskEntry(
            ProcessKind.CREATE_FACT_TABLE,
            required_context=ProcessKind.SELECT_MODEL,
            children=(ProcessKind.ADD_FACT_KEY,),
            note="nested variant: attributes hang off the keys",
        ),
        TaskEntry(
            ProcessKind.ADD_FACT_KEY,
            required_context=ProcessKind.CREATE_FACT_TABLE,
            children=(ProcessKind.ADD_FACT_ATTRIBUTE,),
        ),
        TaskEntry(
            ProcessKind.ADD_FACT_ATTRIBUTE,
            required_context=ProcessKind.ADD_FACT_KEY,
        ),
    ),
    ProcessKind.CREATE_DIMENSION_TABLE: (
        TaskEntry(
            ProcessKind.CREATE_DIMENSION_TABLE,
            required_context=ProcessKind.SELECT_MODEL,
            children=(ProcessKind.ADD_DIMENSION_KEY,),
            note="nested variant: attributes hang off the key",
        ),
        TaskEntry(
            ProcessKind.ADD_DIMENSION_KEY,
            required_context=ProcessKind.CREATE_DIMENSION_TABLE,
            children=(ProcessKind.ADD_DIMENSION_ATTRIBUTE,),
        ),
        TaskEntry(
            ProcessKind.ADD_DIMENSION_ATTRIBUTE,
            required_context=ProcessKind.ADD_DIMENSION_KEY,
        ),
    ),
}


@dataclass(frozen=True)
class TaskDecomposition:
    canonical: TaskEntry
    alternate: tuple[TaskEntry, ...] | None = None


def task_decompositions(process: ProcessKind) -> TaskDecomposition:
    """The canonical task entry for a process, plus any known variant."""
    return TaskDecomposition(
        canonical=DEFAULT_TASK_MODEL[process],
        alternate=ALTERNATE_DECOMPOSITIONS.get(process),
    )


def prior_steps(process: ProcessKind, task_model: TaskModel = DEFAULT_TASK_MODEL) -> tuple[ProcessKind, ...]:
    """Every process that must already have run before ``process`` can.

    Closure over required contexts and prerequisites, returned in
    canonical stage order.
    """
    closed: set[ProcessKind] = set()
    frontier = [process]
    while frontier:
        current = frontier.pop()
        entry = task_model[current]
        for needed in (entry.required_context, *entry.prerequisites):
            if needed is not None and needed not in closed:
                closed.add(needed)
                frontier.append(needed)
    return tuple(p for p in ProcessKind if p in closed)
