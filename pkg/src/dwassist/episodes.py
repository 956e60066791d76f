"""Episode extraction: slicing a trace by granularity.

Each granularity level admits a disjoint set of object kinds; together
the four sets cover all nine kinds, so the per-level episodes of a
trace partition its events. An episode keeps the admitted steps in
source order along with their original sequence numbers, which is what
lets episodes from different levels be merged back together faithfully.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .kinds import ObjectKind, ProcessKind
from .trace import FORMAT_VERSION, GrossTrace, linearize


class GranularityLevel(str, enum.Enum):
    """Coarse to fine, in declaration order."""

    DOMAIN = "domain"
    MODEL = "model"
    STRUCTURE = "structure"
    DETAIL = "detail"


LEVEL_ORDER: dict[GranularityLevel, int] = {
    level: index for index, level in enumerate(GranularityLevel)
}

LEVEL_OBJECTS: dict[GranularityLevel, frozenset[ObjectKind]] = {
    GranularityLevel.DOMAIN: frozenset({ObjectKind.DOMAIN}),
    GranularityLevel.MODEL: frozenset({ObjectKind.MODEL}),
    GranularityLevel.STRUCTURE: frozenset(
        {ObjectKind.FACT_TABLE, ObjectKind.DIMENSION_TABLE, ObjectKind.LINK}
    ),
    GranularityLevel.DETAIL: frozenset(
        {
            ObjectKind.FACT_KEY,
            ObjectKind.FACT_ATTRIBUTE,
            ObjectKind.DIMENSION_KEY,
            ObjectKind.DIMENSION_ATTRIBUTE,
        }
    ),
}


@dataclass(frozen=True)
class PotentialGraph:
    """What a level's episodes may contain: admitted object kinds only,
    keeping the source trace's temporal order."""

    level: GranularityLevel
    admitted_objects: frozenset[ObjectKind]
    temporal_constraint: str = "preserve source order"


POTENTIAL_GRAPHS: dict[GranularityLevel, PotentialGraph] = {
    level: PotentialGraph(level, LEVEL_OBJECTS[level]) for level in GranularityLevel
}


def potential_graph(level: GranularityLevel) -> PotentialGraph:
    return POTENTIAL_GRAPHS[level]


class EpisodeItem(NamedTuple):
    process: ProcessKind
    object: ObjectKind
    label: str


class EpisodeLabel(NamedTuple):
    """The name-free identity of a step: what was done to what kind."""

    process: ProcessKind
    object: ObjectKind


@dataclass(frozen=True)
class Episode:
    """An order-preserving slice of one trace at one or more levels."""

    user: str
    session: str
    levels: tuple[GranularityLevel, ...]
    items: tuple[EpisodeItem, ...]
    seqs: tuple[int, ...]

    @property
    def trace_ref(self) -> tuple[str, str]:
        return (self.user, self.session)

    @property
    def level(self) -> GranularityLevel:
        """The finest level this episode was extracted with."""
        return self.levels[-1]

    @property
    def span(self) -> tuple[int, int]:
        return (self.seqs[0], self.seqs[-1])

    def labels(self) -> tuple[EpisodeLabel, ...]:
        return tuple(EpisodeLabel(item.process, item.object) for item in self.items)

    def to_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "user": self.user,
            "session": self.session,
            "level": "+".join(l.value for l in self.levels),
            "items": [
                {
                    "seq": seq,
                    "process": item.process.value,
                    "object": item.object.value,
                    "label": item.label,
                }
                for seq, item in zip(self.seqs, self.items)
            ],
        }


def _normalize_levels(levels: Iterable[GranularityLevel]) -> tuple[GranularityLevel, ...]:
    unique = sorted(set(levels), key=LEVEL_ORDER.__getitem__)
    if not unique:
        raise ValueError("at least one granularity level is required")
    return tuple(unique)


def merged_episode(
    trace: GrossTrace, levels: Iterable[GranularityLevel]
) -> Episode | None:
    """The episode over the union of the given levels' object kinds.

    None when the trace has no step at any of those levels.
    """
    normalized = _normalize_levels(levels)
    admitted: frozenset[ObjectKind] = frozenset().union(
        *(LEVEL_OBJECTS[level] for level in normalized)
    )
    items: list[EpisodeItem] = []
    seqs: list[int] = []
    for step in linearize(trace):
        if step.object in admitted:
            items.append(EpisodeItem(step.process, step.object, step.label))
            seqs.append(step.seq)
    if not items:
        return None
    return Episode(
        user=trace.user,
        session=trace.session,
        levels=normalized,
        items=tuple(items),
        seqs=tuple(seqs),
    )


def extract_episode(trace: GrossTrace, level: GranularityLevel) -> Episode | None:
    """The trace's episode at a single level, or None when empty there."""
    return merged_episode(trace, (level,))


def extract_all(trace: GrossTrace) -> dict[GranularityLevel, Episode]:
    """Episodes at every level that has at least one step."""
    found: dict[GranularityLevel, Episode] = {}
    for level in GranularityLevel:
        episode = extract_episode(trace, level)
        if episode is not None:
            found[level] = episode
    return found
