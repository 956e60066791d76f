"""Case-based matching of the running session against stored episodes.

The running session's episode is the problem; a stored episode whose
beginning lines up with it contributes its remainder as the solution.
Two routes qualify a stored episode:

* exact prefix: the query labels are a proper prefix of the stored
  labels. Score 1.0, solution is everything after the prefix.
* similar: normalized longest-common-subsequence similarity reaches the
  threshold AND the stored episode contains the query's last step
  somewhere before its final item; the solution starts after the last
  such occurrence.

Labels compare by (process kind, object kind) only. The names users
give their tables never influence matching.

Matching starts from the merged structure+detail view and falls back
one level coarser at a time until something matches.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .canonical import canonical_json
from .corpus import CorpusSnapshot
from .episodes import (
    Episode,
    EpisodeItem,
    EpisodeLabel,
    GranularityLevel,
    merged_episode,
)
from .events import parse_link_label
from .errors import ActionError
from .graph import DEFAULT_TASK_MODEL, TaskModel, prior_steps
from .kinds import ObjectKind, OBJECT_TO_PROCESS, ProcessKind, object_order
from .trace import GrossTrace


@dataclass(frozen=True)
class MatchThresholds:
    """Knobs governing when a stored episode counts as a match."""

    min_similarity: float = 0.6
    min_nodes: int = 3
    max_candidates: int = 5

    def __post_init__(self) -> None:
        if not 0.0 <= self.min_similarity <= 1.0:
            raise ValueError("min_similarity must be within [0, 1]")
        if self.min_nodes < 1:
            raise ValueError("min_nodes must be at least 1")
        if self.max_candidates < 1:
            raise ValueError("max_candidates must be at least 1")


DEFAULT_THRESHOLDS = MatchThresholds()

# Finest comparison first, then coarser views until something matches.
FALLBACK_SCOPES: tuple[tuple[GranularityLevel, ...], ...] = (
    (GranularityLevel.STRUCTURE, GranularityLevel.DETAIL),
    (GranularityLevel.STRUCTURE,),
    (GranularityLevel.MODEL,),
    (GranularityLevel.DOMAIN,),
)


@dataclass(frozen=True)
class Match:
    """One stored episode aligned against the query."""

    episode_ref: str
    level: GranularityLevel
    score: float
    problem_len: int
    solution_items: tuple[EpisodeItem, ...]


def lcs_length(a: Sequence, b: Sequence) -> int:
    """Length of the longest common subsequence of two sequences."""
    if not a or not b:
        return 0
    previous = [0] * (len(b) + 1)
    for item_a in a:
        current = [0]
        for j, item_b in enumerate(b, start=1):
            if item_a == item_b:
                current.append(previous[j - 1] + 1)
            else:
                current.append(max(previous[j], current[j - 1]))
        previous = current
    return previous[len(b)]


def similarity(a: Sequence[EpisodeLabel], b: Sequence[EpisodeLabel]) -> float:
    """Normalized LCS similarity: |LCS| / max(|a|, |b|), 1.0 iff equal."""
    if not a and not b:
        return 1.0
    return lcs_length(a, b) / max(len(a), len(b))


def split_problem_solution(
    stored: Episode, query: Sequence[EpisodeLabel]
) -> tuple[int, tuple[EpisodeItem, ...]] | None:
    """Split a stored episode at the query, if the query is a proper prefix.

    Returns (problem length, remaining items) or None.
    """
    labels = stored.labels()
    if len(query) >= len(labels):
        return None
    if tuple(query) != labels[: len(query)]:
        return None
    return len(query), stored.items[len(query):]


def _similar_split(
    stored: Episode, query: Sequence[EpisodeLabel]
) -> tuple[int, tuple[EpisodeItem, ...]] | None:
    """Split after the last non-final occurrence of the query's last step."""
    last = query[-1]
    labels = stored.labels()
    for position in range(len(labels) - 2, -1, -1):
        if labels[position] == last:
            return position + 1, stored.items[position + 1:]
    return None


def find_matches(
    query: Episode,
    snapshot: CorpusSnapshot,
    thresholds: MatchThresholds = DEFAULT_THRESHOLDS,
    *,
    domain: str,
) -> tuple[Match, ...]:
    """Every qualifying stored episode, best first.

    Candidates come from ``domain`` at the query's scope and must hold
    at least ``min_nodes`` steps. Ordering is total: score descending,
    then the proposed next object kind's canonical order, then corpus id.
    """
    query_labels = query.labels()
    if not query_labels:
        raise ValueError("query episode must have at least one item")
    matches: list[Match] = []
    for corpus_id, stored in snapshot.episodes_for(domain, query.levels):
        if len(stored.items) < thresholds.min_nodes:
            continue
        split = split_problem_solution(stored, query_labels)
        if split is not None:
            problem_len, solution = split
            matches.append(Match(corpus_id, stored.level, 1.0, problem_len, solution))
            continue
        score = similarity(query_labels, stored.labels())
        if score < thresholds.min_similarity:
            continue
        similar = _similar_split(stored, query_labels)
        if similar is None:
            continue
        problem_len, solution = similar
        matches.append(Match(corpus_id, stored.level, score, problem_len, solution))
    matches.sort(
        key=lambda m: (-m.score, object_order(m.solution_items[0].object), m.episode_ref)
    )
    return tuple(matches)


class SuggestionKind(str, enum.Enum):
    EXACT_CONTINUATION = "exact_continuation"
    CANDIDATES = "candidates"
    NO_ADVICE = "no_advice"


@dataclass(frozen=True)
class Guidance:
    """Task-model knowledge about performing the proposed step."""

    object: ObjectKind
    required_context: ProcessKind | None
    prior_steps: tuple[ProcessKind, ...]
    note: str

    def to_dict(self) -> dict:
        return {
            "object": self.object.value,
            "required_context": self.required_context.value if self.required_context else None,
            "prior_steps": [p.value for p in self.prior_steps],
            "note": self.note,
        }


@dataclass(frozen=True)
class Proposal:
    """One suggested next step, traced back to its source episode."""

    process: ProcessKind
    object: ObjectKind
    suggested_label: str
    source: str
    score: float

    def to_dict(self) -> dict:
        return {
            "process": self.process.value,
            "object": self.object.value,
            "suggested_label": self.suggested_label,
            "source": self.source,
            "score": self.score,
        }


@dataclass(frozen=True)
class Suggestion:
    kind: SuggestionKind
    proposals: tuple[Proposal, ...] = ()
    guidance: Guidance | None = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "proposals": [p.to_dict() for p in self.proposals],
            "guidance": self.guidance.to_dict() if self.guidance else None,
        }

    def to_document(self) -> str:
        return canonical_json(self.to_dict())


NO_ADVICE = Suggestion(SuggestionKind.NO_ADVICE)


def guidance_for(
    object_kind: ObjectKind, task_model: TaskModel = DEFAULT_TASK_MODEL
) -> Guidance:
    """How to perform the step that produces an object of this kind."""
    process = OBJECT_TO_PROCESS[object_kind]
    entry = task_model[process]
    return Guidance(
        object=object_kind,
        required_context=entry.required_context,
        prior_steps=prior_steps(process, task_model),
        note=entry.note,
    )


def suggested_label(item: EpisodeItem) -> str:
    """A display label for a proposed step, derived from the source item.

    Link labels are reduced to their endpoints; the user supplies real
    names when accepting, so source names are placeholders only.
    """
    if item.object is ObjectKind.LINK:
        try:
            source_table, _, dimension = parse_link_label(item.label)
        except ActionError:
            return item.label
        return f"link {source_table}->{dimension}"
    return item.label


def _proposal_from(match: Match) -> Proposal:
    head = match.solution_items[0]
    return Proposal(
        process=head.process,
        object=head.object,
        suggested_label=suggested_label(head),
        source=match.episode_ref,
        score=match.score,
    )


def suggest_next(
    trace: GrossTrace,
    snapshot: CorpusSnapshot,
    task_model: TaskModel = DEFAULT_TASK_MODEL,
    thresholds: MatchThresholds = DEFAULT_THRESHOLDS,
) -> Suggestion:
    """Advise the next step for a running session.

    A single exact-prefix match yields an exact continuation; anything
    else that matches yields ranked candidates capped at
    ``max_candidates``; no match at any scope yields no advice.
    """
    if not trace.events:
        raise ValueError("cannot advise an empty session")
    first = trace.events[0]
    if first.object is not ObjectKind.DOMAIN:
        return NO_ADVICE
    domain = first.label
    for scope in FALLBACK_SCOPES:
        query = merged_episode(trace, scope)
        if query is None:
            continue
        matches = find_matches(query, snapshot, thresholds, domain=domain)
        if not matches:
            continue
        exact = [m for m in matches if m.score == 1.0]
        if len(exact) == 1:
            proposal = _proposal_from(exact[0])
            return Suggestion(
                kind=SuggestionKind.EXACT_CONTINUATION,
                proposals=(proposal,),
                guidance=guidance_for(proposal.object, task_model),
            )
        chosen = matches[: thresholds.max_candidates]
        proposals = tuple(_proposal_from(m) for m in chosen)
        return Suggestion(
            kind=SuggestionKind.CANDIDATES,
            proposals=proposals,
            guidance=guidance_for(proposals[0].object, task_model),
        )
    return NO_ADVICE
