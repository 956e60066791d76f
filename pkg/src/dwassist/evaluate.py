"""Leave-one-out evaluation of the matcher over a corpus.

Each stored session is held out in turn and replayed one event at a
time against a snapshot of the remaining records. After k events the
matcher predicts the next step; the prediction is a top-1 hit when the
first proposal names the actual next event's process and object kinds.

Positions are counted by events already applied, so position 1 asks
for the second event. hits + misses + no_advice always equals the
number of prediction points.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import CorpusStore
from .errors import CorpusError
from .matching import (
    DEFAULT_THRESHOLDS,
    MatchThresholds,
    SuggestionKind,
    suggest_next,
)
from .trace import GrossTrace


@dataclass(frozen=True)
class PositionStat:
    position: int
    predictions: int
    hits: int
    misses: int
    no_advice: int

    @property
    def accuracy(self) -> float:
        return self.hits / self.predictions if self.predictions else 0.0

    def to_dict(self) -> dict:
        return {
            "position": self.position,
            "predictions": self.predictions,
            "hits": self.hits,
            "misses": self.misses,
            "no_advice": self.no_advice,
            "accuracy": self.accuracy,
        }


@dataclass(frozen=True)
class EvalReport:
    sessions: int
    prediction_points: int
    hits: int
    misses: int
    no_advice: int
    per_position: tuple[PositionStat, ...]

    @property
    def accuracy(self) -> float:
        return self.hits / self.prediction_points if self.prediction_points else 0.0

    def to_dict(self) -> dict:
        return {
            "sessions": self.sessions,
            "prediction_points": self.prediction_points,
            "hits": self.hits,
            "misses": self.misses,
            "no_advice": self.no_advice,
            "accuracy": self.accuracy,
            "per_position": [p.to_dict() for p in self.per_position],
        }


def eval_leave_one_out(
    store: CorpusStore, thresholds: MatchThresholds = DEFAULT_THRESHOLDS
) -> EvalReport:
    """Score the matcher by holding out each stored session in turn."""
    if len(store) < 2:
        raise CorpusError(
            "CorpusTooSmall",
            f"leave-one-out needs at least 2 records, corpus has {len(store)}",
        )
    full = store.snapshot()
    hits = misses = no_advice = 0
    position_rows: dict[int, list[int]] = {}
    for corpus_id in store.record_ids():
        record = store.record(corpus_id)
        remainder = full.without(corpus_id)
        events = record.trace.events
        prefix = GrossTrace(user=record.trace.user, session=record.trace.session)
        for applied in range(1, len(events)):
            prefix = GrossTrace(
                user=prefix.user, session=prefix.session, events=events[:applied]
            )
            actual = events[applied]
            suggestion = suggest_next(prefix, remainder, thresholds=thresholds)
            row = position_rows.setdefault(applied, [0, 0, 0])
            if suggestion.kind is SuggestionKind.NO_ADVICE:
                no_advice += 1
                row[2] += 1
            else:
                top = suggestion.proposals[0]
                if top.process is actual.process and top.object is actual.object:
                    hits += 1
                    row[0] += 1
                else:
                    misses += 1
                    row[1] += 1
    per_position = tuple(
        PositionStat(
            position=position,
            predictions=sum(counts),
            hits=counts[0],
            misses=counts[1],
            no_advice=counts[2],
        )
        for position, counts in sorted(position_rows.items())
    )
    return EvalReport(
        sessions=len(store),
        prediction_points=hits + misses + no_advice,
        hits=hits,
        misses=misses,
        no_advice=no_advice,
        per_position=per_position,
    )
