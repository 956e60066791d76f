"""Append-only corpus of completed session traces.

Records are addressed by the sha256 of their canonical document, so
storing the same trace twice is a no-op that returns the existing id.
When a directory is attached, every record lives in its own
``<id>.trace`` file; an ``index`` file is written as a convenience but
is never trusted — loading always rebuilds state from the trace files.

Matching works against immutable snapshots: a snapshot taken before a
store keeps serving the old record set.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple

from .canonical import canonical_json
from .episodes import LEVEL_ORDER, Episode, GranularityLevel, extract_all, merged_episode
from .errors import CorpusError, DesignAssistError
from .kinds import ModelKind, ProcessKind
from .trace import GrossTrace, deserialize, serialize

TRACE_SUFFIX = ".trace"
INDEX_FILENAME = "index"

# Scopes precomputed in every snapshot: the four levels plus the merged
# structure+detail view the matcher starts from.
INDEXED_SCOPES: tuple[tuple[GranularityLevel, ...], ...] = (
    (GranularityLevel.DOMAIN,),
    (GranularityLevel.MODEL,),
    (GranularityLevel.STRUCTURE,),
    (GranularityLevel.DETAIL,),
    (GranularityLevel.STRUCTURE, GranularityLevel.DETAIL),
)


def corpus_id_for(document: str) -> str:
    """Content hash of a canonical trace document."""
    return hashlib.sha256(document.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class CorpusRecord:
    corpus_id: str
    trace: GrossTrace
    document: str
    domain: str
    model: ModelKind
    episodes: Mapping[GranularityLevel, Episode]
    stored_at: str


class LoadFailure(NamedTuple):
    filename: str
    message: str


def _scope_key(levels: Iterable[GranularityLevel]) -> tuple[GranularityLevel, ...]:
    return tuple(sorted(set(levels), key=LEVEL_ORDER.__getitem__))


@dataclass(frozen=True)
class CorpusSnapshot:
    """Immutable view of the corpus at one point in time."""

    records: Mapping[str, CorpusRecord]
    index: Mapping[tuple[str, tuple[GranularityLevel, ...]], tuple[tuple[str, Episode], ...]]

    def __len__(self) -> int:
        return len(self.records)

    def record_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.records))

    def episodes_for(
        self, domain: str, levels: Iterable[GranularityLevel]
    ) -> tuple[tuple[str, Episode], ...]:
        """(corpus id, episode) pairs for one domain at one scope,
        ordered by corpus id."""
        scope = _scope_key(levels)
        cached = self.index.get((domain, scope))
        if cached is not None:
            return cached
        collected: list[tuple[str, Episode]] = []
        for corpus_id in self.record_ids():
            record = self.records[corpus_id]
            if record.domain != domain:
                continue
            episode = merged_episode(record.trace, scope)
            if episode is not None:
                collected.append((corpus_id, episode))
        return tuple(collected)

    def without(self, corpus_id: str) -> "CorpusSnapshot":
        """A snapshot with one record removed (for leave-one-out runs)."""
        remaining = {i: r for i, r in self.records.items() if i != corpus_id}
        return _build_snapshot(remaining)

    def stats(self) -> dict:
        domains: dict[str, int] = {}
        models: dict[str, int] = {}
        levels: dict[str, int] = {}
        for corpus_id in self.record_ids():
            record = self.records[corpus_id]
            domains[record.domain] = domains.get(record.domain, 0) + 1
            models[record.model.value] = models.get(record.model.value, 0) + 1
            for level in record.episodes:
                levels[level.value] = levels.get(level.value, 0) + 1
        return {
            "records": len(self.records),
            "domains": dict(sorted(domains.items())),
            "models": dict(sorted(models.items())),
            "levels": dict(sorted(levels.items())),
        }


def _build_snapshot(records: Mapping[str, CorpusRecord]) -> CorpusSnapshot:
    index: dict[tuple[str, tuple[GranularityLevel, ...]], list[tuple[str, Episode]]] = {}
    for corpus_id in sorted(records):
        record = records[corpus_id]
        for scope in INDEXED_SCOPES:
            if len(scope) == 1:
                episode = record.episodes.get(scope[0])
            else:
                episode = merged_episode(record.trace, scope)
            if episode is not None:
                index.setdefault((record.domain, scope), []).append((corpus_id, episode))
    frozen = {key: tuple(entries) for key, entries in index.items()}
    return CorpusSnapshot(records=dict(records), index=frozen)


def _check_storable(trace: GrossTrace, min_nodes: int) -> None:
    if len(trace.events) < min_nodes:
        raise CorpusError(
            "TooShort",
            f"trace has {len(trace.events)} events, corpus requires at least {min_nodes}",
            subject=trace.session,
        )
    first, second = trace.events[0], trace.events[1]
    if first.process is not ProcessKind.SELECT_DOMAIN or second.process is not ProcessKind.SELECT_MODEL:
        raise CorpusError(
            "MalformedTrace",
            "a stored trace must begin by selecting a domain and then a model",
            subject=trace.session,
        )
    try:
        ModelKind(second.label.lower())
    except ValueError:
        raise CorpusError(
            "MalformedTrace",
            f"unknown model label {second.label!r}",
            subject=trace.session,
        ) from None


class CorpusStore:
    """Append-only store; optionally persisted to a directory."""

    def __init__(self, directory: Path | str | None = None, *, min_nodes: int = 3):
        self.directory = Path(directory) if directory is not None else None
        self.min_nodes = min_nodes
        self.load_errors: tuple[LoadFailure, ...] = ()
        self._records: dict[str, CorpusRecord] = {}
        self._snapshot: CorpusSnapshot | None = None
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._records)

    def store_trace(self, trace: GrossTrace) -> str:
        """Persist a completed trace; returns its content-hash id.

        Storing a byte-identical trace again returns the existing id
        without touching the record.
        """
        _check_storable(trace, self.min_nodes)
        document = serialize(trace)
        corpus_id = corpus_id_for(document)
        with self._lock:
            if corpus_id in self._records:
                return corpus_id
            record = CorpusRecord(
                corpus_id=corpus_id,
                trace=trace,
                document=document,
                domain=trace.events[0].label,
                model=ModelKind(trace.events[1].label.lower()),
                episodes=extract_all(trace),
                stored_at=datetime.now(timezone.utc).isoformat(),
            )
            if self.directory is not None:
                self._write_record(record)
            self._records[corpus_id] = record
            self._snapshot = None
        return corpus_id

    def snapshot(self) -> CorpusSnapshot:
        with self._lock:
            if self._snapshot is None:
                self._snapshot = _build_snapshot(self._records)
            return self._snapshot

    def stats(self) -> dict:
        return self.snapshot().stats()

    def record(self, corpus_id: str) -> CorpusRecord:
        return self._records[corpus_id]

    def record_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self._records))

    def _write_record(self, record: CorpusRecord) -> None:
        assert self.directory is not None
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.directory / f"{record.corpus_id}{TRACE_SUFFIX}"
        if not path.exists():
            path.write_text(record.document, encoding="utf-8")
        self._write_index(record)

    def _write_index(self, new_record: CorpusRecord) -> None:
        # Regenerable cache only; loading never reads it.
        assert self.directory is not None
        entries = {
            r.corpus_id: {"domain": r.domain, "model": r.model.value, "stored_at": r.stored_at}
            for r in (*self._records.values(), new_record)
        }
        payload = canonical_json({"records": dict(sorted(entries.items()))})
        (self.directory / INDEX_FILENAME).write_text(payload + "\n", encoding="utf-8")

    def export(self, directory: Path | str) -> int:
        """Write every record to another directory; returns the count."""
        target = Path(directory)
        target.mkdir(parents=True, exist_ok=True)
        for corpus_id in self.record_ids():
            record = self._records[corpus_id]
            path = target / f"{corpus_id}{TRACE_SUFFIX}"
            if not path.exists():
                path.write_text(record.document, encoding="utf-8")
        return len(self._records)


def load_corpus(directory: Path | str, *, min_nodes: int = 3) -> CorpusStore:
    """Rebuild a store from a directory of trace documents.

    Bad files are skipped and reported through ``store.load_errors``;
    everything readable is loaded.
    """
    store = CorpusStore(directory, min_nodes=min_nodes)
    failures: list[LoadFailure] = []
    root = Path(directory)
    if root.exists():
        for path in sorted(root.glob(f"*{TRACE_SUFFIX}")):
            try:
                text = path.read_text(encoding="utf-8")
                trace = deserialize(text)
                _check_storable(trace, min_nodes)
            except (DesignAssistError, OSError, UnicodeDecodeError) as exc:
                failures.append(LoadFailure(path.name, str(exc)))
                continue
            document = serialize(trace)
            corpus_id = corpus_id_for(document)
            stored_at = datetime.fromtimestamp(
                path.stat().st_mtime, tz=timezone.utc
            ).isoformat()
            store._records[corpus_id] = CorpusRecord(
                corpus_id=corpus_id,
                trace=trace,
                document=document,
                domain=trace.events[0].label,
                model=ModelKind(trace.events[1].label.lower()),
                episodes=extract_all(trace),
                stored_at=stored_at,
            )
    store.load_errors = tuple(failures)
    return store
