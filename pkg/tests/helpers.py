"""Shared builders for the test suite.

Sessions are described as (process token, label, context) triples and
turned into actions, traces, scripts, or engine runs as needed.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from dwassist import AssistantEngine, GranularityLevel, GrossTrace, ProcessKind
from dwassist.corpus import CorpusSnapshot
from dwassist.episodes import LEVEL_OBJECTS, Episode, EpisodeItem
from dwassist.events import DesignAction, DesignEvent
from dwassist.kinds import OBJECT_TO_PROCESS
from dwassist.scripts import SessionScript
from dwassist.trace import new_trace, record_event

Step = tuple[str, str, str | None]

# The retail sales walkthrough used across the suite: a star schema with
# one fact table, two dimensions, and two links, built in 15 steps.
SALE_SESSION: tuple[Step, ...] = (
    ("select_domain", "Commerce", None),
    ("select_model", "Star", None),
    ("create_fact_table", "Sale", None),
    ("add_fact_key", "ID-Seller", "Sale"),
    ("add_fact_key", "ID-Product", "Sale"),
    ("add_fact_attribute", "Sale-Price", "Sale"),
    ("create_dimension_table", "Seller", None),
    ("add_dimension_key", "ID-Seller", "Seller"),
    ("add_dimension_attribute", "Name-Seller", "Seller"),
    ("create_dimension_table", "Product", None),
    ("add_dimension_key", "ID-Product", "Product"),
    ("add_dimension_attribute", "Name-Product", "Product"),
    ("add_dimension_attribute", "Unit-Price", "Product"),
    ("add_link", "Sale.ID-Seller->Seller", None),
    ("add_link", "Sale.ID-Product->Product", None),
)


def actions_from(steps: Iterable[Step]) -> list[DesignAction]:
    return [
        DesignAction.of(ProcessKind(process), label, context)
        for process, label, context in steps
    ]


def build_trace(
    user: str, session: str, steps: Sequence[Step] | Sequence[DesignAction]
) -> GrossTrace:
    """Fold steps into a trace through record_event."""
    trace = new_trace(user, session)
    for seq, step in enumerate(steps):
        action = step if isinstance(step, DesignAction) else actions_from([step])[0]
        event = DesignEvent.from_action(session, seq, action)
        trace = record_event(trace, event)
    return trace


def run_session(
    engine: AssistantEngine,
    user: str,
    steps: Sequence[Step] | Sequence[DesignAction],
    *,
    session_id: str | None = None,
):
    """Post every step; returns (session id, list of PostEventResult)."""
    sid = engine.create_session(user, session_id)
    results = []
    for step in steps:
        action = step if isinstance(step, DesignAction) else actions_from([step])[0]
        results.append(engine.post_event(sid, action))
    return sid, results


def make_script(
    user: str, steps: Sequence[Step], session: str | None = None
) -> SessionScript:
    return SessionScript(user=user, actions=tuple(actions_from(steps)), session=session)


def star_session(
    tag: str,
    *,
    domain: str = "Retail",
    key_count: int = 2,
    fact_attrs: int = 1,
    dim_attrs: Sequence[int] | None = None,
) -> list[Step]:
    """A complete star session; one dimension per fact key, link names
    matching so every link applies cleanly."""
    if dim_attrs is None:
        dim_attrs = [1] * key_count
    assert len(dim_attrs) == key_count
    fact = f"Fact-{tag}"
    steps: list[Step] = [
        ("select_domain", domain, None),
        ("select_model", "Star", None),
        ("create_fact_table", fact, None),
    ]
    keys = [f"K{i + 1}-{tag}" for i in range(key_count)]
    steps += [("add_fact_key", key, fact) for key in keys]
    steps += [("add_fact_attribute", f"M{i + 1}-{tag}", fact) for i in range(fact_attrs)]
    dims = [f"Dim{i + 1}-{tag}" for i in range(key_count)]
    for i, dim in enumerate(dims):
        steps.append(("create_dimension_table", dim, None))
        steps.append(("add_dimension_key", keys[i], dim))
        steps += [
            ("add_dimension_attribute", f"A{i + 1}{j + 1}-{tag}", dim)
            for j in range(dim_attrs[i])
        ]
    for i, dim in enumerate(dims):
        steps.append(("add_link", f"{fact}.{keys[i]}->{dim}", None))
    return steps


def constellation_session(tag: str, *, domain: str = "Retail") -> list[Step]:
    """Two fact tables sharing one dimension through a common key name."""
    f1, f2, dim = f"FactA-{tag}", f"FactB-{tag}", f"Shared-{tag}"
    key = f"KS-{tag}"
    return [
        ("select_domain", domain, None),
        ("select_model", "Constellation", None),
        ("create_fact_table", f1, None),
        ("add_fact_key", key, f1),
        ("add_fact_attribute", f"M1-{tag}", f1),
        ("create_fact_table", f2, None),
        ("add_fact_key", key, f2),
        ("add_fact_attribute", f"M2-{tag}", f2),
        ("create_dimension_table", dim, None),
        ("add_dimension_key", key, dim),
        ("add_link", f"{f1}.{key}->{dim}", None),
        ("add_link", f"{f2}.{key}->{dim}", None),
    ]


MATCH_SCOPE = (GranularityLevel.STRUCTURE, GranularityLevel.DETAIL)

# Legal (process, object) pairings at the matcher's starting scope.
MATCH_PAIRS = tuple(
    (OBJECT_TO_PROCESS[obj], obj)
    for level in MATCH_SCOPE
    for obj in sorted(LEVEL_OBJECTS[level], key=lambda o: o.value)
)


def fake_episode(
    ref: str,
    pairs: Sequence[tuple],
    *,
    scope: tuple[GranularityLevel, ...] = MATCH_SCOPE,
) -> Episode:
    """Episode with the given (process, object) pairs and synthetic labels."""
    items = tuple(
        EpisodeItem(process, obj, f"{obj.value}-{i}")
        for i, (process, obj) in enumerate(pairs)
    )
    return Episode(user="x", session=ref, levels=scope, items=items, seqs=tuple(range(len(items))))


def fake_snapshot(
    domain: str,
    cases: Sequence[tuple[str, Sequence[tuple]]],
    *,
    scope: tuple[GranularityLevel, ...] = MATCH_SCOPE,
) -> CorpusSnapshot:
    """Snapshot serving fabricated episodes for one domain at one scope."""
    entries = tuple((ref, fake_episode(ref, pairs, scope=scope)) for ref, pairs in cases)
    return CorpusSnapshot(records={}, index={(domain, scope): entries})


def random_star_session(rng: random.Random, tag: str, *, domain: str = "Retail") -> list[Step]:
    key_count = rng.randint(1, 3)
    return star_session(
        tag,
        domain=domain,
        key_count=key_count,
        fact_attrs=rng.randint(0, 2),
        dim_attrs=[rng.randint(0, 2) for _ in range(key_count)],
    )
