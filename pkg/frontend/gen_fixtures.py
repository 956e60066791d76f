"""Regenerate tests/fixtures.json from the real HTTP service.

Drives the FastAPI app in-process and captures every response verbatim,
so the UI tests replay genuine service payloads. Run from this
directory with the dwassist package installed:

    python3 gen_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from dwassist import AssistantEngine, CorpusStore
from dwassist.api import create_app
from dwassist.events import DesignAction
from dwassist.kinds import ProcessKind
from dwassist.trace import new_trace, record_event
from dwassist.events import DesignEvent

WALKTHROUGH = [
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
]


def archive_trace():
    trace = new_trace("ana", "s-archive")
    for seq, (process, label, context) in enumerate(WALKTHROUGH):
        action = DesignAction.of(ProcessKind(process), label, context)
        trace = record_event(trace, DesignEvent.from_action("s-archive", seq, action))
    return trace


def seeded_client() -> TestClient:
    store = CorpusStore()
    store.store_trace(archive_trace())
    return TestClient(create_app(AssistantEngine(store=store)))


def walkthrough_fixture() -> dict:
    client = seeded_client()
    create = client.post("/sessions", json={"user": "bea"}).json()
    session_id = create["session"]
    initial = client.get(f"/sessions/{session_id}").json()
    steps = []
    for process, label, context in WALKTHROUGH:
        request = {"process": process, "label": label, "context": context}
        event = client.post(f"/sessions/{session_id}/events", json=request).json()
        state = client.get(f"/sessions/{session_id}").json()
        steps.append({"request": request, "event": event, "state": state})
    complete = client.post(f"/sessions/{session_id}/complete").json()
    return {
        "user": "bea",
        "create": create,
        "initial": initial,
        "steps": steps,
        "complete": complete,
    }


def rejection_fixture() -> dict:
    client = seeded_client()
    create = client.post("/sessions", json={"user": "cam"}).json()
    session_id = create["session"]
    initial = client.get(f"/sessions/{session_id}").json()
    applied = []
    for process, label, context in WALKTHROUGH[:2]:
        request = {"process": process, "label": label, "context": context}
        event = client.post(f"/sessions/{session_id}/events", json=request).json()
        state = client.get(f"/sessions/{session_id}").json()
        applied.append({"request": request, "event": event, "state": state})
    before = client.get(f"/sessions/{session_id}").json()
    request = {"process": "select_domain", "label": "Again", "context": None}
    event = client.post(f"/sessions/{session_id}/events", json=request).json()
    after = client.get(f"/sessions/{session_id}").json()
    return {
        "user": "cam",
        "create": create,
        "initial": initial,
        "applied": applied,
        "before": before,
        "request": request,
        "event": event,
        "after": after,
    }


def main() -> None:
    fixtures = {
        "walkthrough": walkthrough_fixture(),
        "rejection": rejection_fixture(),
    }
    out = Path(__file__).parent / "tests" / "fixtures.json"
    out.write_text(json.dumps(fixtures, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
