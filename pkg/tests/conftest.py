from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

import helpers
from dwassist import AssistantEngine, CorpusStore, GrossTrace
from dwassist.events import DesignAction

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, passed: bool, detail: str) -> None:
    """Collect one acceptance verdict for the end-of-run summary."""
    verdict = "PASS" if passed else "FAIL"
    ACCEPTANCE_LINES.append(f"criterion {number}: {verdict} - {detail}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def sale_actions() -> list[DesignAction]:
    return helpers.actions_from(helpers.SALE_SESSION)


@pytest.fixture
def sale_trace(sale_actions) -> GrossTrace:
    return helpers.build_trace("ana", "s-000001", sale_actions)


@pytest.fixture
def engine() -> AssistantEngine:
    return AssistantEngine()


@pytest.fixture
def seeded_engine(sale_actions) -> AssistantEngine:
    """Engine whose corpus already holds the completed sale session."""
    store = CorpusStore()
    store.store_trace(helpers.build_trace("ana", "s-archive", sale_actions))
    return AssistantEngine(store=store)
