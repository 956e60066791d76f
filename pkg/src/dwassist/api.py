"""HTTP face of the assistant.

Bodies follow the trace-document dialect: events post the same four
fields a trace document stores (process, object, label, context).
Schema rejections are not HTTP errors; they come back in-band with
``applied: false`` so clients can show the violation next to the
action that caused it.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .config import ServiceConfig
from .corpus import CorpusStore, load_corpus
from .errors import DesignAssistError
from .events import DesignAction
from .kinds import ObjectKind, ProcessKind
from .service import AssistantEngine

_STATUS_BY_CODE = {
    "UnknownSession": 404,
    "SessionNotActive": 409,
    "InvalidDraft": 409,
    "DuplicateTrace": 409,
}


class CreateSessionBody(BaseModel):
    user: str
    session: str | None = None


class EventBody(BaseModel):
    process: str
    object: str | None = None
    label: str
    context: str | None = None


def create_app(engine: AssistantEngine) -> FastAPI:
    app = FastAPI(title="dwassist", version="0.1.0")
    app.state.engine = engine

    @app.exception_handler(DesignAssistError)
    async def _error_handler(request: Request, exc: DesignAssistError) -> JSONResponse:
        status = _STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse(
            status_code=status,
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/sessions")
    def create_session(body: CreateSessionBody) -> dict:
        session_id = engine.create_session(body.user, body.session)
        return {"session": session_id}

    @app.post("/sessions/{session_id}/events")
    def post_event(session_id: str, body: EventBody) -> dict:
        action = _parse_action(body)
        return engine.post_event(session_id, action).to_dict()

    @app.get("/sessions/{session_id}")
    def get_state(session_id: str) -> dict:
        return engine.get_state(session_id).to_dict()

    @app.post("/sessions/{session_id}/complete")
    def complete(session_id: str) -> dict:
        corpus_id = engine.complete_session(session_id)
        return {"corpus_id": corpus_id}

    @app.get("/corpus/stats")
    def corpus_stats() -> dict:
        return engine.corpus_stats()

    return app


def _parse_action(body: EventBody) -> DesignAction:
    try:
        process = ProcessKind(body.process)
    except ValueError:
        raise DesignAssistError(
            "ParseError", f"unknown process token {body.process!r}"
        ) from None
    if body.object is None:
        return DesignAction.of(process, body.label, body.context)
    try:
        object_kind = ObjectKind(body.object)
    except ValueError:
        raise DesignAssistError(
            "ParseError", f"unknown object token {body.object!r}"
        ) from None
    return DesignAction(process, object_kind, body.label, body.context)


def app_from_config(config: ServiceConfig) -> FastAPI:
    """Build the app with its corpus loaded per configuration."""
    if config.corpus_dir is not None:
        store = load_corpus(config.corpus_dir, min_nodes=config.thresholds.min_nodes)
    else:
        store = CorpusStore(min_nodes=config.thresholds.min_nodes)
    engine = AssistantEngine(store=store, thresholds=config.thresholds)
    return create_app(engine)
