"""HTTP/JSON API over the task store.

Errors surface as {"code", "message", "detail"} bodies; precondition
failures are 4xx, stale-session conflicts 409. Bodies are validated by the
engine modules, not pydantic, so error codes stay machine-readable and
identical to the in-process API.
"""

from __future__ import annotations

import json
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..errors import AnnoforgeError, SchemaViolation
from .store import TaskStore


async def _body(request: Request) -> dict:
    raw = await request.body()
    if not raw:
        return {}
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"request body is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise SchemaViolation("request body must be a JSON object")
    return data


def create_app(store: TaskStore) -> FastAPI:
    app = FastAPI(title="annoforge", docs_url=None, redoc_url=None)
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    app.state.store = store

    @app.exception_handler(AnnoforgeError)
    async def annoforge_error(request: Request, exc: AnnoforgeError):
        return JSONResponse(status_code=exc.http_status,
                            content={"code": exc.code,
                                     "message": exc.message,
                                     "detail": exc.detail})

    @app.post("/tasks", status_code=201)
    async def create_task(request: Request):
        task_id = store.create_task(await _body(request))
        return {"task_id": task_id}

    @app.get("/tasks")
    async def list_tasks():
        return {"tasks": [t.to_json() for t in store.list_tasks()]}

    @app.get("/tasks/{task_id}")
    async def get_task(task_id: str):
        return store.get_task(task_id).to_json()

    @app.post("/tasks/{task_id}/sessions", status_code=201)
    async def open_session(task_id: str, request: Request):
        body = await _body(request)
        sentence_index = body.get("sentence_index", 0)
        if not isinstance(sentence_index, int):
            raise SchemaViolation("sentence_index must be an integer")
        seed = body.get("seed")
        if seed is not None and not isinstance(seed, int):
            raise SchemaViolation("seed must be an integer")
        session = store.open_session(task_id, sentence_index, seed)
        return {"session_id": session.session_id,
                "snapshot": session.snapshot()}

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str):
        return store.get_session(session_id).snapshot()

    @app.post("/sessions/{session_id}/ops")
    async def apply_op(session_id: str, request: Request):
        body = await _body(request)
        expected: Optional[int] = body.pop("expected_version", None)
        if expected is not None and not isinstance(expected, int):
            raise SchemaViolation("expected_version must be an integer")
        delta, snapshot = store.apply_op(session_id, body, expected)
        return {"delta": delta, "snapshot": snapshot}

    @app.post("/sessions/{session_id}/undo")
    async def undo(session_id: str):
        return {"snapshot": store.undo(session_id)}

    @app.post("/sessions/{session_id}/redo")
    async def redo(session_id: str):
        return {"snapshot": store.redo(session_id)}

    @app.get("/sessions/{session_id}/result")
    async def result(session_id: str):
        content, mime = store.result_document(session_id)
        return Response(content=content, media_type=mime)

    @app.get("/sessions/{session_id}/layout")
    async def layout(session_id: str):
        return store.layout_positions(session_id)

    @app.get("/sessions/{session_id}/tree_layout")
    async def tree_geometry(session_id: str):
        return store.tree_geometry(session_id)

    @app.post("/sessions/{session_id}/stroke")
    async def stroke(session_id: str, request: Request):
        body = await _body(request)
        points = body.get("points")
        if not isinstance(points, list):
            raise SchemaViolation("stroke body needs a 'points' list")
        timestamp = body.get("timestamp", 0.0)
        if not isinstance(timestamp, (int, float)) \
                or isinstance(timestamp, bool):
            raise SchemaViolation("timestamp must be a number")
        return store.apply_stroke(session_id, points, float(timestamp))

    return app
