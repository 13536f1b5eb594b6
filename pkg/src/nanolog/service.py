"""JSON-over-HTTP API: workspace rule storage, interpreter queries, and
prover sessions.

All durable state lives in the workspace store; proof sessions are
in-memory with an idle TTL and documented as ephemeral.  Query evaluation
runs under a wall-clock deadline (reported as budget_hit "time"), so no
request can hang the server regardless of workspace contents.
"""

from __future__ import annotations

import json
import logging
import os
import secrets
import threading
import time
from dataclasses import dataclass, field

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import proof as proof_engine
from .parser import ParseError, BareVariableHead, parse_query, parse_term
from .proof import (
    BadPath,
    EmptyHistory,
    NodeNotOpen,
    ProofState,
    ReplayMismatch,
    UnificationFailed,
)
from .solver import CyclicEnvironment, SolveOptions, Strategy, solve
from .store import AlreadyExists, BadIndex, InvalidId, NotFound, WorkspaceStore
from .terms import BudgetExhausted, NanologError
from .wire import dump_json, outcome_json, proof_tree_payload

log = logging.getLogger("nanolog.service")

JSON_MEDIA = "application/json; charset=utf-8"

#: HTTP status and machine-readable code for every engine error type.
#: Exhaustive over the modules' error types; codes are distinct.
ERROR_CODES: dict[type[Exception], tuple[int, str]] = {
    BareVariableHead: (422, "bare_variable_head"),
    ParseError: (422, "parse_error"),
    InvalidId: (422, "invalid_id"),
    AlreadyExists: (409, "already_exists"),
    NotFound: (404, "not_found"),
    BadIndex: (404, "bad_index"),
    UnificationFailed: (409, "unification_failed"),
    NodeNotOpen: (409, "node_not_open"),
    BadPath: (422, "bad_path"),
    EmptyHistory: (409, "empty_history"),
    BudgetExhausted: (409, "budget_exhausted"),
    CyclicEnvironment: (409, "cyclic_environment"),
    ReplayMismatch: (500, "replay_mismatch"),
}


def error_status_code(exc: Exception) -> tuple[int, str]:
    for cls in type(exc).__mro__:
        if cls in ERROR_CODES:
            return ERROR_CODES[cls]
    return 500, "internal_error"


def error_payload(exc: Exception) -> dict:
    _, code = error_status_code(exc)
    payload: dict = {"code": code, "message": str(exc)}
    if isinstance(exc, ParseError):
        payload["position"] = {
            "line": exc.position.line,
            "column": exc.position.column,
        }
    return payload


@dataclass
class ServiceConfig:
    data_dir: str = "data"
    seed_file: str | None = None
    cors_origins: tuple[str, ...] = ()
    #: Wall-clock limit for query evaluation, seconds.
    query_timeout: float = 2.0
    #: Idle TTL for in-memory proof sessions, seconds (default 24 h).
    proof_ttl: float = 24 * 3600.0
    max_body_bytes: int = 64 * 1024
    #: Server-side caps; client options are clamped to these.
    max_depth_cap: int = 512
    max_solutions_cap: int = 50
    #: Concurrent solver runs (defaults to processor count).
    solver_workers: int | None = None
    #: Serve the web UI's static assets from this directory, if set.
    ui_dir: str | None = None
    log_requests: bool = True


class QueryOptionsBody(BaseModel):
    strategy: str = "dfs"
    max_depth: int | None = None
    max_solutions: int | None = None


class CreateWorkspaceBody(BaseModel):
    id: str


class AddRuleBody(BaseModel):
    text: str


class QueryBody(BaseModel):
    goals: str
    options: QueryOptionsBody | None = None


class CreateProofBody(BaseModel):
    workspace: str
    goal: str


class ApplyBody(BaseModel):
    path: list[int]
    rule_index: int


class SubstituteBody(BaseModel):
    var: str
    term: str


@dataclass
class _ProofSession:
    state: ProofState
    workspace_id: str
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_used: float = field(default_factory=time.monotonic)


class _ProofSessions:
    """In-memory proof sessions keyed by random 128-bit URL-safe ids."""

    def __init__(self, ttl: float) -> None:
        self._ttl = ttl
        self._sessions: dict[str, _ProofSession] = {}
        self._lock = threading.Lock()

    def create(self, state: ProofState, workspace_id: str) -> str:
        pid = secrets.token_urlsafe(16)
        with self._lock:
            self._purge()
            self._sessions[pid] = _ProofSession(state=state, workspace_id=workspace_id)
        return pid

    def get(self, pid: str) -> _ProofSession:
        with self._lock:
            self._purge()
            session = self._sessions.get(pid)
            if session is None:
                raise NotFound(f"no proof session {pid!r}")
            session.last_used = time.monotonic()
            return session

    def _purge(self) -> None:
        cutoff = time.monotonic() - self._ttl
        stale = [pid for pid, s in self._sessions.items() if s.last_used < cutoff]
        for pid in stale:
            del self._sessions[pid]


def _json_response(payload: object, status_code: int = 200) -> Response:
    return Response(content=dump_json(payload), status_code=status_code, media_type=JSON_MEDIA)


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    store = WorkspaceStore(config.data_dir, seed_file=config.seed_file)
    sessions = _ProofSessions(config.proof_ttl)
    workers = config.solver_workers or os.cpu_count() or 4
    solver_slots = threading.BoundedSemaphore(workers)

    app = FastAPI(title="nanolog", version="0.1.0", docs_url=None, redoc_url=None)

    if config.cors_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(config.cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(NanologError)
    async def _engine_error(request: Request, exc: NanologError):
        status_code, _ = error_status_code(exc)
        return _json_response({"error": error_payload(exc)}, status_code)

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        message = "; ".join(
            f"{'.'.join(str(p) for p in e['loc'])}: {e['msg']}" for e in exc.errors()
        )
        return _json_response(
            {"error": {"code": "invalid_request", "message": message}}, 422
        )

    @app.middleware("http")
    async def _guard_and_log(request: Request, call_next):
        length = request.headers.get("content-length")
        if length is not None and int(length) > config.max_body_bytes:
            return _json_response(
                {"error": {"code": "body_too_large", "message": "request body too large"}},
                413,
            )
        started = time.monotonic()
        response = await call_next(request)
        if config.log_requests:
            log.info(
                json.dumps(
                    {
                        "method": request.method,
                        "path": request.url.path,
                        "status": response.status_code,
                        "duration_ms": round((time.monotonic() - started) * 1000, 2),
                    }
                )
            )
        return response

    # -- workspaces ------------------------------------------------------

    @app.post("/api/workspaces")
    def create_workspace(body: CreateWorkspaceBody):
        rules = store.create_workspace(body.id)
        return _json_response(
            {"id": body.id, "rules": [{"index": i, "text": str(r)} for i, r in enumerate(rules)]},
            201,
        )

    @app.get("/api/workspaces/{workspace_id}/rules")
    def list_rules(workspace_id: str):
        rules = store.list_rules(workspace_id)
        return _json_response([{"index": i, "text": text} for i, text in rules])

    @app.post("/api/workspaces/{workspace_id}/rules")
    def add_rule(workspace_id: str, body: AddRuleBody):
        index, rule = store.add_rule(workspace_id, body.text)
        return _json_response({"index": index, "text": str(rule)}, 201)

    @app.delete("/api/workspaces/{workspace_id}/rules/{index}")
    def delete_rule(workspace_id: str, index: int):
        store.delete_rule(workspace_id, index)
        return Response(status_code=204)

    # -- interpreter mode --------------------------------------------------

    @app.post("/api/workspaces/{workspace_id}/query")
    def query(workspace_id: str, body: QueryBody):
        program = store.load_program(workspace_id)
        goals = parse_query(body.goals)
        requested = body.options or QueryOptionsBody()
        try:
            strategy = Strategy(requested.strategy)
        except ValueError:
            return _json_response(
                {
                    "error": {
                        "code": "invalid_request",
                        "message": f"unknown strategy {requested.strategy!r}",
                    }
                },
                422,
            )
        opts = SolveOptions(
            strategy=strategy,
            max_depth=_clamp(requested.max_depth, 256, config.max_depth_cap),
            max_solutions=_clamp(requested.max_solutions, 10, config.max_solutions_cap),
            time_limit=config.query_timeout,
        )
        with solver_slots:
            outcome = solve(program, goals, opts)
        return Response(content=outcome_json(outcome), media_type=JSON_MEDIA)

    # -- prover mode -------------------------------------------------------

    @app.post("/api/proofs")
    def create_proof(body: CreateProofBody):
        store.load_program(body.workspace)  # 404 on unknown workspace
        goals = parse_query(body.goal)
        if len(goals) != 1:
            return _json_response(
                {
                    "error": {
                        "code": "invalid_request",
                        "message": "a proof starts from a single goal",
                    }
                },
                422,
            )
        state = proof_engine.new_proof(goals[0])
        pid = sessions.create(state, body.workspace)
        return _json_response({"proof_id": pid, "tree": proof_tree_payload(state)}, 201)

    @app.get("/api/proofs/{pid}")
    def get_proof(pid: str):
        session = sessions.get(pid)
        with session.lock:
            return _json_response({"tree": proof_tree_payload(session.state)})

    @app.post("/api/proofs/{pid}/apply")
    def apply_rule(pid: str, body: ApplyBody):
        session = sessions.get(pid)
        with session.lock:
            rules = store.load_program(session.workspace_id).rules
            if not 0 <= body.rule_index < len(rules):
                raise BadIndex(f"no rule at index {body.rule_index}")
            try:
                session.state = proof_engine.apply_rule(
                    session.state, body.path, rules[body.rule_index]
                )
            except (UnificationFailed, NodeNotOpen) as exc:
                status_code, _ = error_status_code(exc)
                return _json_response(
                    {
                        "error": error_payload(exc),
                        "tree": proof_tree_payload(session.state),
                    },
                    status_code,
                )
            return _json_response({"tree": proof_tree_payload(session.state)})

    @app.post("/api/proofs/{pid}/substitute")
    def substitute(pid: str, body: SubstituteBody):
        session = sessions.get(pid)
        with session.lock:
            replacement = parse_term(body.term)
            try:
                session.state = proof_engine.apply_manual_subst(
                    session.state, body.var, replacement
                )
            except ValueError as exc:
                return _json_response(
                    {"error": {"code": "invalid_request", "message": str(exc)}}, 422
                )
            except UnificationFailed as exc:
                return _json_response(
                    {
                        "error": error_payload(exc),
                        "tree": proof_tree_payload(session.state),
                    },
                    409,
                )
            return _json_response({"tree": proof_tree_payload(session.state)})

    @app.post("/api/proofs/{pid}/undo")
    def undo(pid: str):
        session = sessions.get(pid)
        with session.lock:
            session.state = proof_engine.undo(session.state)
            return _json_response({"tree": proof_tree_payload(session.state)})

    if config.ui_dir:
        app.mount("/", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app


def _clamp(requested: int | None, default: int, cap: int) -> int:
    value = default if requested is None else requested
    return max(1, min(value, cap))
