"""HTTP session service for the attack catalog and token game.

Read-only catalog/analysis endpoints plus in-memory stepping sessions: a
client seeds an attack net under a capability profile, fires enabled
transitions one at a time, and reads back marking, enabled transitions,
satisfied postconditions and history after each step.

Errors use a uniform envelope ``{"code": UPPER_SNAKE, "message": text,
"details": object}``; sessions are in-memory only and expire after a
configurable idle TTL.

Configuration (environment variables, all optional):

* ``ATTACKNETS_BIND`` - bind address for ``serve`` (default 127.0.0.1)
* ``ATTACKNETS_PORT`` - port for ``serve`` (default 8741)
* ``ATTACKNETS_SESSION_TTL`` - idle session lifetime in seconds (default 3600)
* ``ATTACKNETS_STATE_CAP`` - hard cap on explored markings (default 1000000)
"""

from __future__ import annotations

import os
import secrets
import threading
import time
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

from fastapi import FastAPI
from fastapi.encoders import jsonable_encoder
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from attacknets import wire
from attacknets.analysis import (
    feasibility,
    influence_closure,
    minimal_precondition_sets,
)
from attacknets.catalog import (
    AttackModel,
    CapabilityError,
    CapabilityProfile,
    builtin_models,
    get_model,
    seed_marking,
)
from attacknets.petri import (
    DEFAULT_STATE_CAP,
    Marking,
    NotEnabledError,
    StateCapError,
    fire,
    to_dot,
)

__all__ = ["ApiError", "SessionStore", "SessionView", "app", "create_app",
           "serve"]

DEFAULT_BIND = "127.0.0.1"
DEFAULT_PORT = 8741
DEFAULT_SESSION_TTL = 3600.0


def _env_float(name: str, fallback: float) -> float:
    raw = os.environ.get(name)
    return float(raw) if raw else fallback


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else fallback


class ApiError(Exception):
    """An error response: HTTP status plus the machine-readable envelope."""

    def __init__(self, status: int, code: str, message: str,
                 details: Optional[dict] = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.details = details or {}


@dataclass(frozen=True)
class SessionView:
    """Immutable snapshot of one session, safe to read outside the lock."""

    id: str
    model: AttackModel
    profile: CapabilityProfile
    chosen: FrozenSet[str]
    marking: Marking
    history: Tuple[str, ...]


@dataclass
class _Session:
    id: str
    model: AttackModel
    profile: CapabilityProfile
    chosen: FrozenSet[str]
    seeded: Marking
    current: Marking
    history: List[str]
    created_at: float
    last_access: float

    def view(self) -> SessionView:
        return SessionView(self.id, self.model, self.profile, self.chosen,
                           self.current, tuple(self.history))


class SessionStore:
    """Thread-safe in-memory session store with lazy idle-TTL eviction.

    All mutation happens under one lock, so operations on a session are
    serialized; methods return immutable snapshots, never live sessions.
    """

    def __init__(self, ttl_seconds: float = DEFAULT_SESSION_TTL,
                 clock: Callable[[], float] = time.monotonic):
        self._ttl = ttl_seconds
        self._clock = clock
        self._lock = threading.Lock()
        self._sessions: Dict[str, _Session] = {}

    def __len__(self) -> int:
        with self._lock:
            self._evict(self._clock())
            return len(self._sessions)

    def _evict(self, now: float) -> None:
        expired = [sid for sid, session in self._sessions.items()
                   if now - session.last_access > self._ttl]
        for sid in expired:
            del self._sessions[sid]

    def _live(self, session_id: str, now: float) -> _Session:
        self._evict(now)
        session = self._sessions.get(session_id)
        if session is None:
            raise KeyError(session_id)
        session.last_access = now
        return session

    def create(self, model: AttackModel, profile: CapabilityProfile,
               chosen: FrozenSet[str]) -> SessionView:
        seeded = seed_marking(model, profile, chosen)
        with self._lock:
            now = self._clock()
            self._evict(now)
            session_id = secrets.token_urlsafe(16)
            while session_id in self._sessions:
                session_id = secrets.token_urlsafe(16)
            session = _Session(session_id, model, profile, frozenset(chosen),
                               seeded, seeded, [], now, now)
            self._sessions[session_id] = session
            return session.view()

    def get(self, session_id: str) -> SessionView:
        with self._lock:
            return self._live(session_id, self._clock()).view()

    def fire(self, session_id: str, transition: str) -> SessionView:
        with self._lock:
            session = self._live(session_id, self._clock())
            advanced = fire(session.model.net, session.current, transition)
            session.current = advanced
            session.history.append(transition)
            return session.view()

    def reset(self, session_id: str) -> SessionView:
        with self._lock:
            session = self._live(session_id, self._clock())
            session.current = session.seeded
            session.history = []
            return session.view()

    def delete(self, session_id: str) -> None:
        with self._lock:
            self._live(session_id, self._clock())
            del self._sessions[session_id]


class _CreateSessionBody(BaseModel):
    attack: int
    profile: List[str]
    chosen: List[str] = []


class _FireBody(BaseModel):
    transition: str


class _FeasibilityBody(BaseModel):
    profile: Optional[List[str]] = None


class _CutsBody(BaseModel):
    goal: str


def _resolve_model(attack: int) -> AttackModel:
    try:
        return get_model(attack)
    except KeyError:
        raise ApiError(404, "UNKNOWN_ATTACK",
                       f"unknown attack id {attack}",
                       {"attack": attack}) from None


def _resolve_profile(names: Optional[List[str]]) -> CapabilityProfile:
    if names is None:
        return CapabilityProfile.from_names(
            ["classical", "quantum", "physical"])
    try:
        return CapabilityProfile.from_names(names)
    except ValueError as exc:
        raise ApiError(422, "INVALID_INPUT", str(exc),
                       {"profile": names}) from None


def create_app(*, ttl_seconds: Optional[float] = None,
               state_cap: Optional[int] = None,
               clock: Callable[[], float] = time.monotonic) -> FastAPI:
    """Build the service; arguments override the environment defaults."""
    if ttl_seconds is None:
        ttl_seconds = _env_float("ATTACKNETS_SESSION_TTL", DEFAULT_SESSION_TTL)
    if state_cap is None:
        state_cap = _env_int("ATTACKNETS_STATE_CAP", DEFAULT_STATE_CAP)

    app = FastAPI(title="attacknets", docs_url=None, redoc_url=None)
    # The browser explorer is served as static assets from wherever is
    # convenient, so the API answers cross-origin requests.  The service
    # holds no credentials and binds to loopback by default.
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    store = SessionStore(ttl_seconds, clock)
    app.state.sessions = store

    @app.exception_handler(ApiError)
    async def _api_error(request, exc: ApiError):
        return JSONResponse(status_code=exc.status,
                            content={"code": exc.code,
                                     "message": exc.message,
                                     "details": exc.details})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request, exc: RequestValidationError):
        return JSONResponse(status_code=422,
                            content={"code": "INVALID_REQUEST",
                                     "message": "invalid request",
                                     "details": {"errors": jsonable_encoder(
                                         exc.errors())}})

    @app.exception_handler(StateCapError)
    async def _state_cap(request, exc: StateCapError):
        return JSONResponse(status_code=422,
                            content={"code": "STATE_CAP_EXCEEDED",
                                     "message": str(exc),
                                     "details": {"cap": exc.cap}})

    def _session_or_404(session_id: str, action) -> SessionView:
        try:
            return action(session_id)
        except KeyError:
            raise ApiError(404, "SESSION_NOT_FOUND",
                           f"no live session {session_id!r}",
                           {"sessionId": session_id}) from None

    # -- catalog and analysis ---------------------------------------------

    @app.get("/api/models")
    def list_models() -> list:
        return [wire.model_summary(model) for model in builtin_models()]

    @app.get("/api/models/{attack}")
    def model_detail(attack: int) -> dict:
        return wire.model_detail(_resolve_model(attack))

    @app.get("/api/models/{attack}/dot")
    def model_dot(attack: int) -> PlainTextResponse:
        return PlainTextResponse(to_dot(_resolve_model(attack).net))

    @app.get("/api/models/{attack}/stride")
    def model_stride(attack: int) -> list:
        return wire.stride_letters(_resolve_model(attack).stride)

    @app.get("/api/models/{attack}/vulnerabilities")
    def model_vulnerabilities(attack: int) -> list:
        return wire.vulnerability_names(_resolve_model(attack).vulnerabilities)

    @app.get("/api/models/{attack}/closure")
    def model_closure(attack: int) -> list:
        _resolve_model(attack)
        return sorted(influence_closure(attack))

    @app.post("/api/models/{attack}/feasibility")
    def model_feasibility(attack: int, body: _FeasibilityBody) -> dict:
        model = _resolve_model(attack)
        profile = _resolve_profile(body.profile)
        report = feasibility(model, profile, max_nodes=state_cap)
        return wire.feasibility_payload(report)

    @app.post("/api/models/{attack}/cuts")
    def model_cuts(attack: int, body: _CutsBody) -> dict:
        model = _resolve_model(attack)
        try:
            cut = minimal_precondition_sets(model, body.goal,
                                            max_nodes=state_cap)
        except ValueError as exc:
            raise ApiError(422, "INVALID_INPUT", str(exc),
                           {"goal": body.goal}) from None
        return wire.cuts_payload(cut)

    # -- sessions ------------------------------------------------------------

    @app.post("/api/sessions", status_code=201)
    def create_session(body: _CreateSessionBody) -> dict:
        model = _resolve_model(body.attack)
        profile = _resolve_profile(body.profile)
        try:
            view = store.create(model, profile, frozenset(body.chosen))
        except CapabilityError as exc:
            raise ApiError(422, "CAPABILITY_MISSING", str(exc),
                           {"place": exc.place,
                            "missing": exc.missing.value}) from None
        except ValueError as exc:
            raise ApiError(422, "INVALID_INPUT", str(exc),
                           {"chosen": sorted(body.chosen)}) from None
        return _state(view)

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return _state(_session_or_404(session_id, store.get))

    @app.delete("/api/sessions/{session_id}")
    def delete_session(session_id: str) -> dict:
        _session_or_404(session_id, store.delete)
        return {"ok": True}

    @app.post("/api/sessions/{session_id}/fire")
    def fire_transition(session_id: str, body: _FireBody) -> dict:
        def advance(sid: str) -> SessionView:
            try:
                return store.fire(sid, body.transition)
            except NotEnabledError as exc:
                raise ApiError(409, "TRANSITION_NOT_ENABLED", str(exc),
                               {"transition": body.transition}) from None
        try:
            return _state(_session_or_404(session_id, advance))
        except ApiError:
            raise
        except ValueError as exc:
            raise ApiError(422, "INVALID_INPUT", str(exc),
                           {"transition": body.transition}) from None

    @app.post("/api/sessions/{session_id}/reset")
    def reset_session(session_id: str) -> dict:
        return _state(_session_or_404(session_id, store.reset))

    def _state(view: SessionView) -> dict:
        return wire.session_payload(view.model, view.profile, view.chosen,
                                    view.marking, view.history,
                                    session_id=view.id)

    return app


app = create_app()


def serve(bind: Optional[str] = None, port: Optional[int] = None, *,
          ttl_seconds: Optional[float] = None,
          state_cap: Optional[int] = None) -> None:
    """Run the service under uvicorn (blocking)."""
    import uvicorn

    uvicorn.run(create_app(ttl_seconds=ttl_seconds, state_cap=state_cap),
                host=bind or os.environ.get("ATTACKNETS_BIND", DEFAULT_BIND),
                port=port if port is not None
                else _env_int("ATTACKNETS_PORT", DEFAULT_PORT))
