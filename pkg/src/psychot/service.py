"""Session service: live agents behind a small JSON-over-HTTP protocol.

One session wraps one running scenario. Mutations (post-stimulus, advance,
set-thresholds, end-session) are strictly serialized per session; a second
simultaneous mutation is refused with 409, never queued. Reads are
multi-reader and see pre- or post-tick state only, because advance holds the
session's condition lock across each individual tick. get-events supports
long-polling via a cursor into the published event stream.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import __version__
from .affect import EmotionProfile, Thresholds
from .agent import Event
from .simulation import (
    Scenario,
    ScenarioError,
    SimulationRun,
    load_scenario,
    serialize_log,
)

MAX_WAIT_MS = 30_000


class CreateSessionRequest(BaseModel):
    scenario: str


class StimulusRequest(BaseModel):
    session_id: str
    agent_id: str
    stimulus: str
    mode: str = "auto"


class AdvanceRequest(BaseModel):
    session_id: str
    ticks: int = 1
    cursor: int | None = None


class ThresholdsRequest(BaseModel):
    session_id: str
    agent_id: str
    thresholds: dict[str, float] | None = None
    profile: dict[str, float] | None = None


class EndSessionRequest(BaseModel):
    session_id: str
    save_log: bool = False


def _error(status: int, code: str, message: str, field_path: str | None = None):
    detail: dict[str, Any] = {"code": code, "message": message}
    if field_path is not None:
        detail["field"] = field_path
    return HTTPException(status_code=status, detail=detail)


@dataclass
class Session:
    """One live scenario run plus its published event stream."""

    session_id: str
    scenario: Scenario
    sim: SimulationRun
    status: str = "Ready"
    published: list[Event] = field(default_factory=list)
    cond: threading.Condition = field(default_factory=threading.Condition)
    mutation_lock: threading.Lock = field(default_factory=threading.Lock)
    agent_cursors: dict[str, int] = field(default_factory=dict)

    def publish_new_events(self) -> None:
        """Append each agent's unseen events to the stream (cond held)."""
        for agent_id, agent in self.sim.agents.items():
            cursor = self.agent_cursors.get(agent_id, 0)
            if len(agent.events) > cursor:
                self.published.extend(agent.events[cursor:])
                self.agent_cursors[agent_id] = len(agent.events)

    def canonical_events(self) -> list[Event]:
        index = {cfg.agent_id: i for i, cfg in enumerate(self.scenario.agents)}
        return sorted(
            self.published, key=lambda ev: (ev.tick, index[ev.agent_id], ev.seq)
        )


class SessionManager:
    def __init__(self, log_dir: str | Path | None = None) -> None:
        self._sessions: dict[str, Session] = {}
        self._registry_lock = threading.Lock()
        self.log_dir = Path(log_dir) if log_dir is not None else None

    def create(self, scenario_text: str) -> Session:
        try:
            scenario = load_scenario(scenario_text)
        except ScenarioError as exc:
            raise _error(422, "invalid_scenario", str(exc), exc.field)
        session = Session(
            session_id=f"s-{uuid.uuid4().hex[:12]}",
            scenario=scenario,
            sim=SimulationRun(scenario),
        )
        with self._registry_lock:
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise _error(404, "unknown_session", f"no session {session_id!r}")
        return session


def _acquire_mutation(session: Session) -> None:
    if not session.mutation_lock.acquire(blocking=False):
        raise _error(
            409, "busy", "another mutation is in progress for this session"
        )


def _require_live(session: Session) -> None:
    if session.status == "Ended":
        raise _error(409, "ended", "session has ended")


def _event_dicts(events: list[Event]) -> list[dict]:
    return [event.to_dict() for event in events]


def create_app(
    log_dir: str | Path | None = None,
    console_dir: str | Path | None = None,
) -> FastAPI:
    """Build the service; state lives inside the returned app."""
    app = FastAPI(title="psychot service", version=__version__)
    manager = SessionManager(log_dir=log_dir)
    app.state.manager = manager

    @app.get("/")
    def root() -> dict:
        return {"service": "psychot", "version": __version__}

    @app.post("/create-session")
    def create_session(body: CreateSessionRequest) -> dict:
        session = manager.create(body.scenario)
        return {
            "session_id": session.session_id,
            "status": session.status,
            "tick": session.sim.tick,
            "run_ticks": session.scenario.run_ticks,
            "agents": [cfg.agent_id for cfg in session.scenario.agents],
        }

    @app.post("/post-stimulus")
    def post_stimulus(body: StimulusRequest) -> dict:
        session = manager.get(body.session_id)
        _acquire_mutation(session)
        try:
            _require_live(session)
            agent = session.sim.agents.get(body.agent_id)
            if agent is None:
                raise _error(404, "unknown_agent", f"no agent {body.agent_id!r}")
            if body.mode not in ("auto", "point", "label"):
                raise _error(400, "bad_mode", f"unknown stimulus mode {body.mode!r}")
            with session.cond:
                try:
                    idea = agent.inject_stimulus(body.stimulus, body.mode)
                except ValueError as exc:
                    raise _error(400, "bad_stimulus", str(exc))
                session.publish_new_events()
                session.cond.notify_all()
            return {
                "idea_id": idea.idea_id,
                "point": str(idea.point),
                "tick": session.sim.tick,
            }
        finally:
            session.mutation_lock.release()

    @app.post("/advance")
    def advance(body: AdvanceRequest) -> dict:
        session = manager.get(body.session_id)
        if body.ticks < 0:
            raise _error(400, "bad_ticks", "ticks must be >= 0")
        _acquire_mutation(session)
        try:
            _require_live(session)
            with session.cond:
                cursor = (
                    body.cursor if body.cursor is not None else len(session.published)
                )
                if not 0 <= cursor <= len(session.published):
                    raise _error(400, "bad_cursor", "cursor outside the published log")
                session.status = "Running"
            try:
                for _ in range(body.ticks):
                    with session.cond:
                        session.sim.step()
                        session.publish_new_events()
                        session.cond.notify_all()
            finally:
                with session.cond:
                    if session.status == "Running":
                        session.status = "Ready"
                    session.cond.notify_all()
            with session.cond:
                return {
                    "tick": session.sim.tick,
                    "status": session.status,
                    "cursor": len(session.published),
                    "events": _event_dicts(session.published[cursor:]),
                }
        finally:
            session.mutation_lock.release()

    @app.get("/get-state")
    def get_state(session_id: str) -> dict:
        session = manager.get(session_id)
        with session.cond:
            return {
                "session_id": session.session_id,
                "status": session.status,
                "tick": session.sim.tick,
                "run_ticks": session.scenario.run_ticks,
                "cursor": len(session.published),
                "agents": session.sim.snapshots(),
            }

    @app.get("/get-events")
    def get_events(session_id: str, cursor: int = 0, wait_ms: int = 0) -> dict:
        session = manager.get(session_id)
        if cursor < 0:
            raise _error(400, "bad_cursor", "cursor must be >= 0")
        wait_ms = max(0, min(wait_ms, MAX_WAIT_MS))
        deadline = time.monotonic() + wait_ms / 1000.0
        with session.cond:
            if cursor > len(session.published):
                raise _error(400, "bad_cursor", "cursor outside the published log")
            while (
                len(session.published) <= cursor
                and session.status != "Ended"
                and (remaining := deadline - time.monotonic()) > 0
            ):
                session.cond.wait(remaining)
            events = session.published[cursor:]
            return {
                "events": _event_dicts(events),
                "cursor": len(session.published),
                "tick": session.sim.tick,
                "status": session.status,
            }

    @app.post("/set-thresholds")
    def set_thresholds(body: ThresholdsRequest) -> dict:
        session = manager.get(body.session_id)
        _acquire_mutation(session)
        try:
            _require_live(session)
            agent = session.sim.agents.get(body.agent_id)
            if agent is None:
                raise _error(404, "unknown_agent", f"no agent {body.agent_id!r}")
            if body.thresholds is None and body.profile is None:
                raise _error(400, "empty_patch", "nothing to change")
            new_thresholds = None
            if body.thresholds is not None:
                merged = {
                    "realization": agent.thresholds.realization,
                    "preserving": agent.thresholds.preserving,
                    "max_interest": agent.thresholds.max_interest,
                    "max_interdiction": agent.thresholds.max_interdiction,
                }
                unknown = set(body.thresholds) - set(merged)
                if unknown:
                    raise _error(
                        400, "bad_patch", f"unknown threshold fields {sorted(unknown)}"
                    )
                merged.update(body.thresholds)
                try:
                    new_thresholds = Thresholds(**merged)
                except ValueError as exc:
                    raise _error(422, "invalid_thresholds", str(exc))
            new_profile = None
            if body.profile is not None:
                unknown = set(body.profile) - {"a", "b"}
                if unknown:
                    raise _error(
                        400, "bad_patch", f"unknown profile fields {sorted(unknown)}"
                    )
                try:
                    new_profile = EmotionProfile(
                        a=body.profile.get("a", agent.profile.a),
                        b=body.profile.get("b", agent.profile.b),
                    )
                except ValueError as exc:
                    raise _error(422, "invalid_profile", str(exc))
            with session.cond:
                event = agent.apply_config_patch(
                    thresholds=new_thresholds, profile=new_profile
                )
                session.publish_new_events()
                session.cond.notify_all()
            return {
                "ok": True,
                "effective_tick": session.sim.tick,
                "event": event.to_dict(),
            }
        finally:
            session.mutation_lock.release()

    @app.post("/end-session")
    def end_session(body: EndSessionRequest) -> dict:
        session = manager.get(body.session_id)
        _acquire_mutation(session)
        try:
            with session.cond:
                session.status = "Ended"
                session.cond.notify_all()
                log_text = serialize_log(session.scenario, session.canonical_events())
            log_path: str | None = None
            if body.save_log:
                directory = manager.log_dir or Path.cwd()
                directory.mkdir(parents=True, exist_ok=True)
                target = directory / f"{session.session_id}.jsonl"
                target.write_text(log_text, encoding="utf-8")
                log_path = str(target)
            return {
                "status": session.status,
                "tick": session.sim.tick,
                "log": log_text,
                "log_path": log_path,
            }
        finally:
            session.mutation_lock.release()

    if console_dir is not None and Path(console_dir).is_dir():
        app.mount(
            "/console", StaticFiles(directory=str(console_dir), html=True), name="console"
        )

    return app


def serve(
    host: str = "127.0.0.1",
    port: int = 8000,
    log_dir: str | Path | None = None,
    console_dir: str | Path | None = None,
) -> None:
    """Run the service under uvicorn (blocking)."""
    import uvicorn

    uvicorn.run(
        create_app(log_dir=log_dir, console_dir=console_dir),
        host=host,
        port=port,
        log_level="warning",
    )
