"""HTTP service: game sessions and simulation jobs over JSON REST.

Sessions live in an in-memory store; mutations are serialized per session
id.  Simulation requests run on a small worker pool and are polled by id.
Errors always carry {"error": code, "message": text}; illegal phase
transitions and degenerate door openings map to 409, bad input to 422.
"""

import itertools
import secrets
import threading
from concurrent.futures import ThreadPoolExecutor
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import stats
from .core import (
    SEMICLASSICAL_ANGLES,
    DoorAngles,
    RotatorAngles,
    classical_payoffs,
)
from .exceptions import (
    DegenerateDoorOpening,
    IllegalPhaseTransition,
    QmontyError,
)
from .game import (
    GameSession,
    HostPrepare,
    HostStrategy,
    OpenDoor,
    PlaceBet,
    PlayerChoose,
    Resolve,
    advance,
    outcome_distribution,
)
from .io_formats import session_view
from .noise import PauliWeights, semiclassical_noise_curve


class SessionCreate(BaseModel):
    entangled: bool = False
    noise_p: float = 0.0
    seed: int | None = None


class ActionRequest(BaseModel):
    action: str
    prize: str | list | None = None
    door: str | list | None = None
    box: int | None = None
    angles: list | None = None
    bet: str | None = None


class SimulationRequest(BaseModel):
    kind: str
    entangled: bool = False
    noise_p: float = 0.0
    method: str = "quad:16"
    seed: int | None = None
    phi1: float | None = None
    phi2: float | None = None
    player_angles: list | None = None
    prize_angles: list | None = None
    grid: list | None = None


class SessionStore:
    def __init__(self):
        self._lock = threading.Lock()
        self._rows = {}

    def add(self, session):
        with self._lock:
            self._rows[session.id] = (session, threading.Lock())

    def get(self, session_id):
        with self._lock:
            row = self._rows.get(session_id)
        if row is None:
            raise KeyError(session_id)
        return row


class JobStore:
    def __init__(self, workers=2):
        self._lock = threading.Lock()
        self._rows = {}
        self._counter = itertools.count(1)
        self.pool = ThreadPoolExecutor(max_workers=workers)

    def submit(self, fn):
        job_id = f"job{next(self._counter):04d}-{secrets.token_hex(3)}"
        with self._lock:
            self._rows[job_id] = {"id": job_id, "status": "queued"}

        def run():
            self._set(job_id, status="running")
            try:
                result = fn()
            except Exception as exc:  # job errors surface via polling
                self._set(job_id, status="error", error=str(exc))
            else:
                self._set(job_id, status="done", result=result)

        self.pool.submit(run)
        return job_id

    def _set(self, job_id, **fields):
        with self._lock:
            self._rows[job_id].update(fields)

    def get(self, job_id):
        with self._lock:
            row = self._rows.get(job_id)
        if row is None:
            raise KeyError(job_id)
        return dict(row)


def _estimate_dict(est):
    return {
        "value": est.value,
        "uncertainty": est.uncertainty,
        "method": est.method,
        "count": est.count,
    }


def _run_simulation(req: SimulationRequest):
    weights = PauliWeights.equal(req.noise_p) if req.noise_p else None
    if req.kind == "semiclassical":
        if req.noise_p:
            pt = semiclassical_noise_curve([req.noise_p])[0]
            return {"p": pt.p, "p_ns": pt.p_ns, "p_s": pt.p_s, "ratio": pt.ratio}
        p_ns, p_s = classical_payoffs(3, 1)
        return {"p_ns": float(p_ns), "p_s": float(p_s)}
    if req.kind == "random-expectation":
        ns, s = stats.random_expectation(req.entangled, weights, req.method, req.seed)
        return {"p_ns": _estimate_dict(ns), "p_s": _estimate_dict(s)}
    if req.kind == "strategy-expectation":
        if req.phi1 is None or req.phi2 is None:
            raise ValueError("strategy-expectation needs phi1 and phi2")
        ns, s, imbalance = stats.strategy_expectation(
            req.phi1, req.phi2, req.entangled, weights, req.method, req.seed
        )
        return {
            "p_ns": _estimate_dict(ns),
            "p_s": _estimate_dict(s),
            "p_abs": _estimate_dict(imbalance),
        }
    if req.kind == "single-game":
        if req.phi1 is None or req.phi2 is None:
            raise ValueError("single-game needs phi1 and phi2")
        pa = req.player_angles or [
            SEMICLASSICAL_ANGLES.theta_a1, SEMICLASSICAL_ANGLES.theta_a2,
        ]
        pb = req.prize_angles or [
            SEMICLASSICAL_ANGLES.theta_b1, SEMICLASSICAL_ANGLES.theta_b2,
        ]
        angles = RotatorAngles(pa[0], pa[1], pb[0], pb[1])
        door = DoorAngles.from_pair(req.phi1, req.phi2)
        dist = outcome_distribution(angles, door, req.entangled, req.noise_p)
        p_ns = float(dist.trace())
        return {"p_ns": p_ns, "p_s": 1.0 - p_ns}
    if req.kind == "noise-curve":
        grid = req.grid or [i / 10 for i in range(11)]
        pts = semiclassical_noise_curve(grid)
        return [{"p": pt.p, "p_ns": pt.p_ns, "p_s": pt.p_s, "ratio": pt.ratio} for pt in pts]
    raise ValueError(f"unknown simulation kind {req.kind!r}")


def _engine_action(body: ActionRequest):
    if body.action == "host-prepare":
        prize = body.prize if body.prize is not None else "uniform"
        door = body.door if body.door is not None else "random-projector"
        if isinstance(prize, list):
            prize = tuple(float(x) for x in prize)
        if isinstance(door, list):
            door = tuple(float(x) for x in door)
        return HostPrepare(HostStrategy(prize=prize, door=door))
    if body.action == "player-choose":
        angles = tuple(float(x) for x in body.angles) if body.angles is not None else None
        return PlayerChoose(box=body.box, angles=angles)
    if body.action == "open-door":
        return OpenDoor()
    if body.action == "place-bet":
        if body.bet is None:
            raise ValueError("place-bet needs a bet of switch or stay")
        return PlaceBet(body.bet)
    if body.action == "resolve":
        return Resolve()
    raise ValueError(f"unknown action {body.action!r}")


def create_app():
    jobs = JobStore()

    @asynccontextmanager
    async def lifespan(app):
        yield
        jobs.pool.shutdown(wait=False, cancel_futures=True)

    app = FastAPI(title="qmonty", lifespan=lifespan)
    sessions = SessionStore()

    @app.exception_handler(QmontyError)
    async def qmonty_error(request: Request, exc: QmontyError):
        status = 409 if isinstance(exc, (IllegalPhaseTransition, DegenerateDoorOpening)) else 422
        return JSONResponse(status_code=status,
                            content={"error": exc.code, "message": str(exc)})

    @app.exception_handler(ValueError)
    async def value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=422,
                            content={"error": "ValidationError", "message": str(exc)})

    @app.exception_handler(KeyError)
    async def not_found(request: Request, exc: KeyError):
        return JSONResponse(status_code=404,
                            content={"error": "NotFound", "message": f"no such id: {exc}"})

    @app.exception_handler(RequestValidationError)
    async def bad_request(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=422,
                            content={"error": "ValidationError", "message": str(exc)})

    @app.post("/sessions", status_code=201)
    def create_session(body: SessionCreate):
        session = GameSession(entangled=body.entangled, noise_p=body.noise_p, seed=body.seed)
        sessions.add(session)
        return session_view(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        session, lock = sessions.get(session_id)
        with lock:
            return session_view(session)

    @app.post("/sessions/{session_id}/actions")
    def post_action(session_id: str, body: ActionRequest):
        session, lock = sessions.get(session_id)
        action = _engine_action(body)
        with lock:
            advance(session, action)
            return session_view(session)

    @app.get("/sessions/{session_id}/score")
    def get_score(session_id: str):
        session, lock = sessions.get(session_id)
        with lock:
            score = session.score.as_dict()
            for tally in score.values():
                plays = tally["wins"] + tally["losses"]
                tally["frequency"] = tally["wins"] / plays if plays else None
            return {"id": session.id, "rounds": session.rounds, "score": score}

    @app.post("/simulations", status_code=202)
    def post_simulation(body: SimulationRequest):
        if body.kind not in (
            "semiclassical", "random-expectation", "strategy-expectation",
            "single-game", "noise-curve",
        ):
            raise ValueError(f"unknown simulation kind {body.kind!r}")
        kind, _size = stats.parse_method(body.method)
        if kind == "mc" and body.seed is None:
            raise ValueError("Monte Carlo simulations need a seed")
        job_id = jobs.submit(lambda: _run_simulation(body))
        return {"id": job_id, "status": "queued"}

    @app.get("/simulations/{job_id}")
    def get_simulation(job_id: str):
        return jobs.get(job_id)

    return app
