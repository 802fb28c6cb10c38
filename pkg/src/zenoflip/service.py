"""Session-oriented play service for the timing games.

The human takes one seat (Juan measures first, Silvia second); the
machine fills the other.  Information rules from the game protocol are
enforced on the wire: a committed first measurement reveals only its
time, never the collapse outcome, which stays server-side until the
round resolves.

Machine turns are advanced lazily, at session creation and at the start
of every session request, never immediately after a human submission in
the same request.  A human Juan therefore sees only ``{"t1": ...}``
when he commits; the machine Silvia's reply lands on his next request.
All draws come from one counter-based stream per round, derived from
the session seed and the round index, so identical configs and
submitted times replay identical histories.

Endpoints:
    POST /api/v1/sessions
    GET  /api/v1/sessions/{id}
    POST /api/v1/sessions/{id}/measure
    GET  /api/v1/games/{g}/heatmap?resolution=R
"""

from __future__ import annotations

import math
import re
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Optional

import numpy as np
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict, Field

from .analysis import best_response, heatmap, maximin_strategy
from .collapse import CollapseOutcome, flip_probability
from .games import GameSpec, RoundResult, StrategyProfile, round_log_line

__all__ = ["SessionStore", "Session", "TurnError", "TimeConstraintError", "create_app"]

_HALF_PI_OMEGA = 0.5 * math.pi  # omega in units of tau


class TurnError(RuntimeError):
    """A measurement was submitted out of turn or for the machine's seat."""


class TimeConstraintError(ValueError):
    """A measurement time violates the ordering constraints."""


_FIXED_RE = re.compile(r"^fixed\((?P<t>[0-9.eE+-]+)\)$")


def _parse_ai(spec: str) -> tuple[str, Optional[float]]:
    """Split an AI strategy string into (kind, fixed_time)."""
    if spec in ("uniform", "nash", "best_response"):
        return spec, None
    match = _FIXED_RE.match(spec)
    if match:
        t = float(match.group("t"))
        if not 0.0 <= t <= 1.0:
            raise ValueError("fixed time must lie in [0, tau]")
        return "fixed", t
    raise ValueError(f"unknown ai strategy {spec!r}")


@dataclass
class Session:
    """One play session; requests against it are serialized by ``lock``."""

    session_id: str
    game: GameSpec
    game_number: int
    human_role: str
    ai_spec: str
    ai_kind: str
    ai_fixed: Optional[float]
    seed: int
    rounds_played: int = 0
    bankroll_silvia: float = 0.0
    history: list[dict] = field(default_factory=list)
    t1: Optional[float] = None
    hidden_collapse: Optional[CollapseOutcome] = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    _rng: Optional[np.random.Generator] = field(default=None, repr=False)
    _nash_t1: Optional[float] = field(default=None, repr=False)

    def round_rng(self) -> np.random.Generator:
        # one counter-based stream per round, keyed by (seed, round index)
        if self._rng is None:
            ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.rounds_played,))
            self._rng = np.random.Generator(np.random.Philox(ss))
        return self._rng

    @property
    def ai_role(self) -> str:
        return "silvia" if self.human_role == "juan" else "juan"

    def public_view(self) -> dict:
        round_in_progress: dict = {}
        if self.t1 is not None:
            round_in_progress["t1"] = self.t1
        return {
            "session_id": self.session_id,
            "game": self.game_number,
            "human_role": self.human_role,
            "ai_strategy": self.ai_spec,
            "stake": self.game.stake,
            "seed": self.seed,
            "rounds_played": self.rounds_played,
            "bankroll_silvia": self.bankroll_silvia,
            "round_in_progress": round_in_progress,
            "history": list(self.history),
        }


class SessionStore:
    """In-memory session registry with optional per-session journals."""

    def __init__(self, journal_dir: str | None = None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._journal_dir = Path(journal_dir) if journal_dir else None
        if self._journal_dir is not None:
            self._journal_dir.mkdir(parents=True, exist_ok=True)

    def create(
        self,
        game: int = 1,
        human_role: str = "silvia",
        ai: str = "uniform",
        seed: int = 0,
        stake: float = 1.0,
    ) -> Session:
        if game not in (1, 2):
            raise ValueError("game must be 1 or 2")
        if human_role not in ("juan", "silvia"):
            raise ValueError("human_role must be 'juan' or 'silvia'")
        ai_kind, ai_fixed = _parse_ai(ai)
        spec = GameSpec.two_measure(stake=stake) if game == 1 else GameSpec.three_measure(stake=stake)
        session = Session(
            session_id=uuid.uuid4().hex,
            game=spec,
            game_number=game,
            human_role=human_role,
            ai_spec=ai,
            ai_kind=ai_kind,
            ai_fixed=ai_fixed,
            seed=seed,
        )
        with self._lock:
            self._sessions[session.session_id] = session
        with session.lock:
            self.advance_ai(session)
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise KeyError(session_id)
        return session

    # -- turn engine ---------------------------------------------------

    def _ai_time(self, session: Session, role: str) -> float:
        rng = session.round_rng()
        kind = session.ai_kind
        if role == "juan":
            if kind == "uniform":
                return float(rng.random())
            if kind == "fixed":
                return session.ai_fixed
            # nash and best_response both play the maximin point
            if session._nash_t1 is None:
                session._nash_t1 = maximin_strategy(session.game, 1001).t1_star
            return session._nash_t1
        t1 = session.t1
        if kind == "uniform":
            return t1 + (1.0 - t1) * float(rng.random())
        if kind == "fixed":
            return max(session.ai_fixed, t1)
        return best_response(session.game, t1).t2_star

    def _commit_t1(self, session: Session, t: float) -> None:
        session.t1 = t
        state = CollapseOutcome.INITIAL
        if session.round_rng().random() < flip_probability(t, _HALF_PI_OMEGA):
            state = state.other()
        session.hidden_collapse = state

    def _resolve(self, session: Session, t2: float) -> dict:
        rng = session.round_rng()
        state = session.hidden_collapse
        outcomes = [state]
        if rng.random() < flip_probability(t2 - session.t1, _HALF_PI_OMEGA):
            state = state.other()
        outcomes.append(state)
        if session.game_number == 2:
            if rng.random() < flip_probability(1.0 - t2, _HALF_PI_OMEGA):
                state = state.other()
            outcomes.append(state)

        payoff = session.game.stake if state is CollapseOutcome.SEARCHED else -session.game.stake
        result = RoundResult(
            collapse_history=tuple(outcomes),
            final=state,
            payoff_silvia=payoff,
            payoff_juan=-payoff,
        )
        strategy = StrategyProfile(session.t1, t2)
        record = {
            "t1": strategy.t1,
            "t2": strategy.t2,
            "history": [o.value for o in result.collapse_history],
            "final": result.final.value,
            "payoff_s": result.payoff_silvia,
        }
        session.history.append(record)
        session.bankroll_silvia += payoff
        session.rounds_played += 1
        session.t1 = None
        session.hidden_collapse = None
        session._rng = None
        self._journal(session, strategy, result)
        return record

    def _journal(self, session: Session, strategy: StrategyProfile, result: RoundResult) -> None:
        if self._journal_dir is None:
            return
        path = self._journal_dir / f"{session.session_id}.jsonl"
        with path.open("a") as fh:
            fh.write(round_log_line(strategy, result) + "\n")

    def advance_ai(self, session: Session) -> None:
        """Take every machine turn that is currently pending."""
        for _ in range(2):
            if session.t1 is None and session.ai_role == "juan":
                self._commit_t1(session, self._ai_time(session, "juan"))
            elif session.t1 is not None and session.ai_role == "silvia":
                self._resolve(session, self._ai_time(session, "silvia"))
            else:
                return

    def submit(self, session: Session, role: str, time: float) -> dict:
        """Apply a human measurement; machine turns advance beforehand, never after."""
        self.advance_ai(session)
        expected = "juan" if session.t1 is None else "silvia"
        if role != session.human_role:
            raise TurnError(f"the {role} seat is played by the machine")
        if role != expected:
            raise TurnError(f"out of turn: waiting for {expected}")
        if role == "juan":
            if not 0.0 <= time <= 1.0:
                raise TimeConstraintError("T1 must satisfy 0 <= T1 <= tau")
            self._commit_t1(session, time)
            return {"t1": time}
        if not session.t1 <= time <= 1.0:
            raise TimeConstraintError("T2 must satisfy T1 <= T2 <= tau")
        record = self._resolve(session, time)
        return dict(record, bankroll_silvia=session.bankroll_silvia, rounds_played=session.rounds_played)


class CreateSessionBody(BaseModel):
    model_config = ConfigDict(extra="forbid")

    game: int = 1
    human_role: Literal["juan", "silvia"] = "silvia"
    ai: str = "uniform"
    seed: int = 0
    stake: float = Field(default=1.0, gt=0.0)


class MeasureBody(BaseModel):
    model_config = ConfigDict(extra="forbid")

    role: Literal["juan", "silvia"]
    time: float


def create_app(
    journal_dir: str | None = None,
    heatmap_cap: int = 1001,
    static_dir: str | None = None,
) -> FastAPI:
    """Build the application; analysis endpoints are stateless."""
    store = SessionStore(journal_dir=journal_dir)
    app = FastAPI(title="zenoflip play service")
    app.state.store = store

    @app.post("/api/v1/sessions")
    def create_session(body: CreateSessionBody):
        try:
            session = store.create(
                game=body.game,
                human_role=body.human_role,
                ai=body.ai,
                seed=body.seed,
                stake=body.stake,
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        with session.lock:
            return session.public_view()

    @app.get("/api/v1/sessions/{session_id}")
    def get_session(session_id: str):
        try:
            session = store.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown session")
        with session.lock:
            store.advance_ai(session)
            return session.public_view()

    @app.post("/api/v1/sessions/{session_id}/measure")
    def measure(session_id: str, body: MeasureBody):
        try:
            session = store.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown session")
        with session.lock:
            try:
                return store.submit(session, body.role, body.time)
            except TurnError as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            except TimeConstraintError as exc:
                raise HTTPException(status_code=422, detail=str(exc))

    @app.get("/api/v1/games/{game}/heatmap")
    def game_heatmap(game: int, resolution: int = 101):
        if game not in (1, 2):
            raise HTTPException(status_code=404, detail="game must be 1 or 2")
        if resolution < 2:
            raise HTTPException(status_code=422, detail="resolution must be >= 2")
        effective = min(resolution, heatmap_cap)
        spec = GameSpec.two_measure() if game == 1 else GameSpec.three_measure()
        return heatmap(spec, effective).to_json_dict()

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
