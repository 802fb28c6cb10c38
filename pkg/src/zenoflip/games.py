"""Two-player state-flip timing games.

Silvia bets on the searched state, Juan on the initial one.  Juan
measures at T1, Silvia at T2 >= T1, and in the three-measurement
variant a final forced measurement happens at tau.  The last collapse
decides the round: Silvia receives the stake if it lands on the
searched state, otherwise she pays it.  Strategy times are kept in
units where tau = 1, which makes every surface independent of the
search-set size.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

import numpy as np

from .collapse import CollapseOutcome, MeasurementSchedule, sample_trajectory, zeno_coefficients

__all__ = [
    "GameVariant",
    "GameSpec",
    "StrategyProfile",
    "PayoffReport",
    "RoundResult",
    "win_probability",
    "win_probability_grid",
    "expected_payoffs",
    "play_round",
    "play_rounds",
    "schedule_for",
    "round_log_line",
]

# Strategy coordinates are normalized to tau = 1, so omega * t becomes
# (pi/2) * t for every phase below.
_HALF_PI = 0.5 * math.pi


class GameVariant(enum.Enum):
    TWO_MEASURE = "two_measure"
    THREE_MEASURE = "three_measure"
    REGULAR_ZENO = "regular_zeno"


@dataclass(frozen=True)
class GameSpec:
    """Game variant, stake transferred per round, and time horizon."""

    variant: GameVariant
    stake: float = 1.0
    tau: float = 1.0
    zeno_measurements: int | None = None

    def __post_init__(self):
        if self.stake < 0.0:
            raise ValueError("stake must be >= 0")
        if self.tau <= 0.0:
            raise ValueError("tau must be positive")
        if self.variant is GameVariant.REGULAR_ZENO:
            if self.zeno_measurements is None or self.zeno_measurements < 1:
                raise ValueError("regular-zeno games need zeno_measurements >= 1")
        elif self.zeno_measurements is not None:
            raise ValueError("zeno_measurements only applies to the regular-zeno variant")

    @classmethod
    def two_measure(cls, stake: float = 1.0, tau: float = 1.0) -> "GameSpec":
        return cls(GameVariant.TWO_MEASURE, stake=stake, tau=tau)

    @classmethod
    def three_measure(cls, stake: float = 1.0, tau: float = 1.0) -> "GameSpec":
        return cls(GameVariant.THREE_MEASURE, stake=stake, tau=tau)

    @classmethod
    def regular_zeno(cls, m: int, stake: float = 1.0, tau: float = 1.0) -> "GameSpec":
        return cls(GameVariant.REGULAR_ZENO, stake=stake, tau=tau, zeno_measurements=m)


@dataclass(frozen=True)
class StrategyProfile:
    """Measurement times (t1, t2) in units of tau, on the closed triangle."""

    t1: float
    t2: float

    def __post_init__(self):
        if not 0.0 <= self.t1:
            raise ValueError("strategy violates 0 <= T1")
        if not self.t1 <= self.t2:
            raise ValueError("strategy violates T1 <= T2")
        if not self.t2 <= 1.0:
            raise ValueError("strategy violates T2 <= tau")


@dataclass(frozen=True)
class PayoffReport:
    """Win probabilities and expected payoffs for both players."""

    pi_s: float
    pi_j: float
    payoff_s: float
    payoff_j: float
    method: str
    error_estimate: float
    notes: tuple[str, ...] = ()

    def to_json(self) -> str:
        doc = {
            "pi_s": self.pi_s,
            "pi_j": self.pi_j,
            "payoff_s": self.payoff_s,
            "payoff_j": self.payoff_j,
            "method": self.method,
            "error_estimate": self.error_estimate,
        }
        if self.notes:
            doc["notes"] = list(self.notes)
        return json.dumps(doc, indent=2)


@dataclass(frozen=True)
class RoundResult:
    """Outcome of one played round; payoffs are zero-sum by construction."""

    collapse_history: tuple[CollapseOutcome, ...]
    final: CollapseOutcome
    payoff_silvia: float
    payoff_juan: float


def schedule_for(game: GameSpec, strategy: StrategyProfile) -> MeasurementSchedule:
    """Measurement schedule of a round, in units of tau."""
    if game.variant is GameVariant.TWO_MEASURE:
        return MeasurementSchedule((strategy.t1, strategy.t2))
    if game.variant is GameVariant.THREE_MEASURE:
        return MeasurementSchedule((strategy.t1, strategy.t2, 1.0))
    return MeasurementSchedule.zeno(game.zeno_measurements, 1.0)


def win_probability(game: GameSpec, strategy: StrategyProfile) -> float:
    """Probability that the round's final measurement favors Silvia.

    Uses the cosine-double-angle product directly; the step-matrix
    propagation over the same schedule serves as an independent check.
    """
    if game.variant is GameVariant.REGULAR_ZENO:
        return zeno_coefficients(game.zeno_measurements).beta
    c1 = math.cos(math.pi * strategy.t1)
    c2 = math.cos(math.pi * (strategy.t2 - strategy.t1))
    product = c1 * c2
    if game.variant is GameVariant.THREE_MEASURE:
        product *= math.cos(math.pi * (1.0 - strategy.t2))
    return 0.5 * (1.0 - product)


def win_probability_grid(game: GameSpec, t1, t2) -> np.ndarray:
    """Vectorized :func:`win_probability` over arrays of normalized times.

    No triangle validation is performed; callers mask illegal cells.
    """
    t1 = np.asarray(t1, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    if game.variant is GameVariant.REGULAR_ZENO:
        return np.full(np.broadcast(t1, t2).shape, zeno_coefficients(game.zeno_measurements).beta)
    product = np.cos(np.pi * t1) * np.cos(np.pi * (t2 - t1))
    if game.variant is GameVariant.THREE_MEASURE:
        product = product * np.cos(np.pi * (1.0 - t2))
    return 0.5 * (1.0 - product)


def expected_payoffs(game: GameSpec, strategy: StrategyProfile) -> PayoffReport:
    """Deterministic payoff report for a single strategy point."""
    pi_s = win_probability(game, strategy)
    pi_j = 1.0 - pi_s
    payoff = game.stake * (pi_s - pi_j)
    return PayoffReport(
        pi_s=pi_s,
        pi_j=pi_j,
        payoff_s=payoff,
        payoff_j=-payoff,
        method="closed_form",
        error_estimate=0.0,
    )


def play_round(game: GameSpec, strategy: StrategyProfile, seed) -> RoundResult:
    """Play one round by sampling every collapse in the schedule."""
    schedule = schedule_for(game, strategy)
    history = tuple(sample_trajectory(schedule, _HALF_PI, seed))
    final = history[-1]
    payoff = game.stake if final is CollapseOutcome.SEARCHED else -game.stake
    return RoundResult(
        collapse_history=history,
        final=final,
        payoff_silvia=payoff,
        payoff_juan=-payoff,
    )


def play_rounds(game: GameSpec, strategy: StrategyProfile, rounds: int, seed: int) -> list[RoundResult]:
    """Play several independent rounds with per-round derived seeds."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    children = np.random.SeedSequence(seed).spawn(rounds)
    return [play_round(game, strategy, child) for child in children]


def round_log_line(strategy: StrategyProfile, result: RoundResult) -> str:
    """One JSON line per round, with compact separators for stable bytes."""
    doc = {
        "t1": strategy.t1,
        "t2": strategy.t2,
        "history": [o.value for o in result.collapse_history],
        "final": result.final.value,
        "payoff_s": result.payoff_silvia,
    }
    return json.dumps(doc, separators=(",", ":"))
