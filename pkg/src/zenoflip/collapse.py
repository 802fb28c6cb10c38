"""Measurement collapse as an interval-dependent stochastic process.

Between projective measurements the two relevant populations rotate at
the resonance frequency, so each measurement applies the symmetric
doubly stochastic matrix [[p, q], [q, p]] with p = cos^2(Omega * dt) to
the probability pair (P_s, P_j).  The product of the interval factors
2*p_i - 1 gives a closed form for the occupation probabilities after
any schedule, with the quantum Zeno regime (many measurements inside
one transfer time) freezing the system in its initial state.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .resonance import ProbabilityPair

__all__ = [
    "CollapseOutcome",
    "MeasurementSchedule",
    "TransitionStep",
    "MixingCoefficients",
    "step_matrix",
    "propagate_schedule",
    "iterate_matrices",
    "regular_coefficients",
    "zeno_coefficients",
    "flip_probability",
    "sample_trajectory",
    "sample_final_states",
    "zeno_scan",
]


class CollapseOutcome(enum.Enum):
    """The two states a measurement can project onto."""

    SEARCHED = "s"
    INITIAL = "j"

    def other(self) -> "CollapseOutcome":
        return CollapseOutcome.INITIAL if self is CollapseOutcome.SEARCHED else CollapseOutcome.SEARCHED


@dataclass(frozen=True)
class MeasurementSchedule:
    """Nondecreasing measurement times; the origin is fixed at t = 0.

    Zero-length intervals are allowed (back-to-back measurements leave
    the state untouched) and the empty schedule is legal.
    """

    times: tuple[float, ...]

    def __post_init__(self):
        times = tuple(float(t) for t in self.times)
        object.__setattr__(self, "times", times)
        if any(t < 0.0 for t in times):
            raise ValueError("measurement times must be >= 0")
        if any(b < a for a, b in zip(times, times[1:])):
            raise ValueError("measurement times must be nondecreasing")

    @property
    def intervals(self) -> tuple[float, ...]:
        """Gaps between consecutive measurements, starting from t = 0."""
        previous = (0.0,) + self.times[:-1]
        return tuple(t - p for t, p in zip(self.times, previous))

    def __len__(self) -> int:
        return len(self.times)

    @classmethod
    def uniform(cls, m: int, delta_t: float) -> "MeasurementSchedule":
        """m measurements at regular spacing delta_t."""
        if m < 1:
            raise ValueError("m must be >= 1")
        if delta_t < 0.0:
            raise ValueError("delta_t must be >= 0")
        return cls(tuple(i * delta_t for i in range(1, m + 1)))

    @classmethod
    def zeno(cls, m: int, tau: float) -> "MeasurementSchedule":
        """m equally spaced measurements filling [0, tau]."""
        if m < 1:
            raise ValueError("m must be >= 1")
        return cls(tuple(i * tau / m for i in range(1, m + 1)))


@dataclass(frozen=True)
class TransitionStep:
    """Stay/flip probabilities for one inter-measurement interval."""

    p: float
    q: float

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.p, self.q], [self.q, self.p]])


@dataclass(frozen=True)
class MixingCoefficients:
    """Final-state occupation probabilities after a schedule.

    ``beta`` is the probability that the state after the last scheduled
    measurement is the searched one, unconditionally on intermediate
    outcomes; ``alpha`` is its complement.
    """

    alpha: float
    beta: float


def step_matrix(delta_t: float, omega: float) -> TransitionStep:
    """One-interval transition: stay with p = cos^2(omega * delta_t)."""
    if delta_t < 0.0:
        raise ValueError("delta_t must be >= 0")
    p = math.cos(omega * delta_t) ** 2
    return TransitionStep(p=p, q=1.0 - p)


def flip_probability(delta_t: float, omega: float) -> float:
    """Probability that a measurement finds the state flipped, sin^2(omega * dt)."""
    if delta_t < 0.0:
        raise ValueError("delta_t must be >= 0")
    return math.sin(omega * delta_t) ** 2


def propagate_schedule(schedule: MeasurementSchedule, omega: float) -> MixingCoefficients:
    """Closed-form solution: product of the factors 2*p_i - 1.

    One factor per interval, starting with t_1 - 0.  The empty product
    is 1, leaving the system in the initial state.
    """
    product = 1.0
    for delta in schedule.intervals:
        product *= 2.0 * math.cos(omega * delta) ** 2 - 1.0
    return MixingCoefficients(alpha=0.5 * (1.0 + product), beta=0.5 * (1.0 - product))


def iterate_matrices(schedule: MeasurementSchedule, omega: float) -> ProbabilityPair:
    """Step-by-step oracle for :func:`propagate_schedule`.

    Left-multiplies each interval's transition matrix onto the initial
    probability vector (P_s, P_j) = (0, 1).
    """
    v = np.array([0.0, 1.0])
    for delta in schedule.intervals:
        v = step_matrix(delta, omega).as_matrix() @ v
    return ProbabilityPair(p_s=float(v[0]), p_j=float(v[1]))


def regular_coefficients(m: int, delta_t: float, omega: float) -> MixingCoefficients:
    """Closed form for m measurements at regular spacing: cos(2*omega*dt)^m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if delta_t < 0.0:
        raise ValueError("delta_t must be >= 0")
    factor = math.cos(2.0 * omega * delta_t) ** m
    return MixingCoefficients(alpha=0.5 * (1.0 + factor), beta=0.5 * (1.0 - factor))


def zeno_coefficients(m: int) -> MixingCoefficients:
    """m equally spaced measurements inside one transfer time tau.

    beta = (1 - cos(pi/m)^m) / 2 decreases toward zero as m grows: the
    more often the wave function collapses, the harder it becomes to
    leave the initial state.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    factor = math.cos(math.pi / m) ** m
    return MixingCoefficients(alpha=0.5 * (1.0 + factor), beta=0.5 * (1.0 - factor))


def _generator(seed) -> np.random.Generator:
    """Counter-based generator; accepts an int seed, a SeedSequence, or a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return np.random.Generator(np.random.Philox(seed))


def sample_trajectory(schedule: MeasurementSchedule, omega: float, seed) -> list[CollapseOutcome]:
    """Sample the collapse outcome of every measurement in the schedule.

    Starting from the initial state, each measurement flips the
    previously collapsed state with probability sin^2(omega * dt_i).
    Deterministic for a fixed seed.
    """
    rng = _generator(seed)
    state = CollapseOutcome.INITIAL
    outcomes: list[CollapseOutcome] = []
    for delta in schedule.intervals:
        if rng.random() < flip_probability(delta, omega):
            state = state.other()
        outcomes.append(state)
    return outcomes


def sample_final_states(schedule: MeasurementSchedule, omega: float, trials: int, seed) -> np.ndarray:
    """Vectorized final-state sampler: boolean array, True = searched.

    Statistically equivalent to running :func:`sample_trajectory` once
    per trial (independent flip draws per interval), batched for Monte
    Carlo use.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = _generator(seed)
    searched = np.zeros(trials, dtype=bool)
    for delta in schedule.intervals:
        searched ^= rng.random(trials) < flip_probability(delta, omega)
    return searched


def zeno_scan(m_max: int) -> list[tuple[int, MixingCoefficients]]:
    """Mixing coefficients for every measurement count m = 1..m_max."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    return [(m, zeno_coefficients(m)) for m in range(1, m_max + 1)]
