"""Resonant two-level search dynamics.

A diagonal Hamiltonian supplies a ladder of eigenstates.  A weak
oscillating coupling, tuned to the transition energy between a known
initial state and one marked member of a search set of size N, drives
a slow oscillation between the two with angular frequency
Omega = 1/sqrt(N).  A measurement at tau = pi/(2*Omega) then finds the
marked state with probability close to one, provided every other
transition energy is large compared to Omega.

This module holds the closed-form two-level model, the exact N-level
integrator used to validate it, and the JSON/CSV adapters for spectrum
configs and trajectories.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = [
    "IntegrationError",
    "SpectrumConfig",
    "ResonanceParams",
    "CouplingPotential",
    "WaveState",
    "ProbabilityPair",
    "TwoLevelValidation",
    "resonance_params",
    "two_level_probabilities",
    "two_level_amplitudes",
    "build_coupling",
    "integrate_full",
    "validate_two_level",
    "linear_spectrum",
    "spectrum_from_json",
    "spectrum_to_json",
    "trajectory_to_csv",
]

#: Norm drift above this aborts an integration (diagnostic failure).
NORM_FAILURE = 1e-6


class IntegrationError(RuntimeError):
    """The integrator left its validity envelope (norm drift too large)."""


@dataclass(frozen=True)
class SpectrumConfig:
    """Eigenvalues of the diagonal Hamiltonian plus the search layout.

    ``search_set`` indexes the N candidate states, ``initial_index`` the
    known starting state (never a member of the search set) and
    ``searched_index`` the marked state inside it.
    """

    eigenvalues: tuple[float, ...]
    search_set: frozenset[int]
    initial_index: int
    searched_index: int

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", tuple(float(e) for e in self.eigenvalues))
        object.__setattr__(self, "search_set", frozenset(int(i) for i in self.search_set))
        if not self.eigenvalues:
            raise ValueError("eigenvalues must be non-empty")
        if not all(math.isfinite(e) for e in self.eigenvalues):
            raise ValueError("eigenvalues must be finite")
        if not self.search_set:
            raise ValueError("search_set must be non-empty")
        valid = range(len(self.eigenvalues))
        if any(i not in valid for i in self.search_set):
            raise ValueError("search_set contains an out-of-range index")
        if self.initial_index not in valid:
            raise ValueError("initial_index out of range")
        if self.searched_index not in valid:
            raise ValueError("searched_index out of range")
        if self.initial_index in self.search_set:
            raise ValueError("initial_index must not belong to the search set")
        if self.searched_index not in self.search_set:
            raise ValueError("searched_index must belong to the search set")

    @property
    def size(self) -> int:
        """Number of states in the search set (N)."""
        return len(self.search_set)

    def bohr_frequency(self, n: int, m: int) -> float:
        """Transition frequency eps_n - eps_m (hbar = 1)."""
        return self.eigenvalues[n] - self.eigenvalues[m]

    @property
    def min_nonzero_gap(self) -> float:
        """Smallest nonzero |eps_n - eps_m| over all pairs.

        Raises ValueError when the spectrum is fully degenerate, since
        the validity report needs a finite frequency scale.
        """
        eps = sorted(self.eigenvalues)
        gaps = [b - a for a, b in zip(eps, eps[1:]) if b - a > 0.0]
        if not gaps:
            raise ValueError("spectrum has no nonzero transition frequency")
        return min(gaps)


@dataclass(frozen=True)
class ResonanceParams:
    """Oscillation frequency Omega = 1/sqrt(N) and transfer time tau = pi/(2*Omega)."""

    omega: float
    tau: float

    def __post_init__(self):
        if self.omega <= 0.0:
            raise ValueError("omega must be positive")


def resonance_params(num_states: int) -> ResonanceParams:
    """Two-level parameters for a search set of ``num_states`` members."""
    if num_states < 1:
        raise ValueError("num_states must be >= 1")
    omega = 1.0 / math.sqrt(num_states)
    return ResonanceParams(omega=omega, tau=math.pi / (2.0 * omega))


@dataclass(frozen=True)
class ProbabilityPair:
    """Occupation probabilities of the searched and initial states."""

    p_s: float
    p_j: float


def two_level_probabilities(t: float, params: ResonanceParams) -> ProbabilityPair:
    """Closed-form populations at time t: (sin^2(Omega t), cos^2(Omega t))."""
    if t < 0.0:
        raise ValueError("t must be >= 0")
    c = math.cos(params.omega * t)
    s = math.sin(params.omega * t)
    return ProbabilityPair(p_s=s * s, p_j=c * c)


def two_level_amplitudes(t: float, params: ResonanceParams) -> tuple[float, float]:
    """Real amplitude pair (a_j, a_s) = (cos(Omega t), sin(Omega t)).

    The initial and searched amplitudes trace the unit circle; their
    squares reproduce :func:`two_level_probabilities`.
    """
    if t < 0.0:
        raise ValueError("t must be >= 0")
    return math.cos(params.omega * t), math.sin(params.omega * t)


@dataclass(frozen=True)
class CouplingPotential:
    """Oscillating coupling between the initial state and the search set.

    The only nonzero matrix elements connect ``initial_index`` with the
    search-set states; each has magnitude ``amplitude`` and carries the
    phase exp(i * drive_frequency * t) (conjugated on the adjoint side,
    so the operator is hermitian at every instant).
    """

    amplitude: float
    drive_frequency: float
    search_set: frozenset[int]
    initial_index: int

    def __post_init__(self):
        if self.amplitude < 0.0:
            raise ValueError("amplitude must be >= 0")
        if not self.search_set:
            raise ValueError("search_set must be non-empty")
        if self.initial_index in self.search_set:
            raise ValueError("initial_index must not belong to the search set")

    def matrix(self, dim: int, t: float) -> np.ndarray:
        """Full dim x dim coupling matrix at time t (eigenbasis of H0)."""
        v = np.zeros((dim, dim), dtype=complex)
        phase = self.amplitude * np.exp(1j * self.drive_frequency * t)
        idx = sorted(self.search_set)
        v[idx, self.initial_index] = phase
        v[self.initial_index, idx] = np.conj(phase)
        return v


def build_coupling(spectrum: SpectrumConfig) -> CouplingPotential:
    """Coupling with amplitude 1/sqrt(N), driven at eps_j - eps_s.

    That drive sign makes the interaction-picture phase of the
    initial-to-searched element stationary; the opposite sign leaves
    every element oscillating and no population transfer occurs.
    """
    n = spectrum.size
    drive = spectrum.eigenvalues[spectrum.initial_index] - spectrum.eigenvalues[spectrum.searched_index]
    return CouplingPotential(
        amplitude=1.0 / math.sqrt(n),
        drive_frequency=drive,
        search_set=spectrum.search_set,
        initial_index=spectrum.initial_index,
    )


@dataclass(frozen=True, eq=False)
class WaveState:
    """Interaction-picture amplitude vector at one instant."""

    amplitudes: np.ndarray
    time: float

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def probability(self, n: int) -> float:
        return float(abs(self.amplitudes[n]) ** 2)

    @property
    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


def integrate_full(
    spectrum: SpectrumConfig,
    coupling: CouplingPotential,
    t_end: float,
    dt: float,
    stride: int = 100,
) -> list[WaveState]:
    """Integrate the full N-level coefficient equations from the initial state.

    Works in the interaction picture, i * da_n/dt = sum_m V_nm(t)
    exp(i w_nm t) a_m, with a classical fixed-step 4th-order Runge-Kutta
    scheme.  The step is adjusted to the nearest divisor of ``t_end`` so
    the final sample lands exactly on it.  The trajectory is sampled
    every ``stride`` steps (first and last states always included).

    Raises :class:`IntegrationError` if the norm drifts beyond 1e-6.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if t_end <= 0.0:
        raise ValueError("t_end must be positive")
    if dt >= t_end:
        raise ValueError("dt must be smaller than t_end")
    if stride < 1:
        raise ValueError("stride must be >= 1")

    dim = len(spectrum.eigenvalues)
    j = spectrum.initial_index
    idx = np.array(sorted(coupling.search_set), dtype=int)
    eps = np.array(spectrum.eigenvalues)
    # Interaction-picture phase frequency of each search-set element:
    # drive + w_nj.  At resonance the searched entry is exactly zero.
    freqs = coupling.drive_frequency + eps[idx] - eps[j]
    amp = coupling.amplitude

    n_steps = max(1, round(t_end / dt))
    h = t_end / n_steps

    def deriv(t: float, a: np.ndarray) -> np.ndarray:
        ph = np.exp(1j * freqs * t)
        out = np.zeros_like(a)
        out[idx] = (-1j * amp) * ph * a[j]
        out[j] = (-1j * amp) * np.sum(np.conj(ph) * a[idx])
        return out

    a = np.zeros(dim, dtype=complex)
    a[j] = 1.0
    trajectory = [WaveState(a, 0.0)]
    for k in range(n_steps):
        t = k * h
        k1 = deriv(t, a)
        k2 = deriv(t + 0.5 * h, a + (0.5 * h) * k1)
        k3 = deriv(t + 0.5 * h, a + (0.5 * h) * k2)
        k4 = deriv(t + h, a + h * k3)
        a = a + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if (k + 1) % stride == 0 or k + 1 == n_steps:
            state = WaveState(a, (k + 1) * h)
            if abs(state.norm_squared - 1.0) > NORM_FAILURE:
                raise IntegrationError(
                    f"norm drift {abs(state.norm_squared - 1.0):.3e} at t={state.time:.6g} "
                    f"exceeds {NORM_FAILURE:.0e}; reduce dt"
                )
            trajectory.append(state)
    return trajectory


@dataclass(frozen=True)
class TwoLevelValidation:
    """Deviation of the full integration from the two-level model."""

    sup_deviation: float
    p_s_final: float
    norm_drift: float


def validate_two_level(spectrum: SpectrumConfig, dt: float, stride: int = 100) -> TwoLevelValidation:
    """Compare the exact integration against sin^2(Omega t) over [0, tau].

    The comparison grid is the integrator's own sample grid, so both
    curves are evaluated at identical times.
    """
    params = resonance_params(spectrum.size)
    coupling = build_coupling(spectrum)
    trajectory = integrate_full(spectrum, coupling, params.tau, dt, stride=stride)
    s = spectrum.searched_index
    sup = 0.0
    drift = 0.0
    for state in trajectory:
        model = two_level_probabilities(state.time, params).p_s
        sup = max(sup, abs(state.probability(s) - model))
        drift = max(drift, abs(state.norm_squared - 1.0))
    return TwoLevelValidation(
        sup_deviation=sup,
        p_s_final=trajectory[-1].probability(s),
        norm_drift=drift,
    )


def linear_spectrum(num_states: int = 100) -> SpectrumConfig:
    """Equally spaced validation spectrum: eps_n = n for n = 0..N.

    Initial state 0, search set {1..N}, marked state N/2.  The smallest
    transition frequency is 1, so the validity ratio to Omega is
    sqrt(N).
    """
    if num_states < 1:
        raise ValueError("num_states must be >= 1")
    return SpectrumConfig(
        eigenvalues=tuple(float(n) for n in range(num_states + 1)),
        search_set=frozenset(range(1, num_states + 1)),
        initial_index=0,
        searched_index=max(1, num_states // 2),
    )


def spectrum_from_json(text: str) -> SpectrumConfig:
    """Load a spectrum config from its JSON document form."""
    doc = json.loads(text)
    try:
        return SpectrumConfig(
            eigenvalues=tuple(doc["eigenvalues"]),
            search_set=frozenset(doc["search_set"]),
            initial_index=int(doc["initial_index"]),
            searched_index=int(doc["searched_index"]),
        )
    except KeyError as missing:
        raise ValueError(f"spectrum JSON is missing key {missing}") from None


def spectrum_to_json(spectrum: SpectrumConfig) -> str:
    return json.dumps(
        {
            "eigenvalues": list(spectrum.eigenvalues),
            "search_set": sorted(spectrum.search_set),
            "initial_index": spectrum.initial_index,
            "searched_index": spectrum.searched_index,
        }
    )


def trajectory_to_csv(trajectory: Iterable[WaveState], spectrum: SpectrumConfig) -> str:
    """Render a trajectory as CSV with header ``t,P_j,P_s,P_rest,norm``."""
    j = spectrum.initial_index
    s = spectrum.searched_index
    lines = ["t,P_j,P_s,P_rest,norm"]
    for state in trajectory:
        norm = state.norm_squared
        p_j = state.probability(j)
        p_s = state.probability(s)
        rest = norm - p_j - p_s
        lines.append(f"{state.time!r},{p_j!r},{p_s!r},{rest!r},{norm!r}")
    return "\n".join(lines) + "\n"
