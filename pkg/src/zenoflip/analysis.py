"""Strategy-space analysis: surfaces, payoff integrals, equilibrium scans.

Everything here works on the closed triangle 0 <= T1 <= T2 <= tau in
units of tau.  The win-probability surface is smooth trigonometry, so a
fixed composite Simpson rule on the square-mapped triangle reaches
quadrature error far below the requested tolerances; an adaptive route
and a Monte Carlo sampler provide independent cross-checks.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import integrate as _scipy_integrate

from .collapse import zeno_coefficients
from .games import (
    GameSpec,
    GameVariant,
    PayoffReport,
    StrategyProfile,
    win_probability,
    win_probability_grid,
)

__all__ = [
    "QuadratureError",
    "WinDensity",
    "HeatmapGrid",
    "BestResponse",
    "Maximin",
    "win_density",
    "heatmap",
    "random_strategy_payoff",
    "best_response",
    "maximin_strategy",
    "monte_carlo_payoff",
    "worker_cap",
]

#: Trials per Monte Carlo chunk; fixed so results do not depend on the
#: worker count, only on (trials, seed).
_MC_CHUNK = 1 << 19

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

_THREE_MEASURE_NOTE = (
    "computed pi_s = {pi_s:.9f}; the analytic value for this variant is 5/8. "
    "The sometimes-quoted pi_s = 7/8 is not reproduced: it would violate "
    "pi_s + pi_j = 1 (the matching pi_j = 3/8 is consistent with 5/8)."
)


class QuadratureError(RuntimeError):
    """The quadrature error estimate exceeds the requested tolerance."""


def worker_cap() -> int:
    """Worker-thread cap from ZENOFLIP_THREADS (default 1, serial)."""
    raw = os.environ.get("ZENOFLIP_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class WinDensity:
    """Win probability per unit strategy-space area (units tau^-2)."""

    sigma_s: float
    sigma_j: float


def win_density(game: GameSpec, strategy: StrategyProfile) -> WinDensity:
    """Mixing coefficients scaled by 2/tau^2 so the triangle integrates to 1."""
    scale = 2.0 / game.tau**2
    beta = win_probability(game, strategy)
    return WinDensity(sigma_s=scale * beta, sigma_j=scale * (1.0 - beta))


@dataclass(frozen=True, eq=False)
class HeatmapGrid:
    """Win-probability surface sampled on a uniform (T1, T2) grid.

    ``values[i, k]`` is the probability at (axis[i], axis[k]); cells
    below the diagonal (T1 > T2) are NaN, the explicit undefined marker.
    """

    resolution: int
    values: np.ndarray

    @property
    def axis(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.resolution)

    @property
    def mask(self) -> np.ndarray:
        """True where the cell is undefined (lower triangle)."""
        return np.isnan(self.values)

    def to_csv(self) -> str:
        axis = self.axis
        lines = ["t1,t2,p_s"]
        for i in range(self.resolution):
            for k in range(self.resolution):
                v = self.values[i, k]
                if not math.isnan(v):
                    lines.append(f"{float(axis[i])!r},{float(axis[k])!r},{float(v)!r}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        rows = [[None if math.isnan(v) else float(v) for v in row] for row in self.values]
        return {"resolution": self.resolution, "tau_units": True, "values": rows}


def heatmap(game: GameSpec, resolution: int) -> HeatmapGrid:
    """Evaluate the surface on a closed grid including both corners."""
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    axis = np.linspace(0.0, 1.0, resolution)
    t1, t2 = np.meshgrid(axis, axis, indexing="ij")
    values = win_probability_grid(game, t1, t2)
    values = np.where(t1 > t2, np.nan, values)
    return HeatmapGrid(resolution=resolution, values=values)


def _simpson_weights(n: int) -> np.ndarray:
    # n points, n - 1 subintervals; n must be odd
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * ((1.0 / (n - 1)) / 3.0)


def _triangle_simpson(game: GameSpec, n: int) -> float:
    """Integral of sigma_s over the triangle via the square mapping.

    Substituting T2 = T1 + (1 - T1) v flattens the triangle onto the
    unit square with Jacobian (1 - T1); composite Simpson is applied on
    both axes.
    """
    u = np.linspace(0.0, 1.0, n)
    v = np.linspace(0.0, 1.0, n)
    uu, vv = np.meshgrid(u, v, indexing="ij")
    t1 = uu
    t2 = uu + (1.0 - uu) * vv
    f = 2.0 * win_probability_grid(game, t1, t2) * (1.0 - uu)
    w = _simpson_weights(n)
    return float(w @ f @ w)


def random_strategy_payoff(
    game: GameSpec,
    method: str = "simpson",
    tolerance: float = 1e-8,
    resolution: int = 1025,
) -> PayoffReport:
    """Expected winning probability when both times are drawn uniformly.

    ``method``: ``"simpson"`` for the fixed composite rule with a
    Richardson error estimate, ``"adaptive"`` for library adaptive
    quadrature.  Raises :class:`QuadratureError` when the estimate does
    not reach ``tolerance``.
    """
    if tolerance <= 0.0:
        raise ValueError("tolerance must be positive")
    if method == "simpson":
        if resolution < 5 or resolution % 2 == 0:
            raise ValueError("resolution must be odd and >= 5")
        fine = _triangle_simpson(game, resolution)
        coarse = _triangle_simpson(game, resolution // 2 + 1)
        error = abs(fine - coarse) / 15.0
        pi_s = fine
    elif method == "adaptive":
        value, abserr = _scipy_integrate.dblquad(
            lambda t2, t1: 2.0 * float(win_probability_grid(game, t1, t2)),
            0.0,
            1.0,
            lambda t1: t1,
            lambda t1: 1.0,
            epsabs=0.5 * tolerance,
        )
        pi_s = value
        error = abserr
    else:
        raise ValueError(f"unknown quadrature method {method!r}")
    if error > tolerance:
        raise QuadratureError(f"quadrature error estimate {error:.3e} exceeds tolerance {tolerance:.3e}")

    pi_j = 1.0 - pi_s
    payoff = game.stake * (pi_s - pi_j)
    notes = ()
    if game.variant is GameVariant.THREE_MEASURE:
        notes = (_THREE_MEASURE_NOTE.format(pi_s=pi_s),)
    return PayoffReport(
        pi_s=pi_s,
        pi_j=pi_j,
        payoff_s=payoff,
        payoff_j=-payoff,
        method=method,
        error_estimate=error,
        notes=notes,
    )


@dataclass(frozen=True)
class BestResponse:
    """Silvia's best reply to a committed T1."""

    t2_star: float
    value: float


def _golden_max(f, lo: float, hi: float, tol: float = 1e-12) -> tuple[float, float]:
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _golden_min(f, lo: float, hi: float, tol: float = 1e-7) -> tuple[float, float]:
    x, v = _golden_max(lambda t: -f(t), lo, hi, tol=tol)
    return x, -v


def best_response(game: GameSpec, t1: float, resolution: int = 4097) -> BestResponse:
    """Grid argmax over T2 in [t1, 1], refined by golden-section search.

    Ties break toward the smaller T2 (grid argmax keeps the first
    maximum; refinement only replaces it on a strict improvement), so
    flat rows return T2* = t1.
    """
    if not 0.0 <= t1 <= 1.0:
        raise ValueError("t1 must lie in [0, tau]")
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if game.variant is GameVariant.REGULAR_ZENO:
        return BestResponse(t2_star=t1, value=zeno_coefficients(game.zeno_measurements).beta)

    grid = np.linspace(t1, 1.0, resolution)
    vals = win_probability_grid(game, t1, grid)
    # Argmax on values rounded to 1e-12 so near-flat rows tie toward the
    # first (smallest) T2 instead of following representation noise.
    i = int(np.argmax(np.round(vals, 12)))
    best_t2, best_val = float(grid[i]), float(vals[i])

    lo = float(grid[max(i - 1, 0)])
    hi = float(grid[min(i + 1, resolution - 1)])
    if hi > lo:
        f = lambda x: float(win_probability_grid(game, t1, x))
        x, v = _golden_max(f, lo, hi)
        if v > best_val + 1e-12:
            best_t2, best_val = x, v
    return BestResponse(t2_star=best_t2, value=best_val)


@dataclass(frozen=True)
class Maximin:
    """Juan's grid maximin: the T1 minimizing Silvia's best reply."""

    t1_star: float
    game_value: float
    flat: bool


def maximin_strategy(game: GameSpec, resolution: int = 1001) -> Maximin:
    """Scan T1 for the minimum of the inner T2 maximum, then refine.

    ``flat`` reports whether the surface is constant in T2 at T1* (the
    equilibrium witness), using a 1e-6 variation threshold matched to
    the refinement precision.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if game.variant is GameVariant.REGULAR_ZENO:
        return Maximin(t1_star=0.0, game_value=zeno_coefficients(game.zeno_measurements).beta, flat=True)

    axis = np.linspace(0.0, 1.0, resolution)
    t1g, t2g = np.meshgrid(axis, axis, indexing="ij")
    vals = win_probability_grid(game, t1g, t2g)
    vals = np.where(t1g > t2g, -np.inf, vals)
    inner_max = vals.max(axis=1)
    i = int(np.argmin(inner_max))

    g = lambda t1: best_response(game, t1, resolution).value
    lo = float(axis[max(i - 1, 0)])
    hi = float(axis[min(i + 1, resolution - 1)])
    t1_star, value = float(axis[i]), float(inner_max[i])
    if hi > lo:
        x, v = _golden_min(g, lo, hi)
        if v < value:
            t1_star, value = x, v

    row = win_probability_grid(game, t1_star, np.linspace(t1_star, 1.0, resolution))
    flat = bool(row.max() - row.min() <= 1e-6)
    return Maximin(t1_star=t1_star, game_value=value, flat=flat)


def _sample_batch(game: GameSpec, rng: np.random.Generator, n: int) -> int:
    """Play n independent rounds at uniformly drawn strategies; count Silvia wins.

    The flip chain is the vectorized form of the single-round sampler:
    each measurement flips the previously collapsed state with
    probability sin^2(pi * dt / 2) in units of tau.
    """
    u = rng.random(n)
    v = rng.random(n)
    t1 = np.minimum(u, v)
    t2 = np.maximum(u, v)
    if game.variant is GameVariant.REGULAR_ZENO:
        m = game.zeno_measurements
        p_flip = math.sin(math.pi / (2 * m)) ** 2
        searched = np.zeros(n, dtype=bool)
        for _ in range(m):
            searched ^= rng.random(n) < p_flip
        return int(searched.sum())
    searched = rng.random(n) < np.sin(0.5 * math.pi * t1) ** 2
    searched ^= rng.random(n) < np.sin(0.5 * math.pi * (t2 - t1)) ** 2
    if game.variant is GameVariant.THREE_MEASURE:
        searched ^= rng.random(n) < np.sin(0.5 * math.pi * (1.0 - t2)) ** 2
    return int(searched.sum())


def monte_carlo_payoff(game: GameSpec, trials: int, seed: int) -> PayoffReport:
    """Monte Carlo estimate of the random-strategy winning probability.

    Trials are split into fixed-size chunks with independently derived
    counter-based streams, so the result depends only on (trials, seed);
    chunks may run on up to ZENOFLIP_THREADS workers and are merged by
    order-independent summation.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    sizes = [_MC_CHUNK] * (trials // _MC_CHUNK)
    if trials % _MC_CHUNK:
        sizes.append(trials % _MC_CHUNK)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(args) -> int:
        child, n = args
        return _sample_batch(game, np.random.Generator(np.random.Philox(child)), n)

    cap = worker_cap()
    if cap > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=cap) as pool:
            wins = sum(pool.map(run, zip(seeds, sizes)))
    else:
        wins = sum(run(args) for args in zip(seeds, sizes))

    pi_s = wins / trials
    pi_j = 1.0 - pi_s
    payoff = game.stake * (pi_s - pi_j)
    sigma = math.sqrt(pi_s * pi_j / trials)
    notes = ()
    if game.variant is GameVariant.THREE_MEASURE:
        notes = (_THREE_MEASURE_NOTE.format(pi_s=pi_s),)
    return PayoffReport(
        pi_s=pi_s,
        pi_j=pi_j,
        payoff_s=payoff,
        payoff_j=-payoff,
        method="monte_carlo",
        error_estimate=3.0 * sigma,
        notes=notes,
    )
