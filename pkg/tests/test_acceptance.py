"""Acceptance gate: every primary criterion at its stated tolerance.

Each test prints one machine-greppable PASS/FAIL line; run with
``pytest tests/test_acceptance.py -v -s`` to see them.
"""

import math
import time

import numpy as np
import pytest

from zenoflip.analysis import heatmap, maximin_strategy, monte_carlo_payoff, random_strategy_payoff
from zenoflip.collapse import (
    CollapseOutcome,
    MeasurementSchedule,
    iterate_matrices,
    propagate_schedule,
    regular_coefficients,
    sample_trajectory,
    zeno_coefficients,
)
from zenoflip.games import GameSpec, win_probability_grid
from zenoflip.resonance import linear_spectrum, resonance_params, validate_two_level

G1 = GameSpec.two_measure()
G2 = GameSpec.three_measure()
TAU = math.pi / 2  # omega = 1 units for schedule-level criteria
OMEGA = 1.0


def report(name: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} ({detail})", flush=True)
    assert ok, f"{name}: {detail}"


def test_game1_random_strategy_payoff():
    start = time.perf_counter()
    quad = random_strategy_payoff(G1, tolerance=1e-8)
    mc = monte_carlo_payoff(G1, 10**6, seed=0)
    elapsed = time.perf_counter() - start
    quad_err = abs(quad.pi_s - 0.5)
    mc_err = abs(mc.pi_s - 0.5)
    ok = quad_err <= 1e-8 and mc_err <= mc.error_estimate and elapsed < 10.0
    report(
        "game-1 random-strategy payoff",
        ok,
        f"quadrature |pi_s-0.5|={quad_err:.2e} (tol 1e-8), "
        f"mc |pi_s-0.5|={mc_err:.2e} (3sigma {mc.error_estimate:.2e}), {elapsed:.1f}s < 10s",
    )


def test_game2_random_strategy_payoff():
    start = time.perf_counter()
    quad = random_strategy_payoff(G2, tolerance=1e-8)
    mc = monte_carlo_payoff(G2, 10**6, seed=1)
    elapsed = time.perf_counter() - start
    agreement = abs(quad.pi_s - mc.pi_s)
    value_err = abs(quad.pi_s - 0.625)
    flagged = any("7/8" in note for note in quad.notes) and any("7/8" in note for note in mc.notes)
    ok = agreement <= mc.error_estimate and value_err <= 1e-6 and flagged and elapsed < 30.0
    report(
        "game-2 random-strategy payoff",
        ok,
        f"|quad-mc|={agreement:.2e} (3sigma {mc.error_estimate:.2e}), "
        f"|quad-0.625|={value_err:.2e} (tol 1e-6), conflict flagged={flagged}, {elapsed:.1f}s < 30s",
    )


def test_nash_flatness():
    t2 = np.linspace(0.5, 1.0, 10**4)
    dev1 = float(np.abs(win_probability_grid(G1, 0.5, t2) - 0.5).max())
    dev2 = float(np.abs(win_probability_grid(G2, 0.5, t2) - 0.5).max())
    ok = dev1 <= 1e-12 and dev2 <= 1e-12
    report(
        "nash flatness at T1=0.5",
        ok,
        f"game-1 max|p-0.5|={dev1:.2e}, game-2 max|p-0.5|={dev2:.2e} (tol 1e-12, 1e4-point grids)",
    )


def test_maximin_strategy():
    resolution = 1001
    step = 1.0 / (resolution - 1)
    results = {name: maximin_strategy(game, resolution) for name, game in (("game-1", G1), ("game-2", G2))}
    ok = all(
        abs(r.t1_star - 0.5) <= step and abs(r.game_value - 0.5) <= 1e-9 and r.flat
        for r in results.values()
    )
    detail = ", ".join(
        f"{name}: T1*={r.t1_star:.6f} (step {step:.0e}), value err={abs(r.game_value - 0.5):.2e}, flat={r.flat}"
        for name, r in results.items()
    )
    report("maximin strategy", ok, detail + " (tol 1e-9)")


def test_zeno_suite():
    betas = [zeno_coefficients(m).beta for m in range(1, 65)]
    expected_first = [1.0, 0.5, 0.4375, 0.375]
    closed_form_err = max(abs(b - e) for b, e in zip(betas, expected_first))
    monotone = all(a > b for a, b in zip(betas, betas[1:]))
    tail = zeno_coefficients(1000).beta
    ok = closed_form_err <= 1e-12 and monotone and tail < 0.005
    report(
        "zeno suite",
        ok,
        f"m=1..4 closed-form err={closed_form_err:.2e} (tol 1e-12), "
        f"strictly decreasing m=1..64: {monotone}, beta(1000)={tail:.4f} < 0.005",
    )


def test_equal_interval_mixing():
    beta = regular_coefficients(1000, TAU / 3, OMEGA).beta
    err = abs(beta - 0.5)
    ok = err <= 1e-9
    report("equal-interval mixing", ok, f"|beta(m=1000, dt=tau/3) - 0.5|={err:.2e} (tol 1e-9)")


def test_oracle_equivalence_and_sampling():
    rng = np.random.default_rng(2718)
    worst = 0.0
    for _ in range(1000):
        m = int(rng.integers(0, 9))
        times = np.sort(rng.uniform(0.0, 3 * TAU, m))
        sch = MeasurementSchedule(tuple(float(t) for t in times))
        closed = propagate_schedule(sch, OMEGA)
        stepped = iterate_matrices(sch, OMEGA)
        worst = max(worst, abs(closed.beta - stepped.p_s), abs(closed.alpha - stepped.p_j))

    trials = 10**5
    sampling_ok = True
    worst_pull = 0.0
    for k in range(10):
        m = int(rng.integers(1, 7))
        times = np.sort(rng.uniform(0.0, 3 * TAU, m))
        sch = MeasurementSchedule(tuple(float(t) for t in times))
        beta = propagate_schedule(sch, OMEGA).beta
        hits = sum(
            sample_trajectory(sch, OMEGA, seed)[-1] is CollapseOutcome.SEARCHED
            for seed in range(k * trials, (k + 1) * trials)
        )
        sigma = math.sqrt(max(beta * (1.0 - beta), 1e-12) / trials)
        pull = abs(hits / trials - beta) / sigma
        worst_pull = max(worst_pull, pull)
        sampling_ok = sampling_ok and pull <= 3.0

    ok = worst <= 1e-12 and sampling_ok
    report(
        "oracle equivalence",
        ok,
        f"1000 schedules max diff={worst:.2e} (tol 1e-12); "
        f"10 schedules x 1e5 trials worst pull={worst_pull:.2f} sigma (tol 3)",
    )


def test_two_level_validity():
    start = time.perf_counter()
    spectrum = linear_spectrum(100)
    fine = validate_two_level(spectrum, 1e-3)
    finer = validate_two_level(spectrum, 0.5e-3)
    elapsed = time.perf_counter() - start
    shift = abs(fine.p_s_final - finer.p_s_final)
    ok = (
        fine.p_s_final >= 0.9
        and fine.sup_deviation <= 0.1
        and fine.norm_drift <= 1e-8
        and shift <= 1e-6
        and elapsed < 60.0
    )
    report(
        "two-level validity",
        ok,
        f"P_s(tau)={fine.p_s_final:.4f} >= 0.9, sup dev={fine.sup_deviation:.4f} <= 0.1, "
        f"norm drift={fine.norm_drift:.2e} <= 1e-8, dt/2 shift={shift:.2e} <= 1e-6, {elapsed:.1f}s < 60s",
    )


def test_game2_floor():
    grid = heatmap(G2, 400)
    floor = float(np.nanmin(grid.values))
    ok = floor >= 0.29
    report("game-2 probability floor", ok, f"400x400 grid min={floor:.4f} >= 0.29")


def test_heatmap_goldens():
    csv1_a = heatmap(G1, 101).to_csv()
    csv1_b = heatmap(G1, 101).to_csv()
    csv2_a = heatmap(G2, 101).to_csv()
    csv2_b = heatmap(G2, 101).to_csv()
    corner1 = heatmap(G1, 101).values[-1, -1]
    corner2 = heatmap(G2, 101).values[0, 0]
    ok = csv1_a == csv1_b and csv2_a == csv2_b and corner1 == 1.0 and corner2 == 1.0
    report(
        "heatmap goldens",
        ok,
        f"game-1/2 CSVs byte-identical: {csv1_a == csv1_b and csv2_a == csv2_b}, "
        f"corners (tau,tau)={corner1}, (0,0)={corner2} (exact 1.0)",
    )
