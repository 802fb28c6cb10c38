import json
import math

import numpy as np
import pytest

from zenoflip.analysis import (
    QuadratureError,
    best_response,
    heatmap,
    maximin_strategy,
    monte_carlo_payoff,
    random_strategy_payoff,
    win_density,
    worker_cap,
)
from zenoflip.games import GameSpec, StrategyProfile, play_round, win_probability_grid

G1 = GameSpec.two_measure()
G2 = GameSpec.three_measure()


def brute_force_best_response(game, t1, n=100001):
    """Independent argmax oracle: dense grid scan, first maximum."""
    grid = np.linspace(t1, 1.0, n)
    vals = win_probability_grid(game, t1, grid)
    i = int(np.argmax(np.round(vals, 12)))
    return float(grid[i]), float(vals[i])


class TestWinDensity:
    def test_even_point(self):
        d = win_density(G1, StrategyProfile(0.5, 0.9))
        assert d.sigma_s == pytest.approx(1.0, abs=1e-12)
        assert d.sigma_j == pytest.approx(1.0, abs=1e-12)

    def test_certain_corner(self):
        d = win_density(G1, StrategyProfile(1.0, 1.0))
        assert (d.sigma_s, d.sigma_j) == (2.0, 0.0)

    def test_total_density_constant(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            a, b = sorted(rng.uniform(0.0, 1.0, 2))
            d = win_density(G2, StrategyProfile(a, b))
            assert d.sigma_s + d.sigma_j == pytest.approx(2.0, abs=1e-12)


class TestHeatmap:
    def test_corners_game1(self):
        grid = heatmap(G1, 400)
        assert grid.values[-1, -1] == 1.0
        assert grid.values[0, 0] == 0.0

    def test_corner_game2(self):
        grid = heatmap(G2, 400)
        assert grid.values[0, 0] == 1.0

    def test_nash_row_flat(self):
        grid = heatmap(G1, 401)
        row = grid.values[200]
        defined = row[~np.isnan(row)]
        assert np.all(np.abs(defined - 0.5) <= 1e-12)

    def test_lower_triangle_masked(self):
        grid = heatmap(G1, 11)
        assert math.isnan(grid.values[5, 2])
        assert not math.isnan(grid.values[2, 5])
        assert not math.isnan(grid.values[4, 4])

    def test_resolution_three_has_six_cells(self):
        grid = heatmap(G1, 3)
        assert int((~grid.mask).sum()) == 6

    def test_resolution_validation(self):
        with pytest.raises(ValueError):
            heatmap(G1, 1)

    def test_defined_values_in_range(self):
        grid = heatmap(G2, 101)
        defined = grid.values[~grid.mask]
        assert defined.min() >= 0.0 and defined.max() <= 1.0

    def test_csv_export(self):
        grid = heatmap(G1, 3)
        lines = grid.to_csv().strip().split("\n")
        assert lines[0] == "t1,t2,p_s"
        assert len(lines) == 7
        last = lines[-1].split(",")
        assert (float(last[0]), float(last[1]), float(last[2])) == (1.0, 1.0, 1.0)

    def test_csv_stable_across_runs(self):
        assert heatmap(G2, 51).to_csv() == heatmap(G2, 51).to_csv()

    def test_json_masks_with_null(self):
        doc = heatmap(G1, 3).to_json_dict()
        assert doc["resolution"] == 3
        assert doc["tau_units"] is True
        assert doc["values"][1][0] is None
        assert doc["values"][0][1] == pytest.approx(0.5, abs=1e-12)
        assert doc["values"][0][2] == 1.0
        json.dumps(doc)  # masked cells must be serializable

    def test_time_reversal_symmetry_game2(self):
        grid = heatmap(G2, 101)
        values = grid.values
        n = grid.resolution
        for i in range(0, n, 7):
            for k in range(i, n, 7):
                mirrored = values[n - 1 - k, n - 1 - i]
                assert values[i, k] == pytest.approx(mirrored, abs=1e-12)


class TestQuadrature:
    def test_game1_even(self):
        report = random_strategy_payoff(G1)
        assert abs(report.pi_s - 0.5) <= 1e-8
        assert report.payoff_s == pytest.approx(0.0, abs=1e-8)
        assert report.error_estimate <= 1e-8
        assert report.notes == ()

    def test_game2_favors_silvia(self):
        report = random_strategy_payoff(G2)
        assert abs(report.pi_s - 0.625) <= 1e-6
        assert report.payoff_s == pytest.approx(0.25, abs=1e-6)
        assert any("7/8" in note for note in report.notes)

    def test_adaptive_agrees(self):
        fixed = random_strategy_payoff(G2, method="simpson")
        adaptive = random_strategy_payoff(G2, method="adaptive", tolerance=1e-9)
        assert fixed.pi_s == pytest.approx(adaptive.pi_s, abs=1e-8)

    def test_zero_stake(self):
        report = random_strategy_payoff(GameSpec(G2.variant, stake=0.0))
        assert report.payoff_s == 0.0

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            random_strategy_payoff(G1, method="trapezoid")

    def test_unreachable_tolerance_raises(self):
        with pytest.raises(QuadratureError):
            random_strategy_payoff(G2, method="simpson", tolerance=1e-18)

    def test_normalization_over_triangle(self):
        # sigma_s + sigma_j integrates to exactly 1 over the triangle
        pi_s = random_strategy_payoff(G2).pi_s
        pi_j = random_strategy_payoff(G2).pi_j
        assert pi_s + pi_j == pytest.approx(1.0, abs=1e-10)

    def test_transposed_triangle_agrees(self):
        # the integrand is swap-symmetric, so integrating the transposed
        # region returns the same value for both games
        def transposed(game, n=513):
            u = np.linspace(0.0, 1.0, n)
            v = np.linspace(0.0, 1.0, n)
            uu, vv = np.meshgrid(u, v, indexing="ij")
            t1 = uu
            t2 = uu * vv  # T2 in [0, T1]
            f = 2.0 * win_probability_grid(game, t1, t2) * uu
            w = np.ones(n)
            w[1:-1:2], w[2:-1:2] = 4.0, 2.0
            w *= (1.0 / (n - 1)) / 3.0
            return float(w @ f @ w)

        assert transposed(G1) == pytest.approx(0.5, abs=1e-9)
        assert transposed(G2) == pytest.approx(0.625, abs=1e-9)


class TestBestResponse:
    def test_early_first_measurement(self):
        reply = best_response(G1, 0.25)
        oracle_t2, oracle_val = brute_force_best_response(G1, 0.25)
        assert reply.t2_star == pytest.approx(1.0, abs=1e-9)
        assert reply.value == pytest.approx(0.75, abs=1e-12)
        assert reply.value == pytest.approx(oracle_val, abs=1e-9)
        assert reply.t2_star == pytest.approx(oracle_t2, abs=1e-4)

    def test_late_first_measurement_prefers_immediate_remeasure(self):
        reply = best_response(G1, 0.75)
        oracle_t2, oracle_val = brute_force_best_response(G1, 0.75)
        assert reply.t2_star == pytest.approx(0.75, abs=1e-9)
        assert reply.value == pytest.approx(math.sin(3 * math.pi / 8) ** 2, abs=1e-12)
        assert reply.value == pytest.approx(oracle_val, abs=1e-9)
        assert reply.t2_star == pytest.approx(oracle_t2, abs=1e-4)

    def test_flat_row_ties_to_t1(self):
        reply = best_response(G1, 0.5)
        assert reply.t2_star == 0.5
        assert reply.value == pytest.approx(0.5, abs=1e-12)

    def test_game2_interior_maximum(self):
        # for late T1 the best reply sits strictly inside (T1, 1)
        reply = best_response(G2, 0.75)
        oracle_t2, oracle_val = brute_force_best_response(G2, 0.75)
        assert 0.75 < reply.t2_star < 1.0
        assert reply.t2_star == pytest.approx(0.875, abs=1e-4)
        assert reply.value == pytest.approx(oracle_val, abs=1e-9)

    def test_invalid_t1(self):
        with pytest.raises(ValueError):
            best_response(G1, 1.5)


class TestMaximin:
    def test_game1(self):
        result = maximin_strategy(G1, 1001)
        assert result.t1_star == pytest.approx(0.5, abs=1e-3)
        assert result.game_value == pytest.approx(0.5, abs=1e-9)
        assert result.flat

    def test_game2(self):
        result = maximin_strategy(G2, 1001)
        assert result.t1_star == pytest.approx(0.5, abs=1e-3)
        assert result.game_value == pytest.approx(0.5, abs=1e-9)
        assert result.flat

    def test_zeno_variant_has_no_strategy(self):
        result = maximin_strategy(GameSpec.regular_zeno(4), 101)
        assert result.game_value == pytest.approx(0.375, abs=1e-15)
        assert result.flat

    def test_consistency_with_best_response(self):
        result = maximin_strategy(G1, 501)
        reply = best_response(G1, result.t1_star)
        assert reply.value == pytest.approx(result.game_value, abs=1e-9)

    def test_flat_is_false_away_from_equilibrium(self):
        # a direct witness that the flat flag is discriminating
        row = win_probability_grid(G1, 0.2, np.linspace(0.2, 1.0, 100))
        assert row.max() - row.min() > 1e-3


class TestMonteCarlo:
    def test_game1_million_trials(self):
        report = monte_carlo_payoff(G1, 10**6, seed=0)
        assert abs(report.pi_s - 0.5) <= 0.0015
        assert report.error_estimate <= 0.0016

    def test_game2_against_quadrature(self):
        mc = monte_carlo_payoff(G2, 10**6, seed=1)
        quad = random_strategy_payoff(G2)
        assert abs(mc.pi_s - quad.pi_s) <= mc.error_estimate
        assert any("7/8" in note for note in mc.notes)

    def test_single_trial_is_extreme(self):
        report = monte_carlo_payoff(G1, 1, seed=4)
        assert report.pi_s in (0.0, 1.0)

    def test_deterministic(self):
        a = monte_carlo_payoff(G1, 10**4, seed=33)
        b = monte_carlo_payoff(G1, 10**4, seed=33)
        assert a == b

    def test_zeno_variant(self):
        report = monte_carlo_payoff(GameSpec.regular_zeno(4), 10**5, seed=2)
        assert abs(report.pi_s - 0.375) <= report.error_estimate

    def test_agrees_with_played_rounds(self):
        # the batch sampler and the single-round path draw from the same
        # distribution; both must sit within 3 sigma of the quadrature value
        trials = 4000
        rng = np.random.default_rng(17)
        wins = 0
        for k in range(trials):
            a, b = sorted(rng.uniform(0.0, 1.0, 2))
            result = play_round(G1, StrategyProfile(float(a), float(b)), seed=k)
            wins += result.payoff_silvia > 0
        sigma = math.sqrt(0.25 / trials)
        assert abs(wins / trials - 0.5) <= 3 * sigma
        batch = monte_carlo_payoff(G1, trials, seed=17)
        assert abs(batch.pi_s - 0.5) <= 3 * sigma

    def test_worker_cap_reads_environment(self, monkeypatch):
        monkeypatch.setenv("ZENOFLIP_THREADS", "4")
        assert worker_cap() == 4
        monkeypatch.setenv("ZENOFLIP_THREADS", "bogus")
        assert worker_cap() == 1
        monkeypatch.delenv("ZENOFLIP_THREADS")
        assert worker_cap() == 1

    def test_result_independent_of_worker_count(self, monkeypatch):
        trials = 3 * (1 << 19) + 1234  # four chunks
        monkeypatch.setenv("ZENOFLIP_THREADS", "1")
        serial = monte_carlo_payoff(G1, trials, seed=8)
        monkeypatch.setenv("ZENOFLIP_THREADS", "4")
        threaded = monte_carlo_payoff(G1, trials, seed=8)
        assert serial == threaded
