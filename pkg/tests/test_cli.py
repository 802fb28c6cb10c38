import json

import pytest

from zenoflip.cli import run_cli


def run(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestZeno:
    def test_first_four_rows(self, capsys):
        code, out, _ = run(capsys, "zeno", "--m-max", "4")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "m,alpha,beta"
        betas = [float(line.split(",")[2]) for line in lines[1:]]
        assert betas == pytest.approx([1.0, 0.5, 0.4375, 0.375], abs=1e-12)

    def test_json_mode(self, capsys):
        code, out, _ = run(capsys, "zeno", "--m-max", "2", "--format", "json")
        assert code == 0
        rows = json.loads(out)
        assert rows[0]["m"] == 1
        assert rows[1]["beta"] == pytest.approx(0.5, abs=1e-15)

    def test_bad_m(self, capsys):
        code, _, err = run(capsys, "zeno", "--m-max", "0")
        assert code == 2
        assert "m_max" in err


class TestHeatmap:
    def test_resolution_three_cell_count(self, capsys):
        code, out, _ = run(capsys, "heatmap", "--game", "1", "--resolution", "3")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "t1,t2,p_s"
        assert len(lines) - 1 == 6

    def test_json_fields(self, capsys):
        code, out, _ = run(capsys, "heatmap", "--game", "2", "--resolution", "5", "--format", "json")
        doc = json.loads(out)
        assert set(doc.keys()) == {"resolution", "tau_units", "values"}
        assert doc["values"][0][0] == 1.0

    def test_unknown_flag_rejected(self, capsys):
        code, _, _ = run(capsys, "heatmap", "--game", "1", "--sneaky", "1")
        assert code == 2

    def test_requires_game(self, capsys):
        code, _, _ = run(capsys, "heatmap")
        assert code == 2


class TestPayoff:
    def test_game1_quadrature(self, capsys):
        code, out, _ = run(capsys, "payoff", "--game", "1", "--method", "quadrature", "--tol", "1e-8")
        assert code == 0
        doc = json.loads(out)
        assert doc["pi_s"] == pytest.approx(0.5, abs=1e-8)
        assert doc["method"] == "simpson"

    def test_game2_flags_reference_conflict(self, capsys):
        code, out, _ = run(capsys, "payoff", "--game", "2")
        doc = json.loads(out)
        assert doc["pi_s"] == pytest.approx(0.625, abs=1e-6)
        assert any("7/8" in note for note in doc["notes"])

    def test_monte_carlo(self, capsys):
        code, out, _ = run(capsys, "payoff", "--game", "1", "--method", "mc", "--trials", "20000", "--seed", "5")
        doc = json.loads(out)
        assert abs(doc["pi_s"] - 0.5) <= doc["error_estimate"]

    def test_impossible_tolerance_is_numerical_failure(self, capsys):
        code, _, err = run(capsys, "payoff", "--game", "1", "--tol", "1e-18")
        assert code == 1
        assert "tolerance" in err


class TestAmplitudes:
    def test_unit_circle(self, capsys):
        code, out, _ = run(capsys, "amplitudes", "--points", "5")
        lines = out.strip().split("\n")
        assert lines[0] == "t,a_j,a_s"
        assert len(lines) == 6
        for line in lines[1:]:
            t, a_j, a_s = map(float, line.split(","))
            assert a_j**2 + a_s**2 == pytest.approx(1.0, abs=1e-12)
        start = lines[1].split(",")
        assert (float(start[1]), float(start[2])) == (1.0, 0.0)


class TestSimulate:
    def test_round_lines(self, capsys):
        code, out, _ = run(
            capsys, "simulate", "--game", "1", "--t1", "0", "--t2", "1", "--rounds", "3", "--seed", "1"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 3
        for line in lines:
            doc = json.loads(line)
            assert doc["final"] == "s"
            assert doc["payoff_s"] == 1.0

    def test_strategy_violation_names_constraint(self, capsys):
        code, _, err = run(capsys, "simulate", "--game", "1", "--t1", "0.8", "--t2", "0.2")
        assert code == 2
        assert "T1 <= T2" in err

    def test_out_of_range_time(self, capsys):
        code, _, err = run(capsys, "simulate", "--game", "2", "--t1", "0.5", "--t2", "1.5")
        assert code == 2
        assert "T2 <= tau" in err


class TestValidate:
    def test_small_spectrum_report(self, capsys):
        code, out, _ = run(capsys, "validate", "--num-states", "9", "--dt", "2e-3")
        assert code == 0
        doc = json.loads(out)
        assert set(doc.keys()) == {"num_states", "dt", "sup_deviation", "p_s_final", "norm_drift"}
        assert doc["norm_drift"] <= 1e-8
        assert doc["p_s_final"] > 0.5

    def test_spectrum_json_input(self, capsys, tmp_path):
        path = tmp_path / "spectrum.json"
        path.write_text(
            json.dumps(
                {
                    "eigenvalues": [0.0, 50.0, 120.0],
                    "search_set": [1],
                    "initial_index": 0,
                    "searched_index": 1,
                }
            )
        )
        code, out, _ = run(capsys, "validate", "--spectrum-json", str(path), "--dt", "1e-3")
        assert code == 0
        assert json.loads(out)["sup_deviation"] <= 1e-3


class TestReproducibility:
    def test_identical_argv_identical_bytes(self, tmp_path, capsys):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        for path in (a, b):
            code = run_cli(["heatmap", "--game", "1", "--resolution", "41", "--output", str(path)])
            assert code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_mc_seed_reproducible(self, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        for path in (a, b):
            run_cli(["payoff", "--game", "2", "--method", "mc", "--trials", "5000", "--seed", "9", "--output", str(path)])
        assert a.read_bytes() == b.read_bytes()

    def test_simulate_seed_reproducible(self, tmp_path):
        a = tmp_path / "a.jsonl"
        b = tmp_path / "b.jsonl"
        for path in (a, b):
            run_cli(["simulate", "--game", "2", "--t1", "0.3", "--t2", "0.7", "--rounds", "20", "--seed", "3", "--output", str(path)])
        assert a.read_bytes() == b.read_bytes()
