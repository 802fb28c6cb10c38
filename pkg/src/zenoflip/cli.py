"""Command-line entry point.

Emits every analysis product as CSV or JSON data files and runs the
integrator validation.  Strategy and schedule times on the command line
are always in units of tau; only ``validate`` works in physical units.
Identical argv plus seed produce byte-identical output files.  The
environment variable ZENOFLIP_THREADS caps worker parallelism in the
library routines that parallelize (Monte Carlo chunking).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import analysis, collapse, games, resonance

__all__ = ["run_cli", "main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zenoflip", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, formats=("csv", "json")) -> None:
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--output", default="-", help="output path, '-' for stdout")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("amplitudes", help="initial/searched amplitudes on the unit circle")
    p.add_argument("--points", type=int, default=201)
    common(p)

    p = sub.add_parser("heatmap", help="win-probability surface over the strategy triangle")
    p.add_argument("--game", type=int, choices=(1, 2), required=True)
    p.add_argument("--resolution", type=int, default=101)
    common(p)

    p = sub.add_parser("payoff", help="random-strategy payoff report")
    p.add_argument("--game", type=int, choices=(1, 2), required=True)
    p.add_argument("--method", choices=("quadrature", "mc"), default="quadrature")
    p.add_argument("--quadrature-rule", choices=("simpson", "adaptive"), default="simpson")
    p.add_argument("--trials", type=int, default=10**6)
    p.add_argument("--tol", type=float, default=1e-8)
    common(p, formats=("json", "csv"))

    p = sub.add_parser("zeno", help="mixing coefficients for m measurements in [0, tau]")
    p.add_argument("--m-max", type=int, required=True)
    common(p)

    p = sub.add_parser("validate", help="full-spectrum check of the two-level model")
    p.add_argument("--spectrum", choices=("linear",), default="linear")
    p.add_argument("--spectrum-json", default=None, help="path to a spectrum JSON document")
    p.add_argument("--num-states", type=int, default=100)
    p.add_argument("--dt", type=float, default=1e-3)
    common(p, formats=("json", "csv"))

    p = sub.add_parser("simulate", help="play rounds at a fixed strategy, one JSON line each")
    p.add_argument("--game", type=int, choices=(1, 2), required=True)
    p.add_argument("--t1", type=float, required=True)
    p.add_argument("--t2", type=float, required=True)
    p.add_argument("--rounds", type=int, default=1)
    common(p, formats=("json", "csv"))

    p = sub.add_parser("serve", help="run the interactive play service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static-dir", default=None)
    p.add_argument("--journal-dir", default=None)
    p.add_argument("--heatmap-cap", type=int, default=1001)
    return parser


def _game_spec(number: int) -> games.GameSpec:
    return games.GameSpec.two_measure() if number == 1 else games.GameSpec.three_measure()


def _emit(text: str, output: str) -> None:
    if output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w", newline="") as fh:
            fh.write(text)


def _csv(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(repr(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _cmd_amplitudes(args) -> str:
    if args.points < 2:
        raise ValueError("--points must be >= 2")
    params = resonance.resonance_params(1)  # tau-normalized times, Omega*t = (pi/2)*x
    rows = []
    for k in range(args.points):
        x = k / (args.points - 1)
        a_j, a_s = resonance.two_level_amplitudes(x * params.tau, params)
        rows.append((x, a_j, a_s))
    if args.format == "csv":
        return _csv("t,a_j,a_s", rows)
    return json.dumps([{"t": t, "a_j": aj, "a_s": as_} for t, aj, as_ in rows]) + "\n"


def _cmd_heatmap(args) -> str:
    grid = analysis.heatmap(_game_spec(args.game), args.resolution)
    if args.format == "csv":
        return grid.to_csv()
    return json.dumps(grid.to_json_dict()) + "\n"


def _cmd_payoff(args) -> str:
    game = _game_spec(args.game)
    if args.method == "quadrature":
        report = analysis.random_strategy_payoff(game, method=args.quadrature_rule, tolerance=args.tol)
    else:
        report = analysis.monte_carlo_payoff(game, trials=args.trials, seed=args.seed)
    if args.format == "csv":
        row = (report.pi_s, report.pi_j, report.payoff_s, report.payoff_j, report.method, report.error_estimate)
        return "pi_s,pi_j,payoff_s,payoff_j,method,error_estimate\n" + ",".join(
            v if isinstance(v, str) else repr(v) for v in row
        ) + "\n"
    return report.to_json() + "\n"


def _cmd_zeno(args) -> str:
    rows = [(m, coeff.alpha, coeff.beta) for m, coeff in collapse.zeno_scan(args.m_max)]
    if args.format == "csv":
        return _csv("m,alpha,beta", rows)
    return json.dumps([{"m": m, "alpha": a, "beta": b} for m, a, b in rows]) + "\n"


def _cmd_validate(args) -> str:
    if args.spectrum_json is not None:
        with open(args.spectrum_json) as fh:
            spectrum = resonance.spectrum_from_json(fh.read())
    else:
        spectrum = resonance.linear_spectrum(args.num_states)
    report = resonance.validate_two_level(spectrum, args.dt)
    doc = {
        "num_states": spectrum.size,
        "dt": args.dt,
        "sup_deviation": report.sup_deviation,
        "p_s_final": report.p_s_final,
        "norm_drift": report.norm_drift,
    }
    if args.format == "csv":
        return _csv("num_states,dt,sup_deviation,p_s_final,norm_drift", [tuple(doc.values())])
    return json.dumps(doc, indent=2) + "\n"


def _cmd_simulate(args) -> str:
    game = _game_spec(args.game)
    strategy = games.StrategyProfile(args.t1, args.t2)
    if args.rounds < 1:
        raise ValueError("--rounds must be >= 1")
    results = games.play_rounds(game, strategy, args.rounds, args.seed)
    lines = [games.round_log_line(strategy, r) for r in results]
    if args.format == "csv":
        rows = [
            (strategy.t1, strategy.t2, "".join(o.value for o in r.collapse_history), r.final.value, r.payoff_silvia)
            for r in results
        ]
        out = ["t1,t2,history,final,payoff_s"]
        out.extend(f"{t1!r},{t2!r},{h},{f},{p!r}" for t1, t2, h, f, p in rows)
        return "\n".join(out) + "\n"
    return "\n".join(lines) + "\n"


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(
        journal_dir=args.journal_dir,
        heatmap_cap=args.heatmap_cap,
        static_dir=args.static_dir,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Parse and run; exit code 0 on success, 2 on argument errors, 1 on numerical failure."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    handlers = {
        "amplitudes": _cmd_amplitudes,
        "heatmap": _cmd_heatmap,
        "payoff": _cmd_payoff,
        "zeno": _cmd_zeno,
        "validate": _cmd_validate,
        "simulate": _cmd_simulate,
    }
    try:
        if args.command == "serve":
            return _cmd_serve(args)
        _emit(handlers[args.command](args), args.output)
        return 0
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (resonance.IntegrationError, analysis.QuadratureError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
