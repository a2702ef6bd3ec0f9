"""Command line front end.

    bdris run <preset> [--config PATH] [--out DIR] [--format csv|svg|both]
    bdris oracle <name> [--seed S] [--trials T]
    bdris check

Failures exit nonzero and print ``bdris: error[<category>]: <message>`` on
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import checks, network, oracles, scenario
from .channels import ScenarioConfig, build_channels
from .errors import BdrisError
from .optimizers import ProjectionTargets, procrustes_unitary, reciprocal_design

EXIT_CODES = {"config": 2, "io": 3, "conversion": 4, "model": 4, "assumption": 4, "argument": 5}
ORACLES = ("random-unitary", "phase-grid", "model-consistency")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bdris", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="compute a figure preset and write CSV/SVG")
    run.add_argument("preset", choices=list(scenario.PRESETS))
    run.add_argument("--config", default=None, help="TOML scenario file")
    run.add_argument("--out", default=".", help="output directory")
    run.add_argument("--format", choices=("csv", "svg", "both"), default="both")

    orc = sub.add_parser("oracle", help="run a brute-force oracle and print its report as JSON")
    orc.add_argument("name", choices=ORACLES)
    orc.add_argument("--seed", type=int, default=0)
    orc.add_argument("--trials", type=int, default=None)
    orc.add_argument("--n-i", type=int, default=None, help="RIS size (random-unitary, phase-grid)")

    sub.add_parser("check", help="run the invariant suite")
    return p


def _run_oracle(name: str, seed: int, trials: int | None, n_i: int | None) -> dict:
    if name == "random-unitary":
        n = n_i or 16
        rng = oracles.make_rng(seed)
        cols = []
        for _ in range(2):
            m = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
            cols.append(m / np.linalg.norm(m, axis=0))
        x, y = cols
        rep = oracles.random_unitary_oracle(x, y, trials or 100_000, seed + 1)
        solver = procrustes_unitary(ProjectionTargets(x, y)).diagnostics.residual
        return {"oracle": name, "n_i": n, "trials": rep.trials, "seed": seed,
                "oracle_best_residual": rep.best_value, "solver_residual": solver,
                "solver_not_worse": solver <= rep.best_value + 1e-12}
    if name == "phase-grid":
        n = n_i or 2
        cfg = ScenarioConfig(n_i=n)
        ch = build_channels(cfg)
        out = {"oracle": name, "n_i": n, "grid_per_element": trials or 360}
        for ss in (True, False):
            rep = oracles.phase_grid_oracle(ch, trials or 360, ss)
            sol = reciprocal_design(ch, cfg.phi_bi, cfg.phi_itu, ss)
            m = sol.theta - np.eye(n) if ss else sol.theta
            closed = float(abs(ch.h_bi @ m @ ch.h_itu) ** 2)
            key = "with_ss" if ss else "without_ss"
            out[key] = {"grid_best": rep.best_value, "closed_form": closed,
                        "best_phases": rep.best["phases"].tolist()}
        return out
    layout = network.PortLayout(1, 1, n_i or 4, 1, 1)
    rep = oracles.model_consistency_check(layout, seed, trials or 100)
    rep_si = oracles.model_consistency_check(layout, seed, trials or 100, self_interference=True)
    return {"oracle": name, "layout": [1, 1, layout.n_i, 1, 1], "trials": rep.trials, "seed": seed,
            "max_deviation": rep.best_value, "detail": rep.best,
            "with_self_interference": rep_si.best}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "run":
            cfg = scenario.parse_config(args.config)
            for path in scenario.run_preset(args.preset, cfg, args.out, args.format):
                print(path)
            return 0
        if args.command == "oracle":
            if args.trials is not None and args.trials < 1:
                raise BdrisError("--trials must be >= 1")
            print(json.dumps(_run_oracle(args.name, args.seed, args.trials, args.n_i), indent=2))
            return 0
        failed = 0
        for name, ok, detail in checks.run_all():
            print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
            failed += not ok
        return 1 if failed else 0
    except BdrisError as exc:
        print(f"bdris: error[{exc.category}]: {exc}", file=sys.stderr)
        return EXIT_CODES.get(exc.category, 1)


if __name__ == "__main__":
    sys.exit(main())
