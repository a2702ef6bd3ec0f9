"""Invariant suite behind ``bdris check``.

Each check returns ``(name, passed, detail)``. The suite is a quick smoke run
of the library's numerical invariants on seeded random and sweep data; the
pytest suite is the thorough version.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from . import network, oracles
from .channels import ScenarioConfig, build_channels
from .metrics import normalized_strengths
from .optimizers import (ProjectionTargets, nonreciprocal_design, procrustes_unitary, reciprocal_design,
                         strength_upper_bounds)


def _unit_columns(rng, n):
    m = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    return m / np.linalg.norm(m, axis=0)


def check_round_trip(seed=0):
    rng = oracles.make_rng(seed)
    worst = 0.0
    for _ in range(50):
        s = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        s *= 0.9 / np.linalg.norm(s, 2)
        worst = max(worst, np.linalg.norm(network.z_to_s(network.s_to_z(s)) - s))
    return "z/s round trip", worst <= 1e-10, f"max error {worst:.2e}"


def check_lossless_reciprocal(seed=0):
    rng = oracles.make_rng(seed)
    worst_u = worst_s = 0.0
    for _ in range(50):
        b = rng.standard_normal((8, 8))
        z = 1j * 50 * (b + b.T)
        s = network.z_to_s(z)
        worst_u = max(worst_u, np.linalg.norm(s.conj().T @ s - np.eye(8)))
        worst_s = max(worst_s, np.linalg.norm(s - s.T))
    ok = worst_u <= 1e-9 and worst_s <= 1e-10
    return "lossless and reciprocal Z give unitary symmetric S", ok, f"unitarity {worst_u:.2e}, symmetry {worst_s:.2e}"


def check_model_hierarchy(seed=0):
    worst = 0.0
    for n_i in (2, 4, 8):
        layout = network.PortLayout(1, 1, n_i, 1, 1)
        worst = max(worst, oracles.model_consistency_check(layout, seed, 100).best_value,
                    oracles.model_consistency_check(layout, seed, 100, self_interference=True).best_value)
    return "general channel = reduced models", worst <= 1e-9, f"max deviation {worst:.2e}"


def check_procrustes(seed=0):
    rng = oracles.make_rng(seed)
    gap = 0.0
    bounds = True
    for n in (4, 16, 64):
        for _ in range(100):
            d = procrustes_unitary(ProjectionTargets(_unit_columns(rng, n), _unit_columns(rng, n))).diagnostics
            gap = max(gap, d.property2_gap)
            bounds &= d.bounds_hold(1e-9)
    return "projection optimum and singular value bounds", gap <= 1e-9 and bounds, f"max gap {gap:.2e}"


def check_sweep_bounds(points=181):
    base = ScenarioConfig()
    worst = 0.0
    unitary = 0.0
    for ss in (True, False):
        for phi in np.linspace(0, np.pi, points):
            cfg = dataclasses.replace(base, phi_itu=float(phi))
            ch = build_channels(cfg)
            for sol in (reciprocal_design(ch, cfg.phi_bi, cfg.phi_itu, ss), nonreciprocal_design(ch, ss)):
                unitary = max(unitary, sol.unitarity_error())
                m = sol.theta - np.eye(ch.n_i) if ss else sol.theta
                p_d_max, p_u_max = strength_upper_bounds(ch, ss)
                worst = max(worst, abs(ch.h_bi @ m @ ch.h_itu) ** 2 - p_u_max,
                            abs(ch.h_rdi @ m @ ch.h_bi) ** 2 - p_d_max)
                cap = 4.0 if ss else 1.0
                worst = max(worst, max(normalized_strengths(ch, sol.theta, ss)) - cap)
    ok = worst <= 1e-9 and unitary <= 1e-10
    return "strengths within bounds, designs unitary", ok, f"max excess {worst:.2e}, unitarity {unitary:.2e}"


ALL_CHECKS = (check_round_trip, check_lossless_reciprocal, check_model_hierarchy,
              check_procrustes, check_sweep_bounds)


def run_all():
    return [fn() for fn in ALL_CHECKS]
