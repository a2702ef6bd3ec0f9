"""Brute-force witnesses for the closed-form solvers.

These deliberately take a different computational route from the code they
check: random sampling instead of an SVD, exhaustive phase enumeration
instead of the closed-form phase profile, and a direct N-port solve instead
of the reduced channel expressions. All randomness comes from a PCG64
generator (128-bit state) seeded by the caller, so every report is
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import network
from .channels import ChannelSet
from .errors import BudgetError, ModelError

GRID_BUDGET = 10 ** 8


@dataclass
class OracleReport:
    best_value: float
    trials: int
    seed: int | None
    best: dict[str, Any] = field(default_factory=dict)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _haar_frames(rng: np.random.Generator, m: int, n: int, k: int) -> np.ndarray:
    g = (rng.standard_normal((m, n, k)) + 1j * rng.standard_normal((m, n, k))) / np.sqrt(2)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r, axis1=1, axis2=2)
    return q * (d / np.abs(d))[:, None, :]


def random_unitary_oracle(x, y, trials: int, seed: int, chunk: int = 4096) -> OracleReport:
    """Smallest ``||X - Theta Y||_F^2`` over ``trials`` Haar-random unitaries.

    Only ``Theta`` restricted to ``range(Y)`` enters the objective. For a Haar
    unitary, ``Theta Q_Y`` (``Q_Y`` an orthonormal basis of ``range(Y)``) is a
    Haar-distributed orthonormal frame, so each trial samples that frame
    directly: QR of an ``N x k`` complex Gaussian with the diagonal of ``R``
    made real-positive. The best frame is completed to a full unitary and
    returned in ``best["theta"]``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    n = y.shape[0]
    q_y, r_y = np.linalg.qr(y)
    k = q_y.shape[1]
    target = x
    rng = make_rng(seed)
    best_val, best_frame = np.inf, None
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        frames = _haar_frames(rng, m, n, k)
        diff = target[None] - frames @ r_y
        vals = np.einsum("mij,mij->m", diff.conj(), diff).real
        i = int(np.argmin(vals))
        if vals[i] < best_val:
            best_val, best_frame = float(vals[i]), frames[i]
        done += m
    # extend the winning frame and Q_Y to unitaries so that Theta Q_Y = frame
    src = np.linalg.qr(np.hstack([q_y, np.eye(n)]))[0][:, :n]
    src[:, :k] = q_y
    dst = np.linalg.qr(np.hstack([best_frame, np.eye(n)]))[0][:, :n]
    dst[:, :k] = best_frame
    theta = dst @ src.conj().T
    return OracleReport(best_val, trials, seed, {"theta": theta})


def phase_grid_oracle(ch: ChannelSet, grid_per_element: int, with_ss: bool) -> OracleReport:
    """Exhaustive search over diagonal phase profiles for the largest uplink strength.

    Phases take the values ``2 pi k / grid_per_element``. Returns the largest
    ``|h_bi^T (Theta - I) h_itu|^2`` (or ``|h_bi^T Theta h_itu|^2`` without
    structural scattering) and the maximizing phases.
    """
    n_i = ch.n_i
    if n_i > 3 or grid_per_element ** n_i > GRID_BUDGET:
        raise BudgetError(f"{grid_per_element}^{n_i} candidates exceed the budget of {GRID_BUDGET:.0e}")
    phases = 2 * np.pi * np.arange(grid_per_element) / grid_per_element
    unit = np.exp(1j * phases)
    c = ch.h_bi * ch.h_itu
    offset = -(ch.h_bi @ ch.h_itu) if with_ss else 0.0
    best_val, best_idx = -np.inf, None
    # fix the first element's phase in an outer loop to bound memory
    rest = np.zeros(1, dtype=complex)
    for k in range(1, n_i):
        rest = (rest[:, None] + c[k] * unit[None, :]).ravel()
    for i0 in range(grid_per_element):
        vals = np.abs(c[0] * unit[i0] + rest + offset) ** 2
        j = int(np.argmax(vals))
        if vals[j] > best_val:
            best_val, best_idx = float(vals[j]), (i0, j)
    i0, j = best_idx
    tail = np.unravel_index(j, (grid_per_element,) * (n_i - 1)) if n_i > 1 else ()
    best_phases = phases[[i0, *tail]]
    return OracleReport(best_val, grid_per_element ** n_i, None,
                        {"phases": best_phases, "step": 2 * np.pi / grid_per_element})


def model_consistency_check(layout: network.PortLayout, seed: int, trials: int,
                            self_interference: bool = False, coupling: float = 1e-3) -> OracleReport:
    """Largest disagreement between the general N-port channel and the reduced models.

    Each trial draws matched, unilateral impedance blocks and a Haar-random
    RIS matrix, converts the full Z to S and evaluates the general channel
    with matched sources and loads. The result-1 path (self-interference
    allowed) is compared in every trial; the result-2 path (no self-
    interference) is compared when ``self_interference`` is false and
    reported separately otherwise.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = make_rng(seed)
    worst = {"result1": 0.0, "result2": 0.0, "result1_rel": 0.0, "result2_rel": 0.0}
    skipped = 0
    for _ in range(trials):
        zb = network.random_impedance_blocks(layout, rng, coupling=coupling,
                                             self_interference=self_interference)
        theta = network.random_unitary(layout.n_i, rng)
        try:
            s = network.z_to_s(zb.full(), zb.z0)
            h = network.general_channel(s, network.TerminationSpec.matched(layout, theta), layout)
            h1 = network.simplified_channel_result1(network.scattering_from_impedance_result1(zb, layout), theta)
        except (ModelError, np.linalg.LinAlgError):
            skipped += 1
            continue
        h2 = network.simplified_channel_result2(*network.channel_blocks(zb), theta)
        scale = max(np.linalg.norm(h), np.finfo(float).tiny)
        for key, other in (("result1", h1), ("result2", h2)):
            dev = float(np.linalg.norm(h - other))
            worst[key] = max(worst[key], dev)
            worst[key + "_rel"] = max(worst[key + "_rel"], dev / scale)
    best = dict(worst, skipped=skipped, self_interference=self_interference)
    value = worst["result1"] if self_interference else max(worst["result1"], worst["result2"])
    return OracleReport(value, trials, seed, best)
