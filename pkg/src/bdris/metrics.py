"""Beam patterns, normalized channel strengths and achievable rates.

All quantities are evaluated either with structural scattering (the RIS acts
through ``Theta - I``) or without it (through ``Theta``), independently of how
``Theta`` was designed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import ChannelSet, ScenarioConfig, effective_ris, steering_vector


@dataclass
class BeamPatternSet:
    grid: np.ndarray
    p_d_imp: np.ndarray
    p_d_ref: np.ndarray
    p_u_imp: np.ndarray
    p_u_ref: np.ndarray


@dataclass
class LinkMetrics:
    p_u_norm: float
    p_d_norm: float
    r_u: float
    r_d: float
    sir_u: float
    sir_d: float


def _bilinear(row: np.ndarray, m: np.ndarray, cols: np.ndarray) -> np.ndarray:
    # |row^T M cols[:, g]|^2 per column; elementwise product and an axis-0 sum
    # keep every column's arithmetic independent of how the grid is split
    v = row @ m
    return np.abs((v[:, None] * cols).sum(axis=0)) ** 2


def beam_patterns(ch: ChannelSet, theta: np.ndarray, eval_with_ss: bool, grid) -> BeamPatternSet:
    """Impinging and reflected patterns of a configured RIS over a set of probe angles.

    Impinging patterns fix the receiver and sweep the direction of arrival;
    reflected patterns fix the transmitter and sweep the departure direction.
    With structural scattering every pattern is divided by
    ``(|hbar_itu^T hbar_bi| + 1)^2``; without it, by 1.
    """
    grid = np.asarray(grid, dtype=float)
    m = effective_ris(theta, eval_with_ss)
    a = steering_vector(grid, ch.n_i)
    scale = (abs(ch.hbar_itu @ ch.hbar_bi) + 1.0) ** 2 if eval_with_ss else 1.0
    mt = m.T
    return BeamPatternSet(
        grid=grid,
        p_d_imp=_bilinear(ch.hbar_rdi, m, a) / scale,
        p_d_ref=_bilinear(ch.hbar_bi, mt, a) / scale,
        p_u_imp=_bilinear(ch.hbar_bi, m, a) / scale,
        p_u_ref=_bilinear(ch.hbar_itu, mt, a) / scale,
    )


def _strength(rx: np.ndarray, m: np.ndarray, tx: np.ndarray) -> float:
    return float(abs(rx @ m @ tx) ** 2)


def normalized_strengths(ch: ChannelSet, theta: np.ndarray, eval_with_ss: bool) -> tuple[float, float]:
    """``(p_u_norm, p_d_norm)`` computed from the unit-norm channel directions."""
    m = effective_ris(theta, eval_with_ss)
    return (_strength(ch.hbar_bi, m, ch.hbar_itu),
            _strength(ch.hbar_rdi, m, ch.hbar_bi))


def _ratio(num: float, den: float) -> float:
    return num / den if den > 0 else np.inf


def rates(ch: ChannelSet, theta: np.ndarray, cfg: ScenarioConfig, eval_with_ss: bool) -> LinkMetrics:
    """Uplink and downlink rates in bits/s/Hz under full-duplex interference.

    The downlink user hears the uplink user through the RIS; the base station
    hears its own transmission looped back by the RIS.
    """
    m = effective_ris(theta, eval_with_ss)
    s_d = _strength(ch.h_rdi, m, ch.h_bi)
    i_d = _strength(ch.h_rdi, m, ch.h_itu)
    s_u = _strength(ch.h_bi, m, ch.h_itu)
    i_u = _strength(ch.h_bi, m, ch.h_bi)
    r_d = np.log2(1.0 + cfg.p_d * s_d / (cfg.p_u * i_d + cfg.sigma_d2))
    r_u = np.log2(1.0 + cfg.p_u * s_u / (cfg.p_d * i_u + cfg.sigma_u2))
    p_u_norm, p_d_norm = normalized_strengths(ch, theta, eval_with_ss)
    return LinkMetrics(
        p_u_norm=p_u_norm, p_d_norm=p_d_norm,
        r_u=float(r_u), r_d=float(r_d),
        sir_u=_ratio(cfg.p_u * s_u, cfg.p_d * i_u),
        sir_d=_ratio(cfg.p_d * s_d, cfg.p_u * i_d),
    )
