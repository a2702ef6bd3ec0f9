"""Line-of-sight channels for the single-antenna full-duplex case study.

The RIS is a half-wavelength uniform linear array. The base station (shared
transmit/receive antenna) sees the RIS at angle ``phi_bi``, the downlink user
at ``phi_rdi`` and the uplink user at ``phi_itu``. Large-scale gains follow a
log-distance law; there is no small-scale randomness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def dbm_to_watt(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


@dataclass(frozen=True)
class ScenarioConfig:
    """Geometry, link budget and sweep settings.

    Defaults reproduce the evaluation setup: -30 dB attenuation at 1 m,
    exponent 2, 30 m base station to RIS, 5 m RIS to either user, -80 dBm
    noise and 500 mW transmit power on both links. Angles are in radians,
    distances in meters, powers in watts.
    """

    n_i: int = 64
    phi_bi: float = np.pi / 6
    phi_rdi: float = np.pi / 2
    phi_itu: float = 2 * np.pi / 3
    d_bi: float = 30.0
    d_rdi: float = 5.0
    d_itu: float = 5.0
    zeta0_db: float = -30.0
    d0: float = 1.0
    epsilon: float = 2.0
    p_d: float = 0.5
    p_u: float = 0.5
    sigma_d2: float = field(default_factory=lambda: dbm_to_watt(-80.0))
    sigma_u2: float = field(default_factory=lambda: dbm_to_watt(-80.0))
    design_with_ss: bool = True
    eval_with_ss: bool = True
    sweep_points: int = 721
    seed: int = 0

    def __post_init__(self):
        if int(self.n_i) != self.n_i or self.n_i < 1:
            raise ConfigError(f"n_i={self.n_i} violates n_i >= 1 (integer)")
        for name in ("phi_bi", "phi_rdi", "phi_itu"):
            v = getattr(self, name)
            if not (0.0 <= v <= np.pi):
                raise ConfigError(f"{name}={v} violates 0 <= angle <= pi")
        for name in ("d_bi", "d_rdi", "d_itu", "d0"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name}={getattr(self, name)} violates distance > 0")
        for name in ("p_d", "p_u"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name}={getattr(self, name)} violates power > 0")
        for name in ("sigma_d2", "sigma_u2"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name}={getattr(self, name)} violates noise power > 0")
        if int(self.sweep_points) != self.sweep_points or self.sweep_points < 1:
            raise ConfigError(f"sweep_points={self.sweep_points} violates sweep_points >= 1 (integer)")

    @property
    def zeta0(self) -> float:
        return db_to_linear(self.zeta0_db)

    def grid(self) -> np.ndarray:
        return np.linspace(0.0, np.pi, int(self.sweep_points))


@dataclass(frozen=True)
class ChannelSet:
    """RIS channels of the case study.

    The base station uses one antenna for both directions, so the same vector
    ``h_bi`` serves as the base-station-to-RIS and RIS-to-base-station channel.
    """

    h_bi: np.ndarray
    h_rdi: np.ndarray
    h_itu: np.ndarray
    hbar_bi: np.ndarray
    hbar_rdi: np.ndarray
    hbar_itu: np.ndarray
    zeta_bi: float
    zeta_rdi: float
    zeta_itu: float

    @property
    def h_it_b(self) -> np.ndarray:
        return self.h_bi

    @property
    def h_rb_i(self) -> np.ndarray:
        return self.h_bi

    @property
    def n_i(self) -> int:
        return self.h_bi.shape[0]


def steering_vector(phi, n_i: int) -> np.ndarray:
    """Unit-norm ULA response; entry ``k`` is ``exp(j pi k cos(phi)) / sqrt(n_i)``.

    ``phi`` may be an array, in which case the result has shape
    ``(n_i, len(phi))`` with one steering vector per column.
    """
    if n_i < 1:
        raise ValueError("n_i must be >= 1")
    k = np.arange(n_i)
    phi = np.asarray(phi, dtype=float)
    phase = np.pi * np.multiply.outer(k, np.cos(phi))
    return np.exp(1j * phase) / np.sqrt(n_i)


def path_loss(d: float, zeta0: float, d0: float = 1.0, epsilon: float = 2.0) -> float:
    """Linear large-scale gain ``zeta0 * (d / d0) ** -epsilon``."""
    if d <= 0 or d0 <= 0:
        raise ValueError(f"distances must be positive (d={d}, d0={d0})")
    return zeta0 * (d / d0) ** (-epsilon)


def build_channels(cfg: ScenarioConfig) -> ChannelSet:
    zeta = {o: path_loss(getattr(cfg, "d_" + o), cfg.zeta0, cfg.d0, cfg.epsilon) for o in ("bi", "rdi", "itu")}
    hbar = {o: steering_vector(getattr(cfg, "phi_" + o), cfg.n_i) for o in ("bi", "rdi", "itu")}
    return ChannelSet(
        h_bi=np.sqrt(zeta["bi"]) * hbar["bi"],
        h_rdi=np.sqrt(zeta["rdi"]) * hbar["rdi"],
        h_itu=np.sqrt(zeta["itu"]) * hbar["itu"],
        hbar_bi=hbar["bi"], hbar_rdi=hbar["rdi"], hbar_itu=hbar["itu"],
        zeta_bi=zeta["bi"], zeta_rdi=zeta["rdi"], zeta_itu=zeta["itu"],
    )


def effective_ris(theta: np.ndarray, with_ss: bool) -> np.ndarray:
    """``Theta - I`` when structural scattering is modeled, else ``Theta``."""
    theta = np.asarray(theta, dtype=complex)
    return theta - np.eye(theta.shape[0]) if with_ss else theta


def fd_channel_matrix(ch: ChannelSet, theta: np.ndarray, with_ss: bool) -> np.ndarray:
    """2x2 end-to-end channel: rows (base station, downlink user), columns (base station, uplink user).

    Entry (0, 0) is the loop interference, (0, 1) the uplink, (1, 0) the
    downlink and (1, 1) the user-to-user interference.
    """
    theta = np.asarray(theta, dtype=complex)
    if theta.shape != (ch.n_i, ch.n_i):
        raise ValueError(f"theta has shape {theta.shape}, expected {(ch.n_i, ch.n_i)}")
    m = effective_ris(theta, with_ss)
    rx = np.column_stack([ch.h_rb_i, ch.h_rdi])
    tx = np.column_stack([ch.h_it_b, ch.h_itu])
    return rx.T @ m @ tx
