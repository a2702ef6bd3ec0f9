"""Multiport network algebra for an RIS aided full-duplex system.

The whole system (base station transmitter, uplink user, RIS, base station
receiver, downlink user) is one N-port network described by an impedance
matrix Z or, equivalently, a scattering matrix S. Ports are ordered

    [T_B | T_U | I | R_B | R_D]

so that the transmitter group T = (T_B, T_U) comes first, the RIS group I in
the middle and the receiver group R = (R_B, R_D) last.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import linalg
from .errors import AssumptionError, ConversionError, ModelError

Z0 = 50.0


@dataclass(frozen=True)
class PortLayout:
    """Port counts of the five device groups."""

    n_tb: int
    n_tu: int
    n_i: int
    n_rb: int
    n_rd: int

    def __post_init__(self):
        for name in ("n_tb", "n_tu", "n_i", "n_rb", "n_rd"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.n_i < 1:
            raise ValueError("n_i must be >= 1")

    @property
    def n_t(self) -> int:
        return self.n_tb + self.n_tu

    @property
    def n_r(self) -> int:
        return self.n_rb + self.n_rd

    @property
    def n(self) -> int:
        return self.n_t + self.n_i + self.n_r

    @property
    def t(self) -> slice:
        return slice(0, self.n_t)

    @property
    def i(self) -> slice:
        return slice(self.n_t, self.n_t + self.n_i)

    @property
    def r(self) -> slice:
        return slice(self.n_t + self.n_i, self.n)


_BLOCKS = ("tt", "ti", "tr", "it", "ii", "ir", "rt", "ri", "rr")


@dataclass
class ImpedanceBlocks:
    """The nine Z blocks of the T/I/R partition, in ohms."""

    z_tt: np.ndarray
    z_ti: np.ndarray
    z_tr: np.ndarray
    z_it: np.ndarray
    z_ii: np.ndarray
    z_ir: np.ndarray
    z_rt: np.ndarray
    z_ri: np.ndarray
    z_rr: np.ndarray
    z0: float = Z0

    def __post_init__(self):
        if not (np.isreal(self.z0) and self.z0 > 0):
            raise ValueError("z0 must be real and positive")
        for name in _BLOCKS:
            setattr(self, "z_" + name, np.atleast_2d(np.asarray(getattr(self, "z_" + name), dtype=complex)))
        rows = {"t": self.z_tt.shape[0], "i": self.z_ii.shape[0], "r": self.z_rr.shape[0]}
        for name in _BLOCKS:
            want = (rows[name[0]], rows[name[1]])
            got = getattr(self, "z_" + name).shape
            if got != want:
                raise ValueError(f"z_{name} has shape {got}, expected {want}")

    def check_layout(self, layout: PortLayout) -> None:
        if (self.z_tt.shape[0], self.z_ii.shape[0], self.z_rr.shape[0]) != (layout.n_t, layout.n_i, layout.n_r):
            raise ValueError("impedance blocks do not match the port layout")

    def full(self) -> np.ndarray:
        return np.block([
            [self.z_tt, self.z_ti, self.z_tr],
            [self.z_it, self.z_ii, self.z_ir],
            [self.z_rt, self.z_ri, self.z_rr],
        ])

    @classmethod
    def from_full(cls, z: np.ndarray, layout: PortLayout, z0: float = Z0) -> "ImpedanceBlocks":
        z = np.asarray(z, dtype=complex)
        if z.shape != (layout.n, layout.n):
            raise ValueError(f"Z has shape {z.shape}, expected {(layout.n, layout.n)}")
        g = {"t": layout.t, "i": layout.i, "r": layout.r}
        return cls(**{"z_" + k: z[g[k[0]], g[k[1]]] for k in _BLOCKS}, z0=z0)

    def scaled(self, **factors: float) -> "ImpedanceBlocks":
        kw = {"z_" + k: getattr(self, "z_" + k) * factors.get("z_" + k, 1.0) for k in _BLOCKS}
        return ImpedanceBlocks(**kw, z0=self.z0)


@dataclass
class DerivedScattering:
    """S blocks and the intermediates A, B obtained from impedance blocks."""

    s_tt: np.ndarray
    s_ti: np.ndarray
    s_it: np.ndarray
    s_ii: np.ndarray
    s_rt: np.ndarray
    s_ri: np.ndarray
    a_ii: np.ndarray
    a_ir: np.ndarray
    a_ri: np.ndarray
    a_rr: np.ndarray
    b: np.ndarray


@dataclass
class TerminationSpec:
    """Scattering matrices of the sources, the loads and the RIS network."""

    gamma_t: np.ndarray
    gamma_r: np.ndarray
    theta: np.ndarray

    @classmethod
    def matched(cls, layout: PortLayout, theta: np.ndarray) -> "TerminationSpec":
        return cls(np.zeros((layout.n_t, layout.n_t), complex),
                   np.zeros((layout.n_r, layout.n_r), complex),
                   np.asarray(theta, dtype=complex))

    @classmethod
    def from_devices(cls, gamma_tb, gamma_tu, theta, gamma_rb, gamma_rd) -> "TerminationSpec":
        return cls(scipy.linalg.block_diag(gamma_tb, gamma_tu).astype(complex),
                   scipy.linalg.block_diag(gamma_rb, gamma_rd).astype(complex),
                   np.asarray(theta, dtype=complex))

    def gamma(self) -> np.ndarray:
        return scipy.linalg.block_diag(self.gamma_t, self.theta, self.gamma_r).astype(complex)


def z_to_s(z: np.ndarray, z0: float = Z0) -> np.ndarray:
    """Scattering matrix ``(Z + z0 I)^{-1} (Z - z0 I)``."""
    z = np.asarray(z, dtype=complex)
    eye = np.eye(z.shape[0])
    try:
        return linalg.solve(z + z0 * eye, z - z0 * eye, what="Z + z0*I")
    except linalg.SingularError as exc:
        raise ConversionError(str(exc)) from None


def s_to_z(s: np.ndarray, z0: float = Z0) -> np.ndarray:
    """Impedance matrix ``z0 (I - S)^{-1} (I + S)``."""
    s = np.asarray(s, dtype=complex)
    eye = np.eye(s.shape[0])
    try:
        return z0 * linalg.solve(eye - s, eye + s, what="I - S")
    except linalg.SingularError as exc:
        raise ConversionError(str(exc)) from None


def general_channel(s: np.ndarray, term: TerminationSpec, layout: PortLayout) -> np.ndarray:
    """Channel from transmitter voltages to receiver voltages for arbitrary terminations.

    Computes ``(Gamma_R + I) T_RT (I + Gamma_T T_TT + T_TT)^{-1}`` where ``T``
    is ``S (I - Gamma S)^{-1}`` and ``Gamma = blkdiag(Gamma_T, Theta, Gamma_R)``.
    """
    s = np.asarray(s, dtype=complex)
    if s.shape != (layout.n, layout.n):
        raise ValueError(f"S has shape {s.shape}, expected {(layout.n, layout.n)}")
    if term.gamma_t.shape != (layout.n_t,) * 2 or term.gamma_r.shape != (layout.n_r,) * 2 \
            or term.theta.shape != (layout.n_i,) * 2:
        raise ValueError("termination blocks do not match the port layout")
    gamma = term.gamma()
    try:
        t = linalg.solve_right(s, np.eye(layout.n) - gamma @ s, what="I - Gamma S")
    except linalg.SingularError as exc:
        raise ModelError(str(exc)) from None
    t_rt = t[layout.r, layout.t]
    t_tt = t[layout.t, layout.t]
    inner = np.eye(layout.n_t) + term.gamma_t @ t_tt + t_tt
    try:
        return (term.gamma_r + np.eye(layout.n_r)) @ linalg.solve_right(t_rt, inner, what="I + Gamma_T T_TT + T_TT")
    except linalg.SingularError as exc:
        raise ModelError(str(exc)) from None


def _is_scaled_identity(m: np.ndarray, value: float, atol: float) -> bool:
    return np.allclose(m, value * np.eye(m.shape[0]), rtol=0.0, atol=atol)


def check_result1_shape(zb: ImpedanceBlocks, layout: PortLayout) -> None:
    """Raise :class:`AssumptionError` unless ``zb`` is matched, uncoupled and unilateral."""
    zb.check_layout(layout)
    atol = 1e-12 * zb.z0
    for name in ("z_tt", "z_ii", "z_rr"):
        if not _is_scaled_identity(getattr(zb, name), zb.z0, atol):
            raise AssumptionError(f"{name} must equal z0*I (perfect matching, no mutual coupling)")
    for name in ("z_ti", "z_ir"):
        if np.abs(getattr(zb, name)).max(initial=0.0) > atol:
            raise AssumptionError(f"{name} must be zero (unilateral approximation)")
    off = zb.z_tr.copy()
    off[:layout.n_tb, :layout.n_rb] = 0.0
    if np.abs(off).max(initial=0.0) > atol:
        raise AssumptionError("only the base station block of z_tr may be nonzero")


def scattering_from_impedance_result1(zb: ImpedanceBlocks, layout: PortLayout) -> DerivedScattering:
    """S blocks of a matched, unilateral network with base-station self-interference.

    Only the ``T_B -> R_B`` part of ``z_tr`` may be nonzero; it enters through
    the receiver-side matrix ``B`` and the intermediate block matrix ``A``.
    """
    check_result1_shape(zb, layout)
    z0 = zb.z0
    z_it, z_tr, z_rt, z_ri = zb.z_it, zb.z_tr, zb.z_rt, zb.z_ri
    b = (2 * z0 * np.eye(layout.n_r) - z_rt @ z_tr / (2 * z0)
         + z_ri @ z_it @ z_tr / (4 * z0 ** 2))
    try:
        b_inv = linalg.inv(b, what="B")
    except linalg.SingularError as exc:
        raise ModelError(str(exc)) from None
    a_ii = np.eye(layout.n_i) / (2 * z0) - z_it @ z_tr @ b_inv @ z_ri / (8 * z0 ** 3)
    a_ir = z_it @ z_tr @ b_inv / (4 * z0 ** 2)
    a_ri = -b_inv @ z_ri / (2 * z0)
    a_rr = b_inv
    a_big = np.block([[a_ii, a_ir], [a_ri, a_rr]])
    # A acts on stacked (I, R) quantities: [Z_TI Z_TR] = [0 Z_TR], [Z_IT; Z_RT], [Z_II - z0 I; Z_RI] = [0; Z_RI]
    z_t_ir = np.hstack([np.zeros((layout.n_t, layout.n_i), complex), z_tr])
    z_ir_t = np.vstack([z_it, z_rt])
    z_ir_i = np.vstack([np.zeros((layout.n_i, layout.n_i), complex), z_ri])
    return DerivedScattering(
        s_tt=-z_t_ir @ a_big @ z_ir_t / (2 * z0),
        s_ti=-z_t_ir @ a_big @ z_ir_i / (2 * z0),
        s_it=a_ii @ z_it + a_ir @ z_rt,
        s_ii=a_ir @ z_ri,
        s_rt=a_ri @ z_it + a_rr @ z_rt,
        s_ri=a_rr @ z_ri,
        a_ii=a_ii, a_ir=a_ir, a_ri=a_ri, a_rr=a_rr, b=b,
    )


def simplified_channel_result1(ds: DerivedScattering, theta: np.ndarray) -> np.ndarray:
    """Channel of a matched, unilateral network in terms of its S blocks."""
    theta = np.asarray(theta, dtype=complex)
    n_i = ds.s_ii.shape[0]
    n_t = ds.s_tt.shape[0]
    if theta.shape != (n_i, n_i):
        raise ValueError(f"theta has shape {theta.shape}, expected {(n_i, n_i)}")
    try:
        k = linalg.solve(np.eye(n_i) - theta @ ds.s_ii, theta @ ds.s_it, what="I - Theta S_II")
        return linalg.solve_right(ds.s_rt + ds.s_ri @ k, np.eye(n_t) + ds.s_tt + ds.s_ti @ k,
                                  what="I + S_TT + S_TI (I - Theta S_II)^{-1} Theta S_IT")
    except linalg.SingularError as exc:
        raise ModelError(str(exc)) from None


def channel_blocks(zb: ImpedanceBlocks) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Device-to-device channels ``(H_RT, H_RI, H_IT) = (Z_RT, Z_RI, Z_IT) / (2 z0)``."""
    return zb.z_rt / (2 * zb.z0), zb.z_ri / (2 * zb.z0), zb.z_it / (2 * zb.z0)


def simplified_channel_result2(h_rt: np.ndarray, h_ri: np.ndarray, h_it: np.ndarray,
                               theta: np.ndarray) -> np.ndarray:
    """``H_RT + H_RI (Theta - I) H_IT``, the channel with structural scattering."""
    h_rt, h_ri, h_it, theta = (np.atleast_2d(np.asarray(m, dtype=complex)) for m in (h_rt, h_ri, h_it, theta))
    n_i = theta.shape[0]
    if theta.shape != (n_i, n_i) or h_ri.shape[1] != n_i or h_it.shape[0] != n_i \
            or h_rt.shape != (h_ri.shape[0], h_it.shape[1]):
        raise ValueError(f"inconsistent shapes: H_RT {h_rt.shape}, H_RI {h_ri.shape}, "
                         f"H_IT {h_it.shape}, Theta {theta.shape}")
    return h_rt + h_ri @ (theta - np.eye(n_i)) @ h_it


def random_impedance_blocks(layout: PortLayout, rng: np.random.Generator, z0: float = Z0,
                            coupling: float = 1e-3, self_interference: bool = True) -> ImpedanceBlocks:
    """Random matched, unilateral impedance blocks for tests and oracles.

    Coupling blocks (``Z_IT``, ``Z_RT``, ``Z_RI`` and, if requested, the base
    station ``Z_{T_B R_B}``) have i.i.d. complex Gaussian entries with standard
    deviation ``coupling * z0``.
    """
    def cg(shape):
        return coupling * z0 * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)

    n_t, n_i, n_r = layout.n_t, layout.n_i, layout.n_r
    z_tr = np.zeros((n_t, n_r), complex)
    if self_interference:
        z_tr[:layout.n_tb, :layout.n_rb] = cg((layout.n_tb, layout.n_rb))
    return ImpedanceBlocks(
        z_tt=z0 * np.eye(n_t), z_ti=np.zeros((n_t, n_i)), z_tr=z_tr,
        z_it=cg((n_i, n_t)), z_ii=z0 * np.eye(n_i), z_ir=np.zeros((n_i, n_r)),
        z_rt=cg((n_r, n_t)), z_ri=cg((n_r, n_i)), z_rr=z0 * np.eye(n_r),
        z0=z0,
    )


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary from the QR factorization of a complex Gaussian matrix."""
    g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))
