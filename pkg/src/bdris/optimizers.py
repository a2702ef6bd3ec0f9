"""RIS configuration for the single-antenna full-duplex link.

Two families of solutions:

* reciprocal: a diagonal phase profile that attains the uplink channel
  strength bound on line-of-sight channels;
* non-reciprocal: the unitary matrix closest (in Frobenius norm) to mapping
  the incoming directions ``Y = [hbar_bi, hbar_itu]`` onto the desired
  outgoing directions ``X``, i.e. a unitary Procrustes projection.

The Procrustes solver never forms a full N x N SVD. ``X Y^H`` has rank at most
two, so it is factored as ``Q_X (R_X R_Y^H) Q_Y^H`` with thin QR factors and a
closed-form 2x2 SVD of the core.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .channels import ChannelSet

PHASE_ZERO_RTOL = 1e-14


@dataclass
class ProcrustesDiag:
    sigma_trace: float
    residual: float
    sv_x: tuple[float, float]
    sv_y: tuple[float, float]
    alpha_defaulted: tuple[bool, bool] = (False, False)

    @property
    def sv_product_sum(self) -> float:
        return self.sv_x[0] * self.sv_y[0] + self.sv_x[1] * self.sv_y[1]

    @property
    def property2_gap(self) -> float:
        """``|residual - (4 - 2 Tr(Sigma))|``, zero for a global minimizer."""
        return abs(self.residual - (4.0 - 2.0 * self.sigma_trace))

    def bounds_hold(self, tol: float = 1e-9) -> bool:
        s = self.sv_product_sum
        return (self.sigma_trace <= s + tol) and (np.sqrt(2) - tol <= s <= 2 + tol)

    def lower_bound_tight(self, tol: float = 1e-6) -> bool:
        """True when one factor has top singular value 1 and the other sqrt(2)."""
        x1, y1 = self.sv_x[0], self.sv_y[0]
        return (abs(x1 - 1) < tol and abs(y1 - np.sqrt(2)) < tol) or \
               (abs(y1 - 1) < tol and abs(x1 - np.sqrt(2)) < tol)


@dataclass
class RisSolution:
    theta: np.ndarray
    reciprocal: bool
    design_with_ss: bool
    diagnostics: ProcrustesDiag | None = None

    def unitarity_error(self) -> float:
        n = self.theta.shape[0]
        return float(np.linalg.norm(self.theta.conj().T @ self.theta - np.eye(n)))

    def symmetry_error(self) -> float:
        return float(np.linalg.norm(self.theta - self.theta.T))


@dataclass
class ProjectionTargets:
    x: np.ndarray
    y: np.ndarray
    alpha_d: complex = 1.0
    alpha_u: complex = 1.0
    alpha_defaulted: tuple[bool, bool] = field(default=(False, False))
    with_ss: bool = False


def _phase_of_negated(inner: complex, scale: float) -> tuple[complex, bool]:
    if abs(inner) <= PHASE_ZERO_RTOL * scale:
        return 1.0 + 0j, True
    return np.exp(1j * np.angle(-inner)), False


def uplink_alpha(ch: ChannelSet) -> complex:
    """``exp(j angle(-h_bi^T h_itu))``, or 1 when the inner product vanishes."""
    inner = ch.h_bi @ ch.h_itu
    return _phase_of_negated(inner, np.linalg.norm(ch.h_bi) * np.linalg.norm(ch.h_itu))[0]


def reciprocal_closed_form(phi_bi: float, phi_itu: float, n_i: int, alpha_u: complex = 1.0,
                           with_ss: bool = True) -> RisSolution:
    """Diagonal phase profile that maximizes the line-of-sight uplink strength.

    Element ``n`` (0-based) gets phase ``angle(alpha_u) - pi n (cos phi_bi + cos phi_itu)``
    with structural scattering, and the same without the ``alpha_u`` term
    otherwise.
    """
    n = np.arange(n_i)
    phases = -np.pi * n * (np.cos(phi_bi) + np.cos(phi_itu))
    if with_ss:
        phases = phases + np.angle(alpha_u)
    return RisSolution(np.diag(np.exp(1j * phases)), reciprocal=True, design_with_ss=with_ss)


def reciprocal_design(ch: ChannelSet, phi_bi: float, phi_itu: float, with_ss: bool) -> RisSolution:
    return reciprocal_closed_form(phi_bi, phi_itu, ch.n_i, uplink_alpha(ch), with_ss)


def build_projection_targets(ch: ChannelSet, with_ss: bool) -> ProjectionTargets:
    y = np.column_stack([ch.hbar_bi, ch.hbar_itu])
    if not with_ss:
        x = np.column_stack([ch.hbar_rdi.conj(), ch.hbar_bi.conj()])
        return ProjectionTargets(x, y, with_ss=False)
    nrm = np.linalg.norm
    alpha_d, d_def = _phase_of_negated(ch.h_rdi @ ch.h_bi, nrm(ch.h_rdi) * nrm(ch.h_bi))
    alpha_u, u_def = _phase_of_negated(ch.h_bi @ ch.h_itu, nrm(ch.h_bi) * nrm(ch.h_itu))
    x = np.column_stack([alpha_d * ch.hbar_rdi.conj(), alpha_u * ch.hbar_bi.conj()])
    return ProjectionTargets(x, y, alpha_d, alpha_u, (d_def, u_def), with_ss=True)


def projection_svd(x: np.ndarray, y: np.ndarray):
    """Thin SVD ``X Y^H = U diag(s) V^H`` for two-column ``X`` and ``Y``.

    Returns ``(u, s, v)`` with ``u`` and ``v`` of shape ``(n, 2)``.
    """
    qx, rx = linalg.mgs_qr(x)
    qy, ry = linalg.mgs_qr(y)
    cu, s, cvh = linalg.svd2x2(rx @ ry.conj().T)
    return qx @ cu, s, qy @ cvh.conj().T


def procrustes_unitary(t: ProjectionTargets,
                       completion_rng: np.random.Generator | None = None) -> RisSolution:
    """Unitary ``Theta`` minimizing ``||X - Theta Y||_F``.

    ``Theta = U V^H`` from the SVD of ``X Y^H``. The two leading singular
    pairs fix ``Theta`` on ``range(Y)``; the rest of the space is completed
    deterministically from the standard basis, or randomly when
    ``completion_rng`` is given. The objective does not depend on that choice.
    """
    x = np.asarray(t.x, dtype=complex)
    y = np.asarray(t.y, dtype=complex)
    if x.shape != y.shape or x.ndim != 2 or x.shape[1] != 2:
        raise ValueError(f"X and Y must both be N x 2, got {x.shape} and {y.shape}")
    u, _, v = projection_svd(x, y)
    u_full = linalg.complete_unitary(u, completion_rng)
    v_full = linalg.complete_unitary(v, completion_rng)
    theta = u_full @ v_full.conj().T
    diag = projection_diagnostics(t, theta)
    return RisSolution(theta, reciprocal=False, design_with_ss=t.with_ss, diagnostics=diag)


def nonreciprocal_design(ch: ChannelSet, with_ss: bool) -> RisSolution:
    return procrustes_unitary(build_projection_targets(ch, with_ss))


def projection_diagnostics(t: ProjectionTargets, theta: np.ndarray) -> ProcrustesDiag:
    """Objective value and singular-value quantities of a projection problem.

    Singular values are taken from LAPACK, independently of the solver path,
    so ``property2_gap`` is a genuine cross-check of optimality.
    """
    x = np.asarray(t.x, dtype=complex)
    y = np.asarray(t.y, dtype=complex)
    sigma = np.linalg.svd(x @ y.conj().T, compute_uv=False)
    sv_x = np.linalg.svd(x, compute_uv=False)
    sv_y = np.linalg.svd(y.conj().T, compute_uv=False)
    residual = float(np.linalg.norm(x - theta @ y) ** 2)
    return ProcrustesDiag(
        sigma_trace=float(sigma[:2].sum()),
        residual=residual,
        sv_x=(float(sv_x[0]), float(sv_x[1])),
        sv_y=(float(sv_y[0]), float(sv_y[1])),
        alpha_defaulted=tuple(t.alpha_defaulted),
    )


def strength_upper_bounds(ch: ChannelSet, with_ss: bool) -> tuple[float, float]:
    """Largest achievable downlink and uplink channel strengths ``(p_d_max, p_u_max)``."""
    nrm = np.linalg.norm
    if with_ss:
        p_d = (abs(ch.h_rdi @ ch.h_bi) + nrm(ch.h_rdi) * nrm(ch.h_bi)) ** 2
        p_u = (abs(ch.h_itu @ ch.h_bi) + nrm(ch.h_itu) * nrm(ch.h_bi)) ** 2
    else:
        p_d = nrm(ch.h_rdi) ** 2 * nrm(ch.h_bi) ** 2
        p_u = nrm(ch.h_itu) ** 2 * nrm(ch.h_bi) ** 2
    return float(p_d), float(p_u)
