"""Small dense complex linear algebra used by the network and projection code.

Everything here works on matrices of at most a few hundred rows, so clarity
wins over blocking. Inverses go through a pivoted LU with an explicit
singularity test; the thin factorizations used by the unitary projection are
written out by hand because the matrices involved have exactly two columns.
"""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg

PIVOT_RTOL = 1e-12
DEPENDENT_TOL = 1e-8
RANK_RTOL = 1e-10


class SingularError(np.linalg.LinAlgError):
    pass


def _lu(a: np.ndarray, what: str):
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{what}: expected a square matrix, got shape {a.shape}")
    with warnings.catch_warnings():
        # exact zero pivots are reported below with a better message
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=True)
    pivots = np.abs(np.diag(lu))
    largest = pivots.max(initial=0.0)
    if largest == 0.0 or pivots.min() <= PIVOT_RTOL * largest:
        raise SingularError(f"{what} is singular (pivot ratio {pivots.min() / largest if largest else 0.0:.3e})")
    return lu, piv


def solve(a: np.ndarray, b: np.ndarray, what: str = "matrix") -> np.ndarray:
    """Return ``a^{-1} b``; raises :class:`SingularError` naming ``what``."""
    lu, piv = _lu(a, what)
    return scipy.linalg.lu_solve((lu, piv), np.asarray(b, dtype=complex))


def solve_right(b: np.ndarray, a: np.ndarray, what: str = "matrix") -> np.ndarray:
    """Return ``b a^{-1}``."""
    lu, piv = _lu(a, what)
    # b a^{-1} = (a^{-T} b^T)^T
    return scipy.linalg.lu_solve((lu, piv), np.asarray(b, dtype=complex).T, trans=1).T


def inv(a: np.ndarray, what: str = "matrix") -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    return solve(a, np.eye(a.shape[0], dtype=complex), what)


def _orthogonalize(v: np.ndarray, basis: np.ndarray) -> np.ndarray:
    # two passes of classical projection ("twice is enough")
    for _ in range(2):
        if basis.shape[1]:
            v = v - basis @ (basis.conj().T @ v)
    return v


def mgs_qr(a: np.ndarray, rank_rtol: float = RANK_RTOL) -> tuple[np.ndarray, np.ndarray]:
    """Thin QR by modified Gram-Schmidt with one re-orthogonalization pass.

    Always returns ``k`` orthonormal columns for a ``n x k`` input. A column
    that is numerically dependent on its predecessors gets a zero diagonal in
    ``R`` and its slot in ``Q`` is filled from the standard basis, so callers
    can treat rank-deficient inputs uniformly.
    """
    a = np.asarray(a, dtype=complex)
    n, k = a.shape
    q = np.zeros((n, k), dtype=complex)
    r = np.zeros((k, k), dtype=complex)
    scale = max(np.linalg.norm(a, axis=0).max(initial=0.0), np.finfo(float).tiny)
    for j in range(k):
        v = a[:, j].copy()
        for sweep in range(2):
            for i in range(j):
                c = np.vdot(q[:, i], v)
                r[i, j] += c
                v = v - c * q[:, i]
        nrm = np.linalg.norm(v)
        if nrm > rank_rtol * scale:
            r[j, j] = nrm
            q[:, j] = v / nrm
        else:
            q[:, j] = _next_basis_vector(q[:, :j], n)
    return q, r


def _next_basis_vector(basis: np.ndarray, n: int, start: int = 0) -> np.ndarray:
    for idx in range(start, n):
        e = np.zeros(n, dtype=complex)
        e[idx] = 1.0
        v = _orthogonalize(e, basis)
        nrm = np.linalg.norm(v)
        if nrm > DEPENDENT_TOL:
            return v / nrm
    raise SingularError("could not extend basis: no independent standard vector left")


def complete_unitary(q: np.ndarray, rng: np.random.Generator | None = None) -> np.ndarray:
    """Extend orthonormal columns ``q`` (n x k) to an n x n unitary.

    Candidates are the standard basis vectors in index order, skipping those
    within ``DEPENDENT_TOL`` of the current span. With ``rng`` the candidates
    are complex Gaussian vectors instead, which gives a different (equally
    valid) completion.
    """
    q = np.asarray(q, dtype=complex)
    n, k = q.shape
    out = np.zeros((n, n), dtype=complex)
    out[:, :k] = q
    col = k
    idx = 0
    while col < n:
        if rng is None:
            if idx >= n:
                raise SingularError("unitary completion ran out of candidates")
            cand = np.zeros(n, dtype=complex)
            cand[idx] = 1.0
            idx += 1
        else:
            cand = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v = _orthogonalize(cand, out[:, :col])
        nrm = np.linalg.norm(v)
        if nrm > DEPENDENT_TOL * (1.0 if rng is None else np.linalg.norm(cand)):
            out[:, col] = v / nrm
            col += 1
    return out


def _perp2(u: np.ndarray) -> np.ndarray:
    return np.array([-np.conj(u[1]), np.conj(u[0])])


def svd2x2(c: np.ndarray, rank_rtol: float = RANK_RTOL) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Closed-form SVD of a complex 2x2 matrix: ``c = u @ diag(s) @ vh``.

    The right singular vectors come from the eigendecomposition of the 2x2
    Gram matrix. The small singular value is taken as ``|det c| / s1`` rather
    than from the small eigenvalue, which would lose half the digits. The
    second left vector is the orthogonal complement of the first, phased so
    that ``u2^H c v2`` is real and non-negative.
    """
    c = np.asarray(c, dtype=complex)
    g = c.conj().T @ c
    a, d = g[0, 0].real, g[1, 1].real
    b = g[0, 1]
    half = 0.5 * (a - d)
    lam1 = 0.5 * (a + d) + np.hypot(half, abs(b))
    if abs(b) <= np.finfo(float).eps * max(a, d, np.finfo(float).tiny):
        v1 = np.array([1.0, 0.0], dtype=complex) if a >= d else np.array([0.0, 1.0], dtype=complex)
    else:
        cand_a = np.array([b, lam1 - a], dtype=complex)
        cand_b = np.array([lam1 - d, np.conj(b)], dtype=complex)
        v1 = cand_a if np.linalg.norm(cand_a) >= np.linalg.norm(cand_b) else cand_b
        v1 = v1 / np.linalg.norm(v1)
    v2 = _perp2(v1)
    s1 = np.sqrt(max(lam1, 0.0))
    if s1 == 0.0:
        return np.eye(2, dtype=complex), np.zeros(2), np.eye(2, dtype=complex)
    s2 = abs(np.linalg.det(c)) / s1
    u1 = c @ v1 / s1
    u1 = u1 / np.linalg.norm(u1)
    u2 = _perp2(u1)
    if s2 > rank_rtol * s1:
        w = np.vdot(u2, c @ v2)
        if w != 0:
            u2 = u2 * (w / abs(w))
    else:
        s2 = 0.0
    u = np.column_stack([u1, u2])
    v = np.column_stack([v1, v2])
    return u, np.array([s1, s2]), v.conj().T
