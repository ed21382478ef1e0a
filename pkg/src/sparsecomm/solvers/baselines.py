"""Classical linear estimators: LS, minimum-norm, LMMSE, and support-oracle LS.

These are the non-sparse baselines every sparse solver is judged against.
"""

from __future__ import annotations

import numpy as np

from .._validation import as_matrix, as_vector, check_compatible
from ..exceptions import SingularSystemError
from .base import RecoveryResult

__all__ = ["ls_solve", "min_norm_solve", "lmmse_solve", "oracle_ls"]


def ls_solve(H, y) -> np.ndarray:
    """Least-squares solution (H^H H)^-1 H^H y of an overdetermined system."""
    H = as_matrix(H)
    y = as_vector(y)
    check_compatible(H, y)
    m, n = H.shape
    if m < n:
        raise ValueError("least squares needs m >= n; use min_norm_solve instead")
    sol, _, rank, _ = np.linalg.lstsq(H, y, rcond=None)
    if rank < n:
        raise SingularSystemError(f"H^H H is singular (column rank {rank} < {n})")
    return sol


def min_norm_solve(H, y) -> np.ndarray:
    """Minimum-energy solution H^H (H H^H)^-1 y of an underdetermined system."""
    H = as_matrix(H)
    y = as_vector(y)
    check_compatible(H, y)
    m, n = H.shape
    if m > n:
        raise ValueError("minimum-norm form needs m <= n; use ls_solve instead")
    gram = H @ H.conj().T
    try:
        w = np.linalg.solve(gram, y)
    except np.linalg.LinAlgError:
        raise SingularSystemError("H H^H is singular (row rank deficient)")
    cond = np.linalg.cond(gram)
    if not np.isfinite(cond) or cond > 1e14:
        raise SingularSystemError("H H^H is numerically singular")
    return H.conj().T @ w


def _as_covariance(R, dim: int, name: str) -> np.ndarray:
    if np.isscalar(R):
        R = complex(R) * np.eye(dim)
    R = as_matrix(R, name)
    if R.shape != (dim, dim):
        raise ValueError(f"{name} must be {dim} x {dim}")
    return R


def lmmse_solve(H, y, Rs, Rv) -> np.ndarray:
    """Linear MMSE estimate Rs H^H (H Rs H^H + Rv)^-1 y.

    ``Rs`` and ``Rv`` are positive-definite covariances of the signal and the
    noise; scalars are promoted to multiples of the identity.
    """
    H = as_matrix(H)
    y = as_vector(y)
    check_compatible(H, y)
    m, n = H.shape
    Rs = _as_covariance(Rs, n, "Rs")
    Rv = _as_covariance(Rv, m, "Rv")
    for name, R in (("Rs", Rs), ("Rv", Rv)):
        try:
            np.linalg.cholesky(R)
        except np.linalg.LinAlgError:
            raise ValueError(f"{name} must be positive definite")
    inner = H @ Rs @ H.conj().T + Rv
    return Rs @ (H.conj().T @ np.linalg.solve(inner, y))


def lmmse_information_form(H, y, Rs, Rv) -> np.ndarray:
    """Equivalent LMMSE estimate (Rs^-1 + H^H Rv^-1 H)^-1 H^H Rv^-1 y."""
    H = as_matrix(H)
    y = as_vector(y)
    check_compatible(H, y)
    m, n = H.shape
    Rs = _as_covariance(Rs, n, "Rs")
    Rv = _as_covariance(Rv, m, "Rv")
    rv_inv_H = np.linalg.solve(Rv, H)
    rv_inv_y = np.linalg.solve(Rv, y)
    A = np.linalg.inv(Rs) + H.conj().T @ rv_inv_H
    return np.linalg.solve(A, H.conj().T @ rv_inv_y)


def oracle_ls(H, y, support) -> RecoveryResult:
    """Least squares restricted to a known support, zeros elsewhere.

    With the true support this is the performance floor any sparse solver is
    compared against.
    """
    H = as_matrix(H)
    y = as_vector(y)
    check_compatible(H, y)
    support = np.asarray(sorted(set(np.asarray(support, dtype=np.intp).tolist())), dtype=np.intp)
    m, n = H.shape
    if support.size and (support.min() < 0 or support.max() >= n):
        raise ValueError("support indices out of range")
    if support.size > m:
        raise ValueError(f"support of size {support.size} exceeds {m} measurements")
    estimate = np.zeros(n, dtype=np.complex128)
    if support.size:
        sub = H[:, support]
        sol, _, rank, _ = np.linalg.lstsq(sub, y, rcond=None)
        if rank < support.size:
            raise SingularSystemError("support columns are rank deficient")
        estimate[support] = sol
    residual = float(np.linalg.norm(y - H @ estimate))
    return RecoveryResult(
        estimate=estimate,
        support=support,
        residual_trace=np.array([float(np.linalg.norm(y)), residual]),
        n_iter=1,
        converged=True,
    )
