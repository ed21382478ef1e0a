"""Iterative hard thresholding: gradient step plus keep-k truncation."""

from __future__ import annotations

import numpy as np

from .base import BaseSparseRecovery, RecoveryResult

__all__ = ["IterativeHardThresholding", "iht"]


def _keep_k(v: np.ndarray, k: int) -> np.ndarray:
    """Zero all but the k largest-magnitude entries (stable order on ties)."""
    if k >= v.size:
        return v.copy()
    out = np.zeros_like(v)
    if k > 0:
        keep = np.argsort(-np.abs(v), kind="stable")[:k]
        out[keep] = v[keep]
    return out


class IterativeHardThresholding(BaseSparseRecovery):
    """Iterate s <- T_k(s + step * H^H (y - H s)) from s = 0.

    T_k keeps the k largest-magnitude entries. The plain update uses a unit
    step; ``step="auto"`` rescales by 1 / sigma_max(H)^2 for matrices whose
    columns are not roughly unit norm. Divergence (residual growing tenfold
    over a ten-iteration window) aborts the loop with a ``diverged`` flag and
    the best iterate seen.

    Parameters
    ----------
    sparsity : int
        Number of nonzeros to keep each iteration.
    step : float or "auto"
        Gradient step size.
    max_iter : int
        Iteration cap.
    residual_tol : float, optional
        Early-exit residual norm target.
    """

    def __init__(self, sparsity, step=1.0, max_iter=100, residual_tol=None,
                 init=None):
        self.sparsity = sparsity
        self.step = step
        self.max_iter = max_iter
        self.residual_tol = residual_tol
        self.init = init

    def fit(self, H, y):
        H, y = self._validate(H, y)
        m, n = H.shape
        k = int(self.sparsity)
        if not 1 <= k <= n:
            raise ValueError(f"sparsity {k} out of range for {n} unknowns")
        step = self.step
        if step == "auto":
            step = 1.0 / float(np.linalg.norm(H, 2) ** 2)
        elif step <= 0:
            raise ValueError("step must be positive")

        if self.init is None:
            x = np.zeros(n, dtype=np.complex128)
        else:
            x = np.asarray(self.init, dtype=np.complex128).copy()
            if x.shape != (n,):
                raise ValueError("init must have length n")
        r = y - H @ x
        trace = [float(np.linalg.norm(r))]
        best_x, best_res = x.copy(), trace[0]
        converged = False
        diverged = False
        n_iter = 0
        for n_iter in range(1, self.max_iter + 1):
            x_new = _keep_k(x + step * (H.conj().T @ r), k)
            r = y - H @ x_new
            res = float(np.linalg.norm(r))
            trace.append(res)
            moved = float(np.linalg.norm(x_new - x))
            x = x_new
            if res < best_res:
                best_x, best_res = x.copy(), res
            if self.residual_tol is not None and res <= self.residual_tol:
                converged = True
                break
            if moved <= 1e-12 * max(1.0, float(np.linalg.norm(x))):
                converged = True  # fixed point reached
                break
            if len(trace) > 10 and trace[-1] > 10.0 * trace[-11]:
                diverged = True
                break
        if diverged:
            x = best_x
        return self._finalize(x, trace, n_iter, converged and not diverged,
                              diverged=diverged, step=step)


def iht(H, y, sparsity, step=1.0, max_iter=100, residual_tol=None) -> RecoveryResult:
    est = IterativeHardThresholding(sparsity, step=step, max_iter=max_iter,
                                    residual_tol=residual_tol)
    return est.fit(H, y).result()
