"""Shared surface of the sparse-recovery estimators.

Solvers follow the scikit-learn estimator protocol: hyperparameters live in
``__init__`` (so ``get_params`` / ``set_params`` / ``clone`` work), ``fit(H, y)``
consumes the sensing matrix as the design matrix, and fitted state lands in
trailing-underscore attributes (``coef_``, ``support_``, ...).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from .._validation import as_matrix, as_vector, check_compatible

__all__ = ["RecoveryResult", "BaseSparseRecovery", "extract_support"]

#: Entries below this fraction of the largest magnitude do not count as support.
SUPPORT_REL_TOL = 1e-6


def extract_support(x: np.ndarray, rel_tol: float = SUPPORT_REL_TOL) -> np.ndarray:
    """Indices whose magnitude exceeds rel_tol times the peak magnitude."""
    x = np.asarray(x)
    peak = np.abs(x).max(initial=0.0)
    if peak == 0.0:
        return np.zeros(0, dtype=np.intp)
    return np.flatnonzero(np.abs(x) > rel_tol * peak).astype(np.intp)


@dataclass
class RecoveryResult:
    """Outcome of one solve: the estimate plus convergence diagnostics."""

    estimate: np.ndarray
    support: np.ndarray
    residual_trace: np.ndarray
    n_iter: int
    converged: bool
    diagnostics: dict = field(default_factory=dict)

    def summary(self) -> str:
        support = ", ".join(map(str, self.support.tolist()))
        lines = [
            f"support ({self.support.size}): [{support}]",
            f"iterations: {self.n_iter}",
            f"converged: {self.converged}",
        ]
        if self.residual_trace.size:
            lines.append(f"final residual norm: {self.residual_trace[-1]:.6g}")
        for key, value in self.diagnostics.items():
            if np.isscalar(value):
                lines.append(f"{key}: {value}")
        return "\n".join(lines)


class BaseSparseRecovery(BaseEstimator):
    """fit/predict skeleton shared by every single-vector solver."""

    def _validate(self, H, y):
        H = as_matrix(H)
        y = as_vector(y)
        check_compatible(H, y)
        return H, y

    def _finalize(self, estimate, residual_trace, n_iter, converged,
                  support=None, **diagnostics):
        estimate = np.asarray(estimate, dtype=np.complex128)
        if support is None:
            support = extract_support(estimate)
        self.coef_ = estimate
        self.support_ = np.asarray(support, dtype=np.intp)
        self.residual_norms_ = np.asarray(residual_trace, dtype=float)
        self.n_iter_ = int(n_iter)
        self.converged_ = bool(converged)
        self.diagnostics_ = diagnostics
        return self

    def fit(self, H, y):  # pragma: no cover - interface stub
        raise NotImplementedError

    def predict(self, H) -> np.ndarray:
        """Predicted measurements H @ coef_ for a (new) sensing matrix."""
        self._check_fitted()
        H = as_matrix(H)
        return H @ self.coef_

    def result(self) -> RecoveryResult:
        self._check_fitted()
        return RecoveryResult(
            estimate=self.coef_,
            support=self.support_,
            residual_trace=self.residual_norms_,
            n_iter=self.n_iter_,
            converged=self.converged_,
            diagnostics=dict(self.diagnostics_),
        )

    def _check_fitted(self):
        if not hasattr(self, "coef_"):
            raise RuntimeError(f"{type(self).__name__} is not fitted yet; call fit first")
