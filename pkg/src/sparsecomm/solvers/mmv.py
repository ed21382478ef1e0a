"""Joint recovery from multiple measurement vectors sharing one support.

Scenario 1: every snapshot observes through the same matrix (Y = H S + N).
Scenario 2: each snapshot has its own matrix but the support is still common.
Both use the simultaneous greedy rule: aggregate the per-snapshot residual
correlations, pick one column for all snapshots, re-fit each snapshot by
least squares on the common support.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from .._validation import as_matrix, as_vector, column_norms
from .greedy import _CORRELATION_FLOOR

__all__ = ["MmvProblem", "MmvResult", "SimultaneousOMP", "somp", "gsomp_distinct"]


@dataclass(frozen=True)
class MmvProblem:
    """Bundle of snapshots: one shared matrix or one matrix per snapshot."""

    scenario: str
    matrices: tuple
    observations: tuple

    def __post_init__(self):
        if self.scenario not in ("shared-matrix", "distinct-matrices"):
            raise ValueError(f"unknown scenario {self.scenario!r}")
        mats = tuple(as_matrix(M, f"H[{t}]") for t, M in enumerate(self.matrices))
        obs = tuple(as_vector(v, f"y[{t}]") for t, v in enumerate(self.observations))
        if len(obs) < 1:
            raise ValueError("need at least one snapshot")
        if self.scenario == "shared-matrix" and len(mats) != 1:
            raise ValueError("shared-matrix scenario carries exactly one matrix")
        if self.scenario == "distinct-matrices" and len(mats) != len(obs):
            raise ValueError("need one matrix per snapshot")
        n = mats[0].shape[1]
        for t, M in enumerate(mats):
            if M.shape[1] != n:
                raise ValueError("all matrices must share the column count")
        for t, v in enumerate(obs):
            M = mats[0] if len(mats) == 1 else mats[t]
            if v.size != M.shape[0]:
                raise ValueError(f"snapshot {t} has inconsistent length")
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "observations", obs)

    @classmethod
    def shared(cls, H, Y) -> "MmvProblem":
        Y = np.atleast_2d(np.asarray(Y, dtype=np.complex128))
        if Y.shape[0] == np.asarray(H).shape[0]:
            snapshots = tuple(Y[:, t] for t in range(Y.shape[1]))
        else:
            snapshots = tuple(Y)
        return cls("shared-matrix", (H,), snapshots)

    @classmethod
    def distinct(cls, mats, Y) -> "MmvProblem":
        return cls("distinct-matrices", tuple(mats), tuple(Y))

    @property
    def snapshot_count(self) -> int:
        return len(self.observations)

    def matrix_for(self, t: int) -> np.ndarray:
        return self.matrices[0] if len(self.matrices) == 1 else self.matrices[t]


@dataclass
class MmvResult:
    support: np.ndarray
    estimates: np.ndarray          # one column per snapshot, common support
    residual_trace: np.ndarray     # joint (root-sum-square) residual norms
    n_iter: int
    converged: bool


def _simultaneous_greedy(problem: MmvProblem, sparsity, residual_tol,
                         aggregate, max_iter):
    mats = [problem.matrix_for(t) for t in range(problem.snapshot_count)]
    ys = list(problem.observations)
    n = mats[0].shape[1]
    min_m = min(M.shape[0] for M in mats)
    if sparsity is None and residual_tol is None:
        raise ValueError("a stopping rule is required: set sparsity or residual_tol")
    cap = min(min_m, n) if max_iter is None else min(max_iter, min_m, n)
    if sparsity is not None:
        if not 0 <= sparsity <= min(min_m, n):
            raise ValueError(f"sparsity {sparsity} out of range")
        cap = min(cap, sparsity)

    norms = [column_norms(M) for M in mats]
    safe_norms = [np.where(v > 0, v, np.inf) for v in norms]
    residuals = [y.copy() for y in ys]
    joint = float(np.sqrt(sum(np.linalg.norm(r) ** 2 for r in residuals)))
    floor = _CORRELATION_FLOOR * max(joint, 1e-300)
    trace = [joint]
    order: list[int] = []
    coefs = [np.zeros(0, dtype=np.complex128) for _ in ys]
    converged = False

    while True:
        if residual_tol is not None and trace[-1] <= residual_tol:
            converged = True
            break
        if len(order) >= cap:
            converged = sparsity is not None and len(order) == sparsity
            break
        agg = np.zeros(n)
        for t, (M, r) in enumerate(zip(mats, residuals)):
            c = np.abs(M.conj().T @ r) / safe_norms[t]
            agg += c if aggregate == "l1" else c ** 2
        if aggregate == "l2":
            agg = np.sqrt(agg)
        agg[order] = -1.0
        j = int(np.argmax(agg))
        if agg[j] <= floor:
            converged = True
            break
        order.append(j)
        for t, (M, y) in enumerate(zip(mats, ys)):
            sol, _, _, _ = np.linalg.lstsq(M[:, order], y, rcond=None)
            coefs[t] = sol
            residuals[t] = y - M[:, order] @ sol
        trace.append(float(np.sqrt(sum(np.linalg.norm(r) ** 2 for r in residuals))))

    estimates = np.zeros((n, len(ys)), dtype=np.complex128)
    for t, sol in enumerate(coefs):
        estimates[order, t] = sol
    support = np.asarray(sorted(order), dtype=np.intp)
    return MmvResult(support, estimates, np.asarray(trace), len(order), converged)


class SimultaneousOMP(BaseEstimator):
    """Greedy joint-support recovery across snapshots.

    ``fit`` accepts either a shared matrix with an (m, N) snapshot stack or
    an MmvProblem (which also covers the distinct-matrices scenario). With a
    single snapshot the selection sequence coincides with plain matching
    pursuit. Correlations aggregate across snapshots as a sum of magnitudes
    by default (``aggregate="l2"`` switches to root-sum-square).
    """

    def __init__(self, sparsity=None, residual_tol=None, aggregate="l1",
                 max_iter=None):
        self.sparsity = sparsity
        self.residual_tol = residual_tol
        self.aggregate = aggregate
        self.max_iter = max_iter

    def fit(self, H, Y=None):
        if isinstance(H, MmvProblem):
            problem = H
        else:
            problem = MmvProblem.shared(H, Y)
        if self.aggregate not in ("l1", "l2"):
            raise ValueError("aggregate must be 'l1' or 'l2'")
        res = _simultaneous_greedy(problem, self.sparsity, self.residual_tol,
                                   self.aggregate, self.max_iter)
        self.coef_ = res.estimates
        self.support_ = res.support
        self.residual_norms_ = res.residual_trace
        self.n_iter_ = res.n_iter
        self.converged_ = res.converged
        return self

    def result(self) -> MmvResult:
        return MmvResult(self.support_, self.coef_, self.residual_norms_,
                         self.n_iter_, self.converged_)


def somp(problem: MmvProblem, sparsity=None, residual_tol=None,
         aggregate="l1") -> MmvResult:
    """Joint greedy recovery for the shared-matrix scenario."""
    if problem.scenario != "shared-matrix":
        raise ValueError("somp expects the shared-matrix scenario")
    est = SimultaneousOMP(sparsity=sparsity, residual_tol=residual_tol,
                          aggregate=aggregate)
    return est.fit(problem).result()


def gsomp_distinct(problem: MmvProblem, sparsity=None, residual_tol=None,
                   aggregate="l1") -> MmvResult:
    """Joint greedy recovery when every snapshot has its own matrix."""
    if problem.scenario != "distinct-matrices":
        raise ValueError("gsomp_distinct expects the distinct-matrices scenario")
    est = SimultaneousOMP(sparsity=sparsity, residual_tol=residual_tol,
                          aggregate=aggregate)
    return est.fit(problem).result()
