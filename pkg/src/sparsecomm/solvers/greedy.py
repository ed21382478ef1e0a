"""Greedy sparse recovery: matching pursuit, exhaustive search, sliced search.

The matching-pursuit selection rule picks the column with the largest
normalized residual correlation |h_j^H r| / ||h_j||, breaking ties toward the
lowest column index, then re-fits by least squares on the selected set.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from .._validation import as_matrix, as_vector, check_compatible, column_norms
from ..exceptions import EnumerationBudgetError, NoSparseSolutionError
from ..modulation import Constellation, slice_symbols
from .base import BaseSparseRecovery, RecoveryResult

__all__ = [
    "omp_path",
    "OrthogonalMatchingPursuit",
    "omp",
    "l0_exhaustive",
    "SlicedParallelGreedy",
    "sliced_parallel_greedy",
]

# Normalized correlations at or below this fraction of the initial measurement
# norm count as zero: the residual is orthogonal to every column.
_CORRELATION_FLOOR = 1e-12


def omp_path(H, y, sparsity=None, residual_tol=None, max_iter=None):
    """Run the greedy selection loop and return its full path.

    Returns ``(order, coef, trace, converged)`` where ``order`` is the column
    selection sequence, ``coef`` the least-squares coefficients on that set,
    and ``trace`` the residual norm before each iteration plus at the end.
    At least one of ``sparsity`` and ``residual_tol`` must be given.
    """
    H = as_matrix(H)
    y = as_vector(y)
    check_compatible(H, y)
    if sparsity is None and residual_tol is None:
        raise ValueError("a stopping rule is required: set sparsity or residual_tol")
    m, n = H.shape
    if sparsity is not None and not 0 <= sparsity <= min(m, n):
        raise ValueError(f"sparsity {sparsity} out of range for a {m} x {n} system")
    cap = min(m, n) if max_iter is None else min(max_iter, min(m, n))
    if sparsity is not None:
        cap = min(cap, sparsity)

    norms = column_norms(H)
    safe_norms = np.where(norms > 0, norms, np.inf)
    y_norm = float(np.linalg.norm(y))
    floor = _CORRELATION_FLOOR * max(y_norm, 1e-300)

    order: list[int] = []
    selected = np.zeros(n, dtype=bool)
    coef = np.zeros(0, dtype=np.complex128)
    r = y.copy()
    trace = [y_norm]
    converged = False

    while True:
        res_norm = trace[-1]
        if residual_tol is not None and res_norm <= residual_tol:
            converged = True
            break
        if len(order) >= cap:
            converged = sparsity is not None and len(order) == sparsity
            break
        corr = np.abs(H.conj().T @ r) / safe_norms
        corr[selected] = -1.0
        j = int(np.argmax(corr))
        if corr[j] <= floor:
            converged = True
            break
        order.append(j)
        selected[j] = True
        coef, _, _, _ = np.linalg.lstsq(H[:, order], y, rcond=None)
        r = y - H[:, order] @ coef
        trace.append(float(np.linalg.norm(r)))

    return order, coef, np.asarray(trace), converged


class OrthogonalMatchingPursuit(BaseSparseRecovery):
    """Greedy column selection with per-iteration least-squares re-fit.

    Stops after ``sparsity`` selections, or as soon as the residual norm drops
    to ``residual_tol``, whichever rule is configured (both may be set).

    Parameters
    ----------
    sparsity : int, optional
        Number of columns to select.
    residual_tol : float, optional
        Residual-norm stopping threshold.
    max_iter : int, optional
        Hard iteration cap, default min(m, n).
    """

    def __init__(self, sparsity=None, residual_tol=None, max_iter=None):
        self.sparsity = sparsity
        self.residual_tol = residual_tol
        self.max_iter = max_iter

    def fit(self, H, y):
        H = as_matrix(H)
        y = as_vector(y)
        order, coef, trace, converged = omp_path(
            H, y, sparsity=self.sparsity, residual_tol=self.residual_tol,
            max_iter=self.max_iter,
        )
        estimate = np.zeros(H.shape[1], dtype=np.complex128)
        estimate[order] = coef
        support = np.asarray(sorted(order), dtype=np.intp)
        return self._finalize(estimate, trace, len(order), converged,
                              support=support, selection_order=list(order))


def omp(H, y, sparsity=None, residual_tol=None, max_iter=None) -> RecoveryResult:
    """One-call matching pursuit; see OrthogonalMatchingPursuit."""
    est = OrthogonalMatchingPursuit(sparsity=sparsity, residual_tol=residual_tol,
                                    max_iter=max_iter)
    return est.fit(H, y).result()


def l0_exhaustive(H, y, k_max, noise_tol=None, enumeration_budget=10**6) -> RecoveryResult:
    """Smallest support whose least-squares fit explains y within tolerance.

    Subset sizes are searched in ascending order starting from the empty
    support, so the first size admitting a fit with residual at most
    ``noise_tol`` wins; within that size the subset with the smallest residual
    is returned. This is the exact (combinatorial) reference solver; the
    total number of enumerated subsets is capped by ``enumeration_budget``.
    """
    H = as_matrix(H)
    y = as_vector(y)
    check_compatible(H, y)
    m, n = H.shape
    k_max = int(k_max)
    if not 0 <= k_max <= min(m, n):
        raise ValueError(f"k_max {k_max} out of range for a {m} x {n} system")
    y_norm = float(np.linalg.norm(y))
    if noise_tol is None:
        noise_tol = 1e-8 * y_norm
    total = sum(comb(n, k) for k in range(1, k_max + 1))
    if total > enumeration_budget:
        raise EnumerationBudgetError(
            f"{total} subsets up to size {k_max} exceed the budget of {enumeration_budget}"
        )

    trace = [y_norm]
    if y_norm <= noise_tol:
        return RecoveryResult(
            estimate=np.zeros(n, dtype=np.complex128),
            support=np.zeros(0, dtype=np.intp),
            residual_trace=np.asarray(trace), n_iter=0, converged=True,
        )
    for k in range(1, k_max + 1):
        best = None
        for subset in combinations(range(n), k):
            sub = H[:, subset]
            sol, _, _, _ = np.linalg.lstsq(sub, y, rcond=None)
            res = float(np.linalg.norm(y - sub @ sol))
            if res <= noise_tol and (best is None or res < best[0]):
                best = (res, subset, sol)
        if best is not None:
            res, subset, sol = best
            estimate = np.zeros(n, dtype=np.complex128)
            estimate[list(subset)] = sol
            trace.append(res)
            return RecoveryResult(
                estimate=estimate,
                support=np.asarray(subset, dtype=np.intp),
                residual_trace=np.asarray(trace), n_iter=k, converged=True,
            )
    raise NoSparseSolutionError(
        f"no support of size <= {k_max} fits y within tolerance {noise_tol:.3g}"
    )


def _ls_on_support(H, G, Hty, support, y):
    """LS coefficients on a column subset via the precomputed Gram."""
    idx = np.asarray(support, dtype=np.intp)
    G_SS = G[np.ix_(idx, idx)]
    try:
        return np.linalg.solve(G_SS, Hty[idx])
    except np.linalg.LinAlgError:
        sol, _, _, _ = np.linalg.lstsq(H[:, idx], y, rcond=None)
        return sol


class SlicedParallelGreedy(BaseSparseRecovery):
    """Breadth-limited greedy tree search with per-node symbol slicing.

    For finite-alphabet nonzeros, each node's least-squares values are sliced
    onto the constellation before computing its residual, so wrong paths pick
    up quantization error while the correct path does not. Each level expands
    the ``width`` best candidates by their ``width`` most correlated columns
    and keeps the ``width`` best children; the final answer is the candidate
    with the smallest sliced-fit residual. ``width=1`` degenerates to plain
    matching pursuit with slicing.
    """

    def __init__(self, constellation: Constellation, sparsity: int, width: int = 1):
        self.constellation = constellation
        self.sparsity = sparsity
        self.width = width

    def fit(self, H, y):
        H, y = self._validate(H, y)
        if self.sparsity is None or self.sparsity < 1:
            raise ValueError("sparsity must be a positive integer")
        if self.width < 1:
            raise ValueError("width must be >= 1")
        m, n = H.shape
        k = int(self.sparsity)
        if k > min(m, n):
            raise ValueError(f"sparsity {k} out of range for a {m} x {n} system")
        B = int(self.width)
        norms = column_norms(H)
        safe_norms = np.where(norms > 0, norms, np.inf)
        G = H.conj().T @ H
        Hty = H.conj().T @ y

        # Candidate: (support tuple in selection order, sliced values, residual, norm)
        candidates = [((), np.zeros(0, dtype=np.complex128), y, float(np.linalg.norm(y)))]
        trace = [candidates[0][3]]
        for _ in range(k):
            children = {}
            for support, _, r, _ in candidates:
                corr = np.abs(H.conj().T @ r) / safe_norms
                corr[list(support)] = -1.0
                picks = np.argsort(-corr, kind="stable")[:B]
                for j in picks:
                    if corr[j] < 0:
                        continue
                    child = support + (int(j),)
                    key = frozenset(child)
                    if key in children:
                        continue
                    vals = _ls_on_support(H, G, Hty, child, y)
                    sliced = slice_symbols(vals, self.constellation)
                    res = y - H[:, child] @ sliced
                    children[key] = (child, sliced, res, float(np.linalg.norm(res)))
            if not children:
                break
            candidates = sorted(children.values(), key=lambda c: c[3])[:B]
            trace.append(candidates[0][3])

        support, values, _, res_norm = min(candidates, key=lambda c: c[3])
        estimate = np.zeros(n, dtype=np.complex128)
        estimate[list(support)] = values
        return self._finalize(
            estimate, trace, len(support), True,
            support=np.asarray(sorted(support), dtype=np.intp),
            selection_order=list(support), final_residual=res_norm,
        )


def sliced_parallel_greedy(H, y, constellation, sparsity, width=1) -> RecoveryResult:
    est = SlicedParallelGreedy(constellation, sparsity, width)
    return est.fit(H, y).result()
